#pragma once

// Langevin noise strengths from the generalized Einstein relation,
// <F_m(t) F_n(t')> = 2D_mn(t) delta(t - t').

#include "pairsim/types.hpp"

namespace pairsim {

/// Raw ordered table 2D_mn (zero-based m, n) for drift M and state X.
Mat16 diffusion_matrix(const Mat16& m, const Vec16& x);

/// D^n_mn = <F_m^dag F_n> = half the raw entry at (dagger(m), n).
Mat16 normal_diffusion(const Mat16& raw);

/// D^an_mn = <F_m F_n^dag> = half the raw entry at (m, dagger(n)).
Mat16 antinormal_diffusion(const Mat16& raw);

/// Matrix of the contraction map: (pair_matrix(x))_mn = X_{contract(m,n)}, 0 when null.
Mat16 pair_matrix(const Vec16& x);

} // namespace pairsim
