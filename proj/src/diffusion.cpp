#include "pairsim/diffusion.hpp"

#include "pairsim/index_algebra.hpp"

namespace pairsim {

Mat16 pair_matrix(const Vec16& x)
{
    const auto& ct = contract_table();
    Mat16 out;
    for (int m = 0; m < kNumOps; ++m) {
        for (int n = 0; n < kNumOps; ++n) {
            const int p = ct[m][n];
            out(m, n) = p < 0 ? Complex{} : x(p);
        }
    }
    return out;
}

Mat16 diffusion_matrix(const Mat16& m, const Vec16& x)
{
    const auto& ct = contract_table();
    const Vec16 mx = m * x;
    const Mat16 xp = pair_matrix(x);
    // sum_r M_mr X_c(r,n) = (M * xp)_mn, sum_r M_nr X_c(m,r) = (xp * M^T)_mn
    Mat16 out = -(m * xp) - xp * m.transpose();
    for (int a = 0; a < kNumOps; ++a) {
        for (int b = 0; b < kNumOps; ++b) {
            const int p = ct[a][b];
            if (p >= 0) {
                out(a, b) += mx(p);
            }
        }
    }
    return out;
}

Mat16 normal_diffusion(const Mat16& raw)
{
    const auto& dg = dagger_table();
    Mat16 out;
    for (int m = 0; m < kNumOps; ++m) {
        for (int n = 0; n < kNumOps; ++n) {
            out(m, n) = 0.5 * raw(dg[m], n);
        }
    }
    return out;
}

Mat16 antinormal_diffusion(const Mat16& raw)
{
    const auto& dg = dagger_table();
    Mat16 out;
    for (int m = 0; m < kNumOps; ++m) {
        for (int n = 0; n < kNumOps; ++n) {
            out(m, n) = 0.5 * raw(m, dg[n]);
        }
    }
    return out;
}

} // namespace pairsim
