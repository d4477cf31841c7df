#pragma once

// Canonical flattening of the atomic transition operators sigma_xy into
// indices 1..16 (row-major: aa, ab, ac, ad, ba, ..., dd) together with the
// product rule sigma_xy sigma_uv = delta_yu sigma_xv.

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace pairsim {

enum class Level : int { a = 0, b = 1, c = 2, d = 3 };

/// 1-based operator index. Internal arrays use zero() = value - 1.
class OpIndex {
  public:
    constexpr OpIndex() = default;
    explicit OpIndex(int one_based);

    constexpr int value() const noexcept { return value_; }
    constexpr int zero() const noexcept { return value_ - 1; }

    static OpIndex from_zero(int zero_based) { return OpIndex(zero_based + 1); }

    friend constexpr bool operator==(OpIndex, OpIndex) = default;

  private:
    int value_ = 1;
};

Level level_from_char(char label);
char level_char(Level level) noexcept;

OpIndex idx(Level x, Level y) noexcept;
OpIndex idx(char x, char y);

std::pair<Level, Level> levels(OpIndex m) noexcept;

/// "db" style name of the operator.
std::string op_name(OpIndex m);

OpIndex dagger(OpIndex m) noexcept;

/// sigma_m sigma_n, or nullopt when the inner labels differ.
std::optional<OpIndex> contract(OpIndex m, OpIndex n) noexcept;

/// Zero-based lookup table: contract_table()[m][n] = zero-based product index or -1.
const std::array<std::array<int, 16>, 16>& contract_table() noexcept;

/// Zero-based dagger table.
const std::array<int, 16>& dagger_table() noexcept;

namespace ops {
inline const OpIndex aa = OpIndex(1);
inline const OpIndex ac = OpIndex(3);
inline const OpIndex bb = OpIndex(6);
inline const OpIndex bd = OpIndex(8);
inline const OpIndex ca = OpIndex(9);
inline const OpIndex cc = OpIndex(11);
inline const OpIndex db = OpIndex(14);
inline const OpIndex dd = OpIndex(16);
} // namespace ops

/// Zero-based indices of the population operators aa, bb, cc, dd.
inline constexpr std::array<int, 4> kPopulationRows{0, 5, 10, 15};

} // namespace pairsim
