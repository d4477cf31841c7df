#include "pairsim/index_algebra.hpp"

#include "pairsim/types.hpp"

namespace pairsim {

OpIndex::OpIndex(int one_based)
  : value_(one_based)
{
    if (one_based < 1 || one_based > kNumOps) {
        throw InputError("operator index out of range 1..16: " + std::to_string(one_based));
    }
}

Level level_from_char(char label)
{
    switch (label) {
        case 'a': return Level::a;
        case 'b': return Level::b;
        case 'c': return Level::c;
        case 'd': return Level::d;
        default: throw InputError(std::string("invalid level label '") + label + "'");
    }
}

char level_char(Level level) noexcept { return static_cast<char>('a' + static_cast<int>(level)); }

OpIndex idx(Level x, Level y) noexcept
{
    return OpIndex::from_zero(4 * static_cast<int>(x) + static_cast<int>(y));
}

OpIndex idx(char x, char y) { return idx(level_from_char(x), level_from_char(y)); }

std::pair<Level, Level> levels(OpIndex m) noexcept
{
    const int z = m.zero();
    return {static_cast<Level>(z / 4), static_cast<Level>(z % 4)};
}

std::string op_name(OpIndex m)
{
    const auto [x, y] = levels(m);
    return {level_char(x), level_char(y)};
}

OpIndex dagger(OpIndex m) noexcept
{
    const auto [x, y] = levels(m);
    return idx(y, x);
}

std::optional<OpIndex> contract(OpIndex m, OpIndex n) noexcept
{
    const auto [x, y] = levels(m);
    const auto [u, v] = levels(n);
    if (y != u) {
        return std::nullopt;
    }
    return idx(x, v);
}

const std::array<std::array<int, 16>, 16>& contract_table() noexcept
{
    static const auto table = [] {
        std::array<std::array<int, 16>, 16> t{};
        for (int m = 0; m < 16; ++m) {
            for (int n = 0; n < 16; ++n) {
                t[m][n] = (m % 4 == n / 4) ? 4 * (m / 4) + n % 4 : -1;
            }
        }
        return t;
    }();
    return table;
}

const std::array<int, 16>& dagger_table() noexcept
{
    static const auto table = [] {
        std::array<int, 16> t{};
        for (int m = 0; m < 16; ++m) {
            t[m] = 4 * (m % 4) + m / 4;
        }
        return t;
    }();
    return table;
}

} // namespace pairsim
