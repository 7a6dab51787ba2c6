#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flextile/tiles.hpp"

namespace flextile {

using Rational = boost::multiprecision::cpp_rational;

/// Tile counts R_j, one per tile type of a pot.
using UsageVector = std::vector<std::size_t>;

/// Balance rows z[i][j] = (a_i on t_j) - (â_i on t_j), one row per bond
/// letter and one column per tile type, plus the implicit proportion row
/// r_1 + ... + r_p = 1.
class ConstructionMatrix {
public:
    ConstructionMatrix(std::size_t bonds, std::size_t tiles, std::vector<int> net);

    [[nodiscard]] std::size_t bonds() const { return bonds_; }
    [[nodiscard]] std::size_t tiles() const { return tiles_; }
    [[nodiscard]] int at(std::size_t bond_row, std::size_t tile_col) const {
        return net_[bond_row * tiles_ + tile_col];
    }

    /// Augmented matrix, one row per line: "z z z | 0", then "1 1 1 | 1".
    [[nodiscard]] std::string render() const;

    bool operator==(const ConstructionMatrix&) const = default;

private:
    std::size_t bonds_;
    std::size_t tiles_;
    std::vector<int> net_;
};

[[nodiscard]] ConstructionMatrix build_matrix(const Pot& pot);

/// Solution set of the augmented system as particular + span(nullspace).
struct SpectrumSolution {
    bool consistent = false;
    std::vector<Rational> particular;
    std::vector<std::vector<Rational>> nullspace;

    [[nodiscard]] bool unique() const { return consistent && nullspace.empty(); }
};

/// Exact Gauss-Jordan elimination. Free variables are set to zero in the
/// particular solution.
[[nodiscard]] SpectrumSolution solve(const ConstructionMatrix& m);

/// True iff `r` satisfies every balance row and sums to one, exactly.
[[nodiscard]] bool satisfies(const ConstructionMatrix& m, const std::vector<Rational>& r);

struct MinOrderResult {
    enum class Status { found, unrealizable, unknown_beyond_cap };

    Status status = Status::unknown_beyond_cap;
    std::size_t order = 0;  ///< m_P when found
    UsageVector witness;    ///< sums to m_P and balances every letter
};

inline constexpr std::size_t default_order_cap = 64;

/// Smallest n >= 1 admitting a balanced usage vector, by ascending search.
/// Pots whose balance rows force every tile count to zero are reported as
/// unrealizable; anything else not found up to `cap` is unknown.
[[nodiscard]] MinOrderResult min_order(const Pot& pot, std::size_t cap = default_order_cap);

/// Every nonnegative R with sum n and zero net count for each letter, in
/// lexicographic order.
[[nodiscard]] std::vector<UsageVector> usage_vectors(const Pot& pot, std::size_t n);

/// First balanced usage vector with sum n, if any.
[[nodiscard]] bool has_usage_vector(const Pot& pot, std::size_t n, UsageVector* witness = nullptr);

/// Per-letter end balance of `usage`; the property every complex obeys.
[[nodiscard]] bool is_balanced(const Pot& pot, const UsageVector& usage);

}  // namespace flextile
