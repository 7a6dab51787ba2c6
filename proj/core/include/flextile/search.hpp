#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "flextile/assembly.hpp"
#include "flextile/multigraph.hpp"
#include "flextile/tiles.hpp"

namespace flextile {

/// Hub and rim of a graph isomorphic to W_n, n >= 5. Spokes are the edges
/// at the hub; every other edge lies on the outer cycle.
struct WheelFrame {
    Vertex hub = 0;
    std::size_t n = 0;
};

[[nodiscard]] std::optional<WheelFrame> wheel_frame(const Multigraph& g);

/// Structural restrictions that every scenario-3 labelling of a wheel
/// obeys. Each returns true when the labelling respects it.
[[nodiscard]] bool no_shared_cycle_and_nonincident_spoke(const WheelFrame& frame,
                                                         const std::vector<LabeledEdge>& edges);
[[nodiscard]] bool outer_letters_at_most_twice(const WheelFrame& frame, const std::vector<LabeledEdge>& edges);
/// Applies to any loopless target.
[[nodiscard]] bool adjacent_tiles_distinct(const Multigraph& g, const Labeling& labeling);

struct PruneFlags {
    bool distinct_adjacent_tiles = true;
    bool outer_cycle_at_most_twice = true;
    bool no_cycle_and_nonincident_spoke = true;

    [[nodiscard]] static PruneFlags none() { return {false, false, false}; }
    [[nodiscard]] bool any() const {
        return distinct_adjacent_tiles || outer_cycle_at_most_twice || no_cycle_and_nonincident_spoke;
    }
};

struct SearchSpec {
    Multigraph target{1};
    int scenario = 1;
    std::size_t max_bonds = 0;  ///< 0: one letter per edge at most
    std::size_t max_tiles = 0;  ///< 0: one tile per vertex at most
    /// Requested restrictions; each is applied only at scenario 3 and only
    /// where it holds (wheel lemmas need a wheel of order >= 5, the
    /// adjacency rule needs a loopless target).
    PruneFlags prune{};
    std::uint64_t node_budget = 4'000'000'000ULL;  ///< labelling-tree nodes
    std::uint64_t verify_budget = 1'000'000;       ///< matching nodes per verification
    unsigned threads = 1;
    /// Disable bound pruning and keep every passing labelling.
    bool collect_passing = false;
};

struct Minimum {
    std::size_t bonds = 0;
    std::size_t tiles = 0;
    Pot pot;
    Labeling labeling;  ///< letters renumbered to match `pot`
};

struct MinimaResult {
    std::optional<Minimum> bonds_first;  ///< min B, then min T at that B
    std::optional<Minimum> tiles_first;  ///< min T, then min B at that T
    bool exhaustive = false;             ///< search finished within bounds and budgets
    bool lemma_conditional = false;      ///< some lemma restriction was applied
    std::uint64_t nodes = 0;
    std::uint64_t verifications = 0;
    std::uint64_t indeterminate = 0;
    std::vector<Minimum> passing;  ///< filled when collect_passing is set
};

/// Exhaustive search over letter/orientation labellings of the target,
/// up to renaming letters and swapping the polarity of a letter.
[[nodiscard]] MinimaResult search_minima(const SearchSpec& spec);

/// av(G) <= T_1 <= ev(G) + 2 ov(G) for a scenario-1 result.
[[nodiscard]] bool check_bounds(const Multigraph& g, const MinimaResult& result);

/// B and T are non-decreasing across scenarios 1, 2, 3.
[[nodiscard]] bool check_hierarchy(const Multigraph& g, const MinimaResult& r1, const MinimaResult& r2,
                                   const MinimaResult& r3);

}  // namespace flextile
