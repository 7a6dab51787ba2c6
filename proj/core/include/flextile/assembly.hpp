#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flextile/matrix.hpp"
#include "flextile/multigraph.hpp"
#include "flextile/tiles.hpp"

namespace flextile {

inline constexpr std::uint64_t default_node_budget = 10'000'000;

/// A bonded edge, directed from the unhatted end (tail) to the hatted end.
struct LabeledEdge {
    BondIndex bond = 1;
    Vertex tail = 0;
    Vertex head = 0;

    auto operator<=>(const LabeledEdge&) const = default;
};

/// Tile type per vertex plus the bond and orientation of every edge.
struct Labeling {
    std::vector<std::size_t> tile_of_vertex;
    std::vector<LabeledEdge> edges;

    bool operator==(const Labeling&) const = default;
};

/// Vertex v gets one instance of tile type `instance_types[v]`; instances
/// of a type are contiguous and appear in tile order.
struct TileInstancing {
    UsageVector usage;
    std::vector<std::size_t> instance_types;
};

/// Expands R into ΣR vertex slots. Throws std::invalid_argument when R does
/// not match the pot or leaves some letter unbalanced.
[[nodiscard]] TileInstancing instantiate(const Pot& pot, const UsageVector& usage);

struct RealizationSet {
    std::size_t order = 0;
    /// Pairwise non-isomorphic, sorted by canonical code. Vertex v of each
    /// graph is an instance of tile `tile_of_vertex[v]`.
    std::vector<Multigraph> graphs;
    std::vector<std::size_t> tile_of_vertex;
    bool complete = false;
    std::uint64_t nodes = 0;
};

struct EnumerationOptions {
    std::uint64_t node_budget = default_node_budget;
    unsigned threads = 1;
};

/// Visits every complete complex for `usage`, up to interchange of
/// identical tile instances and of identical ends on one instance. The
/// visitor receives the bonded edges on instance vertices and returns false
/// to stop. Returns the number of search nodes used; throws BudgetExceeded
/// past `node_budget`.
std::uint64_t for_each_complex(const Pot& pot, const UsageVector& usage, std::uint64_t node_budget,
                               const std::function<bool(const std::vector<LabeledEdge>&)>& visit);

/// All isomorphism classes of complete complexes for one usage vector.
/// Throws BudgetExceeded rather than return a truncated set.
[[nodiscard]] RealizationSet enumerate_complexes(const Pot& pot, const UsageVector& usage,
                                                 const EnumerationOptions& options = {});

/// Union over every usage vector at order n, deduplicated up to isomorphism.
[[nodiscard]] std::vector<Multigraph> enumerate_order(const Pot& pot, std::size_t n,
                                                      const EnumerationOptions& options = {});

/// Lexicographically first way to place the pot's tiles on `g`.
[[nodiscard]] std::optional<Labeling> realizes(const Pot& pot, const Multigraph& g);

/// Every placement of the pot's tiles on `g` (parallel edges are treated as
/// interchangeable). Stops early when `visit` returns false.
void for_each_realization(const Pot& pot, const Multigraph& g,
                          const std::function<bool(const Labeling&)>& visit);

/// Tiles read off the labelled edges at each vertex.
[[nodiscard]] std::vector<Tile> vertex_tiles(std::size_t order, const std::vector<LabeledEdge>& edges);

/// Multigraph underlying a set of labelled edges.
[[nodiscard]] Multigraph underlying_graph(std::size_t order, const std::vector<LabeledEdge>& edges);

enum class Verdict { pass, fail, indeterminate };

[[nodiscard]] std::string to_string(Verdict v);

struct ScenarioReport {
    int scenario = 1;
    Verdict verdict = Verdict::fail;
    std::optional<Labeling> witness;
    std::optional<Multigraph> counterexample;
    std::optional<UsageVector> counterexample_usage;
    std::string explanation;
    std::uint64_t nodes = 0;
};

struct VerifyOptions {
    std::uint64_t node_budget = default_node_budget;
};

/// Scenario 1: the pot realizes `target`. Scenario 2: additionally nothing
/// of smaller order is realizable. Scenario 3: additionally every complex
/// at the target's order is isomorphic to it.
[[nodiscard]] ScenarioReport verify_scenario(const Pot& pot, const Multigraph& target, int scenario,
                                             const VerifyOptions& options = {});

/// Graph text with the labelling as comments: one "tail head  # aK" line
/// per edge and a "# vertex v: name" line per vertex.
[[nodiscard]] std::string render_labeling(const Pot& pot, const Labeling& labeling);

}  // namespace flextile
