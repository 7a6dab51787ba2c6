#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flextile {

using Vertex = std::uint32_t;

/// Unordered vertex pair; stored with u <= v. A pair with u == v is a loop.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    [[nodiscard]] bool is_loop() const { return u == v; }

    auto operator<=>(const Edge&) const = default;
};

struct DegreeStats {
    std::size_t av = 0;  ///< distinct degrees
    std::size_t ev = 0;  ///< distinct even degrees
    std::size_t ov = 0;  ///< distinct odd degrees

    bool operator==(const DegreeStats&) const = default;
};

/// Undirected multigraph with loops on vertices 0..order-1.
///
/// Values are immutable once built. The edge list is kept sorted so two
/// graphs with the same edge multiset compare equal regardless of the
/// order edges were supplied in.
class Multigraph {
public:
    explicit Multigraph(std::size_t order);
    Multigraph(std::size_t order, std::vector<Edge> edges);

    [[nodiscard]] std::size_t order() const { return order_; }
    [[nodiscard]] std::size_t size() const { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

    /// Loops contribute 2.
    [[nodiscard]] std::size_t degree(Vertex v) const;
    [[nodiscard]] std::size_t multiplicity(Vertex u, Vertex v) const;
    [[nodiscard]] std::vector<std::size_t> degrees() const;
    [[nodiscard]] std::vector<std::size_t> sorted_degrees() const;
    [[nodiscard]] bool has_loops() const;
    [[nodiscard]] bool is_connected() const;

    /// Image of the graph under `perm`, where vertex v maps to perm[v].
    [[nodiscard]] Multigraph relabeled(const std::vector<Vertex>& perm) const;

    bool operator==(const Multigraph& other) const = default;

private:
    std::size_t order_;
    std::vector<Edge> edges_;
    std::vector<std::uint8_t> adjacency_;  // order_ x order_ multiplicities
};

// Generators. Vertices of the outer cycle come first; the hub of a wheel
// is vertex n-1.
[[nodiscard]] Multigraph wheel(int n);
[[nodiscard]] Multigraph cycle(int n);
[[nodiscard]] Multigraph complete(int n);

[[nodiscard]] DegreeStats degree_stats(const Multigraph& g);

/// Canonical labeling: `code` is identical for two graphs iff they are
/// isomorphic. `labeling[p]` is the original vertex placed at position p.
struct CanonicalForm {
    std::size_t order = 0;
    std::vector<std::uint8_t> code;
    std::vector<Vertex> labeling;
};

[[nodiscard]] CanonicalForm canonical_form(const Multigraph& g);

/// Returns a permutation mapping vertices of `g` onto vertices of `h`
/// (g-vertex v goes to result[v]) when the graphs are isomorphic.
[[nodiscard]] std::optional<std::vector<Vertex>> find_isomorphism(const Multigraph& g,
                                                                  const Multigraph& h);
[[nodiscard]] bool isomorphic(const Multigraph& g, const Multigraph& h);

/// True iff a simple cycle through every vertex exists. Loops and parallel
/// edges are ignored, so graphs of order < 3 are never Hamiltonian.
[[nodiscard]] bool is_hamiltonian(const Multigraph& g);

// Graph text format: "n=<order>" followed by one "u v" line per edge.
[[nodiscard]] Multigraph parse_graph(std::string_view text);
[[nodiscard]] std::string render_graph(const Multigraph& g);

}  // namespace flextile
