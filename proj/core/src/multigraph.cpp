#include "flextile/multigraph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "flextile/errors.hpp"

namespace flextile {

Multigraph::Multigraph(std::size_t order) : Multigraph(order, {}) {}

Multigraph::Multigraph(std::size_t order, std::vector<Edge> edges)
    : order_(order), edges_(std::move(edges)), adjacency_(order * order, 0) {
    if (order_ == 0) {
        throw std::invalid_argument("multigraph order must be positive");
    }
    for (const Edge& e : edges_) {
        if (e.v >= order_) {
            throw std::out_of_range("edge endpoint " + std::to_string(e.v) + " out of range for order " +
                                    std::to_string(order_));
        }
        auto& forward = adjacency_[e.u * order_ + e.v];
        if (forward == 255) {
            throw std::overflow_error("edge multiplicity exceeds 255");
        }
        ++forward;
        if (!e.is_loop()) {
            ++adjacency_[e.v * order_ + e.u];
        }
    }
    std::sort(edges_.begin(), edges_.end());
}

std::size_t Multigraph::degree(Vertex v) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < order_; ++w) {
        d += adjacency_[v * order_ + w] * (w == v ? 2u : 1u);
    }
    return d;
}

std::size_t Multigraph::multiplicity(Vertex u, Vertex v) const {
    return adjacency_[u * order_ + v];
}

std::vector<std::size_t> Multigraph::degrees() const {
    std::vector<std::size_t> out(order_);
    for (Vertex v = 0; v < order_; ++v) {
        out[v] = degree(v);
    }
    return out;
}

std::vector<std::size_t> Multigraph::sorted_degrees() const {
    auto out = degrees();
    std::sort(out.begin(), out.end());
    return out;
}

bool Multigraph::has_loops() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

bool Multigraph::is_connected() const {
    std::vector<bool> seen(order_, false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w = 0; w < order_; ++w) {
            if (!seen[w] && multiplicity(v, w) > 0) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == order_;
}

Multigraph Multigraph::relabeled(const std::vector<Vertex>& perm) const {
    if (perm.size() != order_) {
        throw std::invalid_argument("permutation size does not match graph order");
    }
    std::vector<Edge> mapped;
    mapped.reserve(edges_.size());
    for (const Edge& e : edges_) {
        mapped.emplace_back(perm[e.u], perm[e.v]);
    }
    return Multigraph(order_, std::move(mapped));
}

Multigraph wheel(int n) {
    if (n < 4) {
        throw std::domain_error("wheel graph needs n >= 4, got " + std::to_string(n));
    }
    const auto rim = static_cast<Vertex>(n - 1);
    std::vector<Edge> edges;
    for (Vertex i = 0; i < rim; ++i) {
        edges.emplace_back(i, (i + 1) % rim);
        edges.emplace_back(i, rim);
    }
    return Multigraph(static_cast<std::size_t>(n), std::move(edges));
}

Multigraph cycle(int n) {
    if (n < 3) {
        throw std::domain_error("cycle graph needs n >= 3, got " + std::to_string(n));
    }
    std::vector<Edge> edges;
    for (Vertex i = 0; i < static_cast<Vertex>(n); ++i) {
        edges.emplace_back(i, (i + 1) % static_cast<Vertex>(n));
    }
    return Multigraph(static_cast<std::size_t>(n), std::move(edges));
}

Multigraph complete(int n) {
    if (n < 1) {
        throw std::domain_error("complete graph needs n >= 1");
    }
    std::vector<Edge> edges;
    for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
        for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) {
            edges.emplace_back(u, v);
        }
    }
    return Multigraph(static_cast<std::size_t>(n), std::move(edges));
}

DegreeStats degree_stats(const Multigraph& g) {
    std::set<std::size_t> distinct;
    for (std::size_t d : g.degrees()) {
        distinct.insert(d);
    }
    DegreeStats s;
    s.av = distinct.size();
    s.ev = static_cast<std::size_t>(std::count_if(distinct.begin(), distinct.end(), [](std::size_t d) { return d % 2 == 0; }));
    s.ov = s.av - s.ev;
    return s;
}

namespace {

// Iterated colour refinement. Colours are ranks of sorted signatures, so they
// depend only on the isomorphism class of the vertex, not on its index.
std::vector<std::size_t> refine_colours(const Multigraph& g) {
    const std::size_t n = g.order();
    using Signature = std::vector<std::size_t>;
    std::vector<std::size_t> colour(n, 0);
    std::size_t classes = 0;
    for (Vertex v = 0; v < n; ++v) {
        colour[v] = g.degree(v) * 256 + g.multiplicity(v, v);
    }
    {
        std::vector<std::size_t> keys(colour);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (auto& c : colour) {
            c = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), c) - keys.begin());
        }
        classes = keys.size();
    }
    while (true) {
        std::vector<Signature> sig(n);
        for (Vertex v = 0; v < n; ++v) {
            Signature s;
            s.push_back(colour[v]);
            Signature nbrs;
            for (Vertex w = 0; w < n; ++w) {
                if (w != v && g.multiplicity(v, w) > 0) {
                    nbrs.push_back(colour[w] * 256 + g.multiplicity(v, w));
                }
            }
            std::sort(nbrs.begin(), nbrs.end());
            s.insert(s.end(), nbrs.begin(), nbrs.end());
            sig[v] = std::move(s);
        }
        std::vector<Signature> keys(sig);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (Vertex v = 0; v < n; ++v) {
            colour[v] = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), sig[v]) - keys.begin());
        }
        if (keys.size() == classes) {
            return colour;
        }
        classes = keys.size();
    }
}

// Backtracking search for the lexicographically largest adjacency code
// among vertex orders that respect the refined colour classes.
class CanonicalSearch {
public:
    explicit CanonicalSearch(const Multigraph& g) : g_(g), n_(g.order()) {
        colour_ = refine_colours(g);
        cell_of_position_.resize(n_);
        std::vector<std::size_t> sorted(colour_);
        std::sort(sorted.begin(), sorted.end());
        cell_of_position_ = sorted;
        used_.assign(n_, false);
        order_.resize(n_);
    }

    CanonicalForm run() {
        std::vector<std::uint8_t> code;
        code.reserve(n_ * (n_ + 1) / 2);
        extend(0, code);
        CanonicalForm out;
        out.order = n_;
        out.code = std::move(best_code_);
        out.labeling = std::move(best_order_);
        return out;
    }

private:
    // Two unused vertices with identical rows towards every other vertex are
    // swapped by an automorphism, so only one of them needs to be tried.
    bool twin_of_tried(Vertex v, const std::vector<Vertex>& tried) const {
        for (Vertex t : tried) {
            if (colour_[t] != colour_[v] || g_.multiplicity(t, t) != g_.multiplicity(v, v)) {
                continue;
            }
            bool same = true;
            for (Vertex w = 0; w < n_ && same; ++w) {
                if (w != t && w != v && g_.multiplicity(t, w) != g_.multiplicity(v, w)) {
                    same = false;
                }
            }
            if (same) {
                return true;
            }
        }
        return false;
    }

    void extend(std::size_t pos, std::vector<std::uint8_t>& code) {
        if (pos == n_) {
            if (best_code_.empty() || code > best_code_) {
                best_code_ = code;
                best_order_ = order_;
            }
            return;
        }
        const std::size_t row_begin = pos * (pos + 1) / 2;
        std::vector<Vertex> tried;
        for (Vertex v = 0; v < n_; ++v) {
            if (used_[v] || colour_[v] != cell_of_position_[pos] || twin_of_tried(v, tried)) {
                continue;
            }
            tried.push_back(v);
            code.resize(row_begin);
            for (std::size_t q = 0; q < pos; ++q) {
                code.push_back(static_cast<std::uint8_t>(g_.multiplicity(v, order_[q])));
            }
            code.push_back(static_cast<std::uint8_t>(g_.multiplicity(v, v)));
            // Prune prefixes that are already smaller than the best full code.
            if (!best_code_.empty() &&
                std::lexicographical_compare(code.begin(), code.end(), best_code_.begin(),
                                             best_code_.begin() + static_cast<std::ptrdiff_t>(code.size()))) {
                continue;
            }
            used_[v] = true;
            order_[pos] = v;
            extend(pos + 1, code);
            used_[v] = false;
        }
        code.resize(row_begin);
    }

    const Multigraph& g_;
    std::size_t n_;
    std::vector<std::size_t> colour_;
    std::vector<std::size_t> cell_of_position_;
    std::vector<bool> used_;
    std::vector<Vertex> order_;
    std::vector<std::uint8_t> best_code_;
    std::vector<Vertex> best_order_;
};

}  // namespace

CanonicalForm canonical_form(const Multigraph& g) {
    CanonicalForm form = CanonicalSearch(g).run();
    // Prefix the colour-independent header so graphs of different order or
    // size never share a code.
    std::vector<std::uint8_t> header{static_cast<std::uint8_t>(g.order()),
                                     static_cast<std::uint8_t>(g.size() & 0xff),
                                     static_cast<std::uint8_t>(g.size() >> 8)};
    form.code.insert(form.code.begin(), header.begin(), header.end());
    return form;
}

std::optional<std::vector<Vertex>> find_isomorphism(const Multigraph& g, const Multigraph& h) {
    if (g.order() != h.order() || g.size() != h.size() || g.sorted_degrees() != h.sorted_degrees()) {
        return std::nullopt;
    }
    const CanonicalForm cg = canonical_form(g);
    const CanonicalForm ch = canonical_form(h);
    if (cg.code != ch.code) {
        return std::nullopt;
    }
    std::vector<Vertex> perm(g.order());
    for (std::size_t p = 0; p < g.order(); ++p) {
        perm[cg.labeling[p]] = ch.labeling[p];
    }
    return perm;
}

bool isomorphic(const Multigraph& g, const Multigraph& h) {
    return find_isomorphism(g, h).has_value();
}

namespace {

bool extend_path(const Multigraph& g, std::vector<bool>& on_path, Vertex current, std::size_t length) {
    const std::size_t n = g.order();
    if (length == n) {
        return g.multiplicity(current, 0) > 0;
    }
    for (Vertex w = 1; w < n; ++w) {
        if (!on_path[w] && g.multiplicity(current, w) > 0) {
            on_path[w] = true;
            if (extend_path(g, on_path, w, length + 1)) {
                return true;
            }
            on_path[w] = false;
        }
    }
    return false;
}

}  // namespace

bool is_hamiltonian(const Multigraph& g) {
    const std::size_t n = g.order();
    if (n < 3) {
        return false;
    }
    for (Vertex v = 0; v < n; ++v) {
        std::size_t simple_degree = 0;
        for (Vertex w = 0; w < n; ++w) {
            if (w != v && g.multiplicity(v, w) > 0) {
                ++simple_degree;
            }
        }
        if (simple_degree < 2) {
            return false;
        }
    }
    std::vector<bool> on_path(n, false);
    on_path[0] = true;
    return extend_path(g, on_path, 0, 1);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::size_t parse_index(std::string_view token, std::size_t line, std::size_t column) {
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end || token.empty()) {
        throw ParseError(line, column, "expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Multigraph parse_graph(std::string_view text) {
    std::optional<std::size_t> order;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto stop = text.find('\n', start);
        if (stop == std::string_view::npos) {
            stop = text.size();
        }
        std::string_view raw = text.substr(start, stop - start);
        ++line_no;
        start = stop + 1;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const std::size_t column = static_cast<std::size_t>(line.data() - raw.data()) + 1;
        if (!order) {
            if (line.substr(0, 2) != "n=") {
                throw ParseError(line_no, column, "expected 'n=<order>' header");
            }
            order = parse_index(trim(line.substr(2)), line_no, column + 2);
            if (*order == 0) {
                throw ParseError(line_no, column, "order must be positive");
            }
            continue;
        }
        const auto gap = line.find_first_of(" \t");
        if (gap == std::string_view::npos) {
            throw ParseError(line_no, column, "expected 'u v' edge line");
        }
        const std::string_view first = line.substr(0, gap);
        const std::string_view second = trim(line.substr(gap));
        const std::size_t second_col = column + static_cast<std::size_t>(second.data() - line.data());
        const std::size_t u = parse_index(first, line_no, column);
        const std::size_t v = parse_index(second, line_no, second_col);
        if (u >= *order) {
            throw ParseError(line_no, column, "vertex " + std::to_string(u) + " out of range");
        }
        if (v >= *order) {
            throw ParseError(line_no, second_col, "vertex " + std::to_string(v) + " out of range");
        }
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (!order) {
        throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'n=<order>' header");
    }
    return Multigraph(*order, std::move(edges));
}

std::string render_graph(const Multigraph& g) {
    std::ostringstream out;
    out << "n=" << g.order() << '\n';
    for (const Edge& e : g.edges()) {
        out << e.u << ' ' << e.v << '\n';
    }
    return out.str();
}

}  // namespace flextile
