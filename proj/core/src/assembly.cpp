#include "flextile/assembly.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "flextile/errors.hpp"

namespace flextile {

TileInstancing instantiate(const Pot& pot, const UsageVector& usage) {
    if (usage.size() != pot.tile_count()) {
        throw std::invalid_argument("usage vector has " + std::to_string(usage.size()) + " entries for " +
                                    std::to_string(pot.tile_count()) + " tile types");
    }
    if (!is_balanced(pot, usage)) {
        throw std::invalid_argument("usage vector leaves some bond letter unbalanced");
    }
    TileInstancing out;
    out.usage = usage;
    for (std::size_t j = 0; j < usage.size(); ++j) {
        out.instance_types.insert(out.instance_types.end(), usage[j], j);
    }
    if (out.instance_types.empty()) {
        throw std::invalid_argument("usage vector uses no tiles");
    }
    return out;
}

namespace {

// Depth-first construction of complete matchings. Unhatted ends are taken
// in a fixed order (instance, then letter) and each picks the instance that
// supplies its hatted partner. Heads are non-decreasing within one
// (instance, letter) group, and among untouched instances of one tile type
// only the lowest is tried; both rules only drop matchings isomorphic to
// one that is kept.
class ComplexEnumerator {
public:
    ComplexEnumerator(const Pot& pot, const TileInstancing& inst, std::atomic<std::uint64_t>& nodes,
                      std::uint64_t budget)
        : types_(inst.instance_types), nodes_(nodes), budget_(budget) {
        const std::size_t count = types_.size();
        bonds_ = pot.bond_count();
        hat_left_.assign(count, std::vector<int>(bonds_ + 1, 0));
        incident_.assign(count, 0);
        for (Vertex x = 0; x < count; ++x) {
            const Tile& t = pot.tile(types_[x]);
            for (const CohesiveEnd& e : t.ends()) {
                if (e.hatted) {
                    ++hat_left_[x][e.bond];
                } else {
                    slots_.push_back({x, e.bond});
                }
            }
        }
    }

    std::vector<Vertex> candidates(std::size_t k) const {
        std::vector<Vertex> out;
        const Slot& slot = slots_[k];
        Vertex first = 0;
        if (k > 0 && slots_[k - 1].tail == slot.tail && slots_[k - 1].bond == slot.bond) {
            first = edges_.back().head;
        }
        std::size_t last_fresh_type = static_cast<std::size_t>(-1);
        for (Vertex h = first; h < types_.size(); ++h) {
            if (hat_left_[h][slot.bond] == 0) {
                continue;
            }
            if (incident_[h] == 0 && h != slot.tail) {
                if (types_[h] == last_fresh_type) {
                    continue;
                }
                last_fresh_type = types_[h];
            }
            out.push_back(h);
        }
        return out;
    }

    std::size_t slot_count() const { return slots_.size(); }

    void run(const std::function<bool(const std::vector<LabeledEdge>&)>& visit,
             std::optional<Vertex> forced_first = std::nullopt) {
        visit_ = &visit;
        stopped_ = false;
        if (slots_.empty()) {
            stopped_ = !visit(edges_);
            return;
        }
        if (forced_first) {
            count_node();
            apply(0, *forced_first);
            step(1);
            undo(0, *forced_first);
        } else {
            step(0);
        }
    }

private:
    struct Slot {
        Vertex tail;
        BondIndex bond;
    };

    void count_node() {
        if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
            throw BudgetExceeded("matching enumeration exceeded " + std::to_string(budget_) + " nodes");
        }
    }

    void apply(std::size_t k, Vertex head) {
        const Slot& slot = slots_[k];
        --hat_left_[head][slot.bond];
        ++incident_[slot.tail];
        ++incident_[head];
        edges_.push_back({slot.bond, slot.tail, head});
    }

    void undo(std::size_t k, Vertex head) {
        const Slot& slot = slots_[k];
        edges_.pop_back();
        --incident_[head];
        --incident_[slot.tail];
        ++hat_left_[head][slot.bond];
    }

    void step(std::size_t k) {
        if (stopped_) {
            return;
        }
        count_node();
        if (k == slots_.size()) {
            stopped_ = !(*visit_)(edges_);
            return;
        }
        for (Vertex h : candidates(k)) {
            apply(k, h);
            step(k + 1);
            undo(k, h);
            if (stopped_) {
                return;
            }
        }
    }

    std::vector<std::size_t> types_;
    std::size_t bonds_ = 0;
    std::vector<Slot> slots_;
    std::vector<std::vector<int>> hat_left_;
    std::vector<int> incident_;
    std::vector<LabeledEdge> edges_;
    std::atomic<std::uint64_t>& nodes_;
    std::uint64_t budget_;
    const std::function<bool(const std::vector<LabeledEdge>&)>* visit_ = nullptr;
    bool stopped_ = false;
};

}  // namespace

Multigraph underlying_graph(std::size_t order, const std::vector<LabeledEdge>& edges) {
    std::vector<Edge> plain;
    plain.reserve(edges.size());
    for (const LabeledEdge& e : edges) {
        plain.emplace_back(e.tail, e.head);
    }
    return Multigraph(order, std::move(plain));
}

std::vector<Tile> vertex_tiles(std::size_t order, const std::vector<LabeledEdge>& edges) {
    std::vector<std::vector<CohesiveEnd>> ends(order);
    for (const LabeledEdge& e : edges) {
        ends.at(e.tail).push_back({e.bond, false});
        ends.at(e.head).push_back({e.bond, true});
    }
    std::vector<Tile> out;
    out.reserve(order);
    for (auto& list : ends) {
        out.emplace_back(std::move(list));
    }
    return out;
}

std::uint64_t for_each_complex(const Pot& pot, const UsageVector& usage, std::uint64_t node_budget,
                               const std::function<bool(const std::vector<LabeledEdge>&)>& visit) {
    const TileInstancing inst = instantiate(pot, usage);
    std::atomic<std::uint64_t> nodes{0};
    ComplexEnumerator walker(pot, inst, nodes, node_budget);
    walker.run(visit);
    return nodes.load();
}

RealizationSet enumerate_complexes(const Pot& pot, const UsageVector& usage, const EnumerationOptions& options) {
    const TileInstancing inst = instantiate(pot, usage);
    const std::size_t order = inst.instance_types.size();
    std::atomic<std::uint64_t> nodes{0};

    using ClassMap = std::map<std::vector<std::uint8_t>, Multigraph>;
    auto collector = [order](ClassMap& classes) {
        return [order, &classes](const std::vector<LabeledEdge>& edges) {
            Multigraph g = underlying_graph(order, edges);
            auto code = canonical_form(g).code;
            classes.try_emplace(std::move(code), std::move(g));
            return true;
        };
    };

    ClassMap merged;
    ComplexEnumerator probe(pot, inst, nodes, options.node_budget);
    if (options.threads <= 1 || probe.slot_count() == 0) {
        auto visit = collector(merged);
        probe.run(visit);
    } else {
        const std::vector<Vertex> branches = probe.candidates(0);
        std::vector<ClassMap> per_branch(branches.size());
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]() {
            while (true) {
                const std::size_t b = next.fetch_add(1);
                if (b >= branches.size()) {
                    return;
                }
                try {
                    ComplexEnumerator walker(pot, inst, nodes, options.node_budget);
                    auto visit = collector(per_branch[b]);
                    walker.run(visit, branches[b]);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next.store(branches.size());
                }
            }
        };
        std::vector<std::thread> pool;
        const unsigned count = std::min<unsigned>(options.threads, static_cast<unsigned>(branches.size()));
        for (unsigned t = 0; t < count; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
        // Lowest branch wins, matching the single-threaded representative.
        for (auto& classes : per_branch) {
            for (auto& [code, g] : classes) {
                merged.try_emplace(code, std::move(g));
            }
        }
    }

    RealizationSet out;
    out.order = order;
    out.tile_of_vertex = inst.instance_types;
    out.complete = true;
    out.nodes = nodes.load();
    for (auto& [code, g] : merged) {
        out.graphs.push_back(std::move(g));
    }
    return out;
}

std::vector<Multigraph> enumerate_order(const Pot& pot, std::size_t n, const EnumerationOptions& options) {
    std::map<std::vector<std::uint8_t>, Multigraph> classes;
    for (const UsageVector& r : usage_vectors(pot, n)) {
        RealizationSet set = enumerate_complexes(pot, r, options);
        for (auto& g : set.graphs) {
            auto code = canonical_form(g).code;
            classes.try_emplace(std::move(code), std::move(g));
        }
    }
    std::vector<Multigraph> out;
    for (auto& [code, g] : classes) {
        out.push_back(std::move(g));
    }
    return out;
}

namespace {

// Assigns tile types to vertices lazily and labels edges in sorted order.
// Parallel copies of an edge take non-decreasing (letter, direction) codes.
class PlacementSearch {
public:
    PlacementSearch(const Pot& pot, const Multigraph& g) : pot_(pot), g_(g), slots_(g.edges()) {
        const std::size_t n = g.order();
        tile_.assign(n, -1);
        left_.assign(n, std::vector<int>(2 * (pot.bond_count() + 1), 0));
        candidates_.resize(n);
        for (Vertex v = 0; v < n; ++v) {
            for (std::size_t j = 0; j < pot.tile_count(); ++j) {
                if (pot.tile(j).arms() == g.degree(v)) {
                    candidates_[v].push_back(j);
                }
            }
        }
        codes_.assign(slots_.size(), 0);
    }

    void run(const std::function<bool(const Labeling&)>& visit) {
        for (const auto& c : candidates_) {
            if (c.empty()) {
                return;
            }
        }
        visit_ = &visit;
        step(0);
    }

private:
    static std::size_t key(BondIndex bond, bool hatted) { return 2 * bond + (hatted ? 1 : 0); }

    void assign(Vertex v, std::size_t type) {
        tile_[v] = static_cast<int>(type);
        for (const CohesiveEnd& e : pot_.tile(type).ends()) {
            ++left_[v][key(e.bond, e.hatted)];
        }
    }

    void unassign(Vertex v) {
        std::fill(left_[v].begin(), left_[v].end(), 0);
        tile_[v] = -1;
    }

    bool try_label(std::size_t k, BondIndex bond, Vertex tail, Vertex head, unsigned code) {
        auto& out = left_[tail][key(bond, false)];
        auto& in = left_[head][key(bond, true)];
        if (out == 0 || in == 0) {
            return false;
        }
        --out;
        --in;
        codes_[k] = code;
        labeled_.push_back({bond, tail, head});
        step(k + 1);
        labeled_.pop_back();
        ++in;
        ++out;
        return stopped_;
    }

    void step(std::size_t k) {
        if (stopped_) {
            return;
        }
        if (k == slots_.size()) {
            Labeling l;
            // Isolated vertices never occur: every tile has at least one arm.
            for (int t : tile_) {
                l.tile_of_vertex.push_back(static_cast<std::size_t>(t));
            }
            l.edges = labeled_;
            stopped_ = !(*visit_)(l);
            return;
        }
        const Edge& e = slots_[k];
        for (Vertex v : {e.u, e.v}) {
            if (tile_[v] < 0) {
                for (std::size_t type : candidates_[v]) {
                    assign(v, type);
                    step(k);
                    unassign(v);
                    if (stopped_) {
                        return;
                    }
                }
                return;
            }
        }
        const unsigned floor = (k > 0 && slots_[k - 1] == e) ? codes_[k - 1] : 0;
        for (BondIndex b = 1; b <= pot_.bond_count(); ++b) {
            const unsigned forward = 2 * (b - 1);
            if (forward >= floor && try_label(k, b, e.u, e.v, forward)) {
                return;
            }
            if (!e.is_loop() && forward + 1 >= floor && try_label(k, b, e.v, e.u, forward + 1)) {
                return;
            }
        }
    }

    const Pot& pot_;
    const Multigraph& g_;
    std::vector<Edge> slots_;
    std::vector<int> tile_;
    std::vector<std::vector<int>> left_;
    std::vector<std::vector<std::size_t>> candidates_;
    std::vector<unsigned> codes_;
    std::vector<LabeledEdge> labeled_;
    const std::function<bool(const Labeling&)>* visit_ = nullptr;
    bool stopped_ = false;
};

}  // namespace

void for_each_realization(const Pot& pot, const Multigraph& g, const std::function<bool(const Labeling&)>& visit) {
    PlacementSearch(pot, g).run(visit);
}

std::optional<Labeling> realizes(const Pot& pot, const Multigraph& g) {
    std::optional<Labeling> found;
    for_each_realization(pot, g, [&](const Labeling& l) {
        found = l;
        return false;
    });
    return found;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass:
            return "PASS";
        case Verdict::fail:
            return "FAIL";
        case Verdict::indeterminate:
            return "INDETERMINATE";
    }
    return "?";
}

ScenarioReport verify_scenario(const Pot& pot, const Multigraph& target, int scenario, const VerifyOptions& options) {
    if (scenario < 1 || scenario > 3) {
        throw std::invalid_argument("scenario must be 1, 2 or 3");
    }
    ScenarioReport report;
    report.scenario = scenario;
    report.witness = realizes(pot, target);
    if (!report.witness) {
        report.verdict = Verdict::fail;
        report.explanation = "the pot cannot realize the target";
        return report;
    }
    const std::size_t n = target.order();
    auto budget_left = [&]() { return options.node_budget - std::min(options.node_budget, report.nodes); };
    auto first_complex = [&](const UsageVector& r) {
        std::optional<Multigraph> g;
        const std::size_t order = std::accumulate(r.begin(), r.end(), std::size_t{0});
        report.nodes += for_each_complex(pot, r, budget_left(), [&](const std::vector<LabeledEdge>& edges) {
            g = underlying_graph(order, edges);
            return false;
        });
        return g;
    };

    try {
        if (scenario >= 2) {
            for (std::size_t k = 1; k < n; ++k) {
                UsageVector r;
                if (has_usage_vector(pot, k, &r)) {
                    report.verdict = Verdict::fail;
                    report.counterexample = first_complex(r);
                    report.counterexample_usage = r;
                    report.explanation = "the pot realizes a graph of order " + std::to_string(k) + " < " +
                                         std::to_string(n);
                    return report;
                }
            }
        }
        if (scenario == 3) {
            const auto target_code = canonical_form(target).code;
            for (const UsageVector& r : usage_vectors(pot, n)) {
                std::optional<Multigraph> offending;
                report.nodes += for_each_complex(pot, r, budget_left(),
                                                 [&](const std::vector<LabeledEdge>& edges) {
                                                     Multigraph g = underlying_graph(n, edges);
                                                     if (canonical_form(g).code != target_code) {
                                                         offending = std::move(g);
                                                         return false;
                                                     }
                                                     return true;
                                                 });
                if (offending) {
                    report.verdict = Verdict::fail;
                    report.counterexample = std::move(offending);
                    report.counterexample_usage = r;
                    report.explanation = "the pot realizes a nonisomorphic graph of order " + std::to_string(n);
                    return report;
                }
            }
        }
    } catch (const BudgetExceeded& e) {
        report.verdict = Verdict::indeterminate;
        report.explanation = e.what();
        return report;
    }
    report.verdict = Verdict::pass;
    return report;
}

std::string render_labeling(const Pot& pot, const Labeling& labeling) {
    std::ostringstream out;
    out << "n=" << labeling.tile_of_vertex.size() << '\n';
    for (std::size_t v = 0; v < labeling.tile_of_vertex.size(); ++v) {
        out << "# vertex " << v << ": " << pot.names().at(labeling.tile_of_vertex[v]) << '\n';
    }
    for (const LabeledEdge& e : labeling.edges) {
        out << e.tail << ' ' << e.head << "  # a" << e.bond << '\n';
    }
    return out.str();
}

}  // namespace flextile
