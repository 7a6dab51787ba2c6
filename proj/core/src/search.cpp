#include "flextile/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace flextile {

std::optional<WheelFrame> wheel_frame(const Multigraph& g) {
    const std::size_t n = g.order();
    if (n < 5 || g.has_loops() || !isomorphic(g, wheel(static_cast<int>(n)))) {
        return std::nullopt;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (g.degree(v) == n - 1) {
            return WheelFrame{v, n};
        }
    }
    return std::nullopt;
}

namespace {

bool is_spoke(const WheelFrame& frame, const LabeledEdge& e) {
    return e.tail == frame.hub || e.head == frame.hub;
}

Vertex rim_end(const WheelFrame& frame, const LabeledEdge& e) {
    return e.tail == frame.hub ? e.head : e.tail;
}

}  // namespace

bool no_shared_cycle_and_nonincident_spoke(const WheelFrame& frame, const std::vector<LabeledEdge>& edges) {
    for (const LabeledEdge& rim : edges) {
        if (is_spoke(frame, rim)) {
            continue;
        }
        for (const LabeledEdge& spoke : edges) {
            if (!is_spoke(frame, spoke) || spoke.bond != rim.bond) {
                continue;
            }
            const Vertex w = rim_end(frame, spoke);
            if (w != rim.tail && w != rim.head) {
                return false;
            }
        }
    }
    return true;
}

bool outer_letters_at_most_twice(const WheelFrame& frame, const std::vector<LabeledEdge>& edges) {
    std::map<BondIndex, int> uses;
    for (const LabeledEdge& e : edges) {
        if (!is_spoke(frame, e) && ++uses[e.bond] > 2) {
            return false;
        }
    }
    return true;
}

bool adjacent_tiles_distinct(const Multigraph& g, const Labeling& labeling) {
    for (const Edge& e : g.edges()) {
        if (!e.is_loop() && labeling.tile_of_vertex.at(e.u) == labeling.tile_of_vertex.at(e.v)) {
            return false;
        }
    }
    return true;
}

namespace {

// Edges ordered so vertices are completed one after another: always extend
// the touched vertex with the fewest unlabelled edges left.
std::vector<Edge> completion_order(const Multigraph& g) {
    std::vector<Edge> pending = g.edges();
    std::vector<int> left(g.order(), 0);
    for (const Edge& e : pending) {
        ++left[e.u];
        if (!e.is_loop()) {
            ++left[e.v];
        }
    }
    std::vector<bool> touched(g.order(), false);
    std::vector<Edge> out;
    while (!pending.empty()) {
        Vertex pick = 0;
        bool found = false;
        for (bool want_touched : {true, false}) {
            for (Vertex v = 0; v < g.order(); ++v) {
                if (left[v] > 0 && touched[v] == want_touched && (!found || left[v] < left[pick])) {
                    pick = v;
                    found = true;
                }
            }
            if (found) {
                break;
            }
        }
        std::size_t chosen = pending.size();
        for (std::size_t k = 0; k < pending.size(); ++k) {
            const Edge& e = pending[k];
            if (e.u != pick && e.v != pick) {
                continue;
            }
            const Vertex other = e.u == pick ? e.v : e.u;
            if (chosen == pending.size()) {
                chosen = k;
                continue;
            }
            const Edge& c = pending[chosen];
            const Vertex c_other = c.u == pick ? c.v : c.u;
            if (std::tie(left[other], other) < std::tie(left[c_other], c_other)) {
                chosen = k;
            }
        }
        const Edge e = pending[chosen];
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(chosen));
        out.push_back(e);
        touched[e.u] = touched[e.v] = true;
        --left[e.u];
        if (!e.is_loop()) {
            --left[e.v];
        }
    }
    return out;
}

struct BestEntry {
    bool set = false;
    std::pair<std::size_t, std::size_t> key;  // ordered per minimisation
    std::size_t branch = 0;
    std::optional<Minimum> value;
};

bool improves(const BestEntry& best, std::pair<std::size_t, std::size_t> key, std::size_t branch) {
    return !best.set || key < best.key || (key == best.key && branch < best.branch);
}

struct SharedState {
    std::mutex mutex;
    BestEntry bonds_first;
    BestEntry tiles_first;
    std::vector<std::tuple<std::size_t, std::size_t, Minimum>> passing;  // (branch, seq, labelling)
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> verifications{0};
    std::atomic<std::uint64_t> indeterminate{0};
    std::atomic<bool> out_of_budget{false};
};

struct Choice {
    BondIndex letter;
    bool reversed;  // tail is edge.v instead of edge.u
};

class LabelingSearch {
public:
    LabelingSearch(const SearchSpec& spec, const std::vector<Edge>& order, std::optional<WheelFrame> frame,
                   PruneFlags active, SharedState& shared)
        : spec_(spec),
          g_(spec.target),
          order_(order),
          frame_(frame),
          active_(active),
          shared_(shared) {
        const std::size_t n = g_.order();
        max_bonds_ = spec.max_bonds == 0 ? order_.size() : std::min(spec.max_bonds, order_.size());
        max_tiles_ = spec.max_tiles == 0 ? n : spec.max_tiles;
        left_.assign(n, 0);
        for (const Edge& e : order_) {
            ++left_[e.u];
            if (!e.is_loop()) {
                ++left_[e.v];
            }
        }
        ends_.assign(n, {});
        done_tile_.assign(n, std::nullopt);
        degree_.resize(n);
        for (Vertex v = 0; v < n; ++v) {
            degree_[v] = g_.degree(v);
        }
        outer_uses_.assign(order_.size() + 2, 0);
        outer_edges_.assign(order_.size() + 2, {});
        spokes_.assign(order_.size() + 2, {});
    }

    /// Prefixes of length `depth` in DFS order.
    std::vector<std::vector<Choice>> prefixes(std::size_t depth) {
        std::vector<std::vector<Choice>> out;
        std::vector<Choice> current;
        collect_prefixes(0, depth, current, out);
        return out;
    }

    void run(const std::vector<Choice>& prefix, std::size_t branch) {
        branch_ = branch;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            if (!apply(i, prefix[i])) {
                throw std::logic_error("search prefix is not replayable");
            }
        }
        descend(prefix.size());
        for (std::size_t i = prefix.size(); i-- > 0;) {
            undo(i);
        }
    }

private:
    void collect_prefixes(std::size_t i, std::size_t depth, std::vector<Choice>& current,
                          std::vector<std::vector<Choice>>& out) {
        if (i == depth || i == order_.size()) {
            out.push_back(current);
            return;
        }
        for (const Choice& c : choices(i)) {
            if (apply(i, c)) {
                current.push_back(c);
                collect_prefixes(i + 1, depth, current, out);
                current.pop_back();
                undo(i);
            }
        }
    }

    std::vector<Choice> choices(std::size_t) const {
        std::vector<Choice> out;
        const std::size_t top = std::min(letters_ + 1, max_bonds_);
        for (BondIndex b = 1; b <= top; ++b) {
            out.push_back({b, false});
            // A fresh letter's polarity is arbitrary; fix it on first use.
            if (b <= letters_) {
                out.push_back({b, true});
            }
        }
        return out;
    }

    std::size_t tile_lower_bound() const {
        std::set<std::size_t> arms;
        for (const auto& [tile, count] : done_) {
            arms.insert(tile.arms());
        }
        std::set<std::size_t> fresh;
        for (Vertex v = 0; v < g_.order(); ++v) {
            if (!done_tile_[v] && !arms.contains(degree_[v])) {
                fresh.insert(degree_[v]);
            }
        }
        return done_.size() + fresh.size();
    }

    // Applies one labelling step; returns false (with state restored) when
    // an active restriction rejects it.
    bool apply(std::size_t i, const Choice& c) {
        const Edge& e = order_[i];
        const Vertex tail = c.reversed ? e.v : e.u;
        const Vertex head = c.reversed ? e.u : e.v;
        const LabeledEdge le{c.letter, tail, head};

        bool ok = true;
        if (frame_ && (active_.outer_cycle_at_most_twice || active_.no_cycle_and_nonincident_spoke)) {
            const bool spoke = is_spoke(*frame_, le);
            if (!spoke && active_.outer_cycle_at_most_twice && outer_uses_[c.letter] >= 2) {
                ok = false;
            }
            if (ok && active_.no_cycle_and_nonincident_spoke) {
                if (spoke) {
                    const Vertex w = rim_end(*frame_, le);
                    for (const Edge& rim : outer_edges_[c.letter]) {
                        if (rim.u != w && rim.v != w) {
                            ok = false;
                            break;
                        }
                    }
                } else {
                    for (Vertex w : spokes_[c.letter]) {
                        if (w != e.u && w != e.v) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
        }
        if (!ok) {
            return false;
        }

        new_letter_.push_back(c.letter > letters_);
        letters_ = std::max<std::size_t>(letters_, c.letter);
        labeled_.push_back(le);
        if (frame_) {
            if (is_spoke(*frame_, le)) {
                spokes_[c.letter].push_back(rim_end(*frame_, le));
            } else {
                ++outer_uses_[c.letter];
                outer_edges_[c.letter].push_back(e);
            }
        }
        ends_[tail].push_back({c.letter, false});
        ends_[head].push_back({c.letter, true});
        completed_.push_back({});
        if (--left_[e.u] == 0) {
            complete(e.u);
        }
        if (!e.is_loop() && --left_[e.v] == 0) {
            complete(e.v);
        }
        if (active_.distinct_adjacent_tiles) {
            for (Vertex v : completed_.back()) {
                for (Vertex w = 0; w < g_.order(); ++w) {
                    if (w != v && g_.multiplicity(v, w) > 0 && done_tile_[w] && *done_tile_[w] == *done_tile_[v]) {
                        undo(i);
                        return false;
                    }
                }
            }
        }
        return true;
    }

    void complete(Vertex v) {
        Tile t(ends_[v]);
        ++done_[t];
        done_tile_[v] = std::move(t);
        completed_.back().push_back(v);
    }

    void undo(std::size_t i) {
        const Edge& e = order_[i];
        const LabeledEdge le = labeled_.back();
        for (Vertex v : completed_.back()) {
            auto it = done_.find(*done_tile_[v]);
            if (--it->second == 0) {
                done_.erase(it);
            }
            done_tile_[v].reset();
        }
        completed_.pop_back();
        ++left_[e.u];
        if (!e.is_loop()) {
            ++left_[e.v];
        }
        ends_[le.head].pop_back();
        ends_[le.tail].pop_back();
        if (frame_) {
            if (is_spoke(*frame_, le)) {
                spokes_[le.bond].pop_back();
            } else {
                --outer_uses_[le.bond];
                outer_edges_[le.bond].pop_back();
            }
        }
        labeled_.pop_back();
        if (new_letter_.back()) {
            --letters_;
        }
        new_letter_.pop_back();
    }

    bool worth_exploring(std::size_t bonds, std::size_t tiles) {
        if (tiles > max_tiles_) {
            return false;
        }
        if (spec_.collect_passing) {
            return true;
        }
        return improves(local_bonds_first_, {bonds, tiles}, branch_) ||
               improves(local_tiles_first_, {tiles, bonds}, branch_);
    }

    void refresh_bounds() {
        std::lock_guard lock(shared_.mutex);
        local_bonds_first_.set = shared_.bonds_first.set;
        local_bonds_first_.key = shared_.bonds_first.key;
        local_bonds_first_.branch = shared_.bonds_first.branch;
        local_tiles_first_.set = shared_.tiles_first.set;
        local_tiles_first_.key = shared_.tiles_first.key;
        local_tiles_first_.branch = shared_.tiles_first.branch;
    }

    void descend(std::size_t i) {
        if (shared_.out_of_budget.load(std::memory_order_relaxed)) {
            return;
        }
        if (shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > spec_.node_budget) {
            shared_.out_of_budget.store(true);
            return;
        }
        if ((++local_nodes_ & 0xfff) == 0) {
            refresh_bounds();
        }
        if (!worth_exploring(letters_, tile_lower_bound())) {
            return;
        }
        if (i == order_.size()) {
            leaf();
            return;
        }
        for (const Choice& c : choices(i)) {
            if (apply(i, c)) {
                descend(i + 1);
                undo(i);
            }
        }
    }

    void leaf() {
        refresh_bounds();
        const std::size_t bonds = letters_;
        const std::size_t tiles = done_.size();
        if (!worth_exploring(bonds, tiles)) {
            return;
        }

        // Tile types in order of first vertex, letters renumbered to match.
        std::vector<Tile> types;
        Labeling labeling;
        for (Vertex v = 0; v < g_.order(); ++v) {
            const Tile& t = *done_tile_[v];
            auto it = std::find(types.begin(), types.end(), t);
            labeling.tile_of_vertex.push_back(static_cast<std::size_t>(it - types.begin()));
            if (it == types.end()) {
                types.push_back(t);
            }
        }
        std::map<BondIndex, BondIndex> rename;
        for (const Tile& t : types) {
            for (const CohesiveEnd& end : t.ends()) {
                rename.try_emplace(end.bond, static_cast<BondIndex>(rename.size() + 1));
            }
        }
        for (LabeledEdge e : labeled_) {
            e.bond = rename.at(e.bond);
            labeling.edges.push_back(e);
        }
        Pot pot = normalized(types);

        std::vector<Tile> key = types;
        std::sort(key.begin(), key.end());
        Verdict verdict;
        if (auto hit = cache_.find(key); hit != cache_.end()) {
            verdict = hit->second;
        } else {
            ++shared_.verifications;
            verdict = verify_scenario(pot, g_, spec_.scenario, VerifyOptions{spec_.verify_budget}).verdict;
            if (verdict == Verdict::indeterminate) {
                ++shared_.indeterminate;
            }
            cache_.emplace(std::move(key), verdict);
        }
        if (verdict != Verdict::pass) {
            return;
        }

        Minimum found{bonds, tiles, pot, labeling};
        std::lock_guard lock(shared_.mutex);
        if (spec_.collect_passing) {
            shared_.passing.emplace_back(branch_, seq_++, found);
        }
        if (improves(shared_.bonds_first, {bonds, tiles}, branch_)) {
            shared_.bonds_first = {true, {bonds, tiles}, branch_, found};
        }
        if (improves(shared_.tiles_first, {tiles, bonds}, branch_)) {
            shared_.tiles_first = {true, {tiles, bonds}, branch_, found};
        }
        local_bonds_first_.set = shared_.bonds_first.set;
        local_bonds_first_.key = shared_.bonds_first.key;
        local_bonds_first_.branch = shared_.bonds_first.branch;
        local_tiles_first_.set = shared_.tiles_first.set;
        local_tiles_first_.key = shared_.tiles_first.key;
        local_tiles_first_.branch = shared_.tiles_first.branch;
    }

    const SearchSpec& spec_;
    const Multigraph& g_;
    const std::vector<Edge>& order_;
    std::optional<WheelFrame> frame_;
    PruneFlags active_;
    SharedState& shared_;

    std::size_t max_bonds_ = 0;
    std::size_t max_tiles_ = 0;
    std::size_t branch_ = 0;
    std::size_t seq_ = 0;
    std::uint64_t local_nodes_ = 0;
    BestEntry local_bonds_first_;
    BestEntry local_tiles_first_;

    std::size_t letters_ = 0;
    std::vector<bool> new_letter_;
    std::vector<LabeledEdge> labeled_;
    std::vector<int> left_;
    std::vector<std::vector<CohesiveEnd>> ends_;
    std::vector<std::optional<Tile>> done_tile_;
    std::map<Tile, int> done_;
    std::vector<std::vector<Vertex>> completed_;
    std::vector<std::size_t> degree_;
    std::vector<int> outer_uses_;
    std::vector<std::vector<Edge>> outer_edges_;
    std::vector<std::vector<Vertex>> spokes_;
    std::map<std::vector<Tile>, Verdict> cache_;
};

}  // namespace

MinimaResult search_minima(const SearchSpec& spec) {
    if (spec.scenario < 1 || spec.scenario > 3) {
        throw std::invalid_argument("scenario must be 1, 2 or 3");
    }
    if (spec.target.size() == 0) {
        throw std::invalid_argument("target graph has no edges");
    }
    for (Vertex v = 0; v < spec.target.order(); ++v) {
        if (spec.target.degree(v) == 0) {
            throw std::invalid_argument("target graph has an isolated vertex");
        }
    }

    PruneFlags active = PruneFlags::none();
    std::optional<WheelFrame> frame;
    if (spec.scenario == 3) {
        active.distinct_adjacent_tiles = spec.prune.distinct_adjacent_tiles && !spec.target.has_loops();
        if (spec.prune.outer_cycle_at_most_twice || spec.prune.no_cycle_and_nonincident_spoke) {
            frame = wheel_frame(spec.target);
        }
        if (frame) {
            active.outer_cycle_at_most_twice = spec.prune.outer_cycle_at_most_twice;
            active.no_cycle_and_nonincident_spoke = spec.prune.no_cycle_and_nonincident_spoke;
        }
    }

    const std::vector<Edge> order = completion_order(spec.target);
    SharedState shared;

    const unsigned threads = std::max(1u, spec.threads);
    std::vector<std::vector<Choice>> prefixes{{}};
    if (threads > 1) {
        LabelingSearch probe(spec, order, frame, active, shared);
        for (std::size_t depth = 1; depth <= order.size(); ++depth) {
            prefixes = probe.prefixes(depth);
            if (prefixes.size() >= 8 * threads) {
                break;
            }
        }
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        LabelingSearch search(spec, order, frame, active, shared);
        while (true) {
            const std::size_t b = next.fetch_add(1);
            if (b >= prefixes.size()) {
                return;
            }
            try {
                search.run(prefixes[b], b);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                shared.out_of_budget.store(true);
                return;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    MinimaResult result;
    if (shared.bonds_first.set) {
        result.bonds_first = shared.bonds_first.value;
    }
    if (shared.tiles_first.set) {
        result.tiles_first = shared.tiles_first.value;
    }
    result.nodes = shared.nodes.load();
    result.verifications = shared.verifications.load();
    result.indeterminate = shared.indeterminate.load();
    result.exhaustive = !shared.out_of_budget.load() && result.indeterminate == 0;
    result.lemma_conditional = active.any();
    std::sort(shared.passing.begin(), shared.passing.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (auto& entry : shared.passing) {
        result.passing.push_back(std::move(std::get<2>(entry)));
    }
    return result;
}

bool check_bounds(const Multigraph& g, const MinimaResult& result) {
    if (!result.tiles_first) {
        return false;
    }
    const DegreeStats s = degree_stats(g);
    const std::size_t t = result.tiles_first->tiles;
    return s.av <= t && t <= s.ev + 2 * s.ov;
}

bool check_hierarchy([[maybe_unused]] const Multigraph& g, const MinimaResult& r1, const MinimaResult& r2,
                     const MinimaResult& r3) {
    if (!r1.bonds_first || !r2.bonds_first || !r3.bonds_first || !r1.tiles_first || !r2.tiles_first ||
        !r3.tiles_first) {
        return false;
    }
    const bool bonds = r1.bonds_first->bonds <= r2.bonds_first->bonds && r2.bonds_first->bonds <= r3.bonds_first->bonds;
    const bool tiles = r1.tiles_first->tiles <= r2.tiles_first->tiles && r2.tiles_first->tiles <= r3.tiles_first->tiles;
    return bonds && tiles;
}

}  // namespace flextile
