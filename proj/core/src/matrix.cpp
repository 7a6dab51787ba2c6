#include "flextile/matrix.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flextile {

ConstructionMatrix::ConstructionMatrix(std::size_t bonds, std::size_t tiles, std::vector<int> net)
    : bonds_(bonds), tiles_(tiles), net_(std::move(net)) {
    if (net_.size() != bonds_ * tiles_) {
        throw std::invalid_argument("construction matrix data does not match its shape");
    }
}

std::string ConstructionMatrix::render() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < bonds_; ++i) {
        for (std::size_t j = 0; j < tiles_; ++j) {
            out << at(i, j) << ' ';
        }
        out << "| 0\n";
    }
    for (std::size_t j = 0; j < tiles_; ++j) {
        out << "1 ";
    }
    out << "| 1\n";
    return out.str();
}

ConstructionMatrix build_matrix(const Pot& pot) {
    const std::size_t m = pot.bond_count();
    const std::size_t p = pot.tile_count();
    std::vector<int> net(m * p, 0);
    for (std::size_t j = 0; j < p; ++j) {
        for (const CohesiveEnd& e : pot.tile(j).ends()) {
            net[(e.bond - 1) * p + j] += e.hatted ? -1 : 1;
        }
    }
    return ConstructionMatrix(m, p, std::move(net));
}

SpectrumSolution solve(const ConstructionMatrix& m) {
    const std::size_t rows = m.bonds() + 1;
    const std::size_t cols = m.tiles();
    // Augmented rows: cols coefficients + right-hand side.
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
    for (std::size_t i = 0; i < m.bonds(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            a[i][j] = m.at(i, j);
        }
    }
    for (std::size_t j = 0; j <= cols; ++j) {
        a[rows - 1][j] = 1;
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(a[r], a[pivot]);
        const Rational lead = a[r][c];
        for (auto& x : a[r]) {
            x /= lead;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && a[i][c] != 0) {
                const Rational f = a[i][c];
                for (std::size_t k = c; k <= cols; ++k) {
                    a[i][k] -= f * a[r][k];
                }
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }

    SpectrumSolution out;
    for (std::size_t i = r; i < rows; ++i) {
        if (a[i][cols] != 0) {
            return out;
        }
    }
    out.consistent = true;
    out.particular.assign(cols, Rational(0));
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
        out.particular[pivot_cols[k]] = a[k][cols];
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_cols) {
        is_pivot[c] = true;
    }
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
            v[pivot_cols[k]] = -a[k][f];
        }
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

bool satisfies(const ConstructionMatrix& m, const std::vector<Rational>& r) {
    if (r.size() != m.tiles()) {
        return false;
    }
    for (std::size_t i = 0; i < m.bonds(); ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < m.tiles(); ++j) {
            row += m.at(i, j) * r[j];
        }
        if (row != 0) {
            return false;
        }
    }
    Rational total = 0;
    for (const auto& x : r) {
        total += x;
    }
    return total == 1;
}

namespace {

// Depth-first walk over compositions of n into p parts. For each letter the
// net sum still reachable with the remaining budget is bounded by the
// suffix minimum and maximum of its row, which prunes most branches.
class UsageWalker {
public:
    UsageWalker(const Pot& pot, std::size_t n) : m_(build_matrix(pot)), n_(n) {
        const std::size_t rows = m_.bonds();
        const std::size_t p = m_.tiles();
        suffix_min_.assign(rows, std::vector<long long>(p + 1, 0));
        suffix_max_.assign(rows, std::vector<long long>(p + 1, 0));
        for (std::size_t i = 0; i < rows; ++i) {
            long long lo = 0;
            long long hi = 0;
            bool first = true;
            for (std::size_t j = p; j-- > 0;) {
                const long long z = m_.at(i, j);
                lo = first ? z : std::min(lo, z);
                hi = first ? z : std::max(hi, z);
                first = false;
                suffix_min_[i][j] = lo;
                suffix_max_[i][j] = hi;
            }
        }
        partial_.assign(rows, 0);
        current_.assign(p, 0);
    }

    /// Calls `visit` per vector; stops when it returns false.
    void run(const std::function<bool(const UsageVector&)>& visit) {
        visit_ = &visit;
        stopped_ = false;
        step(0, n_);
    }

private:
    bool feasible(std::size_t j, std::size_t budget) const {
        const auto b = static_cast<long long>(budget);
        for (std::size_t i = 0; i < m_.bonds(); ++i) {
            if (budget == 0) {
                if (partial_[i] != 0) {
                    return false;
                }
                continue;
            }
            if (partial_[i] + b * suffix_min_[i][j] > 0 || partial_[i] + b * suffix_max_[i][j] < 0) {
                return false;
            }
        }
        return true;
    }

    void step(std::size_t j, std::size_t budget) {
        if (stopped_) {
            return;
        }
        const std::size_t p = m_.tiles();
        if (j + 1 == p) {
            place(j, budget);
            if (std::all_of(partial_.begin(), partial_.end(), [](long long s) { return s == 0; })) {
                stopped_ = !(*visit_)(current_);
            }
            place(j, 0);
            return;
        }
        for (std::size_t take = 0; take <= budget && !stopped_; ++take) {
            place(j, take);
            if (feasible(j + 1, budget - take)) {
                step(j + 1, budget - take);
            }
        }
        place(j, 0);
    }

    void place(std::size_t j, std::size_t count) {
        const auto delta = static_cast<long long>(count) - static_cast<long long>(current_[j]);
        for (std::size_t i = 0; i < m_.bonds(); ++i) {
            partial_[i] += delta * m_.at(i, j);
        }
        current_[j] = count;
    }

    ConstructionMatrix m_;
    std::size_t n_;
    std::vector<std::vector<long long>> suffix_min_;
    std::vector<std::vector<long long>> suffix_max_;
    std::vector<long long> partial_;
    UsageVector current_;
    const std::function<bool(const UsageVector&)>* visit_ = nullptr;
    bool stopped_ = false;
};

// Sign propagation: a letter whose remaining net counts all share one sign
// forces every tile with a nonzero count of it to be unused. If every tile
// ends up forced to zero, no proportion vector can sum to one.
bool forced_unrealizable(const ConstructionMatrix& m) {
    std::vector<bool> dead(m.tiles(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < m.bonds(); ++i) {
            bool has_pos = false;
            bool has_neg = false;
            for (std::size_t j = 0; j < m.tiles(); ++j) {
                if (!dead[j]) {
                    has_pos = has_pos || m.at(i, j) > 0;
                    has_neg = has_neg || m.at(i, j) < 0;
                }
            }
            if (has_pos != has_neg) {
                for (std::size_t j = 0; j < m.tiles(); ++j) {
                    if (!dead[j] && m.at(i, j) != 0) {
                        dead[j] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    return std::all_of(dead.begin(), dead.end(), [](bool d) { return d; });
}

}  // namespace

std::vector<UsageVector> usage_vectors(const Pot& pot, std::size_t n) {
    std::vector<UsageVector> out;
    if (n == 0) {
        return out;
    }
    UsageWalker walker(pot, n);
    walker.run([&](const UsageVector& r) {
        out.push_back(r);
        return true;
    });
    return out;
}

bool has_usage_vector(const Pot& pot, std::size_t n, UsageVector* witness) {
    if (n == 0) {
        return false;
    }
    bool found = false;
    UsageWalker walker(pot, n);
    walker.run([&](const UsageVector& r) {
        found = true;
        if (witness != nullptr) {
            *witness = r;
        }
        return false;
    });
    return found;
}

bool is_balanced(const Pot& pot, const UsageVector& usage) {
    if (usage.size() != pot.tile_count()) {
        return false;
    }
    for (BondIndex b = 1; b <= pot.bond_count(); ++b) {
        long long unhatted = 0;
        long long hatted = 0;
        for (std::size_t j = 0; j < pot.tile_count(); ++j) {
            const auto r = static_cast<long long>(usage[j]);
            unhatted += r * static_cast<long long>(pot.tile(j).count(b, false));
            hatted += r * static_cast<long long>(pot.tile(j).count(b, true));
        }
        if (unhatted != hatted) {
            return false;
        }
    }
    return true;
}

MinOrderResult min_order(const Pot& pot, std::size_t cap) {
    MinOrderResult result;
    const ConstructionMatrix m = build_matrix(pot);
    const SpectrumSolution spectrum = solve(m);
    const bool negative_point =
        spectrum.unique() && std::any_of(spectrum.particular.begin(), spectrum.particular.end(),
                                         [](const Rational& x) { return x < 0; });
    if (!spectrum.consistent || negative_point || forced_unrealizable(m)) {
        result.status = MinOrderResult::Status::unrealizable;
        return result;
    }
    for (std::size_t n = 1; n <= cap; ++n) {
        UsageVector witness;
        if (has_usage_vector(pot, n, &witness)) {
            result.status = MinOrderResult::Status::found;
            result.order = n;
            result.witness = std::move(witness);
            return result;
        }
    }
    result.status = MinOrderResult::Status::unknown_beyond_cap;
    return result;
}

}  // namespace flextile
