#include <gtest/gtest.h>

#include <random>

#include "flextile/matrix.hpp"
#include "flextile/tiles.hpp"
#include "oracle.hpp"

using namespace flextile;

namespace {

CohesiveEnd u(BondIndex b) { return {b, false}; }
CohesiveEnd h(BondIndex b) { return {b, true}; }

const Pot self_loop_pot() { return Pot({Tile({u(1), h(1)})}); }

std::vector<Rational> fractions(std::initializer_list<std::pair<int, int>> values) {
    std::vector<Rational> out;
    for (auto [num, den] : values) {
        out.emplace_back(num, den);
    }
    return out;
}

}  // namespace

TEST(ConstructionMatrix, WheelScenarioOneTwo) {
    const ConstructionMatrix m = build_matrix(wheel_pot_s12(7));
    ASSERT_EQ(m.bonds(), 1u);
    ASSERT_EQ(m.tiles(), 2u);
    EXPECT_EQ(m.at(0, 0), -1);
    EXPECT_EQ(m.at(0, 1), 6);
    EXPECT_EQ(m.render(), "-1 6 | 0\n1 1 | 1\n");
}

TEST(ConstructionMatrix, WheelScenarioThreeFirstRow) {
    const ConstructionMatrix m = build_matrix(wheel_pot_s3(6));
    ASSERT_EQ(m.bonds(), 4u);
    ASSERT_EQ(m.tiles(), 5u);
    EXPECT_EQ(m.render(),
              "5 -1 -1 -1 -1 | 0\n"
              "0 2 -1 0 0 | 0\n"
              "0 0 1 -1 -1 | 0\n"
              "0 0 0 1 -1 | 0\n"
              "1 1 1 1 1 | 1\n");
}

TEST(Solve, SelfBalancingTile) {
    const SpectrumSolution s = solve(build_matrix(self_loop_pot()));
    ASSERT_TRUE(s.unique());
    EXPECT_EQ(s.particular, fractions({{1, 1}}));
}

TEST(Solve, UniqueWheelSolutions) {
    EXPECT_EQ(solve(build_matrix(wheel_pot_s12(7))).particular, fractions({{6, 7}, {1, 7}}));
    EXPECT_EQ(solve(build_matrix(wheel_pot_s3(8))).particular,
              fractions({{1, 8}, {1, 8}, {2, 8}, {2, 8}, {1, 8}, {1, 8}}));
    EXPECT_EQ(solve(build_matrix(wheel_pot_s3(7))).particular, fractions({{1, 7}, {1, 7}, {2, 7}, {2, 7}, {1, 7}}));
}

TEST(Solve, InconsistentAndUnderdetermined) {
    // a1 appears only unhatted: the balance row forces r = 0, contradicting sum 1.
    EXPECT_FALSE(solve(build_matrix(Pot({Tile({u(1), u(1)})}))).consistent);

    const Pot free_pot({Tile({u(1), h(1)}), Tile({u(1), u(1), h(1), h(1)})});
    const SpectrumSolution s = solve(build_matrix(free_pot));
    ASSERT_TRUE(s.consistent);
    EXPECT_FALSE(s.unique());
    EXPECT_EQ(s.nullspace.size(), 1u);
    EXPECT_TRUE(satisfies(build_matrix(free_pot), s.particular));
}

TEST(Solve, ParticularPlusNullspaceSatisfies) {
    const Pot p({Tile({u(1), u(1), h(2)}), Tile({h(1), u(2)}), Tile({h(1), h(2), u(2)}), Tile({u(1), h(1)})});
    const ConstructionMatrix m = build_matrix(p);
    const SpectrumSolution s = solve(m);
    ASSERT_TRUE(s.consistent);
    ASSERT_TRUE(satisfies(m, s.particular));
    for (const auto& v : s.nullspace) {
        std::vector<Rational> shifted = s.particular;
        for (std::size_t j = 0; j < v.size(); ++j) {
            shifted[j] += Rational(3, 2) * v[j];
        }
        EXPECT_TRUE(satisfies(m, shifted));
    }
}

TEST(MinOrder, Examples) {
    for (int n = 4; n <= 9; ++n) {
        const MinOrderResult a = min_order(wheel_pot_s12(n));
        ASSERT_EQ(a.status, MinOrderResult::Status::found);
        EXPECT_EQ(a.order, static_cast<std::size_t>(n));
        EXPECT_EQ(a.witness, (UsageVector{static_cast<std::size_t>(n - 1), 1}));
        const MinOrderResult b = min_order(wheel_pot_s3(n));
        ASSERT_EQ(b.status, MinOrderResult::Status::found);
        EXPECT_EQ(b.order, static_cast<std::size_t>(n));
    }
    const MinOrderResult one = min_order(self_loop_pot());
    EXPECT_EQ(one.order, 1u);
    EXPECT_EQ(one.witness, UsageVector{1});
}

TEST(MinOrder, UnrealizableAndCapped) {
    EXPECT_EQ(min_order(Pot({Tile({u(1), u(1)})})).status, MinOrderResult::Status::unrealizable);
    // Consistent rational system whose only solution has a negative entry.
    const Pot negative({Tile({u(1), u(1)}), Tile({u(1), h(2), h(2)}), Tile({u(2)})});
    EXPECT_EQ(min_order(negative).status, MinOrderResult::Status::unrealizable);
    // Needs 30 copies of one tile and one of the other.
    std::vector<CohesiveEnd> many(30, u(1));
    const Pot big({Tile({h(1)}), Tile(many)});
    EXPECT_EQ(min_order(big, 10).status, MinOrderResult::Status::unknown_beyond_cap);
    const MinOrderResult found = min_order(big);
    EXPECT_EQ(found.order, 31u);
}

TEST(UsageVectors, Examples) {
    EXPECT_EQ(usage_vectors(wheel_pot_s12(7), 7), (std::vector<UsageVector>{{6, 1}}));
    EXPECT_TRUE(usage_vectors(wheel_pot_s12(7), 6).empty());
    EXPECT_EQ(usage_vectors(self_loop_pot(), 3), (std::vector<UsageVector>{{3}}));
    EXPECT_EQ(usage_vectors(wheel_pot_s12(5), 10), (std::vector<UsageVector>{{8, 2}}));
    EXPECT_TRUE(usage_vectors(self_loop_pot(), 0).empty());
}

TEST(UsageVectors, AgreesWithCompositionOracle) {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> arms(1, 4);
    std::uniform_int_distribution<int> letter(1, 3);
    std::bernoulli_distribution hatted(0.5);
    int checked = 0;
    while (checked < 150) {
        std::vector<Tile> tiles;
        const int p = 1 + static_cast<int>(rng() % 4);
        for (int j = 0; j < p; ++j) {
            std::vector<CohesiveEnd> ends;
            for (int k = arms(rng); k > 0; --k) {
                ends.push_back({static_cast<BondIndex>(letter(rng)), hatted(rng)});
            }
            tiles.emplace_back(ends);
        }
        std::sort(tiles.begin(), tiles.end());
        tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
        const Pot pot = normalized(tiles);
        for (std::size_t n = 1; n <= 7; ++n) {
            const auto expected = oracle::usage_vectors(pot, n);
            EXPECT_EQ(usage_vectors(pot, n), expected) << render_pot(pot) << "n=" << n;
            for (const auto& r : expected) {
                EXPECT_TRUE(is_balanced(pot, r));
            }
        }
        const MinOrderResult r = min_order(pot, 7);
        const std::size_t brute = oracle::min_order(pot, 7);
        if (brute == 0) {
            EXPECT_NE(r.status, MinOrderResult::Status::found) << render_pot(pot);
        } else {
            EXPECT_EQ(r.status, MinOrderResult::Status::found) << render_pot(pot);
            EXPECT_EQ(r.order, brute) << render_pot(pot);
        }
        ++checked;
    }
}

TEST(UsageVectors, ScaledSolutionConsistency) {
    // Every usage vector at order n, divided by n, satisfies the system.
    for (int n = 4; n <= 8; ++n) {
        const Pot pot = wheel_pot_s3(n);
        const ConstructionMatrix m = build_matrix(pot);
        for (const UsageVector& r : usage_vectors(pot, static_cast<std::size_t>(n))) {
            std::vector<Rational> q;
            for (std::size_t x : r) {
                q.emplace_back(static_cast<long long>(x), n);
            }
            EXPECT_TRUE(satisfies(m, q));
            EXPECT_EQ(q, solve(m).particular);
        }
    }
}
