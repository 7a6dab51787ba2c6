#include <gtest/gtest.h>

#include <stdexcept>

#include "flextile/errors.hpp"
#include "flextile/tiles.hpp"

using namespace flextile;

namespace {

CohesiveEnd u(BondIndex b) { return {b, false}; }
CohesiveEnd h(BondIndex b) { return {b, true}; }

}  // namespace

TEST(Tile, EndOrderIsIrrelevant) {
    EXPECT_EQ(Tile({u(1), h(1), h(2), u(2)}), Tile({h(2), u(2), u(1), h(1)}));
    EXPECT_NE(Tile({u(1), h(1)}), Tile({u(1), u(1)}));
}

TEST(Tile, Counts) {
    const Tile t({u(1), h(1), h(1), u(3)});
    EXPECT_EQ(t.arms(), 4u);
    EXPECT_EQ(t.count(1, true), 2u);
    EXPECT_EQ(t.count(1, false), 1u);
    EXPECT_EQ(t.net(1), -1);
    EXPECT_EQ(t.net(3), 1);
    EXPECT_EQ(t.net(2), 0);
    EXPECT_EQ(t.max_bond(), 3u);
}

TEST(Pot, Validation) {
    EXPECT_THROW(Pot({}), std::invalid_argument);
    EXPECT_THROW(Pot({Tile()}), std::invalid_argument);
    EXPECT_THROW(Pot({Tile({u(1), h(1)}), Tile({h(1), u(1)})}), std::invalid_argument);
    EXPECT_THROW(Pot({Tile({u(2), h(2)})}), std::invalid_argument);
    EXPECT_THROW(Pot({Tile({u(1), h(1)})}, {"x", "y"}), std::invalid_argument);
    const Pot p({Tile({u(1), h(1)})});
    EXPECT_EQ(p.names(), std::vector<std::string>{"t1"});
    EXPECT_EQ(p.bond_count(), 1u);
}

TEST(Pot, NormalizedRenumbersByFirstAppearance) {
    const Pot p = normalized({Tile({u(5), u(5)}), Tile({h(5), u(2)}), Tile({h(2), h(2)})});
    EXPECT_EQ(p.tile(0), Tile({u(1), u(1)}));
    EXPECT_EQ(p.tile(1), Tile({h(1), u(2)}));
    EXPECT_EQ(p.bond_count(), 2u);
}

TEST(PotText, ParseAndRender) {
    const Pot p = parse_pot("# rim and hub\nrim: a1, a1*, a1*\nhub: a1, a1, a1, a1, a1, a1\n");
    EXPECT_EQ(p.names(), (std::vector<std::string>{"rim", "hub"}));
    EXPECT_EQ(p.tiles(), wheel_pot_s12(7).tiles());
    EXPECT_EQ(render_pot(p), "rim: a1, a1*, a1*\nhub: a1, a1, a1, a1, a1, a1\n");
}

TEST(PotText, LettersNormalizeOnParse) {
    const Pot a = parse_pot("x: a7, a7*\ny: a3, a7*, a3*\n");
    const Pot b = parse_pot("x: a1, a1*\ny: a2, a1*, a2*\n");
    EXPECT_EQ(a, b);
}

TEST(PotText, RoundTripGeneratedPots) {
    for (int n = 4; n <= 12; ++n) {
        EXPECT_EQ(parse_pot(render_pot(wheel_pot_s12(n))), wheel_pot_s12(n)) << n;
        EXPECT_EQ(parse_pot(render_pot(wheel_pot_s3(n))), wheel_pot_s3(n)) << n;
        EXPECT_EQ(parse_pot(render_pot(cycle_pot_s3(n))), cycle_pot_s3(n)) << n;
    }
}

TEST(PotText, Errors) {
    auto column_of = [](const char* text) {
        try {
            (void)parse_pot(text);
        } catch (const ParseError& e) {
            return std::make_pair(e.line(), e.column());
        }
        return std::make_pair(std::size_t{0}, std::size_t{0});
    };
    EXPECT_EQ(column_of("t1: a1, b2\n"), std::make_pair(std::size_t{1}, std::size_t{9}));
    EXPECT_EQ(column_of("t1: a1\nt2 a1*\n"), std::make_pair(std::size_t{2}, std::size_t{4}));
    EXPECT_EQ(column_of("t1: a1 a1*\n").first, 1u);
    EXPECT_EQ(column_of("t1:\n").first, 1u);
    EXPECT_EQ(column_of("t1: a\n").first, 1u);
    EXPECT_EQ(column_of("t1: a1\nt1: a1*\n").first, 2u);
    EXPECT_EQ(column_of("t1: a1, a1*\nt2: a1*, a1\n").first, 2u);
    EXPECT_GE(column_of("# nothing here\n").first, 1u);
    EXPECT_EQ(column_of("t1: a99999999999\n").first, 1u);
}

TEST(Generators, WheelScenarioOneTwo) {
    const Pot p = wheel_pot_s12(7);
    ASSERT_EQ(p.tile_count(), 2u);
    EXPECT_EQ(p.bond_count(), 1u);
    EXPECT_EQ(p.tile(0), Tile({u(1), h(1), h(1)}));
    EXPECT_EQ(p.tile(1).arms(), 6u);
    EXPECT_THROW(wheel_pot_s12(3), std::domain_error);
}

TEST(Generators, WheelScenarioThreeShape) {
    for (int n = 4; n <= 12; ++n) {
        const Pot p = wheel_pot_s3(n);
        EXPECT_EQ(p.tile_count(), static_cast<std::size_t>(n / 2 + 2)) << n;
        EXPECT_EQ(p.bond_count(), static_cast<std::size_t>(n / 2 + 1)) << n;
        EXPECT_EQ(p.tile(0).arms(), static_cast<std::size_t>(n - 1));
        EXPECT_EQ(p.tile(0).count(1, false), static_cast<std::size_t>(n - 1));
        for (std::size_t j = 1; j < p.tile_count(); ++j) {
            EXPECT_EQ(p.tile(j).arms(), 3u);
            EXPECT_EQ(p.tile(j).count(1, true), 1u);
            EXPECT_EQ(p.tile(j).count(1, false), 0u);
        }
    }
}

TEST(Generators, WheelScenarioThreeExplicit) {
    EXPECT_EQ(render_pot(wheel_pot_s3(6)),
              "t1: a1, a1, a1, a1, a1\n"
              "t2: a1*, a2, a2\n"
              "t3: a1*, a2*, a3\n"
              "t4: a1*, a3*, a4\n"
              "t5: a1*, a3*, a4*\n");
    EXPECT_EQ(render_pot(wheel_pot_s3(7)),
              "t1: a1, a1, a1, a1, a1, a1\n"
              "t2: a1*, a2, a2\n"
              "t3: a1*, a2*, a3\n"
              "t4: a1*, a3*, a4\n"
              "t5: a1*, a4*, a4*\n");
}

TEST(Generators, CyclePot) {
    for (int n = 3; n <= 12; ++n) {
        const Pot p = cycle_pot_s3(n);
        EXPECT_EQ(p.bond_count(), static_cast<std::size_t>((n + 1) / 2)) << n;
        EXPECT_EQ(p.tile_count(), static_cast<std::size_t>((n + 1) / 2 + 1)) << n;
        for (const Tile& t : p.tiles()) {
            EXPECT_EQ(t.arms(), 2u);
        }
    }
    EXPECT_EQ(render_pot(cycle_pot_s3(6)), "t1: a1, a1\nt2: a1*, a2\nt3: a2*, a3\nt4: a3*, a3*\n");
    EXPECT_THROW(cycle_pot_s3(2), std::domain_error);
}
