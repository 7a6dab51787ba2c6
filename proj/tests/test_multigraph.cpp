#include <gtest/gtest.h>

#include <stdexcept>

#include "flextile/errors.hpp"
#include "flextile/multigraph.hpp"
#include "oracle.hpp"

using namespace flextile;

namespace {

// Rim of W_7 with the two same-direction edges 0->1 and 3->4 re-paired as
// 0->4 and 3->1: the hub plus two triangles.
Multigraph two_fans() {
    return Multigraph(7, {{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 0}, {0, 4}, {0, 6}, {1, 6}, {2, 6}, {3, 6}, {4, 6}, {5, 6}});
}

}  // namespace

TEST(Multigraph, EdgesAreUnordered) {
    const Multigraph a(3, {{2, 0}, {1, 2}});
    const Multigraph b(3, {{2, 1}, {0, 2}});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.multiplicity(0, 2), 1u);
    EXPECT_EQ(a.multiplicity(2, 0), 1u);
}

TEST(Multigraph, LoopsCountTwice) {
    const Multigraph g(2, {{0, 0}, {0, 1}, {0, 1}});
    EXPECT_EQ(g.degree(0), 4u);
    EXPECT_EQ(g.degree(1), 2u);
    EXPECT_EQ(g.multiplicity(0, 1), 2u);
    EXPECT_TRUE(g.has_loops());
}

TEST(Multigraph, RejectsBadInput) {
    EXPECT_THROW(Multigraph(0), std::invalid_argument);
    EXPECT_THROW(Multigraph(2, {{0, 2}}), std::out_of_range);
}

TEST(Multigraph, Connectivity) {
    EXPECT_TRUE(wheel(6).is_connected());
    EXPECT_FALSE(Multigraph(4, {{0, 1}, {2, 3}}).is_connected());
    EXPECT_TRUE(Multigraph(1).is_connected());
}

TEST(Generators, Wheel) {
    const Multigraph w7 = wheel(7);
    EXPECT_EQ(w7.order(), 7u);
    EXPECT_EQ(w7.size(), 12u);
    EXPECT_EQ(w7.degree(6), 6u);
    EXPECT_EQ(wheel(5).sorted_degrees(), (std::vector<std::size_t>{3, 3, 3, 3, 4}));
    EXPECT_FALSE(wheel(9).has_loops());
    EXPECT_THROW(wheel(3), std::domain_error);
}

TEST(Generators, WheelFourIsCompleteGraph) {
    EXPECT_TRUE(isomorphic(wheel(4), complete(4)));
    EXPECT_TRUE(oracle::isomorphic(wheel(4), complete(4)));
}

TEST(Generators, Cycle) {
    EXPECT_EQ(cycle(3).size(), 3u);
    for (std::size_t d : cycle(4).degrees()) {
        EXPECT_EQ(d, 2u);
    }
    const Multigraph w7 = wheel(7);
    std::vector<Edge> rim;
    for (const Edge& e : w7.edges()) {
        if (e.v != 6) {
            rim.push_back(e);
        }
    }
    EXPECT_TRUE(isomorphic(cycle(6), Multigraph(6, rim)));
    EXPECT_THROW(cycle(2), std::domain_error);
}

TEST(Generators, Complete) {
    EXPECT_EQ(complete(5).size(), 10u);
    EXPECT_THROW(complete(0), std::domain_error);
}

TEST(DegreeStats, Examples) {
    EXPECT_EQ(degree_stats(wheel(7)), (DegreeStats{2, 1, 1}));
    EXPECT_EQ(degree_stats(wheel(6)), (DegreeStats{2, 0, 2}));
    EXPECT_EQ(degree_stats(wheel(4)).av, 1u);
    for (int n = 5; n <= 9; ++n) {
        EXPECT_EQ(degree_stats(wheel(n)).av, 2u) << n;
    }
}

TEST(Isomorphism, WitnessPermutationMapsEdges) {
    const Multigraph g = wheel(6);
    const Multigraph h = g.relabeled({5, 3, 1, 0, 2, 4});
    const auto perm = find_isomorphism(g, h);
    ASSERT_TRUE(perm.has_value());
    EXPECT_EQ(g.relabeled(*perm), h);
}

TEST(Isomorphism, DistinguishesMultiplicityAndLoops) {
    const Multigraph a(3, {{0, 1}, {0, 1}, {1, 2}});
    const Multigraph b(3, {{0, 1}, {1, 2}, {1, 2}});
    const Multigraph c(3, {{0, 1}, {1, 2}, {2, 2}});
    EXPECT_TRUE(isomorphic(a, b));
    EXPECT_FALSE(isomorphic(a, c));
    EXPECT_EQ(isomorphic(a, c), oracle::isomorphic(a, c));
}

TEST(Isomorphism, TwoFansIsNotAWheel) {
    const Multigraph h = two_fans();
    EXPECT_EQ(h.sorted_degrees(), wheel(7).sorted_degrees());
    EXPECT_FALSE(isomorphic(h, wheel(7)));
    EXPECT_FALSE(oracle::isomorphic(h, wheel(7)));
}

TEST(Hamiltonian, Examples) {
    for (int n = 4; n <= 9; ++n) {
        EXPECT_TRUE(is_hamiltonian(wheel(n))) << n;
    }
    EXPECT_TRUE(is_hamiltonian(cycle(5)));
    EXPECT_FALSE(is_hamiltonian(two_fans()));
    EXPECT_FALSE(oracle::hamiltonian(two_fans()));
    EXPECT_FALSE(is_hamiltonian(Multigraph(2, {{0, 1}, {0, 1}})));
    EXPECT_FALSE(is_hamiltonian(Multigraph(3, {{0, 1}, {1, 2}, {2, 2}})));
}

TEST(CanonicalForm, LabelingReproducesCode) {
    const Multigraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {3, 3}});
    const CanonicalForm c = canonical_form(g);
    ASSERT_EQ(c.labeling.size(), g.order());
    std::vector<Vertex> position(g.order());
    for (std::size_t p = 0; p < c.labeling.size(); ++p) {
        position[c.labeling[p]] = static_cast<Vertex>(p);
    }
    EXPECT_EQ(canonical_form(g.relabeled(position)).code, c.code);
}

TEST(GraphText, RoundTrip) {
    const Multigraph g(4, {{0, 1}, {0, 1}, {2, 2}, {1, 3}});
    EXPECT_EQ(parse_graph(render_graph(g)), g);
    EXPECT_EQ(render_graph(cycle(3)), "n=3\n0 1\n0 2\n1 2\n");
}

TEST(GraphText, CommentsAndBlankLines) {
    const Multigraph g = parse_graph("# triangle\n\nn=3\n0 1  # first\n1 2\n\n2 0\n");
    EXPECT_EQ(g, cycle(3));
}

TEST(GraphText, ErrorsCarryPosition) {
    try {
        (void)parse_graph("n=3\n0 1\n0 7\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW((void)parse_graph("0 1\n"), ParseError);
    EXPECT_THROW((void)parse_graph("n=0\n"), ParseError);
    EXPECT_THROW((void)parse_graph("n=3\n0 x\n"), ParseError);
    EXPECT_THROW((void)parse_graph("n=3\n0 1 2\n"), ParseError);
    EXPECT_THROW((void)parse_graph(""), ParseError);
}
