#include "doctest.h"

#include <set>

#include "ballotgeo/errors.hpp"
#include "ballotgeo/graphs.hpp"

using namespace ballotgeo;

namespace {

Ballot B(std::vector<CandidateId> r, int m) { return Ballot(std::move(r), m); }

HalfInt graph_dist(const BallotGraph& g, const Ballot& x, const Ballot& y) {
    return path_distance(g, g.index_of(x), g.index_of(y));
}

} // namespace

TEST_CASE("two-candidate graphs") {
    auto g = build_graph(2, GraphVariant::basic);
    CHECK(g.node_count() == 2);
    CHECK(graph_dist(g, B({0, 1}, 2), B({1, 0}, 2)) == HalfInt::from_int(1));
    auto ge = build_graph(2, GraphVariant::basic, {.include_empty = true});
    CHECK(ge.node_count() == 3);
    for (int i = 0; i < ge.node_count(); ++i) CHECK(ge.degree(i) == 2);
    // via the empty node: 1/2 + 1/2 = 1, tied with the direct swap
    CHECK(path_distance(ge, 0, 1) == HalfInt::from_int(1));
}

TEST_CASE("basic graph structure") {
    auto g3 = build_graph(3, GraphVariant::basic);
    CHECK(g3.node_count() == 9);
    CHECK(graph_dist(g3, B({0, 1, 2}, 3), B({0, 2, 1}, 3)) == HalfInt::from_int(1));

    auto g4 = build_graph(4, GraphVariant::basic);
    CHECK(g4.node_count() == 40);
    CHECK(graph_dist(g4, B({0, 1, 2, 3}, 4), B({3, 2, 1, 0}, 4)) == HalfInt::from_int(6));

    // (A,B)-(A,B,C) edge weighs 3/2 in G_6
    auto g6 = build_graph(6, GraphVariant::basic);
    int ab = g6.index_of(B({0, 1}, 6));
    int abc = g6.index_of(B({0, 1, 2}, 6));
    bool found = false;
    for (auto [v, w] : g6.adjacency()[static_cast<size_t>(ab)]) {
        if (v == abc) {
            found = true;
            CHECK(w == 3); // doubled
        }
    }
    CHECK(found);
}

TEST_CASE("degrees: basic <= m (m-regular with the empty node)") {
    for (int m = 3; m <= 5; ++m) {
        auto g = build_graph(m, GraphVariant::basic);
        for (int i = 0; i < g.node_count(); ++i) CHECK(g.degree(i) <= m);
        auto ge = build_graph(m, GraphVariant::basic, {.include_empty = true});
        for (int i = 0; i < ge.node_count(); ++i) CHECK(ge.degree(i) == m);
    }
}

TEST_CASE("degrees follow the exact counts by length") {
    const int m = 5;
    auto g = build_graph(m, GraphVariant::basic);
    auto gp = build_graph(m, GraphVariant::shortcut);
    for (int i = 0; i < g.node_count(); ++i) {
        const Ballot& b = g.ballot_nodes()[static_cast<size_t>(i)];
        const int k = b.complete() ? m - 1 : b.length();
        if (k == 1) {
            CHECK(g.degree(i) == m - 1); // extensions only, no empty node
        } else {
            // one truncation, m-k extensions, k-1 swaps
            CHECK(g.degree(i) == 1 + (m - k) + (k - 1));
        }
        // shortcut: swap neighbors become C(stored, 2) on the stored ranking
        const int stored = b.length();
        const int basic_swaps = stored >= 2 ? stored - 1 : 0;
        CHECK(gp.degree(i) == g.degree(i) - basic_swaps + stored * (stored - 1) / 2);
    }
}

TEST_CASE("shortcut graph distances") {
    auto g4p = build_graph(4, GraphVariant::shortcut);
    CHECK(graph_dist(g4p, B({0, 1, 2, 3}, 4), B({3, 2, 1, 0}, 4)) == HalfInt::from_int(4));
}

TEST_CASE("path metric equals d_H on G_m and d_B on G_m+ for m <= 5") {
    for (int m = 3; m <= 5; ++m) {
        auto g = build_graph(m, GraphVariant::basic);
        auto gp = build_graph(m, GraphVariant::shortcut);
        const auto& nodes = g.ballot_nodes();
        for (int i = 0; i < g.node_count(); ++i) {
            auto dg = path_distances_from(g, i);
            auto dgp = path_distances_from(gp, i);
            for (int j = 0; j < g.node_count(); ++j) {
                CHECK(dg[static_cast<size_t>(j)] ==
                      dist_h(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)]));
                CHECK(dgp[static_cast<size_t>(j)] ==
                      dist_b(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)],
                             BordaConvention::pessimistic));
            }
        }
    }
}

TEST_CASE("generalized graph realizes d_H on weak orders for m <= 4") {
    for (int m = 2; m <= 4; ++m) {
        auto g = build_graph(m, GraphVariant::generalized);
        const auto& nodes = g.generalized_nodes();
        CHECK(nodes.size() == (m == 2 ? 3u : m == 3 ? 13u : 75u));
        for (int i = 0; i < g.node_count(); ++i) {
            auto d = path_distances_from(g, i);
            for (int j = 0; j < g.node_count(); ++j) {
                CHECK(d[static_cast<size_t>(j)] ==
                      dist_h(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)]));
            }
        }
    }
}

TEST_CASE("generalized graph merge edges") {
    auto g = build_graph(4, GraphVariant::generalized);
    // (A,B,C,D) -- (A,{B,C},D) -- (A,C,B,D) is a unit-length two-edge path
    GeneralizedBallot abcd(B({0, 1, 2, 3}, 4));
    GeneralizedBallot merged({{0}, {1, 2}, {3}}, 4);
    int i = g.index_of(abcd), j = g.index_of(merged);
    bool found = false;
    for (auto [v, w] : g.adjacency()[static_cast<size_t>(i)])
        if (v == j) {
            found = true;
            CHECK(w == 1); // rs/2 doubled = 1*1
        }
    CHECK(found);
    CHECK(path_distance(g, i, g.index_of(GeneralizedBallot(B({0, 2, 1, 3}, 4)))) ==
          HalfInt::from_int(1));
}

TEST_CASE("each shortcut edge of length k spans basic distance 2k-1") {
    for (int m = 4; m <= 5; ++m) {
        auto g = build_graph(m, GraphVariant::basic);
        for (int i = 0; i < g.node_count(); ++i) {
            const Ballot& b = g.ballot_nodes()[static_cast<size_t>(i)];
            auto d = path_distances_from(g, i);
            for (int p = 0; p < b.length(); ++p) {
                for (int gap = 2; p + gap < b.length(); ++gap) {
                    std::vector<CandidateId> r = b.ranking();
                    std::swap(r[static_cast<size_t>(p)], r[static_cast<size_t>(p + gap)]);
                    int j = g.index_of(Ballot(std::move(r), m));
                    CHECK(d[static_cast<size_t>(j)] == HalfInt::from_int(2 * gap - 1));
                }
            }
        }
    }
}

TEST_CASE("borda geodesic: the worked state-vector example") {
    // sigma=(A,C,B), tau=(D,C,A,E,B): swap segment costs 1+2+1 = 4
    auto plan = borda_geodesic(B({0, 2, 1}, 5), B({3, 2, 0, 4, 1}, 5));
    std::vector<int> swap_costs;
    for (const auto& mv : plan.moves)
        if (mv.kind == GeodesicMove::Kind::swap) swap_costs.push_back(mv.gap);
    CHECK(swap_costs == std::vector<int>{1, 2, 1});
    CHECK(plan.total == dist_b(B({0, 2, 1}, 5), B({3, 2, 0, 4, 1}, 5), BordaConvention::pessimistic));

    // trivial and reversal cases
    CHECK(borda_geodesic(B({0, 2}, 4), B({0, 2}, 4)).moves.empty());
    auto rev = borda_geodesic(B({0, 1, 2, 3}, 4), B({3, 2, 1, 0}, 4));
    CHECK(rev.total == HalfInt::from_int(4));
}

TEST_CASE("borda geodesic: weight equals pessimistic d_B for every pair, m <= 5") {
    for (int m = 2; m <= 5; ++m) {
        auto all = enumerate_ballots(m);
        for (const Ballot& x : all) {
            for (const Ballot& y : all) {
                auto plan = borda_geodesic(x, y);
                CHECK(plan.total == dist_b(x, y, BordaConvention::pessimistic));
                CHECK(plan.waypoints.front() == x);
                CHECK(plan.waypoints.back() == y);
                // savings accounting: d_H - d_B = sum (k_i - 1)
                CHECK(HalfInt::from_int(shortcut_savings(plan)) == dist_h(x, y) - plan.total);
            }
        }
    }
}

TEST_CASE("every geodesic move is a real shortcut-graph edge of the stated weight") {
    for (int m = 3; m <= 4; ++m) {
        auto gp = build_graph(m, GraphVariant::shortcut);
        auto all = enumerate_ballots(m);
        for (const Ballot& x : all) {
            for (const Ballot& y : all) {
                auto plan = borda_geodesic(x, y);
                for (const auto& mv : plan.moves) {
                    int a = gp.index_of(mv.from), b = gp.index_of(mv.to);
                    bool found = false;
                    for (auto [v, w] : gp.adjacency()[static_cast<size_t>(a)]) {
                        if (v == b && HalfInt::from_doubled(w) == mv.weight) found = true;
                    }
                    CHECK(found);
                }
            }
        }
    }
}

TEST_CASE("borda geodesic is monotone: no score overshoots its target") {
    for (int m = 3; m <= 5; ++m) {
        auto all = enumerate_ballots(m);
        for (const Ballot& x : all) {
            for (const Ballot& y : all) {
                auto plan = borda_geodesic(x, y);
                auto target = borda_embed(y, BordaConvention::pessimistic).doubled_coords;
                auto prev = borda_embed(x, BordaConvention::pessimistic).doubled_coords;
                for (const Ballot& wp : plan.waypoints) {
                    auto cur = borda_embed(wp, BordaConvention::pessimistic).doubled_coords;
                    for (int c = 0; c < m; ++c) {
                        auto step = cur[static_cast<size_t>(c)] - prev[static_cast<size_t>(c)];
                        auto need = target[static_cast<size_t>(c)] - prev[static_cast<size_t>(c)];
                        if (step != 0) {
                            CHECK(step * need > 0);            // moves toward the target
                            CHECK(std::abs(step) <= std::abs(need)); // never past it
                        }
                    }
                    prev = cur;
                }
            }
        }
    }
}

TEST_CASE("shortcut savings: the two remark examples") {
    // ABCDE -> EBCDA: 7 inversions, one length-4 shortcut, savings 3
    auto p1 = borda_geodesic(B({0, 1, 2, 3, 4}, 5), B({4, 1, 2, 3, 0}, 5));
    CHECK(shortcut_savings(p1) == 3);
    CHECK(p1.total == HalfInt::from_int(4));
    // ABCDE -> DBCAE: 5 inversions vs shortcut length 3, savings 2
    auto p2 = borda_geodesic(B({0, 1, 2, 3, 4}, 5), B({3, 1, 2, 0, 4}, 5));
    CHECK(shortcut_savings(p2) == 2);
    // neighbor-swap-only plans save nothing
    auto p3 = borda_geodesic(B({0, 1, 2}, 3), B({1, 0, 2}, 3));
    CHECK(shortcut_savings(p3) == 0);
}

TEST_CASE("averaged Borda admits no monotone first move from a bullet vote") {
    // Every graph move out of bullet A strictly overshoots some candidate's
    // averaged score on the way to bullet B.
    const int m = 5;
    Ballot a = B({0}, m), b = B({1}, m);
    auto g = build_graph(m, GraphVariant::shortcut);
    const double direct = dist_b(a, b, BordaConvention::averaged).value();
    int ai = g.index_of(a);
    for (auto [v, w] : g.adjacency()[static_cast<size_t>(ai)]) {
        const Ballot& via = g.ballot_nodes()[static_cast<size_t>(v)];
        double through = dist_b(a, via, BordaConvention::averaged).value() +
                         dist_b(via, b, BordaConvention::averaged).value();
        CHECK(through > direct + 1e-9);
    }
}

TEST_CASE("edge list export") {
    auto g = build_graph(3, GraphVariant::basic);
    auto text = export_edge_list(g);
    CHECK(text.find("1>2>3\t1>3>2\t2") != std::string::npos); // swap edge, doubled weight 2
    CHECK(text.find("1\t1>2>3\t1") != std::string::npos);     // extension edge, weight 1/2
    // every line has three tab-separated fields
    size_t lines = 0;
    for (size_t pos = 0; (pos = text.find('\n', pos)) != std::string::npos; ++pos) ++lines;
    size_t edges = 0;
    for (const auto& adjl : g.adjacency()) edges += adjl.size();
    CHECK(lines == edges / 2);
}

TEST_CASE("experimental generalized shortcut graph builds with both edge kinds") {
    auto g = build_graph(3, GraphVariant::generalized_shortcut);
    CHECK(g.node_count() == 13);
    // merge edge: (A,B,C) -- ({A,B},C) with weight 1/2
    GeneralizedBallot abc(Ballot({0, 1, 2}, 3));
    GeneralizedBallot merged({{0, 1}, {2}}, 3);
    int i = g.index_of(abc);
    bool merge_found = false, swap_found = false;
    for (auto [v, w] : g.adjacency()[static_cast<size_t>(i)]) {
        if (v == g.index_of(merged)) merge_found = w == 1;
        // cross-tier swap A<->C jumps two pessimistic ranks
        if (v == g.index_of(GeneralizedBallot(Ballot({2, 1, 0}, 3)))) swap_found = w == 4;
    }
    CHECK(merge_found);
    CHECK(swap_found);
    // swap edges only ever shorten paths relative to the merge-only graph
    auto plain = build_graph(3, GraphVariant::generalized);
    for (int a = 0; a < g.node_count(); ++a) {
        auto with_shortcuts = path_distances_from(g, a);
        auto merges_only = path_distances_from(plain, a);
        for (int b = 0; b < g.node_count(); ++b)
            CHECK(with_shortcuts[static_cast<size_t>(b)] <= merges_only[static_cast<size_t>(b)]);
    }
}

TEST_CASE("graph budget and argument errors") {
    CHECK_THROWS_AS(build_graph(10, GraphVariant::basic, {.max_nodes = 1000}), BudgetError);
    CHECK_THROWS_AS(build_graph(8, GraphVariant::generalized, {.max_nodes = 1000}), BudgetError);
    CHECK_THROWS_AS(build_graph(1, GraphVariant::basic), std::invalid_argument);
    auto g = build_graph(3, GraphVariant::basic);
    CHECK_THROWS_AS(g.index_of(Ballot({0}, 4)), std::invalid_argument);
    CHECK_THROWS_AS(path_distance(g, 0, 99), std::invalid_argument);
    CHECK_THROWS_AS(borda_geodesic(Ballot({0}, 3), Ballot({0}, 4)), std::invalid_argument);
}
