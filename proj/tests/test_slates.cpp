#include "doctest.h"

#include <cmath>

#include "ballotgeo/errors.hpp"
#include "ballotgeo/rng.hpp"
#include "ballotgeo/slates.hpp"
#include "ballotgeo/synthetic.hpp"
#include "oracles.hpp"

using namespace ballotgeo;

namespace {

Ballot B(std::vector<CandidateId> r, int m) { return Ballot(std::move(r), m); }

Profile one_ballot(std::vector<CandidateId> r, int m, long long count = 1) {
    Profile p;
    p.m = m;
    p.names.resize(static_cast<size_t>(m));
    p.party.assign(static_cast<size_t>(m), "");
    for (int c = 0; c < m; ++c) p.names[static_cast<size_t>(c)] = std::to_string(c + 1);
    p.add(r, count);
    return p;
}

Profile random_profile(int m, int types, std::uint64_t seed) {
    Profile p;
    p.m = m;
    p.names.resize(static_cast<size_t>(m));
    p.party.assign(static_cast<size_t>(m), "");
    auto gen = make_stream(seed, 0);
    auto below = [](auto& g, std::uint64_t n) { return rand_below(g, n); };
    for (int t = 0; t < types; ++t)
        p.add(oracle::random_ballot(m, gen, below), 1 + static_cast<long long>(rand_below(gen, 4)));
    return p;
}

} // namespace

TEST_CASE("rank-difference dissimilarity on a single ballot") {
    // one ballot (A,B) in Omega_3 canonicalizes to (A,B,C): b = (2,1,0)
    Profile p = one_ballot({0, 1}, 3);
    auto d = dissim_rank_difference(p, BordaConvention::pessimistic);
    CHECK(d.at(0, 1) == 1.0);
    CHECK(d.at(0, 2) == 2.0);
    CHECK(d.at(1, 2) == 1.0);
    CHECK(d.at(0, 0) == 0.0);
}

TEST_CASE("pessimistic convention collapses jointly unmentioned candidates") {
    Profile p = one_ballot({0}, 4, 5); // bullet A: B,C,D all score 0
    auto d = dissim_rank_difference(p, BordaConvention::pessimistic);
    CHECK(d.at(1, 2) == 0.0);
    CHECK(d.at(1, 3) == 0.0);
    CHECK(d.at(0, 1) == 3.0);
}

TEST_CASE("unanimous complete profile: dissimilarity is the rank gap") {
    Profile p = one_ballot({2, 0, 3, 1}, 4, 9);
    auto d = dissim_rank_difference(p, BordaConvention::pessimistic);
    // ranks: C=1, A=2, D=3, B=4
    CHECK(d.at(0, 1) == 2.0);
    CHECK(d.at(2, 1) == 3.0);
    CHECK(d.at(0, 2) == 1.0);
}

TEST_CASE("expected rank gap closed form: frozen examples") {
    // bullet A in Omega_3: E|rank(B)-rank(C)| = 1
    CHECK(expected_rank_gap(B({0}, 3), 1, 2) == Frac::make(1, 1));
    // both unranked with u=3: (u+1)/3 = 4/3
    CHECK(expected_rank_gap(B({0}, 4), 1, 2) == Frac::make(4, 3));
    // one ranked at position 1, u=3 unranked in m=4: E = (m-a) - (u-1)/2 = 2
    CHECK(expected_rank_gap(B({0}, 4), 0, 2) == Frac::make(2, 1));
    // both ranked: plain gap
    CHECK(expected_rank_gap(B({2, 0, 3, 1}, 4), 2, 1) == Frac::make(3, 1));
}

TEST_CASE("expected rank gap equals brute-force completion enumeration") {
    for (int m = 3; m <= 6; ++m) {
        auto all = enumerate_ballots(m);
        for (const Ballot& b : all) {
            if (m - b.length() > 5) continue;
            for (int i = 0; i < m; ++i) {
                for (int j = i + 1; j < m; ++j) {
                    auto [num, den] = oracle::rank_gap_by_enumeration(b, i, j);
                    Frac expect = Frac::make(num, den);
                    CHECK(expected_rank_gap(b, i, j) == expect);
                }
            }
        }
    }
}

TEST_CASE("completion-cloud dissimilarity equals rank difference on complete profiles") {
    Profile p;
    p.m = 4;
    p.names = {"1", "2", "3", "4"};
    p.add({0, 1, 2, 3}, 3);
    p.add({3, 1, 0, 2}, 2);
    auto cloud = dissim_completion_cloud(p);
    auto rankd = dissim_rank_difference(p, BordaConvention::pessimistic);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(cloud.at(i, j) == rankd.at(i, j));
}

TEST_CASE("completion-cloud dissimilarity is a metric on random profiles") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Profile p = random_profile(3 + static_cast<int>(seed % 5), 12, 400 + seed);
        auto d = dissim_completion_cloud(p);
        const int m = p.m;
        for (int i = 0; i < m; ++i) {
            CHECK(d.frac_at(i, i).num == 0);
            for (int j = i + 1; j < m; ++j) {
                CHECK(d.frac_at(i, j).num > 0); // positive definite
                CHECK(d.frac_at(i, j) == d.frac_at(j, i));
                for (int k = 0; k < m; ++k) {
                    if (k == i || k == j) continue;
                    CHECK(d.frac_at(i, j) <= d.frac_at(i, k) + d.frac_at(k, j));
                }
            }
        }
    }
}

TEST_CASE("slates by centers: exhaustive optimality and trivial cases") {
    Profile p = random_profile(6, 20, 9);
    auto d = dissim_completion_cloud(p);
    auto s = slates_by_centers(p, 2, d);
    REQUIRE(s.k == 2);
    // re-verify optimality by an independent full scan over center pairs
    double best = 1e18;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            double cost = 0.0;
            for (int c = 0; c < 6; ++c) cost += std::min(d.at(c, a), d.at(c, b));
            best = std::min(best, cost);
        }
    double got = 0.0;
    for (int c = 0; c < 6; ++c) {
        double bd = 1e18;
        for (CandidateId ctr : s.centers) bd = std::min(bd, d.at(c, ctr));
        got += bd;
    }
    CHECK(got == doctest::Approx(best).epsilon(1e-12));

    auto all = slates_by_centers(p, 6, d);
    CHECK(all.k == 6);
    for (const auto& slate : all.slates) CHECK(slate.size() == 1);
}

TEST_CASE("agglomeration merges two candidates into one slate") {
    Profile p = one_ballot({0, 1}, 2, 3);
    auto d = dissim_completion_cloud(p);
    auto s = slates_by_agglomeration(p, 1, d, Linkage::average);
    CHECK(s.slates == std::vector<std::vector<CandidateId>>{{0, 1}});
    CHECK(s.merge_history.size() == 1);
}

TEST_CASE("agglomeration splits the benchmark election at the planted boundary") {
    // Candidate C sits third in both mixture centers, so its side of the cut
    // is instance noise; A,B vs D,E must never be mixed.
    const std::vector<std::vector<CandidateId>> with_c_left = {{0, 1, 2}, {3, 4}};
    const std::vector<std::vector<CandidateId>> with_c_right = {{0, 1}, {2, 3, 4}};
    int planted = 0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Profile p = benchmark_election(BenchmarkFamily::E, 0.3, seed);
        auto d = dissim_completion_cloud(p);
        for (Linkage lk : {Linkage::single, Linkage::average, Linkage::complete}) {
            auto s = slates_by_agglomeration(p, 2, d, lk);
            bool ok = s.slates == with_c_left || s.slates == with_c_right;
            CHECK(ok);
            planted += s.slates == with_c_left;
        }
        // dendrogram covers all m-1 merges
        auto s = slates_by_agglomeration(p, 2, d, Linkage::average);
        CHECK(s.merge_history.size() == 4);
    }
    CHECK(planted > 0);
}

TEST_CASE("slate embedding") {
    SlatePartition s;
    s.m = 4;
    s.k = 2;
    s.slates = {{0, 1}, {2, 3}};
    CHECK(slate_embedding(s, 0).values() == std::vector<double>{2, 2, 0, 0});
    CHECK(slate_embedding(s, 1).values() == std::vector<double>{0, 0, 2, 2});

    SlatePartition whole;
    whole.m = 3;
    whole.k = 1;
    whole.slates = {{0, 1, 2}};
    CHECK(slate_embedding(whole, 0).values() == std::vector<double>{0, 0, 0});

    SlatePartition single;
    single.m = 3;
    single.k = 2;
    single.slates = {{0}, {1, 2}};
    CHECK(slate_embedding(single, 0).values() == std::vector<double>{2, 0, 0});

    // averaged convention scores the tier means instead of the tier bottoms
    CHECK(slate_embedding(s, 0, BordaConvention::averaged).values() ==
          std::vector<double>{2.5, 2.5, 0.5, 0.5});
}

TEST_CASE("ballot-to-slate assignment rules") {
    SlatePartition s;
    s.m = 4;
    s.k = 2;
    s.slates = {{0, 1}, {2, 3}};
    Profile p = one_ballot({0}, 4); // bullet A
    CHECK(assign_ballots_to_slates(p, s, SlateAssignRule::nearest_embedding) == std::vector<int>{0});
    CHECK(assign_ballots_to_slates(p, s, SlateAssignRule::borda_per_candidate) == std::vector<int>{0});

    // per-candidate award: b(1>3) = (3,0,2,0): v0 = 1.5 > v1 = 1.0
    Profile mixed = one_ballot({0, 2}, 4);
    CHECK(assign_ballots_to_slates(mixed, s, SlateAssignRule::borda_per_candidate) ==
          std::vector<int>{0});
}

TEST_CASE("simplex map: vertices, split points, consistency with slate assignment") {
    SlatePartition s;
    s.m = 4;
    s.k = 2;
    s.slates = {{0, 1}, {2, 3}};
    Profile p = one_ballot({0}, 4);
    auto pt = simplex_map(p.types()[0], s);
    CHECK(pt.coords == std::vector<double>{1.0, 0.0}); // bullet for slate 1 of 2
    CHECK(!pt.degenerate);

    auto even = simplex_map(B({0, 2}, 4), s); // b=(3,0,2,0): v = (1.5, 1.0) -> (0.6, 0.4)
    CHECK(even.coords[0] == doctest::Approx(0.6));
    CHECK(even.coords[1] == doctest::Approx(0.4));

    // nearest simplex vertex always equals the borda_per_candidate assignment
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Profile q = random_profile(5, 25, 700 + seed);
        auto d = dissim_completion_cloud(q);
        auto slates = slates_by_agglomeration(q, 2 + static_cast<int>(seed % 2), d, Linkage::average);
        auto assign = assign_ballots_to_slates(q, slates, SlateAssignRule::borda_per_candidate);
        auto types = q.types();
        for (size_t t = 0; t < types.size(); ++t) {
            auto f = simplex_map(types[t], slates);
            int nearest = 0;
            double bd = 1e18;
            for (int v = 0; v < slates.k; ++v) {
                double dist2 = 0.0;
                for (int i = 0; i < slates.k; ++i) {
                    double target = i == v ? 1.0 : 0.0;
                    dist2 += (f.coords[static_cast<size_t>(i)] - target) *
                             (f.coords[static_cast<size_t>(i)] - target);
                }
                if (dist2 < bd - 1e-12) {
                    bd = dist2;
                    nearest = v;
                }
            }
            CHECK(nearest == assign[t]);
        }
    }
}

TEST_CASE("simplex-optimized slates") {
    // strongly polarized: everyone bullet-votes within one of two groups
    Profile p;
    p.m = 4;
    p.names = {"1", "2", "3", "4"};
    p.add({0, 1}, 10);
    p.add({1, 0}, 10);
    p.add({2, 3}, 10);
    p.add({3, 2}, 10);
    auto s = slates_by_simplex_optimization(p, 2);
    CHECK(s.slates == std::vector<std::vector<CandidateId>>{{0, 1}, {2, 3}});
    CHECK(s.method == SlatePartition::Method::simplex_optimization);

    // independent optimality scan over all bipartitions on a benchmark instance
    Profile e = benchmark_election(BenchmarkFamily::E, 0.3, 2);
    auto se = slates_by_simplex_optimization(e, 2);
    auto objective = [&](const std::vector<std::vector<CandidateId>>& slates) {
        SlatePartition sp;
        sp.m = e.m;
        sp.k = 2;
        sp.slates = slates;
        double cost = 0.0;
        for (const auto& [b, cnt] : e.ballots) {
            auto f = simplex_map(b, sp);
            double d0 = std::hypot(f.coords[0] - 1.0, f.coords[1]);
            double d1 = std::hypot(f.coords[0], f.coords[1] - 1.0);
            cost += std::min(d0, d1) * static_cast<double>(cnt);
        }
        return cost;
    };
    double best = 1e18;
    std::vector<std::vector<CandidateId>> best_slates;
    for (unsigned mask = 1; mask < 16; ++mask) { // candidate 0 stays in slate 0
        std::vector<CandidateId> s0 = {0}, s1;
        for (CandidateId c = 1; c < 5; ++c)
            ((mask >> (c - 1)) & 1 ? s1 : s0).push_back(c);
        if (s1.empty()) continue;
        double cost = objective({s0, s1});
        if (cost < best - 1e-12) {
            best = cost;
            best_slates = {s0, s1};
        }
    }
    CHECK(objective(se.slates) == doctest::Approx(best).epsilon(1e-12));
    CHECK(se.slates == best_slates);

    Profile big;
    big.m = 11;
    big.names.assign(11, "");
    big.add({0, 1, 2}, 1);
    CHECK_THROWS_AS(slates_by_simplex_optimization(big, 2), BudgetError);
}

TEST_CASE("benchmark election slate blocs approximate the PAM blocs") {
    Profile p = benchmark_election(BenchmarkFamily::E, 0.3, 13);
    SlatePartition slates;
    slates.m = 5;
    slates.k = 2;
    slates.method = SlatePartition::Method::agglomerative;
    slates.slates = {{0, 1, 2}, {3, 4}}; // the planted slates
    auto assign = assign_ballots_to_slates(p, slates, SlateAssignRule::borda_per_candidate);
    auto counts = p.type_counts();
    std::vector<long long> sizes(2, 0);
    for (size_t t = 0; t < assign.size(); ++t) sizes[static_cast<size_t>(assign[t])] += counts[t];
    // sizes near {317, 683} with slate 0 = {A,B,C}
    CHECK(sizes[0] > 230);
    CHECK(sizes[0] < 420);
    CHECK(sizes[0] + sizes[1] == 1000);
}
