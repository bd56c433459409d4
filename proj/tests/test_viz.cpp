#include "doctest.h"

#include <cmath>

#include "ballotgeo/rng.hpp"
#include "ballotgeo/synthetic.hpp"
#include "ballotgeo/viz.hpp"
#include "oracles.hpp"

using namespace ballotgeo;

namespace {

double out_dist(const Embedding2D& e, int i, int j) {
    double dx = e.points[static_cast<size_t>(i)][0] - e.points[static_cast<size_t>(j)][0];
    double dy = e.points[static_cast<size_t>(i)][1] - e.points[static_cast<size_t>(j)][1];
    return std::sqrt(dx * dx + dy * dy);
}

DistanceMatrix matrix_of(int n, const std::vector<double>& vals) {
    DistanceMatrix d;
    d.n = n;
    d.values = vals;
    return d;
}

} // namespace

TEST_CASE("classical MDS: three equidistant points form an equilateral triangle") {
    auto d = matrix_of(3, {0, 1, 1, 1, 0, 1, 1, 1, 0});
    auto e = classical_mds(d);
    REQUIRE(e.points.size() == 3);
    CHECK(out_dist(e, 0, 1) == doctest::Approx(out_dist(e, 0, 2)).epsilon(1e-6));
    CHECK(out_dist(e, 0, 1) == doctest::Approx(out_dist(e, 1, 2)).epsilon(1e-6));
    CHECK(out_dist(e, 0, 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("classical MDS: collinear input stays on a line") {
    const int n = 5;
    std::vector<double> vals(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vals[static_cast<size_t>(i) * n + j] = std::abs(i - j);
    auto e = classical_mds(matrix_of(n, vals));
    for (int i = 0; i < n; ++i) CHECK(std::abs(e.points[static_cast<size_t>(i)][1]) < 1e-6);
    CHECK(out_dist(e, 0, 4) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("classical MDS rejects asymmetric input") {
    CHECK_THROWS_AS(classical_mds(matrix_of(2, {0, 1, 2, 0})), std::invalid_argument);
    CHECK_THROWS_AS(classical_mds(matrix_of(2, {1, 1, 1, 0})), std::invalid_argument);
}

TEST_CASE("classical MDS output correlates with the input distances") {
    Profile p;
    p.m = 4;
    p.names = {"1", "2", "3", "4"};
    auto gen = make_stream(5, 0);
    auto below = [](auto& g, std::uint64_t n) { return rand_below(g, n); };
    for (int t = 0; t < 25; ++t) p.add(oracle::random_ballot(4, gen, below), 1);
    DistanceSpec spec{DistanceSpec::Kind::borda_pessimistic, 0.5};
    auto d = distance_matrix(p, spec);
    auto e = classical_mds(d);
    // Pearson correlation of input vs output pairwise distances
    std::vector<double> xs, ys;
    for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j) {
            xs.push_back(d.at(i, j));
            ys.push_back(out_dist(e, i, j));
        }
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    CHECK(sxy / std::sqrt(sxx * syy) >= 0.8);
}

TEST_CASE("MDS is deterministic and permutation-equivariant up to rigid motion") {
    const int n = 12;
    auto gen = make_stream(8, 0);
    Profile p;
    p.m = 5;
    p.names = {"1", "2", "3", "4", "5"};
    auto below = [](auto& g, std::uint64_t nn) { return rand_below(g, nn); };
    for (int t = 0; t < n; ++t) p.add(oracle::random_ballot(5, gen, below), 1);
    DistanceSpec spec{DistanceSpec::Kind::head_to_head, 0.5};
    auto d = distance_matrix(p, spec);
    auto e1 = classical_mds(d);
    auto e2 = classical_mds(d);
    CHECK(e1.points == e2.points); // bit-deterministic

    // reverse the point order: pairwise output distances must match reversed
    DistanceMatrix rd;
    rd.n = d.n;
    rd.values.assign(static_cast<size_t>(d.n) * d.n, 0.0);
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j)
            rd.values[static_cast<size_t>(i) * d.n + j] = d.at(d.n - 1 - i, d.n - 1 - j);
    auto er = classical_mds(rd);
    for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j)
            CHECK(out_dist(er, i, j) ==
                  doctest::Approx(out_dist(e1, d.n - 1 - i, d.n - 1 - j)).epsilon(1e-5));
}

TEST_CASE("mds_of_profile carries weights and party colors") {
    Profile p;
    p.m = 3;
    p.names = {"Ann", "Bea", "Cal"};
    p.party = {"X", "Y", ""};
    p.add({0, 1, 2}, 4);
    p.add({1, 0, 2}, 2);
    auto e = mds_of_profile(p, DistanceSpec{DistanceSpec::Kind::head_to_head, 0.5});
    REQUIRE(e.points.size() == 2);
    CHECK(e.weight == std::vector<double>{4, 2});
    CHECK(e.color_key == std::vector<std::string>{"X", "Y"});
    CHECK(e.id == std::vector<std::string>{"1>2>3", "2>1>3"});
}

TEST_CASE("simplex density aggregates weights exactly") {
    Profile p = benchmark_election(BenchmarkFamily::E, 0.3, 3);
    auto d = dissim_completion_cloud(p);
    auto s = slates_by_agglomeration(p, 2, d, Linkage::average);
    auto density = simplex_density(p, s);
    double total = 0.0;
    for (const auto& [pt, w] : density) {
        total += w;
        double sum = 0.0;
        for (double c : pt.coords) {
            CHECK(c >= 0.0);
            sum += c;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(total == 1000.0);
    // aggregation merged distinct ballot types with equal images
    CHECK(density.size() < static_cast<size_t>(p.type_count()));
}

TEST_CASE("unanimous bullet profile maps to a single vertex") {
    Profile p;
    p.m = 4;
    p.names = {"1", "2", "3", "4"};
    p.add({0}, 11);
    SlatePartition s;
    s.m = 4;
    s.k = 2;
    s.slates = {{0, 1}, {2, 3}};
    auto density = simplex_density(p, s);
    REQUIRE(density.size() == 1);
    CHECK(density[0].first.coords == std::vector<double>{1.0, 0.0});
    CHECK(density[0].second == 11.0);
}

TEST_CASE("CSV emission") {
    Embedding2D e;
    e.points = {{0.5, -1.25}};
    e.weight = {3};
    e.color_key = {"X"};
    e.id = {"1>2"};
    auto csv = embedding_csv(e);
    CHECK(csv == "id,x,y,weight,color_key\n1>2,0.500000,-1.250000,3,X\n");

    std::vector<std::pair<SimplexPoint, double>> density;
    SimplexPoint pt;
    pt.coords = {0.25, 0.75};
    density.emplace_back(pt, 4.0);
    CHECK(simplex_csv(density) == "v1,v2,weight\n0.250000,0.750000,4\n");
}

TEST_CASE("SVG output is well-formed") {
    Embedding2D empty;
    auto svg = render_svg(empty);
    CHECK(svg.find("<?xml") == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    Embedding2D one;
    one.points = {{0.0, 0.0}};
    one.weight = {9.0};
    one.color_key = {""};
    one.id = {"pt"};
    auto svg1 = render_svg(one);
    CHECK(svg1.find("<circle") != std::string::npos);
    CHECK(svg1.find("r=\"12.00\"") != std::string::npos); // 2 + 10*sqrt(1)

    // crude well-formedness: every open tag is closed, quotes balanced
    size_t opens = 0, closes = 0;
    for (size_t i = 0; (i = svg1.find("<circle", i)) != std::string::npos; ++i) ++opens;
    for (size_t i = 0; (i = svg1.find("</circle>", i)) != std::string::npos; ++i) ++closes;
    CHECK(opens == closes);

    SimplexPoint pt;
    pt.coords = {0.2, 0.3, 0.5};
    auto tri = render_simplex_svg({{pt, 2.0}}, 3);
    CHECK(tri.find("</svg>") != std::string::npos);
    CHECK_THROWS_AS(render_simplex_svg({}, 5), std::invalid_argument);
}
