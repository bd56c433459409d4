#include "ballotgeo/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

#include "ballotgeo/errors.hpp"
#include "ballotgeo/rng.hpp"

namespace ballotgeo {

std::vector<double> BordaVector::values() const {
    std::vector<double> out(doubled_coords.size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<double>(doubled_coords[i]) / 2.0;
    return out;
}

BordaVector borda_embed(const GeneralizedBallot& b, BordaConvention convention) {
    const int m = b.m();
    std::vector<int> first, last;
    b.tier_positions(first, last);
    BordaVector v;
    v.m = m;
    v.convention = convention;
    v.doubled_coords.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const size_t si = static_cast<size_t>(i);
        if (convention == BordaConvention::pessimistic) {
            v.doubled_coords[si] = 2ll * (m - last[si]);
        } else {
            // m - (first+last)/2, doubled to stay integral
            v.doubled_coords[si] = 2ll * m - (first[si] + last[si]);
        }
    }
    return v;
}

BordaVector borda_embed(const Ballot& b, BordaConvention convention) {
    return borda_embed(GeneralizedBallot(b), convention);
}

H2HVector h2h_embed(const GeneralizedBallot& b) {
    const int m = b.m();
    auto tier = b.tier_of();
    H2HVector v;
    v.m = m;
    v.coords.reserve(static_cast<size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            int ti = tier[static_cast<size_t>(i)], tj = tier[static_cast<size_t>(j)];
            // Earlier tier = ranked higher; +1 when the first-indexed candidate wins.
            v.coords.push_back(ti < tj ? 1 : ti > tj ? -1 : 0);
        }
    }
    return v;
}

H2HVector h2h_embed(const Ballot& b) { return h2h_embed(GeneralizedBallot(b)); }

DisagreementCount disagreements(const GeneralizedBallot& x, const GeneralizedBallot& y) {
    if (x.m() != y.m()) throw std::invalid_argument("mismatched candidate counts");
    const int m = x.m();
    auto tx = x.tier_of(), ty = y.tier_of();
    DisagreementCount d;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            int a = tx[static_cast<size_t>(i)] - tx[static_cast<size_t>(j)];
            int b = ty[static_cast<size_t>(i)] - ty[static_cast<size_t>(j)];
            if (a == 0 && b == 0) continue;
            if (a == 0) {
                ++d.weak;
                ++d.weak_forward;
            } else if (b == 0) {
                ++d.weak;
                ++d.weak_backward;
            } else if ((a < 0) != (b < 0)) {
                ++d.strong;
            }
        }
    }
    return d;
}

DisagreementCount disagreements(const Ballot& x, const Ballot& y) {
    return disagreements(GeneralizedBallot(x), GeneralizedBallot(y));
}

HalfInt dist_h(const GeneralizedBallot& x, const GeneralizedBallot& y) {
    DisagreementCount d = disagreements(x, y);
    const std::int64_t doubled = 2 * d.strong + d.weak;
    // The defining L1 route must agree with the disagreement identity.
    auto hx = h2h_embed(x), hy = h2h_embed(y);
    std::int64_t l1 = 0;
    for (size_t i = 0; i < hx.coords.size(); ++i)
        l1 += std::abs(static_cast<int>(hx.coords[i]) - static_cast<int>(hy.coords[i]));
    assert(l1 == doubled);
    (void)l1;
    return HalfInt::from_doubled(doubled);
}

HalfInt dist_h(const Ballot& x, const Ballot& y) {
    return dist_h(GeneralizedBallot(x), GeneralizedBallot(y));
}

HalfInt dist_b(const GeneralizedBallot& x, const GeneralizedBallot& y, BordaConvention convention) {
    if (x.m() != y.m()) throw std::invalid_argument("mismatched candidate counts");
    auto bx = borda_embed(x, convention), by = borda_embed(y, convention);
    std::int64_t doubled_l1 = 0;
    for (size_t i = 0; i < bx.doubled_coords.size(); ++i)
        doubled_l1 += std::abs(bx.doubled_coords[i] - by.doubled_coords[i]);
    // d_B = L1/2; doubled(d_B) = L1 = doubled_l1/2. The sum is even in both
    // conventions (pessimistic: even terms; averaged: the common hyperplane).
    assert(doubled_l1 % 2 == 0);
    return HalfInt::from_doubled(doubled_l1 / 2);
}

HalfInt dist_b(const Ballot& x, const Ballot& y, BordaConvention convention) {
    return dist_b(GeneralizedBallot(x), GeneralizedBallot(y), convention);
}

double dist_kp(const GeneralizedBallot& x, const GeneralizedBallot& y, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("K^(p) requires p in (0,1]");
    DisagreementCount d = disagreements(x, y);
    return static_cast<double>(d.strong) + p * static_cast<double>(d.weak);
}

double dist_kp(const Ballot& x, const Ballot& y, double p) {
    return dist_kp(GeneralizedBallot(x), GeneralizedBallot(y), p);
}

std::int64_t dist_hausdorff(const Ballot& x, const Ballot& y) {
    DisagreementCount d = disagreements(x, y);
    return d.strong + std::max(d.weak_forward, d.weak_backward);
}

std::int64_t kendall_tau(const Ballot& x, const Ballot& y) {
    if (x.m() != y.m()) throw std::invalid_argument("mismatched candidate counts");
    if (!x.complete() || !y.complete())
        throw std::invalid_argument("kendall_tau requires complete ballots");
    const int m = x.m();
    std::vector<int> px(static_cast<size_t>(m)), py(static_cast<size_t>(m));
    for (int pos = 0; pos < m; ++pos) {
        px[static_cast<size_t>(x.at(pos))] = pos;
        py[static_cast<size_t>(y.at(pos))] = pos;
    }
    std::int64_t inv = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            bool a = px[static_cast<size_t>(i)] < px[static_cast<size_t>(j)];
            bool b = py[static_cast<size_t>(i)] < py[static_cast<size_t>(j)];
            if (a != b) ++inv;
        }
    return inv;
}

namespace {

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

namespace {

// Completions of x and y induced by one ordering of the jointly unranked
// candidates: each side orders its own unranked tail as in `order`.
std::pair<Ballot, Ballot> coupled_completions(const Ballot& x, const Ballot& y,
                                              const std::vector<CandidateId>& order) {
    const int m = x.m();
    std::vector<char> in_x(static_cast<size_t>(m), 0), in_y(static_cast<size_t>(m), 0);
    for (CandidateId c : x.ranking()) in_x[static_cast<size_t>(c)] = 1;
    for (CandidateId c : y.ranking()) in_y[static_cast<size_t>(c)] = 1;
    std::vector<CandidateId> fx = x.ranking(), fy = y.ranking();
    for (CandidateId c : order) {
        if (!in_x[static_cast<size_t>(c)]) fx.push_back(c);
        if (!in_y[static_cast<size_t>(c)]) fy.push_back(c);
    }
    return {Ballot(std::move(fx), m), Ballot(std::move(fy), m)};
}

} // namespace

CompletionAverage expected_completion_swaps_exact(const Ballot& x, const Ballot& y,
                                                  std::int64_t max_orderings) {
    if (x.m() != y.m()) throw std::invalid_argument("mismatched candidate counts");
    // Jointly unranked candidates, whose ordering drives both completions.
    std::vector<CandidateId> pool;
    {
        auto ux = x.unranked();
        std::vector<char> uy(static_cast<size_t>(y.m()), 0);
        for (CandidateId c : y.unranked()) uy[static_cast<size_t>(c)] = 1;
        std::vector<char> seen(static_cast<size_t>(x.m()), 0);
        for (CandidateId c : ux) seen[static_cast<size_t>(c)] = 1;
        pool = ux;
        for (CandidateId c = 0; c < x.m(); ++c)
            if (uy[static_cast<size_t>(c)] && !seen[static_cast<size_t>(c)]) pool.push_back(c);
        std::sort(pool.begin(), pool.end());
    }
    const long long orderings = factorial(static_cast<int>(pool.size()));
    if (orderings > max_orderings)
        throw BudgetError("completion enumeration too large; use the Monte Carlo mode");
    CompletionAverage out;
    out.count = orderings;
    if (pool.empty()) {
        out.total = kendall_tau(x, y);
        out.count = 1;
        return out;
    }
    do {
        auto [cx, cy] = coupled_completions(x, y, pool);
        out.total += kendall_tau(cx, cy);
    } while (std::next_permutation(pool.begin(), pool.end()));
    return out;
}

double expected_completion_swaps_montecarlo(const Ballot& x, const Ballot& y,
                                            std::uint64_t seed, int trials) {
    if (x.m() != y.m()) throw std::invalid_argument("mismatched candidate counts");
    if (trials <= 0) throw std::invalid_argument("trials must be positive");
    auto gen = make_stream(seed, 0);
    std::vector<CandidateId> pool;
    {
        std::vector<char> keep(static_cast<size_t>(x.m()), 0);
        for (CandidateId c : x.unranked()) keep[static_cast<size_t>(c)] = 1;
        for (CandidateId c : y.unranked()) keep[static_cast<size_t>(c)] = 1;
        for (CandidateId c = 0; c < x.m(); ++c)
            if (keep[static_cast<size_t>(c)]) pool.push_back(c);
    }
    std::int64_t total = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<CandidateId> order = pool;
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rand_below(gen, i)]);
        auto [cx, cy] = coupled_completions(x, y, order);
        total += kendall_tau(cx, cy);
    }
    return static_cast<double>(total) / trials;
}

} // namespace ballotgeo
