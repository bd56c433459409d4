#include "ballotgeo/slates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ballotgeo/errors.hpp"

namespace ballotgeo {

namespace {

std::int64_t gcd_ll(std::int64_t a, std::int64_t b) {
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

} // namespace

Frac Frac::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = gcd_ll(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    return Frac{num / g, den / g};
}

Frac operator+(Frac a, Frac b) {
    // Denominators stay small (<= 6*m per ballot, lcm-reduced on the way).
    const std::int64_t g = gcd_ll(a.den, b.den);
    const std::int64_t den = a.den / g * b.den;
    return Frac::make(a.num * (b.den / g) + b.num * (a.den / g), den);
}

bool operator<=(Frac a, Frac b) {
    return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
}

namespace {

CandidateDissimilarity weighted_average(const Profile& p, DissimKind kind,
                                        BordaConvention convention,
                                        const std::function<Frac(const Ballot&, int, int)>& gap) {
    const int m = p.m;
    CandidateDissimilarity d;
    d.kind = kind;
    d.convention = convention;
    d.m = m;
    d.entries.assign(static_cast<size_t>(m) * m, Frac{0, 1});
    const long long total = p.voters();
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            // Accumulate as an exact rational over the common denominator 6
            // (rank gaps have denominator 1, 2, or 3) times the voter count.
            std::int64_t num6 = 0;
            for (const auto& [b, cnt] : p.ballots) {
                Frac g = gap(b, i, j);
                num6 += cnt * (g.num * (6 / g.den));
            }
            Frac avg = Frac::make(num6, 6 * total);
            d.entries[static_cast<size_t>(i) * m + j] = avg;
            d.entries[static_cast<size_t>(j) * m + i] = avg;
        }
    }
    return d;
}

} // namespace

CandidateDissimilarity dissim_rank_difference(const Profile& p, BordaConvention convention) {
    // Per-ballot |score_i - score_j| with doubled scores, i.e. denominator 2.
    std::map<Ballot, BordaVector> cache;
    for (const auto& [b, cnt] : p.ballots) cache.emplace(b, borda_embed(b, convention));
    return weighted_average(p, DissimKind::rank_difference, convention,
                            [&](const Ballot& b, int i, int j) {
                                const auto& v = cache.at(b).doubled_coords;
                                std::int64_t diff = v[static_cast<size_t>(i)] - v[static_cast<size_t>(j)];
                                return Frac::make(diff < 0 ? -diff : diff, 2);
                            });
}

Frac expected_rank_gap(const Ballot& b, CandidateId i, CandidateId j) {
    if (i == j) return Frac{0, 1};
    const int m = b.m();
    std::vector<int> pos(static_cast<size_t>(m), 0); // 1-based rank, 0 = unranked
    for (int p = 0; p < b.length(); ++p) pos[static_cast<size_t>(b.at(p))] = p + 1;
    const int u = m - b.length();
    const int pi = pos[static_cast<size_t>(i)], pj = pos[static_cast<size_t>(j)];
    if (pi > 0 && pj > 0) return Frac::make(std::abs(pi - pj), 1);
    if (pi == 0 && pj == 0) return Frac::make(u + 1, 3);
    // One ranked at a, the other uniform over the last u positions:
    // E = (m - a) - (u - 1)/2.
    const int a = pi > 0 ? pi : pj;
    return Frac::make(2 * (m - a) - (u - 1), 2);
}

CandidateDissimilarity dissim_completion_cloud(const Profile& p) {
    return weighted_average(p, DissimKind::completion_cloud, BordaConvention::averaged,
                            [](const Ballot& b, int i, int j) { return expected_rank_gap(b, i, j); });
}

int SlatePartition::slate_of(CandidateId c) const {
    for (int s = 0; s < k; ++s)
        for (CandidateId x : slates[static_cast<size_t>(s)])
            if (x == c) return s;
    throw std::invalid_argument("candidate not in any slate");
}

namespace {

SlatePartition voronoi_slates(int m, std::vector<CandidateId> centers,
                              const CandidateDissimilarity& d) {
    std::sort(centers.begin(), centers.end());
    SlatePartition out;
    out.method = SlatePartition::Method::centers;
    out.m = m;
    out.k = static_cast<int>(centers.size());
    out.centers = centers;
    out.slates.assign(centers.size(), {});
    for (CandidateId c = 0; c < m; ++c) {
        int best = 0;
        double bd = d.at(c, centers[0]);
        for (size_t s = 1; s < centers.size(); ++s) {
            double v = d.at(c, centers[s]);
            if (v < bd - 1e-12) {
                bd = v;
                best = static_cast<int>(s);
            }
        }
        out.slates[static_cast<size_t>(best)].push_back(c);
    }
    return out;
}

} // namespace

SlatePartition slates_by_centers(const Profile& p, int k, const CandidateDissimilarity& dissim) {
    const int m = p.m;
    if (k < 1 || k > m) throw std::invalid_argument("k must be in [1, m]");
    std::vector<CandidateId> pick(static_cast<size_t>(k));
    std::vector<CandidateId> best;
    double best_cost = std::numeric_limits<double>::infinity();
    // C(m,k) subsets; m is small.
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) {
            double cost = 0.0;
            for (CandidateId c = 0; c < m; ++c) {
                double bd = std::numeric_limits<double>::infinity();
                for (CandidateId ctr : pick) bd = std::min(bd, dissim.at(c, ctr));
                cost += bd;
            }
            if (cost < best_cost - 1e-12) {
                best_cost = cost;
                best = pick;
            }
            return;
        }
        for (int c = start; c < m; ++c) {
            pick[static_cast<size_t>(depth)] = c;
            self(self, c + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return voronoi_slates(m, best, dissim);
}

SlatePartition slates_by_agglomeration(const Profile& p, int k,
                                       const CandidateDissimilarity& dissim, Linkage linkage) {
    const int m = p.m;
    if (k < 1 || k > m) throw std::invalid_argument("k must be in [1, m]");
    std::vector<std::vector<CandidateId>> blocks;
    for (CandidateId c = 0; c < m; ++c) blocks.push_back({c});

    auto link = [&](const std::vector<CandidateId>& a, const std::vector<CandidateId>& b) {
        double best = linkage == Linkage::complete ? 0.0 : std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (CandidateId x : a) {
            for (CandidateId y : b) {
                double v = dissim.at(x, y);
                sum += v;
                if (linkage == Linkage::single) best = std::min(best, v);
                if (linkage == Linkage::complete) best = std::max(best, v);
            }
        }
        if (linkage == Linkage::average) return sum / (static_cast<double>(a.size()) * b.size());
        return best;
    };

    SlatePartition out;
    out.method = SlatePartition::Method::agglomerative;
    out.m = m;
    out.k = k;
    while (blocks.size() > 1) {
        if (static_cast<int>(blocks.size()) == k) out.slates = blocks;
        size_t bi = 0, bj = 1;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < blocks.size(); ++i) {
            for (size_t j = i + 1; j < blocks.size(); ++j) {
                double v = link(blocks[i], blocks[j]);
                if (v < bd - 1e-12) { // ties keep the lexicographically first pair
                    bd = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        SlatePartition::Merge mg;
        mg.left = blocks[bi];
        mg.right = blocks[bj];
        mg.distance = bd;
        out.merge_history.push_back(mg);
        blocks[bi].insert(blocks[bi].end(), blocks[bj].begin(), blocks[bj].end());
        std::sort(blocks[bi].begin(), blocks[bi].end());
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(bj));
        std::sort(blocks.begin(), blocks.end());
    }
    if (k == 1) out.slates = blocks;
    if (static_cast<int>(out.slates.size()) != k)
        throw std::runtime_error("agglomeration did not reach the requested block count");
    return out;
}

SlatePartition slates_by_simplex_optimization(const Profile& p, int k) {
    const int m = p.m;
    if (k < 1 || k > m) throw std::invalid_argument("k must be in [1, m]");
    if (m > 10 || k > 3)
        throw BudgetError("simplex-optimized slates are limited to m <= 10, k <= 3");

    auto evaluate = [&](const SlatePartition& s) {
        double cost = 0.0;
        for (const auto& [b, cnt] : p.ballots) {
            auto f = simplex_map(b, s);
            double best = std::numeric_limits<double>::infinity();
            for (int v = 0; v < k; ++v) {
                double d2 = 0.0;
                for (int i = 0; i < k; ++i) {
                    const double target = i == v ? 1.0 : 0.0;
                    const double diff = f.coords[static_cast<size_t>(i)] - target;
                    d2 += diff * diff;
                }
                best = std::min(best, d2);
            }
            cost += std::sqrt(best) * static_cast<double>(cnt);
        }
        return cost;
    };

    // Restricted-growth strings enumerate unlabeled partitions once each.
    std::vector<int> label(static_cast<size_t>(m), 0);
    SlatePartition best;
    double best_cost = std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self, int idx, int used) -> void {
        if (idx == m) {
            if (used != k) return;
            SlatePartition s;
            s.method = SlatePartition::Method::simplex_optimization;
            s.m = m;
            s.k = k;
            s.slates.assign(static_cast<size_t>(k), {});
            for (CandidateId c = 0; c < m; ++c)
                s.slates[static_cast<size_t>(label[static_cast<size_t>(c)])].push_back(c);
            double cost = evaluate(s);
            if (cost < best_cost - 1e-12) {
                best_cost = cost;
                best = std::move(s);
            }
            return;
        }
        if (m - idx < k - used) return;
        for (int l = 0; l <= std::min(used, k - 1); ++l) {
            label[static_cast<size_t>(idx)] = l;
            self(self, idx + 1, std::max(used, l + 1));
        }
    };
    rec(rec, 0, 0);
    return best;
}

BordaVector slate_embedding(const SlatePartition& s, int slate_index, BordaConvention convention) {
    if (slate_index < 0 || slate_index >= s.k) throw std::invalid_argument("slate index out of range");
    const int m = s.m;
    std::vector<std::vector<CandidateId>> tiers;
    tiers.push_back(s.slates[static_cast<size_t>(slate_index)]);
    std::vector<CandidateId> rest;
    for (CandidateId c = 0; c < m; ++c)
        if (s.slate_of(c) != slate_index) rest.push_back(c);
    if (!rest.empty()) tiers.push_back(std::move(rest));
    return borda_embed(GeneralizedBallot(std::move(tiers), m), convention);
}

namespace {

// Per-slate awarded points, exact: v_i = (sum of the ballot's scores over
// the slate) / |slate|. Returned as integer numerators over
// 2 * lcm(slate sizes) so averaged (half-integer) scores stay exact.
std::vector<std::int64_t> slate_award_numerators(const BordaVector& bv, const SlatePartition& s) {
    std::int64_t lcm = 1;
    for (const auto& slate : s.slates) {
        std::int64_t sz = static_cast<std::int64_t>(slate.size());
        lcm = lcm / gcd_ll(lcm, sz) * sz;
    }
    std::vector<std::int64_t> nums(static_cast<size_t>(s.k), 0);
    for (int i = 0; i < s.k; ++i) {
        std::int64_t doubled_sum = 0;
        for (CandidateId c : s.slates[static_cast<size_t>(i)])
            doubled_sum += bv.doubled_coords[static_cast<size_t>(c)];
        nums[static_cast<size_t>(i)] =
            doubled_sum * (lcm / static_cast<std::int64_t>(s.slates[static_cast<size_t>(i)].size()));
    }
    return nums;
}

} // namespace

std::vector<int> assign_ballots_to_slates(const Profile& p, const SlatePartition& s,
                                          SlateAssignRule rule, BordaConvention convention) {
    std::vector<BordaVector> embeds;
    for (int i = 0; i < s.k; ++i) embeds.push_back(slate_embedding(s, i, convention));
    std::vector<int> out;
    out.reserve(p.ballots.size());
    for (const auto& [b, cnt] : p.ballots) {
        auto bv = borda_embed(b, convention);
        int best = 0;
        if (rule == SlateAssignRule::nearest_embedding) {
            std::int64_t bd = std::numeric_limits<std::int64_t>::max();
            for (int i = 0; i < s.k; ++i) {
                std::int64_t l1 = 0;
                for (int c = 0; c < p.m; ++c)
                    l1 += std::abs(bv.doubled_coords[static_cast<size_t>(c)] -
                                   embeds[static_cast<size_t>(i)].doubled_coords[static_cast<size_t>(c)]);
                if (l1 < bd) {
                    bd = l1;
                    best = i;
                }
            }
        } else {
            auto nums = slate_award_numerators(bv, s);
            std::int64_t bv_best = nums[0];
            for (int i = 1; i < s.k; ++i)
                if (nums[static_cast<size_t>(i)] > bv_best) {
                    bv_best = nums[static_cast<size_t>(i)];
                    best = i;
                }
        }
        out.push_back(best);
    }
    return out;
}

SimplexPoint simplex_map(const Ballot& b, const SlatePartition& s) {
    auto bv = borda_embed(b, BordaConvention::pessimistic);
    auto nums = slate_award_numerators(bv, s);
    std::int64_t total = std::accumulate(nums.begin(), nums.end(), std::int64_t{0});
    SimplexPoint pt;
    pt.coords.resize(static_cast<size_t>(s.k));
    pt.key.resize(static_cast<size_t>(s.k));
    if (total == 0) {
        // Cannot occur for a non-empty ballot, but guard: map to the barycenter.
        pt.degenerate = true;
        for (int i = 0; i < s.k; ++i) {
            pt.coords[static_cast<size_t>(i)] = 1.0 / s.k;
            pt.key[static_cast<size_t>(i)] = 1;
        }
        return pt;
    }
    std::int64_t g = 0;
    for (std::int64_t v : nums) g = gcd_ll(g, v);
    for (int i = 0; i < s.k; ++i) {
        pt.coords[static_cast<size_t>(i)] =
            static_cast<double>(nums[static_cast<size_t>(i)]) / static_cast<double>(total);
        pt.key[static_cast<size_t>(i)] = nums[static_cast<size_t>(i)] / g;
    }
    return pt;
}

} // namespace ballotgeo
