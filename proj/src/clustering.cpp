#include "ballotgeo/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ballotgeo/errors.hpp"
#include "ballotgeo/parallel.hpp"
#include "ballotgeo/rng.hpp"

namespace ballotgeo {

DistanceSpec DistanceSpec::parse(const std::string& name) {
    DistanceSpec s;
    if (name == "db" || name == "borda" || name == "borda_pessimistic") {
        s.kind = Kind::borda_pessimistic;
    } else if (name == "db-avg" || name == "borda_averaged") {
        s.kind = Kind::borda_averaged;
    } else if (name == "dh" || name == "h2h" || name == "head_to_head") {
        s.kind = Kind::head_to_head;
    } else if (name == "haus" || name == "hausdorff") {
        s.kind = Kind::hausdorff;
    } else if (name.rfind("kp:", 0) == 0) {
        s.kind = Kind::kp;
        s.p = std::stod(name.substr(3));
        if (!(s.p > 0.0 && s.p <= 1.0)) throw std::invalid_argument("K^(p) requires p in (0,1]");
    } else {
        throw std::invalid_argument("unknown metric: " + name);
    }
    return s;
}

std::string DistanceSpec::str() const {
    switch (kind) {
        case Kind::borda_pessimistic: return "borda_pessimistic";
        case Kind::borda_averaged: return "borda_averaged";
        case Kind::head_to_head: return "head_to_head";
        case Kind::hausdorff: return "hausdorff";
        case Kind::kp: return "kp:" + std::to_string(p);
    }
    return "?";
}

double ballot_distance(const Ballot& x, const Ballot& y, const DistanceSpec& spec) {
    switch (spec.kind) {
        case DistanceSpec::Kind::borda_pessimistic:
            return dist_b(x, y, BordaConvention::pessimistic).value();
        case DistanceSpec::Kind::borda_averaged:
            return dist_b(x, y, BordaConvention::averaged).value();
        case DistanceSpec::Kind::head_to_head: return dist_h(x, y).value();
        case DistanceSpec::Kind::hausdorff: return static_cast<double>(dist_hausdorff(x, y));
        case DistanceSpec::Kind::kp: return dist_kp(x, y, spec.p);
    }
    return 0.0;
}

DistanceMatrix distance_matrix(const Profile& p, const DistanceSpec& spec, int jobs) {
    const auto types = p.types();
    const int n = static_cast<int>(types.size());
    DistanceMatrix d;
    d.n = n;
    d.values.assign(static_cast<size_t>(n) * n, 0.0);
    parallel_for(n, jobs, [&](int i) {
        for (int j = i + 1; j < n; ++j) {
            double v = ballot_distance(types[static_cast<size_t>(i)], types[static_cast<size_t>(j)], spec);
            d.values[static_cast<size_t>(i) * n + j] = v;
            d.values[static_cast<size_t>(j) * n + i] = v;
        }
    });
    return d;
}

std::vector<std::vector<double>> embed_types(const Profile& p, EmbeddingKind kind) {
    std::vector<std::vector<double>> out;
    out.reserve(p.ballots.size());
    for (const auto& [b, cnt] : p.ballots) {
        if (kind == EmbeddingKind::head_to_head) {
            auto h = h2h_embed(b);
            std::vector<double> v(h.coords.size());
            for (size_t i = 0; i < v.size(); ++i) v[i] = h.coords[i];
            out.push_back(std::move(v));
        } else {
            auto bv = borda_embed(b, kind == EmbeddingKind::borda_pessimistic
                                         ? BordaConvention::pessimistic
                                         : BordaConvention::averaged);
            out.push_back(bv.values());
        }
    }
    return out;
}

std::vector<long long> Clustering::sizes(const Profile& p) const {
    std::vector<long long> out(static_cast<size_t>(k), 0);
    const auto counts = p.type_counts();
    for (size_t t = 0; t < assignment.size(); ++t)
        out[static_cast<size_t>(assignment[t])] += counts[t];
    return out;
}

namespace {

// Nearest / second-nearest center bookkeeping for PAM.
struct NearestPair {
    int n1 = -1;
    double d1 = 0.0;
    double d2 = 0.0;
};

std::vector<NearestPair> nearest_of(const DistanceMatrix& d, const std::vector<int>& medoids) {
    std::vector<NearestPair> out(static_cast<size_t>(d.n));
    for (int t = 0; t < d.n; ++t) {
        NearestPair np;
        np.d1 = np.d2 = std::numeric_limits<double>::infinity();
        for (size_t c = 0; c < medoids.size(); ++c) {
            double v = d.at(t, medoids[c]);
            if (v < np.d1) {
                np.d2 = np.d1;
                np.d1 = v;
                np.n1 = static_cast<int>(c);
            } else if (v < np.d2) {
                np.d2 = v;
            }
        }
        out[static_cast<size_t>(t)] = np;
    }
    return out;
}

double weighted_cost(const DistanceMatrix& d, const std::vector<long long>& w,
                     const std::vector<int>& medoids) {
    double cost = 0.0;
    for (int t = 0; t < d.n; ++t) {
        double best = std::numeric_limits<double>::infinity();
        for (int c : medoids) best = std::min(best, d.at(t, c));
        cost += best * static_cast<double>(w[static_cast<size_t>(t)]);
    }
    return cost;
}

std::vector<int> pam_build(const DistanceMatrix& d, const std::vector<long long>& w, int k) {
    std::vector<int> medoids;
    // First medoid: the weighted 1-medoid.
    double best = std::numeric_limits<double>::infinity();
    int pick = 0;
    for (int c = 0; c < d.n; ++c) {
        double cost = 0.0;
        for (int t = 0; t < d.n; ++t) cost += d.at(t, c) * static_cast<double>(w[static_cast<size_t>(t)]);
        if (cost < best) {
            best = cost;
            pick = c;
        }
    }
    medoids.push_back(pick);
    while (static_cast<int>(medoids.size()) < k) {
        std::vector<double> cur(static_cast<size_t>(d.n));
        for (int t = 0; t < d.n; ++t) {
            double b = std::numeric_limits<double>::infinity();
            for (int c : medoids) b = std::min(b, d.at(t, c));
            cur[static_cast<size_t>(t)] = b;
        }
        double best_gain = -std::numeric_limits<double>::infinity();
        int best_c = -1;
        for (int c = 0; c < d.n; ++c) {
            if (std::find(medoids.begin(), medoids.end(), c) != medoids.end()) continue;
            double gain = 0.0;
            for (int t = 0; t < d.n; ++t) {
                double delta = cur[static_cast<size_t>(t)] - d.at(t, c);
                if (delta > 0) gain += delta * static_cast<double>(w[static_cast<size_t>(t)]);
            }
            if (gain > best_gain) {
                best_gain = gain;
                best_c = c;
            }
        }
        medoids.push_back(best_c);
    }
    return medoids;
}

// Full SWAP passes until no improving (medoid, candidate) exchange remains.
void pam_swap(const DistanceMatrix& d, const std::vector<long long>& w, std::vector<int>& medoids) {
    const double eps = 1e-9;
    bool improved = true;
    while (improved) {
        improved = false;
        auto near = nearest_of(d, medoids);
        double best_delta = -eps;
        int best_mi = -1, best_h = -1;
        for (int h = 0; h < d.n; ++h) {
            if (std::find(medoids.begin(), medoids.end(), h) != medoids.end()) continue;
            for (size_t mi = 0; mi < medoids.size(); ++mi) {
                double delta = 0.0;
                for (int t = 0; t < d.n; ++t) {
                    const auto& np = near[static_cast<size_t>(t)];
                    double dth = d.at(t, h);
                    double nd;
                    if (np.n1 == static_cast<int>(mi)) {
                        nd = std::min(dth, np.d2);
                    } else {
                        nd = std::min(np.d1, dth);
                    }
                    delta += (nd - np.d1) * static_cast<double>(w[static_cast<size_t>(t)]);
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_mi = static_cast<int>(mi);
                    best_h = h;
                }
            }
        }
        if (best_h >= 0) {
            medoids[static_cast<size_t>(best_mi)] = best_h;
            improved = true;
        }
    }
}

Clustering medoids_to_clustering(const Profile& p, const DistanceMatrix& d,
                                 std::vector<int> medoids) {
    // Deterministic presentation: medoids sorted by type index.
    std::sort(medoids.begin(), medoids.end());
    const auto types = p.types();
    const auto w = p.type_counts();
    Clustering out;
    out.k = static_cast<int>(medoids.size());
    for (int c : medoids) {
        Clustering::Center ctr;
        ctr.kind = Clustering::Center::Kind::cast_ballot;
        ctr.ballot = types[static_cast<size_t>(c)];
        out.centers.push_back(std::move(ctr));
    }
    out.assignment.resize(static_cast<size_t>(d.n));
    out.cluster_costs.assign(static_cast<size_t>(out.k), 0.0);
    for (int t = 0; t < d.n; ++t) {
        int best = 0;
        double bd = d.at(t, medoids[0]);
        for (size_t c = 1; c < medoids.size(); ++c) {
            double v = d.at(t, medoids[c]);
            if (v < bd - 1e-12) { // ties stay with the lower cluster index
                bd = v;
                best = static_cast<int>(c);
            }
        }
        out.assignment[static_cast<size_t>(t)] = best;
        out.cost += bd * static_cast<double>(w[static_cast<size_t>(t)]);
        out.cluster_costs[static_cast<size_t>(best)] += bd * static_cast<double>(w[static_cast<size_t>(t)]);
    }
    return out;
}

} // namespace

Clustering pam_with_matrix(const Profile& p, const DistanceMatrix& d, int k,
                           std::uint64_t seed, int restarts) {
    const int n = d.n;
    if (k < 1 || k > n) throw std::invalid_argument("k must be in [1, #types]");
    const auto w = p.type_counts();

    std::vector<int> best_medoids = pam_build(d, w, k);
    pam_swap(d, w, best_medoids);
    std::sort(best_medoids.begin(), best_medoids.end());
    double best_cost = weighted_cost(d, w, best_medoids);

    for (int r = 0; r < restarts; ++r) {
        auto gen = make_stream(seed, static_cast<std::uint64_t>(r));
        // Random distinct start set.
        std::vector<int> idx(static_cast<size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(rand_below(gen, static_cast<std::uint64_t>(n - i)));
            std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
        }
        std::vector<int> medoids(idx.begin(), idx.begin() + k);
        pam_swap(d, w, medoids);
        std::sort(medoids.begin(), medoids.end());
        double cost = weighted_cost(d, w, medoids);
        if (cost < best_cost - 1e-9 ||
            (std::abs(cost - best_cost) <= 1e-9 && medoids < best_medoids)) {
            best_cost = cost;
            best_medoids = medoids;
        }
    }
    return medoids_to_clustering(p, d, best_medoids);
}

Clustering pam(const Profile& p, int k, const DistanceSpec& spec, std::uint64_t seed,
               int restarts, int jobs) {
    auto d = distance_matrix(p, spec, jobs);
    return pam_with_matrix(p, d, k, seed, restarts);
}

Clustering lloyd(const Profile& p, int k, EmbeddingKind embedding, std::uint64_t seed,
                 int restarts) {
    const auto pts = embed_types(p, embedding);
    const auto w = p.type_counts();
    const int n = static_cast<int>(pts.size());
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (n == 0) throw std::invalid_argument("empty profile");
    const size_t dim = pts[0].size();

    auto sqdist = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) {
            double t = a[i] - b[i];
            s += t * t;
        }
        return s;
    };

    Clustering best;
    best.cost = std::numeric_limits<double>::infinity();

    const int runs = std::max(1, restarts);
    for (int run = 0; run < runs; ++run) {
        auto gen = make_stream(seed, static_cast<std::uint64_t>(run));
        // k-means++ seeding on voter-weighted types.
        std::vector<std::vector<double>> centers;
        {
            std::vector<double> cum(static_cast<size_t>(n));
            double total = 0.0;
            for (int t = 0; t < n; ++t) {
                total += static_cast<double>(w[static_cast<size_t>(t)]);
                cum[static_cast<size_t>(t)] = total;
            }
            double pick = rand_u01(gen) * total;
            int first = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin());
            first = std::min(first, n - 1);
            centers.push_back(pts[static_cast<size_t>(first)]);
            std::vector<double> d2(static_cast<size_t>(n));
            while (static_cast<int>(centers.size()) < k) {
                double sum = 0.0;
                for (int t = 0; t < n; ++t) {
                    double b = std::numeric_limits<double>::infinity();
                    for (const auto& c : centers) b = std::min(b, sqdist(pts[static_cast<size_t>(t)], c));
                    d2[static_cast<size_t>(t)] = b * static_cast<double>(w[static_cast<size_t>(t)]);
                    sum += d2[static_cast<size_t>(t)];
                }
                int next = n - 1;
                if (sum > 0) {
                    double target = rand_u01(gen) * sum;
                    double acc = 0.0;
                    for (int t = 0; t < n; ++t) {
                        acc += d2[static_cast<size_t>(t)];
                        if (acc >= target) {
                            next = t;
                            break;
                        }
                    }
                } else {
                    next = static_cast<int>(rand_below(gen, static_cast<std::uint64_t>(n)));
                }
                centers.push_back(pts[static_cast<size_t>(next)]);
            }
        }

        std::vector<int> assign(static_cast<size_t>(n), -1);
        for (int iter = 0; iter < 200; ++iter) {
            bool changed = false;
            for (int t = 0; t < n; ++t) {
                int bestc = 0;
                double bd = sqdist(pts[static_cast<size_t>(t)], centers[0]);
                for (int c = 1; c < k; ++c) {
                    double v = sqdist(pts[static_cast<size_t>(t)], centers[static_cast<size_t>(c)]);
                    if (v < bd - 1e-12) {
                        bd = v;
                        bestc = c;
                    }
                }
                if (assign[static_cast<size_t>(t)] != bestc) {
                    assign[static_cast<size_t>(t)] = bestc;
                    changed = true;
                }
            }
            if (!changed) break;
            // Recompute weighted means; reseed empty clusters to the farthest point.
            std::vector<std::vector<double>> sums(static_cast<size_t>(k),
                                                  std::vector<double>(dim, 0.0));
            std::vector<double> weight(static_cast<size_t>(k), 0.0);
            for (int t = 0; t < n; ++t) {
                int c = assign[static_cast<size_t>(t)];
                weight[static_cast<size_t>(c)] += static_cast<double>(w[static_cast<size_t>(t)]);
                for (size_t i = 0; i < dim; ++i)
                    sums[static_cast<size_t>(c)][i] +=
                        pts[static_cast<size_t>(t)][i] * static_cast<double>(w[static_cast<size_t>(t)]);
            }
            for (int c = 0; c < k; ++c) {
                if (weight[static_cast<size_t>(c)] > 0) {
                    for (size_t i = 0; i < dim; ++i)
                        centers[static_cast<size_t>(c)][i] =
                            sums[static_cast<size_t>(c)][i] / weight[static_cast<size_t>(c)];
                } else {
                    int far = 0;
                    double fd = -1.0;
                    for (int t = 0; t < n; ++t) {
                        double v = sqdist(pts[static_cast<size_t>(t)],
                                          centers[static_cast<size_t>(assign[static_cast<size_t>(t)])]);
                        if (v > fd) {
                            fd = v;
                            far = t;
                        }
                    }
                    centers[static_cast<size_t>(c)] = pts[static_cast<size_t>(far)];
                    assign[static_cast<size_t>(far)] = c;
                }
            }
        }

        double cost = 0.0;
        std::vector<double> per_cluster(static_cast<size_t>(k), 0.0);
        for (int t = 0; t < n; ++t) {
            double v = sqdist(pts[static_cast<size_t>(t)], centers[static_cast<size_t>(assign[static_cast<size_t>(t)])]) *
                       static_cast<double>(w[static_cast<size_t>(t)]);
            cost += v;
            per_cluster[static_cast<size_t>(assign[static_cast<size_t>(t)])] += v;
        }
        if (cost < best.cost - 1e-9) {
            best = Clustering{};
            best.k = k;
            best.cost = cost;
            best.cluster_costs = per_cluster;
            best.assignment = assign;
            for (int c = 0; c < k; ++c) {
                Clustering::Center ctr;
                ctr.kind = Clustering::Center::Kind::coordinate;
                ctr.coords = centers[static_cast<size_t>(c)];
                best.centers.push_back(std::move(ctr));
            }
        }
    }
    return best;
}

Clustering exact_k_medoids_with_matrix(const Profile& p, const DistanceMatrix& d, int k,
                                       int max_types) {
    const int n = d.n;
    if (k != 1 && k != 2) throw std::invalid_argument("exact medoids support k in {1,2}");
    if (k > n) throw std::invalid_argument("k exceeds the number of ballot types");
    if (k == 2 && n > max_types)
        throw BudgetError("exact 2-medoid scan exceeds the configured type budget");
    const auto w = p.type_counts();

    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    if (k == 1) {
        for (int c = 0; c < n; ++c) {
            double cost = 0.0;
            for (int t = 0; t < n; ++t) cost += d.at(t, c) * static_cast<double>(w[static_cast<size_t>(t)]);
            if (cost < best_cost - 1e-12) {
                best_cost = cost;
                best = {c};
            }
        }
    } else {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                double cost = 0.0;
                for (int t = 0; t < n; ++t)
                    cost += std::min(d.at(t, a), d.at(t, b)) * static_cast<double>(w[static_cast<size_t>(t)]);
                if (cost < best_cost - 1e-12) {
                    best_cost = cost;
                    best = {a, b};
                }
            }
        }
    }
    return medoids_to_clustering(p, d, best);
}

Clustering exact_k_medoids(const Profile& p, int k, const DistanceSpec& spec, int max_types,
                           int jobs) {
    auto d = distance_matrix(p, spec, jobs);
    return exact_k_medoids_with_matrix(p, d, k, max_types);
}

namespace {

long long factorial_ll(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

namespace {

// Distance from a complete ranking to a type, via embeddings precomputed for
// the whole profile (h2h bytes or doubled Borda scores).
struct KemenyEvaluator {
    DistanceSpec spec;
    int m = 0;
    std::vector<std::vector<std::int8_t>> type_h2h;
    std::vector<std::vector<std::int64_t>> type_borda;

    explicit KemenyEvaluator(const Profile& p, const DistanceSpec& s) : spec(s), m(p.m) {
        for (const auto& [b, cnt] : p.ballots) {
            switch (spec.kind) {
                case DistanceSpec::Kind::borda_pessimistic:
                    type_borda.push_back(borda_embed(b, BordaConvention::pessimistic).doubled_coords);
                    break;
                case DistanceSpec::Kind::borda_averaged:
                    type_borda.push_back(borda_embed(b, BordaConvention::averaged).doubled_coords);
                    break;
                default: type_h2h.push_back(h2h_embed(b).coords); break;
            }
        }
    }

    double dist(const Ballot& ranking, int type, const std::vector<std::int8_t>& rank_h2h,
                const std::vector<std::int64_t>& rank_borda) const {
        switch (spec.kind) {
            case DistanceSpec::Kind::borda_pessimistic:
            case DistanceSpec::Kind::borda_averaged: {
                const auto& tv = type_borda[static_cast<size_t>(type)];
                std::int64_t l1 = 0;
                for (size_t i = 0; i < tv.size(); ++i) l1 += std::llabs(tv[i] - rank_borda[i]);
                return static_cast<double>(l1) / 4.0; // doubled coords, then half the L1
            }
            case DistanceSpec::Kind::head_to_head:
            case DistanceSpec::Kind::hausdorff: // equal on (partial, complete) pairs? not in
                                                // general, so fall through to the slow path
            case DistanceSpec::Kind::kp: break;
        }
        const auto& tv = type_h2h[static_cast<size_t>(type)];
        std::int64_t strong = 0, weak = 0;
        for (size_t i = 0; i < tv.size(); ++i) {
            const int prod = static_cast<int>(tv[i]) * static_cast<int>(rank_h2h[i]);
            if (prod < 0) ++strong;
            else if (tv[i] == 0) ++weak; // the complete ranking never ties
        }
        switch (spec.kind) {
            case DistanceSpec::Kind::head_to_head:
                return static_cast<double>(strong) + 0.5 * static_cast<double>(weak);
            case DistanceSpec::Kind::hausdorff:
                // against a complete ranking only one weak direction is populated
                return static_cast<double>(strong + weak);
            case DistanceSpec::Kind::kp:
                return static_cast<double>(strong) + spec.p * static_cast<double>(weak);
            default: return 0.0;
        }
    }
};

} // namespace

Clustering exact_kemeny(const Profile& p, int k, const DistanceSpec& spec, std::int64_t max_ops) {
    if (k != 1 && k != 2) throw std::invalid_argument("exact Kemeny supports k in {1,2}");
    const int m = p.m;
    const auto types = p.types();
    const auto w = p.type_counts();
    const int n = static_cast<int>(types.size());
    const long long rankings = factorial_ll(m);
    const std::int64_t ops = k == 1 ? rankings * n : rankings * n + rankings * (rankings - 1) / 2 * n;
    if (ops > max_ops)
        throw BudgetError("exact Kemeny enumeration exceeds the configured budget");

    // Enumerate complete rankings in lexicographic order.
    std::vector<CandidateId> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Ballot> all;
    all.reserve(static_cast<size_t>(rankings));
    do {
        all.emplace_back(perm, m);
    } while (std::next_permutation(perm.begin(), perm.end()));

    KemenyEvaluator eval(p, spec);
    auto ranking_h2h = [&](const Ballot& b) { return h2h_embed(b).coords; };
    auto ranking_borda = [&](const Ballot& b) {
        return borda_embed(b, BordaConvention::pessimistic).doubled_coords;
    };

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best;
    if (k == 1) {
        // Streams per-ranking costs; no rankings x types table is stored.
        for (int c = 0; c < static_cast<int>(rankings); ++c) {
            const auto rh = ranking_h2h(all[static_cast<size_t>(c)]);
            const auto rb = ranking_borda(all[static_cast<size_t>(c)]);
            double cost = 0.0;
            for (int t = 0; t < n; ++t)
                cost += eval.dist(all[static_cast<size_t>(c)], t, rh, rb) *
                        static_cast<double>(w[static_cast<size_t>(t)]);
            if (cost < best_cost - 1e-12) {
                best_cost = cost;
                best = {c};
            }
        }
    } else {
        std::vector<double> table(static_cast<size_t>(rankings) * n);
        for (size_t ri = 0; ri < all.size(); ++ri) {
            const auto rh = ranking_h2h(all[ri]);
            const auto rb = ranking_borda(all[ri]);
            for (int t = 0; t < n; ++t)
                table[ri * static_cast<size_t>(n) + static_cast<size_t>(t)] =
                    eval.dist(all[ri], t, rh, rb);
        }
        for (int a = 0; a < static_cast<int>(rankings); ++a) {
            const double* da = &table[static_cast<size_t>(a) * n];
            for (int b = a + 1; b < static_cast<int>(rankings); ++b) {
                const double* db = &table[static_cast<size_t>(b) * n];
                double cost = 0.0;
                for (int t = 0; t < n; ++t)
                    cost += std::min(da[t], db[t]) * static_cast<double>(w[static_cast<size_t>(t)]);
                if (cost < best_cost - 1e-12) {
                    best_cost = cost;
                    best = {a, b};
                }
            }
        }
    }

    Clustering out;
    out.k = k;
    std::sort(best.begin(), best.end());
    for (int c : best) {
        Clustering::Center ctr;
        ctr.kind = Clustering::Center::Kind::valid_ballot;
        ctr.ballot = all[static_cast<size_t>(c)];
        out.centers.push_back(std::move(ctr));
    }
    out.assignment.resize(static_cast<size_t>(n));
    out.cluster_costs.assign(static_cast<size_t>(k), 0.0);
    for (int t = 0; t < n; ++t) {
        int pick = 0;
        double bd = ballot_distance(types[static_cast<size_t>(t)],
                                    out.centers[0].ballot, spec);
        for (size_t c = 1; c < out.centers.size(); ++c) {
            double v = ballot_distance(types[static_cast<size_t>(t)],
                                       out.centers[c].ballot, spec);
            if (v < bd - 1e-12) {
                bd = v;
                pick = static_cast<int>(c);
            }
        }
        out.assignment[static_cast<size_t>(t)] = pick;
        out.cost += bd * static_cast<double>(w[static_cast<size_t>(t)]);
        out.cluster_costs[static_cast<size_t>(pick)] += bd * static_cast<double>(w[static_cast<size_t>(t)]);
    }
    return out;
}

std::vector<double> coordinatewise_median_center(const Profile& p, EmbeddingKind embedding) {
    const auto pts = embed_types(p, embedding);
    const auto w = p.type_counts();
    const int n = static_cast<int>(pts.size());
    if (n == 0) throw std::invalid_argument("empty profile");
    const size_t dim = pts[0].size();
    const long long total = p.voters();
    std::vector<double> out(dim);
    for (size_t i = 0; i < dim; ++i) {
        std::vector<std::pair<double, long long>> vals;
        vals.reserve(static_cast<size_t>(n));
        for (int t = 0; t < n; ++t) vals.emplace_back(pts[static_cast<size_t>(t)][i], w[static_cast<size_t>(t)]);
        std::sort(vals.begin(), vals.end());
        // Lower median: smallest value with cumulative weight >= ceil(total/2).
        const long long need = (total + 1) / 2;
        long long acc = 0;
        for (const auto& [v, cnt] : vals) {
            acc += cnt;
            if (acc >= need) {
                out[i] = v;
                break;
            }
        }
    }
    return out;
}

double silhouette_with_matrix(const Profile& p, const DistanceMatrix& d, const Clustering& c) {
    if (c.k < 2) throw std::invalid_argument("silhouette requires k >= 2");
    const auto w = p.type_counts();
    const int n = d.n;
    std::vector<long long> cluster_w(static_cast<size_t>(c.k), 0);
    for (int t = 0; t < n; ++t)
        cluster_w[static_cast<size_t>(c.assignment[static_cast<size_t>(t)])] += w[static_cast<size_t>(t)];

    double total_score = 0.0;
    long long total_w = 0;
    for (int t = 0; t < n; ++t) {
        const int ct = c.assignment[static_cast<size_t>(t)];
        const long long wt = w[static_cast<size_t>(t)];
        total_w += wt;
        if (cluster_w[static_cast<size_t>(ct)] <= 1) continue; // singleton voter scores 0
        std::vector<double> sums(static_cast<size_t>(c.k), 0.0);
        for (int u = 0; u < n; ++u)
            sums[static_cast<size_t>(c.assignment[static_cast<size_t>(u)])] +=
                d.at(t, u) * static_cast<double>(w[static_cast<size_t>(u)]);
        // Own copies are peers at distance zero; the voter itself is excluded.
        double a = sums[static_cast<size_t>(ct)] /
                   static_cast<double>(cluster_w[static_cast<size_t>(ct)] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int oc = 0; oc < c.k; ++oc) {
            if (oc == ct || cluster_w[static_cast<size_t>(oc)] == 0) continue;
            b = std::min(b, sums[static_cast<size_t>(oc)] /
                                static_cast<double>(cluster_w[static_cast<size_t>(oc)]));
        }
        if (!std::isfinite(b)) continue; // all other clusters empty
        double s = (b - a) / std::max(a, b);
        if (a == 0.0 && b == 0.0) s = 0.0;
        total_score += s * static_cast<double>(wt);
    }
    return total_score / static_cast<double>(total_w);
}

double silhouette(const Profile& p, const Clustering& c, const DistanceSpec& spec) {
    auto d = distance_matrix(p, spec);
    return silhouette_with_matrix(p, d, c);
}

PolarizationCertificate polarization_certificate(const Profile& p, const Ballot& x,
                                                 const Ballot& y, const DistanceSpec& spec) {
    if (x == y) throw std::invalid_argument("polarization centers must differ");
    PolarizationCertificate cert;
    cert.R = ballot_distance(x, y, spec);
    for (const auto& [b, cnt] : p.ballots)
        cert.r = std::max(cert.r, std::min(ballot_distance(b, x, spec), ballot_distance(b, y, spec)));
    cert.stable = cert.R > 4.0 * cert.r;
    cert.cross_metric_stable = cert.R > 10.0 * cert.r;
    return cert;
}

double partition_difference(const Profile& p, const Clustering& a, const Clustering& b) {
    if (a.k != b.k) throw std::invalid_argument("clusterings must share k");
    if (a.assignment.size() != b.assignment.size() ||
        a.assignment.size() != p.ballots.size())
        throw std::invalid_argument("clusterings must be over the same profile");
    const int k = a.k;
    if (k > 10) throw std::invalid_argument("partition difference supports k <= 10");
    const auto w = p.type_counts();
    std::vector<std::vector<long long>> overlap(static_cast<size_t>(k),
                                                std::vector<long long>(static_cast<size_t>(k), 0));
    long long total = 0;
    for (size_t t = 0; t < a.assignment.size(); ++t) {
        overlap[static_cast<size_t>(a.assignment[t])][static_cast<size_t>(b.assignment[t])] += w[t];
        total += w[t];
    }
    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    long long best = 0;
    do {
        long long agree = 0;
        for (int i = 0; i < k; ++i) agree += overlap[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])];
        best = std::max(best, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return 1.0 - static_cast<double>(best) / static_cast<double>(total);
}

} // namespace ballotgeo
