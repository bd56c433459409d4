#include "ballotgeo/graphs.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "ballotgeo/errors.hpp"

namespace ballotgeo {

int BallotGraph::index_of(const Ballot& b) const {
    auto it = ballot_index_.find(b);
    if (it == ballot_index_.end()) throw std::invalid_argument("ballot is not a node of this graph");
    return it->second;
}

int BallotGraph::index_of(const GeneralizedBallot& b) const {
    auto it = generalized_index_.find(b);
    if (it == generalized_index_.end()) throw std::invalid_argument("ballot is not a node of this graph");
    return it->second;
}

std::string BallotGraph::node_label(int idx) const {
    if (!generalized_nodes_.empty()) return generalized_nodes_[static_cast<size_t>(idx)].str();
    if (include_empty_ && idx == empty_node_index()) return "-";
    return ballot_nodes_[static_cast<size_t>(idx)].str();
}

void BallotGraph::add_edge(int a, int b, std::int64_t doubled_weight) {
    adjacency_[static_cast<size_t>(a)].emplace_back(b, doubled_weight);
    adjacency_[static_cast<size_t>(b)].emplace_back(a, doubled_weight);
}

namespace {

// Mention count of a canonical ballot: a stored complete ballot doubles as
// the length-(m-1) ballot, so its effective length is m-1.
int effective_length(const Ballot& b) {
    return b.complete() ? b.m() - 1 : b.length();
}

} // namespace

BallotGraph build_graph(int m, GraphVariant variant, GraphOptions opts) {
    if (m < 2) throw std::invalid_argument("ballot graphs need at least 2 candidates");
    BallotGraph g;
    g.variant_ = variant;
    g.m_ = m;

    const bool generalized =
        variant == GraphVariant::generalized || variant == GraphVariant::generalized_shortcut;

    if (generalized) {
        // Fubini-number node count, checked before enumerating.
        long long fubini = 1;
        {
            std::vector<long long> f(static_cast<size_t>(m) + 1, 0);
            f[0] = 1;
            for (int n = 1; n <= m; ++n) {
                long long total = 0;
                long long c = 1; // C(n,k), updated incrementally
                for (int k = 1; k <= n; ++k) {
                    c = c * (n - k + 1) / k;
                    total += c * f[static_cast<size_t>(n - k)];
                }
                f[static_cast<size_t>(n)] = total;
            }
            fubini = f[static_cast<size_t>(m)];
        }
        if (fubini > opts.max_nodes)
            throw BudgetError("generalized ballot graph exceeds the node budget");
        g.generalized_nodes_ = enumerate_generalized(m);
        for (size_t i = 0; i < g.generalized_nodes_.size(); ++i)
            g.generalized_index_[g.generalized_nodes_[i]] = static_cast<int>(i);
        g.adjacency_.resize(g.generalized_nodes_.size());

        for (size_t i = 0; i < g.generalized_nodes_.size(); ++i) {
            const auto& node = g.generalized_nodes_[i];
            const auto& tiers = node.tiers();
            // Merge edges, generated once from the finer side.
            for (int t = 0; t + 1 < node.tier_count(); ++t) {
                std::vector<std::vector<CandidateId>> merged;
                merged.reserve(tiers.size() - 1);
                for (int s = 0; s < node.tier_count(); ++s) {
                    if (s == t) {
                        std::vector<CandidateId> tier = tiers[static_cast<size_t>(t)];
                        tier.insert(tier.end(), tiers[static_cast<size_t>(t) + 1].begin(),
                                    tiers[static_cast<size_t>(t) + 1].end());
                        merged.push_back(std::move(tier));
                        ++s;
                    } else {
                        merged.push_back(tiers[static_cast<size_t>(s)]);
                    }
                }
                const std::int64_t r = static_cast<std::int64_t>(tiers[static_cast<size_t>(t)].size());
                const std::int64_t s2 = static_cast<std::int64_t>(tiers[static_cast<size_t>(t) + 1].size());
                int j = g.index_of(GeneralizedBallot(std::move(merged), m));
                g.add_edge(static_cast<int>(i), j, r * s2); // weight rs/2, doubled
            }
            if (variant == GraphVariant::generalized_shortcut) {
                // Cross-tier swap of two candidates, weight = pessimistic score gap.
                std::vector<int> first, last;
                node.tier_positions(first, last);
                for (int ta = 0; ta < node.tier_count(); ++ta) {
                    for (int tb = ta + 1; tb < node.tier_count(); ++tb) {
                        const std::int64_t gap =
                            last[static_cast<size_t>(tiers[static_cast<size_t>(tb)][0])] -
                            last[static_cast<size_t>(tiers[static_cast<size_t>(ta)][0])];
                        for (CandidateId a : tiers[static_cast<size_t>(ta)]) {
                            for (CandidateId b : tiers[static_cast<size_t>(tb)]) {
                                auto swapped = tiers;
                                auto& sa = swapped[static_cast<size_t>(ta)];
                                auto& sb = swapped[static_cast<size_t>(tb)];
                                *std::find(sa.begin(), sa.end(), a) = b;
                                *std::find(sb.begin(), sb.end(), b) = a;
                                GeneralizedBallot target(std::move(swapped), m);
                                int j = g.index_of(target);
                                if (static_cast<int>(i) < j)
                                    g.add_edge(static_cast<int>(i), j, 2 * gap);
                            }
                        }
                    }
                }
            }
        }
        return g;
    }

    if (count_ballots(m) + (opts.include_empty ? 1 : 0) > opts.max_nodes)
        throw BudgetError("ballot graph exceeds the node budget");
    g.include_empty_ = opts.include_empty;
    g.ballot_nodes_ = enumerate_ballots(m);
    for (size_t i = 0; i < g.ballot_nodes_.size(); ++i)
        g.ballot_index_[g.ballot_nodes_[i]] = static_cast<int>(i);
    g.adjacency_.resize(g.ballot_nodes_.size() + (opts.include_empty ? 1 : 0));

    for (size_t i = 0; i < g.ballot_nodes_.size(); ++i) {
        const Ballot& b = g.ballot_nodes_[i];
        const auto& r = b.ranking();
        const int stored = b.length();
        const int eff = effective_length(b);

        // Swap edges within the ranked prefix. Generated once per unordered
        // pair by requiring i < j on node indices.
        const int max_gap = variant == GraphVariant::shortcut ? stored - 1 : 1;
        for (int p = 0; p < stored; ++p) {
            for (int gap = 1; gap <= max_gap && p + gap < stored; ++gap) {
                std::vector<CandidateId> swapped = r;
                std::swap(swapped[static_cast<size_t>(p)], swapped[static_cast<size_t>(p + gap)]);
                int j = g.index_of(Ballot(std::move(swapped), m));
                if (static_cast<int>(i) < j) g.add_edge(static_cast<int>(i), j, 2ll * gap);
            }
        }

        // Truncation: drop the last effective candidate. The longer side of
        // the edge has effective length `eff`, so the weight is (m-eff)/2.
        if (eff >= 2) {
            std::vector<CandidateId> prefix(r.begin(), r.begin() + (eff - 1));
            int j = g.index_of(Ballot(std::move(prefix), m));
            g.add_edge(static_cast<int>(i), j, m - eff);
        } else if (opts.include_empty) {
            g.add_edge(static_cast<int>(i), g.empty_node_index(), m - 1);
        }
        // Extensions are generated from the shorter side as truncations of
        // the longer one, so nothing more to add here.
    }
    return g;
}

std::vector<HalfInt> path_distances_from(const BallotGraph& g, int from) {
    const auto& adj = g.adjacency();
    const std::int64_t INF = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(adj.size(), INF);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<size_t>(from)] = 0;
    pq.emplace(0, from);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[static_cast<size_t>(u)]) continue;
        for (auto [v, w] : adj[static_cast<size_t>(u)]) {
            if (d + w < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = d + w;
                pq.emplace(d + w, v);
            }
        }
    }
    std::vector<HalfInt> out(dist.size());
    for (size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] == INF) throw std::runtime_error("graph is disconnected");
        out[i] = HalfInt::from_doubled(dist[i]);
    }
    return out;
}

HalfInt path_distance(const BallotGraph& g, int from, int to) {
    if (from < 0 || from >= g.node_count() || to < 0 || to >= g.node_count())
        throw std::invalid_argument("node index out of range");
    return path_distances_from(g, from)[static_cast<size_t>(to)];
}

std::string export_edge_list(const BallotGraph& g) {
    std::ostringstream out;
    const auto& adj = g.adjacency();
    for (int i = 0; i < g.node_count(); ++i) {
        for (auto [j, w] : adj[static_cast<size_t>(i)]) {
            if (i < j) out << g.node_label(i) << '\t' << g.node_label(j) << '\t' << w << '\n';
        }
    }
    return out.str();
}

namespace {

// One extension/truncation move between mention counts a and b = a +- 1.
// The m-1 <-> m transition is the identification, not an edge.
void push_length_move(GeodesicPlan& plan, GeodesicMove::Kind kind, const Ballot& from,
                      const Ballot& to, int longer_mentions, int m) {
    if (longer_mentions >= m) {
        assert(from == to);
        return;
    }
    GeodesicMove mv;
    mv.kind = kind;
    mv.from = from;
    mv.to = to;
    mv.weight = HalfInt::from_doubled(m - longer_mentions);
    plan.moves.push_back(mv);
    plan.waypoints.push_back(to);
    plan.total += mv.weight;
}

} // namespace

GeodesicPlan borda_geodesic(const Ballot& x, const Ballot& y) {
    if (x.m() != y.m()) throw std::invalid_argument("mismatched candidate counts");
    const int m = x.m();
    GeodesicPlan plan;
    plan.waypoints.push_back(x);
    if (x == y) return plan;

    std::vector<char> in_x(static_cast<size_t>(m), 0), in_y(static_cast<size_t>(m), 0);
    for (CandidateId c : x.ranking()) in_x[static_cast<size_t>(c)] = 1;
    for (CandidateId c : y.ranking()) in_y[static_cast<size_t>(c)] = 1;

    // x' appends candidates mentioned only in y, in y's order.
    std::vector<CandidateId> mentions = x.ranking();
    Ballot cur = x;
    for (CandidateId c : y.ranking()) {
        if (in_x[static_cast<size_t>(c)]) continue;
        mentions.push_back(c);
        Ballot next(mentions, m);
        push_length_move(plan, GeodesicMove::Kind::extension, cur, next,
                         static_cast<int>(mentions.size()), m);
        cur = next;
    }

    // y' = y extended by candidates mentioned only in x, in x's order.
    std::vector<CandidateId> target_mentions = y.ranking();
    for (CandidateId c : x.ranking())
        if (!in_y[static_cast<size_t>(c)]) target_mentions.push_back(c);
    Ballot target(target_mentions, m);

    // Swap segment: state-vector walk from x' to y'.
    {
        std::vector<int> target_pos(static_cast<size_t>(m), -1);
        const auto& tr = target.ranking();
        for (int p = 0; p < target.length(); ++p) target_pos[static_cast<size_t>(tr[static_cast<size_t>(p)])] = p;
        assert(cur.length() == target.length());
        std::vector<CandidateId> work = cur.ranking();
        while (true) {
            int first_up = -1;
            for (int p = 0; p < static_cast<int>(work.size()); ++p) {
                if (target_pos[static_cast<size_t>(work[static_cast<size_t>(p)])] < p) {
                    first_up = p;
                    break;
                }
            }
            if (first_up < 0) break;
            int last_down = -1;
            for (int p = first_up - 1; p >= 0; --p) {
                if (target_pos[static_cast<size_t>(work[static_cast<size_t>(p)])] > p) {
                    last_down = p;
                    break;
                }
            }
            assert(last_down >= 0);
            std::swap(work[static_cast<size_t>(first_up)], work[static_cast<size_t>(last_down)]);
            GeodesicMove mv;
            mv.kind = GeodesicMove::Kind::swap;
            mv.from = cur;
            mv.to = Ballot(work, m);
            mv.gap = first_up - last_down;
            mv.weight = HalfInt::from_int(mv.gap);
            plan.total += mv.weight;
            plan.moves.push_back(mv);
            cur = mv.to;
            plan.waypoints.push_back(cur);
        }
        assert(cur == target);
    }

    // Truncations: peel the appended candidates back off to reach y.
    std::vector<CandidateId> peel = target_mentions;
    while (static_cast<int>(peel.size()) > y.length()) {
        const int longer = static_cast<int>(peel.size());
        peel.pop_back();
        Ballot next(peel, m);
        push_length_move(plan, GeodesicMove::Kind::truncation, cur, next, longer, m);
        cur = next;
    }
    assert(cur == y);
    return plan;
}

std::int64_t shortcut_savings(const GeodesicPlan& plan) {
    std::int64_t savings = 0;
    for (const auto& mv : plan.moves)
        if (mv.kind == GeodesicMove::Kind::swap) savings += mv.gap - 1;
    return savings;
}

} // namespace ballotgeo
