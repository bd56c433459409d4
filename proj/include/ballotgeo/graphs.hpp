#ifndef BALLOTGEO_GRAPHS_HPP
#define BALLOTGEO_GRAPHS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ballotgeo/core.hpp"
#include "ballotgeo/halfint.hpp"
#include "ballotgeo/metrics.hpp"

namespace ballotgeo {

enum class GraphVariant {
    basic,                // neighbor swaps + truncation/extension; path metric = d_H
    shortcut,             // basic + general swaps of weight = rank gap; path metric = d_B
    generalized,          // weak orders, adjacent-tier merges of weight rs/2; path metric = d_H
    generalized_shortcut, // experimental: merges + cross-tier swaps; no metric claim
};

struct GraphOptions {
    bool include_empty = false;     // add the empty-ballot node, making G_m m-regular
    std::int64_t max_nodes = 200000;
};

/// Immutable weighted graph on canonical ballots (or weak orders). Node
/// indices follow canonical ballot order; weights are exact half-integers
/// stored doubled.
class BallotGraph {
public:
    GraphVariant variant() const { return variant_; }
    int m() const { return m_; }
    int node_count() const { return static_cast<int>(adjacency_.size()); }
    bool has_empty_node() const { return include_empty_; }
    int empty_node_index() const { return static_cast<int>(ballot_nodes_.size()); }

    const std::vector<Ballot>& ballot_nodes() const { return ballot_nodes_; }
    const std::vector<GeneralizedBallot>& generalized_nodes() const { return generalized_nodes_; }

    int index_of(const Ballot& b) const;
    int index_of(const GeneralizedBallot& b) const;
    std::string node_label(int idx) const;

    /// Per-node list of (neighbor index, doubled weight).
    const std::vector<std::vector<std::pair<int, std::int64_t>>>& adjacency() const {
        return adjacency_;
    }
    int degree(int idx) const { return static_cast<int>(adjacency_[static_cast<size_t>(idx)].size()); }

    friend BallotGraph build_graph(int m, GraphVariant variant, GraphOptions opts);

private:
    GraphVariant variant_ = GraphVariant::basic;
    int m_ = 0;
    bool include_empty_ = false;
    std::vector<Ballot> ballot_nodes_;
    std::vector<GeneralizedBallot> generalized_nodes_;
    std::map<Ballot, int> ballot_index_;
    std::map<GeneralizedBallot, int> generalized_index_;
    std::vector<std::vector<std::pair<int, std::int64_t>>> adjacency_;

    void add_edge(int a, int b, std::int64_t doubled_weight);
};

/// Throws BudgetError when the node count would exceed opts.max_nodes.
BallotGraph build_graph(int m, GraphVariant variant, GraphOptions opts = {});

/// Exact shortest-path distance (Dijkstra on doubled weights).
HalfInt path_distance(const BallotGraph& g, int from, int to);

/// Single-source distances to every node.
std::vector<HalfInt> path_distances_from(const BallotGraph& g, int from);

/// One line per edge: `node_a<TAB>node_b<TAB>doubled_weight`, nodes as
/// 1-based candidate sequences joined by '>'.
std::string export_edge_list(const BallotGraph& g);

struct GeodesicMove {
    enum class Kind { extension, swap, truncation };
    Kind kind;
    Ballot from, to;
    int gap = 0; // rank gap of a swap move; 0 otherwise
    HalfInt weight;
};

/// A shortcut-graph path x -> x' (extensions) -> y' (general swaps) -> y
/// (truncations) whose total weight is the pessimistic Borda distance.
struct GeodesicPlan {
    std::vector<Ballot> waypoints;
    std::vector<GeodesicMove> moves;
    HalfInt total;
};

/// State-vector construction: repeatedly swap the first candidate that must
/// move up with the last candidate before it that must move down.
GeodesicPlan borda_geodesic(const Ballot& x, const Ballot& y);

/// Sum of (gap - 1) over the plan's shortcut swaps; equals d_H - d_B for the
/// plan's endpoints.
std::int64_t shortcut_savings(const GeodesicPlan& plan);

} // namespace ballotgeo

#endif
