#ifndef BALLOTGEO_CLUSTERING_HPP
#define BALLOTGEO_CLUSTERING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ballotgeo/core.hpp"
#include "ballotgeo/metrics.hpp"

namespace ballotgeo {

/// Which ballot distance drives an algorithm.
struct DistanceSpec {
    enum class Kind { borda_pessimistic, borda_averaged, head_to_head, hausdorff, kp };
    Kind kind = Kind::head_to_head;
    double p = 0.5; // K^(p) parameter; metric for p in [1/2, 1]

    static DistanceSpec parse(const std::string& name); // "db","db-avg","dh","haus","kp:<p>"
    std::string str() const;
};

/// Distance between canonical ballots under a spec. All values are exact
/// half-integers except K^(p) with irrational-ish p.
double ballot_distance(const Ballot& x, const Ballot& y, const DistanceSpec& spec);

/// Symmetric matrix over the profile's distinct ballot types, in canonical
/// type order. jobs > 1 splits rows across threads; output is independent of
/// the thread count.
struct DistanceMatrix {
    int n = 0;
    std::vector<double> values; // row-major n*n

    double at(int i, int j) const { return values[static_cast<size_t>(i) * n + j]; }
};

DistanceMatrix distance_matrix(const Profile& p, const DistanceSpec& spec, int jobs = 1);

/// Coordinate embeddings used by Lloyd's algorithm and median centers.
enum class EmbeddingKind { borda_pessimistic, borda_averaged, head_to_head };

std::vector<std::vector<double>> embed_types(const Profile& p, EmbeddingKind kind);

struct Clustering {
    struct Center {
        enum class Kind { cast_ballot, valid_ballot, coordinate };
        Kind kind = Kind::cast_ballot;
        Ballot ballot;               // cast_ballot / valid_ballot
        std::vector<double> coords;  // coordinate centers (Lloyd, medians)
    };
    int k = 0;
    std::vector<Center> centers;
    std::vector<int> assignment; // per type, canonical type order
    double cost = 0.0;           // summed voter-weighted distance to assigned center
    std::vector<double> cluster_costs; // cost split per cluster
    /// Voter count per cluster.
    std::vector<long long> sizes(const Profile& p) const;
};

/// Partitioning Around Medoids over cast ballot types, voter-weighted.
/// BUILD + full SWAP passes; `restarts` extra random initializations.
Clustering pam(const Profile& p, int k, const DistanceSpec& spec, std::uint64_t seed,
               int restarts = 2, int jobs = 1);

/// Same, reusing a precomputed matrix.
Clustering pam_with_matrix(const Profile& p, const DistanceMatrix& d, int k,
                           std::uint64_t seed, int restarts);

/// Weighted k-means on embedding coordinates, k-means++ seeding, squared
/// Euclidean assignment. Cost is the k-means objective.
Clustering lloyd(const Profile& p, int k, EmbeddingKind embedding, std::uint64_t seed,
                 int restarts = 2);

/// Provably optimal medoids among cast types, k in {1,2}, by exhaustive scan
/// of the distance matrix. Throws BudgetError past max_types for k=2.
Clustering exact_k_medoids(const Profile& p, int k, const DistanceSpec& spec,
                           int max_types = 2000, int jobs = 1);
Clustering exact_k_medoids_with_matrix(const Profile& p, const DistanceMatrix& d, int k,
                                       int max_types = 2000);

/// Provably optimal complete-ranking centers, k in {1,2}. Enumerates all m!
/// rankings (k=1) or all pairs (k=2); budget-guarded.
Clustering exact_kemeny(const Profile& p, int k, const DistanceSpec& spec,
                        std::int64_t max_ops = 2000000000ll);

/// Voter-weighted per-coordinate lower median of the embedded types; the L1
/// minimizer over free coordinate vectors.
std::vector<double> coordinatewise_median_center(const Profile& p, EmbeddingKind embedding);

/// Mean silhouette over voters: (b-a)/max(a,b), own copies counted as
/// within-cluster peers, singleton-voter clusters scoring 0.
double silhouette(const Profile& p, const Clustering& c, const DistanceSpec& spec);
double silhouette_with_matrix(const Profile& p, const DistanceMatrix& d, const Clustering& c);

struct PolarizationCertificate {
    double R = 0.0; // separation d(x,y)
    double r = 0.0; // max over cast types of distance to the nearer center
    bool stable = false;              // R > 4r: unique optimal 2-clustering
    bool cross_metric_stable = false; // R > 10r: stable under 2-biLipschitz metrics
};

PolarizationCertificate polarization_certificate(const Profile& p, const Ballot& x,
                                                 const Ballot& y, const DistanceSpec& spec);

/// Minimum voter fraction that must be reclassified to turn one clustering
/// into the other, over all k! label matchings.
double partition_difference(const Profile& p, const Clustering& a, const Clustering& b);

} // namespace ballotgeo

#endif
