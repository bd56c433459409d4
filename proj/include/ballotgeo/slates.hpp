#ifndef BALLOTGEO_SLATES_HPP
#define BALLOTGEO_SLATES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ballotgeo/core.hpp"
#include "ballotgeo/metrics.hpp"

namespace ballotgeo {

/// Exact non-negative rational, reduced. Candidate dissimilarities are
/// rationals with small denominators; keeping them exact makes the
/// completion-cloud oracle comparisons tolerance-free.
struct Frac {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Frac make(std::int64_t num, std::int64_t den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend Frac operator+(Frac a, Frac b);
    friend bool operator==(Frac a, Frac b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Frac a, Frac b) { return !(a == b); }
    friend bool operator<=(Frac a, Frac b);
};

enum class DissimKind { rank_difference, completion_cloud };

/// Symmetric m x m candidate dissimilarity, exact entries.
struct CandidateDissimilarity {
    DissimKind kind = DissimKind::rank_difference;
    BordaConvention convention = BordaConvention::pessimistic;
    int m = 0;
    std::vector<Frac> entries; // row-major m*m

    const Frac& frac_at(int i, int j) const { return entries[static_cast<size_t>(i) * m + j]; }
    double at(int i, int j) const { return frac_at(i, j).value(); }
};

/// D_B: voter-weighted average of |b(s)_i - b(s)_j| over cast ballots.
/// Under the pessimistic convention all unmentioned candidates collapse to
/// score zero, so jointly unpopular candidates look identical.
CandidateDissimilarity dissim_rank_difference(const Profile& p, BordaConvention convention);

/// D-bar_B: voter-weighted average over cast ballots of the expected
/// absolute rank gap over uniform completions, in closed form.
CandidateDissimilarity dissim_completion_cloud(const Profile& p);

/// Expected |rank(i) - rank(j)| over the uniform completions of one ballot.
Frac expected_rank_gap(const Ballot& b, CandidateId i, CandidateId j);

enum class Linkage { single, average, complete };

struct SlatePartition {
    enum class Method { centers, agglomerative, simplex_optimization };
    Method method = Method::centers;
    int m = 0;
    int k = 0;
    std::vector<std::vector<CandidateId>> slates; // disjoint, cover all candidates
    std::vector<CandidateId> centers;             // centers method only
    struct Merge {
        std::vector<CandidateId> left, right;
        double distance = 0.0;
    };
    std::vector<Merge> merge_history; // agglomerative only, full dendrogram

    int slate_of(CandidateId c) const;
};

/// Exhaustive optimal k-medoid over candidates; slates are the Voronoi cells
/// of the winning centers, ties toward the lower candidate index.
SlatePartition slates_by_centers(const Profile& p, int k, const CandidateDissimilarity& dissim);

/// Hierarchical merging from singletons; linkage distances evaluated on the
/// original dissimilarity. Stops at k blocks but records every merge.
SlatePartition slates_by_agglomeration(const Profile& p, int k,
                                       const CandidateDissimilarity& dissim, Linkage linkage);

/// Exhaustive scan over all partitions of the candidates into k slates,
/// minimizing the voter-weighted Euclidean distance from each ballot's
/// simplex image to its nearest vertex. Exponential in m; guarded to
/// m <= 10 and k <= 3.
SlatePartition slates_by_simplex_optimization(const Profile& p, int k);

/// Borda vector of the two-tier ballot (slate, complement). Under the
/// default pessimistic convention members score m - |slate| and the
/// complement scores 0.
BordaVector slate_embedding(const SlatePartition& s, int slate_index,
                            BordaConvention convention = BordaConvention::pessimistic);

enum class SlateAssignRule { nearest_embedding, borda_per_candidate };

/// Per-type slate index. nearest_embedding: closest slate point under
/// half-L1 of Borda vectors (same convention on both sides).
/// borda_per_candidate: most Borda points per slate member. Ties toward the
/// lower slate index.
std::vector<int> assign_ballots_to_slates(const Profile& p, const SlatePartition& s,
                                          SlateAssignRule rule,
                                          BordaConvention convention = BordaConvention::pessimistic);

struct SimplexPoint {
    std::vector<double> coords; // non-negative, sum 1
    bool degenerate = false;    // ballot awarded zero points; mapped to barycenter
    /// Canonical integer key (coords scaled to smallest common form), used to
    /// aggregate equal points exactly.
    std::vector<std::int64_t> key;
};

/// f(sigma): per-slate average pessimistic Borda awards, normalized to the
/// simplex. The nearest vertex is the borda_per_candidate assignment.
SimplexPoint simplex_map(const Ballot& b, const SlatePartition& s);

} // namespace ballotgeo

#endif
