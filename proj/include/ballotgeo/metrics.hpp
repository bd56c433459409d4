#ifndef BALLOTGEO_METRICS_HPP
#define BALLOTGEO_METRICS_HPP

#include <cstdint>
#include <vector>

#include "ballotgeo/core.hpp"
#include "ballotgeo/halfint.hpp"

namespace ballotgeo {

enum class BordaConvention {
    pessimistic, // tied candidates get the fewest points of any tie resolution
    averaged,    // tied candidates get the mean of their tier's positions
};

/// Borda scores, one per candidate. Entries are multiples of 1/2 (integers
/// under the pessimistic convention); stored doubled for exact arithmetic.
struct BordaVector {
    int m = 0;
    BordaConvention convention = BordaConvention::pessimistic;
    std::vector<std::int64_t> doubled_coords;

    double at(int i) const { return static_cast<double>(doubled_coords[static_cast<size_t>(i)]) / 2.0; }
    std::vector<double> values() const;
};

/// Pairwise comparison vector over the C(m,2) candidate pairs (i,j), i<j,
/// in lexicographic pair order. +1 means the first-indexed candidate is
/// ranked higher (better), 0 a tie, -1 the second.
struct H2HVector {
    int m = 0;
    std::vector<std::int8_t> coords;
};

struct DisagreementCount {
    std::int64_t strong = 0;        // ordered oppositely by the two ballots
    std::int64_t weak = 0;          // ordered by one, tied by the other
    std::int64_t weak_forward = 0;  // tied in x, ordered in y
    std::int64_t weak_backward = 0; // tied in y, ordered in x
};

BordaVector borda_embed(const GeneralizedBallot& b, BordaConvention convention);
BordaVector borda_embed(const Ballot& b, BordaConvention convention);

H2HVector h2h_embed(const GeneralizedBallot& b);
H2HVector h2h_embed(const Ballot& b);

DisagreementCount disagreements(const GeneralizedBallot& x, const GeneralizedBallot& y);
DisagreementCount disagreements(const Ballot& x, const Ballot& y);

/// Head-to-head distance: half the L1 gap of the h2h vectors; equals
/// str + wk/2 (both routes computed, equality asserted).
HalfInt dist_h(const GeneralizedBallot& x, const GeneralizedBallot& y);
HalfInt dist_h(const Ballot& x, const Ballot& y);

/// Borda distance: half the L1 gap of the Borda vectors.
HalfInt dist_b(const GeneralizedBallot& x, const GeneralizedBallot& y, BordaConvention convention);
HalfInt dist_b(const Ballot& x, const Ballot& y, BordaConvention convention);

/// str + p*wk for p in (0,1]. A metric for p in [1/2,1]; K^(1/2) = dist_h.
/// Unlike the half-integer distances this is a plain double; compare with a
/// 1e-9 tolerance.
double dist_kp(const GeneralizedBallot& x, const GeneralizedBallot& y, double p);
double dist_kp(const Ballot& x, const Ballot& y, double p);

/// Hausdorff distance between the completion clouds under swap distance:
/// str + max(weak_forward, weak_backward). Defined on partial ballots only.
std::int64_t dist_hausdorff(const Ballot& x, const Ballot& y);

/// Exact rational: total swap distance over `count` completion pairs.
struct CompletionAverage {
    std::int64_t total = 0;
    std::int64_t count = 0;
    double value() const { return static_cast<double>(total) / static_cast<double>(count); }
};

/// Average Kendall tau distance over completions of both ballots, where a
/// pair of candidates tied on both sides resolves the same way in both
/// completions (each completion pair comes from one ordering of the jointly
/// unranked candidates). Equals dist_h exactly. Throws BudgetError when the
/// ordering count exceeds max_orderings.
CompletionAverage expected_completion_swaps_exact(const Ballot& x, const Ballot& y,
                                                  std::int64_t max_orderings = 4000000);

/// Monte Carlo estimate of the same average (random shared tie-break order).
double expected_completion_swaps_montecarlo(const Ballot& x, const Ballot& y,
                                            std::uint64_t seed, int trials);

/// Kendall tau (inversion count) between complete ballots.
std::int64_t kendall_tau(const Ballot& x, const Ballot& y);

} // namespace ballotgeo

#endif
