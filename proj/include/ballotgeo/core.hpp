#ifndef BALLOTGEO_CORE_HPP
#define BALLOTGEO_CORE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ballotgeo {

/// Candidates are dense 0-based indices into a profile's roster.
using CandidateId = int;

/// A partial or complete ranking of candidates. Unlisted candidates are
/// semantically tied in last place. Stored canonically: a ranking of length
/// m-1 determines the last candidate, so it is stored as its completion and
/// no ballot of length m-1 ever exists.
class Ballot {
public:
    Ballot() = default;
    /// Canonicalizes; throws std::invalid_argument on duplicates, out-of-range
    /// indices or empty input.
    Ballot(std::vector<CandidateId> ranking, int m);

    int m() const { return m_; }
    int length() const { return static_cast<int>(ranking_.size()); }
    bool complete() const { return length() == m_; }
    const std::vector<CandidateId>& ranking() const { return ranking_; }
    CandidateId at(int pos) const { return ranking_[static_cast<size_t>(pos)]; }

    /// Candidates not listed, ascending.
    std::vector<CandidateId> unranked() const;

    /// (length, lexicographic) order; total on ballots sharing one roster.
    friend bool operator<(const Ballot& a, const Ballot& b) {
        if (a.ranking_.size() != b.ranking_.size()) return a.ranking_.size() < b.ranking_.size();
        if (a.ranking_ != b.ranking_) return a.ranking_ < b.ranking_;
        return a.m_ < b.m_;
    }
    friend bool operator==(const Ballot& a, const Ballot& b) {
        return a.m_ == b.m_ && a.ranking_ == b.ranking_;
    }
    friend bool operator!=(const Ballot& a, const Ballot& b) { return !(a == b); }

    /// 1-based indices joined by '>', e.g. "1>6".
    std::string str() const;

private:
    std::vector<CandidateId> ranking_;
    int m_ = 0;
};

/// A weak order: disjoint tiers of mutually tied candidates covering the
/// whole roster. Tiers are stored sorted; partial and complete ballots embed
/// as singleton tiers followed by one trailing tier of unlisted candidates.
class GeneralizedBallot {
public:
    GeneralizedBallot() = default;
    /// Throws std::invalid_argument unless the tiers are non-empty, disjoint
    /// and cover 0..m-1.
    GeneralizedBallot(std::vector<std::vector<CandidateId>> tiers, int m);
    explicit GeneralizedBallot(const Ballot& b);

    int m() const { return m_; }
    int tier_count() const { return static_cast<int>(tiers_.size()); }
    const std::vector<std::vector<CandidateId>>& tiers() const { return tiers_; }

    /// Tier index of each candidate.
    std::vector<int> tier_of() const;
    /// Last 1-based position occupied by each candidate's tier (the
    /// pessimistic rank), and first position (for the averaged rank).
    void tier_positions(std::vector<int>& first_pos, std::vector<int>& last_pos) const;

    /// The equivalent partial ballot when ties occur only in the trailing
    /// tier; nullopt for interior ties or the all-tied order.
    std::optional<Ballot> as_partial() const;

    friend bool operator<(const GeneralizedBallot& a, const GeneralizedBallot& b) {
        if (a.m_ != b.m_) return a.m_ < b.m_;
        return a.tiers_ < b.tiers_;
    }
    friend bool operator==(const GeneralizedBallot& a, const GeneralizedBallot& b) {
        return a.m_ == b.m_ && a.tiers_ == b.tiers_;
    }
    friend bool operator!=(const GeneralizedBallot& a, const GeneralizedBallot& b) { return !(a == b); }

    /// 1-based, tiers of size > 1 braced: "1>{2,3}>4".
    std::string str() const;

private:
    std::vector<std::vector<CandidateId>> tiers_;
    int m_ = 0;
};

/// A multiset of canonical ballots over one candidate roster.
struct Profile {
    int m = 0;
    std::vector<std::string> names;   // size m; defaults to "1".."m"
    std::vector<std::string> party;   // size m, entries may be empty
    std::map<Ballot, long long> ballots;
    int seats = 0;                    // 0 = unknown
    std::string title;
    /// As-cast ballot lengths (before the length-(m-1) identification),
    /// recorded at ingest; metric code always uses canonical ballots.
    std::map<int, long long> cast_length_hist;
    /// Ingest provenance: candidates removed by withdrawal compaction and
    /// ballots dropped because nothing remained on them.
    int withdrawn_candidates = 0;
    long long dropped_ballots = 0;

    long long voters() const;
    int type_count() const { return static_cast<int>(ballots.size()); }
    /// Adds `count` copies, canonicalizing and recording the as-cast length.
    void add(const std::vector<CandidateId>& raw, long long count);
    void add(const Ballot& b, long long count);
    /// Distinct types in canonical order.
    std::vector<Ballot> types() const;
    std::vector<long long> type_counts() const;
};

/// Canonical form of a raw ranking: length-(m-1) inputs are extended to
/// complete ballots, everything else is unchanged.
Ballot canonicalize(const std::vector<CandidateId>& raw, int m);

/// |Omega_m|: partial and complete ballots, excluding the empty ballot,
/// under the length-(m-1) identification. count(1)=1, count(2)=2,
/// count(m) = m*count(m-1) + m.
long long count_ballots(int m);

/// All complete extensions of a ballot: every ordering of the unranked
/// suffix appended to the ranked prefix. Size (m-len)!.
std::vector<Ballot> completions(const Ballot& b);

/// Coarsest partition in which two candidates share a block iff they share
/// a tier in both inputs. Blocks sorted by smallest member.
std::vector<std::vector<CandidateId>> common_refinement(const GeneralizedBallot& a,
                                                        const GeneralizedBallot& b);

/// All canonical ballots of Omega_m in (length, lex) order.
std::vector<Ballot> enumerate_ballots(int m);

/// All generalized ballots (weak orders) of Omega~_m, deterministic order.
/// Counted by the Fubini numbers: 13, 75, 541 for m = 3, 4, 5.
std::vector<GeneralizedBallot> enumerate_generalized(int m);

/// Parses a ballot literal: candidates joined by '>', each a 1-based index,
/// a name resolvable against `names`, or (when the roster is unnamed) a
/// single letter A.. Z mapping to index 0..25. Braced groups "{2,3}" form
/// tiers. Returns a generalized ballot; use as_partial() for metrics that
/// require partial ballots.
GeneralizedBallot parse_ballot_literal(const std::string& text, int m,
                                       const std::vector<std::string>* names = nullptr);

} // namespace ballotgeo

#endif
