#ifndef BALLOTGEO_INGEST_HPP
#define BALLOTGEO_INGEST_HPP

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ballotgeo/core.hpp"

namespace ballotgeo {

/// A parsed BLT election file, faithful to the text: 1-based preferences,
/// weights, withdrawals, names and title.
struct BltDocument {
    int m = 0;
    int seats = 0;
    std::vector<CandidateId> withdrawn;                          // 0-based
    std::vector<std::pair<long long, std::vector<CandidateId>>> ballot_lines; // 0-based prefs
    std::vector<std::string> candidate_names;
    std::vector<std::string> candidate_party; // trailing "(...)" of a name, if any
    std::string title;
};

/// Grammar: header `m seats`; optional line of negative withdrawn numbers;
/// ballot lines `weight pref1 ... prefN 0`; a lone `0`; m quoted names; a
/// quoted title. UTF-8, LF or CRLF. Throws ParseError with a line number.
BltDocument parse_blt(std::string_view text);

std::string serialize_blt(const BltDocument& doc);

/// Canonical profile: withdrawn candidates removed and indices compacted,
/// ballots canonicalized and aggregated. Ballots left empty by withdrawal
/// are dropped (counted in dropped_ballots). Throws ParseError if nothing
/// remains.
Profile to_profile(const BltDocument& doc, long long* dropped_ballots = nullptr);

struct ProfileStats {
    long long voter_count = 0;
    int distinct_types = 0;
    double mean_length = 0.0; // over as-cast lengths
    std::map<int, long long> length_histogram;
    std::vector<std::pair<Ballot, long long>> top_ballots; // descending count
    long long singleton_type_count = 0;
};

/// Length statistics use as-cast lengths (a cast length-(m-1) ballot counts
/// as m-1 even though it is stored complete).
ProfileStats profile_stats(const Profile& p, int top_n = 20);

std::string stats_text(const Profile& p, const ProfileStats& s);

/// Plain-text profile format: `m=<m> voters=<n>` header, one
/// `count<TAB>i1>i2>...` line per type (1-based), then `name` / `party`
/// lines. Round-trips through parse_profile.
std::string serialize_profile(const Profile& p);
Profile parse_profile(std::string_view text);

/// BLT when the first token is numeric, profile format when the text starts
/// with "m=".
Profile load_profile_text(std::string_view text, long long* dropped_ballots = nullptr);
Profile load_profile_file(const std::string& path, long long* dropped_ballots = nullptr);

} // namespace ballotgeo

#endif
