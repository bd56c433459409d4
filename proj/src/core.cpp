#include "ballotgeo/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ballotgeo/errors.hpp"

namespace ballotgeo {

namespace {

void check_entries(const std::vector<CandidateId>& raw, int m) {
    if (m < 1) throw std::invalid_argument("candidate count must be at least 1");
    if (raw.empty()) throw std::invalid_argument("empty ballot");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (CandidateId c : raw) {
        if (c < 0 || c >= m) throw std::invalid_argument("candidate index out of range");
        if (seen[static_cast<size_t>(c)]) throw std::invalid_argument("duplicate candidate in ballot");
        seen[static_cast<size_t>(c)] = 1;
    }
}

} // namespace

Ballot::Ballot(std::vector<CandidateId> ranking, int m) : ranking_(std::move(ranking)), m_(m) {
    check_entries(ranking_, m_);
    if (static_cast<int>(ranking_.size()) == m_ - 1) {
        // A ballot of length m-1 is identified with its unique completion.
        std::vector<char> seen(static_cast<size_t>(m_), 0);
        for (CandidateId c : ranking_) seen[static_cast<size_t>(c)] = 1;
        for (CandidateId c = 0; c < m_; ++c)
            if (!seen[static_cast<size_t>(c)]) ranking_.push_back(c);
    }
}

std::vector<CandidateId> Ballot::unranked() const {
    std::vector<char> seen(static_cast<size_t>(m_), 0);
    for (CandidateId c : ranking_) seen[static_cast<size_t>(c)] = 1;
    std::vector<CandidateId> out;
    for (CandidateId c = 0; c < m_; ++c)
        if (!seen[static_cast<size_t>(c)]) out.push_back(c);
    return out;
}

std::string Ballot::str() const {
    std::string s;
    for (size_t i = 0; i < ranking_.size(); ++i) {
        if (i) s += '>';
        s += std::to_string(ranking_[i] + 1);
    }
    return s;
}

GeneralizedBallot::GeneralizedBallot(std::vector<std::vector<CandidateId>> tiers, int m)
    : tiers_(std::move(tiers)), m_(m) {
    if (m < 1) throw std::invalid_argument("candidate count must be at least 1");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    int total = 0;
    for (auto& tier : tiers_) {
        if (tier.empty()) throw std::invalid_argument("empty tier in generalized ballot");
        std::sort(tier.begin(), tier.end());
        for (CandidateId c : tier) {
            if (c < 0 || c >= m) throw std::invalid_argument("candidate index out of range");
            if (seen[static_cast<size_t>(c)]) throw std::invalid_argument("candidate repeated across tiers");
            seen[static_cast<size_t>(c)] = 1;
            ++total;
        }
    }
    if (total != m) throw std::invalid_argument("generalized ballot must cover every candidate");
}

GeneralizedBallot::GeneralizedBallot(const Ballot& b) : m_(b.m()) {
    tiers_.reserve(static_cast<size_t>(b.length()) + 1);
    for (CandidateId c : b.ranking()) tiers_.push_back({c});
    auto tail = b.unranked();
    if (!tail.empty()) tiers_.push_back(std::move(tail));
}

std::vector<int> GeneralizedBallot::tier_of() const {
    std::vector<int> t(static_cast<size_t>(m_), -1);
    for (int i = 0; i < tier_count(); ++i)
        for (CandidateId c : tiers_[static_cast<size_t>(i)]) t[static_cast<size_t>(c)] = i;
    return t;
}

void GeneralizedBallot::tier_positions(std::vector<int>& first_pos, std::vector<int>& last_pos) const {
    first_pos.assign(static_cast<size_t>(m_), 0);
    last_pos.assign(static_cast<size_t>(m_), 0);
    int pos = 0;
    for (const auto& tier : tiers_) {
        int first = pos + 1;
        pos += static_cast<int>(tier.size());
        for (CandidateId c : tier) {
            first_pos[static_cast<size_t>(c)] = first;
            last_pos[static_cast<size_t>(c)] = pos;
        }
    }
}

std::optional<Ballot> GeneralizedBallot::as_partial() const {
    std::vector<CandidateId> ranking;
    for (int i = 0; i < tier_count(); ++i) {
        const auto& tier = tiers_[static_cast<size_t>(i)];
        if (tier.size() == 1) {
            ranking.push_back(tier[0]);
        } else if (i + 1 == tier_count()) {
            break; // trailing tie = unranked tail
        } else {
            return std::nullopt; // interior tie
        }
    }
    if (ranking.empty()) return std::nullopt;
    return Ballot(ranking, m_);
}

std::string GeneralizedBallot::str() const {
    std::string s;
    for (size_t i = 0; i < tiers_.size(); ++i) {
        if (i) s += '>';
        if (tiers_[i].size() == 1) {
            s += std::to_string(tiers_[i][0] + 1);
        } else {
            s += '{';
            for (size_t j = 0; j < tiers_[i].size(); ++j) {
                if (j) s += ',';
                s += std::to_string(tiers_[i][j] + 1);
            }
            s += '}';
        }
    }
    return s;
}

long long Profile::voters() const {
    long long n = 0;
    for (const auto& [b, c] : ballots) n += c;
    return n;
}

void Profile::add(const std::vector<CandidateId>& raw, long long count) {
    if (count <= 0) throw std::invalid_argument("ballot count must be positive");
    cast_length_hist[static_cast<int>(raw.size())] += count;
    ballots[Ballot(raw, m)] += count;
}

void Profile::add(const Ballot& b, long long count) {
    if (count <= 0) throw std::invalid_argument("ballot count must be positive");
    if (b.m() != m) throw std::invalid_argument("ballot has wrong candidate count for profile");
    cast_length_hist[b.length()] += count;
    ballots[b] += count;
}

std::vector<Ballot> Profile::types() const {
    std::vector<Ballot> out;
    out.reserve(ballots.size());
    for (const auto& [b, c] : ballots) out.push_back(b);
    return out;
}

std::vector<long long> Profile::type_counts() const {
    std::vector<long long> out;
    out.reserve(ballots.size());
    for (const auto& [b, c] : ballots) out.push_back(c);
    return out;
}

Ballot canonicalize(const std::vector<CandidateId>& raw, int m) { return Ballot(raw, m); }

long long count_ballots(int m) {
    if (m < 1) throw std::invalid_argument("candidate count must be at least 1");
    if (m > 20) throw std::invalid_argument("count_ballots overflows past m=20");
    if (m == 1) return 1;
    long long n = 2;
    for (int k = 3; k <= m; ++k) n = k * n + k;
    return n;
}

std::vector<Ballot> completions(const Ballot& b) {
    std::vector<CandidateId> tail = b.unranked();
    std::vector<Ballot> out;
    if (tail.empty()) {
        out.push_back(b);
        return out;
    }
    std::sort(tail.begin(), tail.end());
    do {
        std::vector<CandidateId> full = b.ranking();
        full.insert(full.end(), tail.begin(), tail.end());
        out.emplace_back(std::move(full), b.m());
    } while (std::next_permutation(tail.begin(), tail.end()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<CandidateId>> common_refinement(const GeneralizedBallot& a,
                                                        const GeneralizedBallot& b) {
    if (a.m() != b.m()) throw std::invalid_argument("mismatched candidate counts");
    const int m = a.m();
    auto ta = a.tier_of(), tb = b.tier_of();
    // Group by (tier in a, tier in b); that is exactly the coarsest partition
    // separating every pair split by either ballot.
    std::map<std::pair<int, int>, std::vector<CandidateId>> blocks;
    for (CandidateId c = 0; c < m; ++c)
        blocks[{ta[static_cast<size_t>(c)], tb[static_cast<size_t>(c)]}].push_back(c);
    std::vector<std::vector<CandidateId>> out;
    out.reserve(blocks.size());
    for (auto& [key, blk] : blocks) out.push_back(std::move(blk));
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return out;
}

std::vector<Ballot> enumerate_ballots(int m) {
    if (m < 1) throw std::invalid_argument("candidate count must be at least 1");
    std::vector<Ballot> out;
    std::vector<CandidateId> cur;
    std::vector<char> used(static_cast<size_t>(m), 0);
    auto rec = [&](auto&& self, int len) -> void {
        if (!cur.empty() && static_cast<int>(cur.size()) == len) {
            out.emplace_back(cur, m);
            return;
        }
        for (CandidateId c = 0; c < m; ++c) {
            if (used[static_cast<size_t>(c)]) continue;
            used[static_cast<size_t>(c)] = 1;
            cur.push_back(c);
            self(self, len);
            cur.pop_back();
            used[static_cast<size_t>(c)] = 0;
        }
    };
    for (int len = 1; len <= m; ++len) {
        if (len == m - 1) continue; // identified with completions
        rec(rec, len);
    }
    return out;
}

std::vector<GeneralizedBallot> enumerate_generalized(int m) {
    if (m < 1) throw std::invalid_argument("candidate count must be at least 1");
    std::vector<GeneralizedBallot> out;
    std::vector<std::vector<CandidateId>> tiers;
    std::vector<CandidateId> rest(static_cast<size_t>(m));
    std::iota(rest.begin(), rest.end(), 0);
    auto rec = [&](auto&& self, std::vector<CandidateId> remaining) -> void {
        if (remaining.empty()) {
            out.emplace_back(tiers, m);
            return;
        }
        const size_t n = remaining.size();
        // Every non-empty subset of the remaining candidates can head the order.
        for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
            std::vector<CandidateId> tier, rest2;
            for (size_t i = 0; i < n; ++i)
                ((mask >> i) & 1 ? tier : rest2).push_back(remaining[i]);
            tiers.push_back(std::move(tier));
            self(self, std::move(rest2));
            tiers.pop_back();
        }
    };
    rec(rec, rest);
    std::sort(out.begin(), out.end());
    return out;
}

GeneralizedBallot parse_ballot_literal(const std::string& text, int m,
                                       const std::vector<std::string>* names) {
    auto resolve = [&](std::string tok) -> CandidateId {
        // trim
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("empty candidate token in ballot literal");
        tok = tok.substr(b, e - b + 1);
        if (names) {
            for (size_t i = 0; i < names->size(); ++i)
                if ((*names)[i] == tok) return static_cast<CandidateId>(i);
        }
        bool numeric = !tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) {
            return c >= '0' && c <= '9';
        });
        if (numeric) {
            long v = std::stol(tok);
            if (v < 1 || v > m) throw ParseError("candidate number out of range: " + tok);
            return static_cast<CandidateId>(v - 1);
        }
        if (tok.size() == 1) {
            char c = tok[0];
            if (c >= 'A' && c <= 'Z') return c - 'A';
            if (c >= 'a' && c <= 'z') return c - 'a';
        }
        throw ParseError("cannot resolve candidate token: " + tok);
    };

    std::vector<std::vector<CandidateId>> tiers;
    std::vector<CandidateId> mentioned;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i;
        if (i >= n) break;
        std::vector<CandidateId> tier;
        if (text[i] == '{') {
            size_t close = text.find('}', i);
            if (close == std::string::npos) throw ParseError("unterminated tier brace");
            std::string inner = text.substr(i + 1, close - i - 1);
            size_t p = 0;
            while (p <= inner.size()) {
                size_t comma = inner.find(',', p);
                std::string tok = inner.substr(p, comma == std::string::npos ? std::string::npos : comma - p);
                tier.push_back(resolve(tok));
                if (comma == std::string::npos) break;
                p = comma + 1;
            }
            i = close + 1;
        } else {
            size_t sep = text.find('>', i);
            std::string tok = text.substr(i, sep == std::string::npos ? std::string::npos : sep - i);
            tier.push_back(resolve(tok));
            i = sep == std::string::npos ? n : sep;
        }
        tiers.push_back(tier);
        for (CandidateId c : tier) mentioned.push_back(c);
        while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i;
        if (i < n) {
            if (text[i] != '>') throw ParseError("expected '>' between ballot positions");
            ++i;
        }
    }
    if (tiers.empty()) throw ParseError("empty ballot literal");

    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (CandidateId c : mentioned) {
        if (seen[static_cast<size_t>(c)]) throw ParseError("duplicate candidate in ballot literal");
        seen[static_cast<size_t>(c)] = 1;
    }
    std::vector<CandidateId> tail;
    for (CandidateId c = 0; c < m; ++c)
        if (!seen[static_cast<size_t>(c)]) tail.push_back(c);
    if (!tail.empty()) tiers.push_back(std::move(tail));
    return GeneralizedBallot(std::move(tiers), m);
}

} // namespace ballotgeo
