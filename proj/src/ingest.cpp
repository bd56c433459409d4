#include "ballotgeo/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ballotgeo/errors.hpp"

namespace ballotgeo {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

std::vector<long long> tokenize_ints(const std::string& line, size_t lineno) {
    std::vector<long long> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        try {
            size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": expected integer, got '" + tok + "'");
        }
    }
    return out;
}

std::string unquote(const std::string& line, size_t lineno) {
    auto b = line.find_first_not_of(" \t");
    auto e = line.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected quoted string");
    std::string s = line.substr(b, e - b + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s; // tolerate unquoted names
}

/// "Jane Doe (Grn)" -> party "Grn"; no trailing parentheses -> "".
std::string extract_party(const std::string& name) {
    if (name.empty() || name.back() != ')') return "";
    auto open = name.rfind('(');
    if (open == std::string::npos || open == 0) return "";
    return name.substr(open + 1, name.size() - open - 2);
}

} // namespace

BltDocument parse_blt(std::string_view text) {
    const auto lines = split_lines(text);
    BltDocument doc;
    size_t i = 0;
    auto next_nonempty = [&]() -> const std::string* {
        while (i < lines.size()) {
            const std::string& l = lines[i];
            if (l.find_first_not_of(" \t") != std::string::npos) return &l;
            ++i;
        }
        return nullptr;
    };

    const std::string* header = next_nonempty();
    if (!header) throw ParseError("empty BLT file");
    {
        auto toks = tokenize_ints(*header, i + 1);
        if (toks.size() != 2) throw ParseError("line " + std::to_string(i + 1) + ": header must be 'candidates seats'");
        if (toks[0] < 1 || toks[1] < 0) throw ParseError("line " + std::to_string(i + 1) + ": bad header values");
        doc.m = static_cast<int>(toks[0]);
        doc.seats = static_cast<int>(toks[1]);
        ++i;
    }

    bool saw_terminator = false;
    bool first_body_line = true;
    while (true) {
        const std::string* line = next_nonempty();
        if (!line) throw ParseError("unexpected end of file before ballot terminator");
        auto toks = tokenize_ints(*line, i + 1);
        ++i;
        if (toks.empty()) continue;
        if (first_body_line && toks[0] < 0) {
            for (long long v : toks) {
                if (v >= 0) throw ParseError("line " + std::to_string(i) + ": withdrawal line must be all negative");
                long long c = -v;
                if (c < 1 || c > doc.m) throw ParseError("line " + std::to_string(i) + ": withdrawn candidate out of range");
                doc.withdrawn.push_back(static_cast<CandidateId>(c - 1));
            }
            first_body_line = false;
            continue;
        }
        first_body_line = false;
        if (toks.size() == 1 && toks[0] == 0) {
            saw_terminator = true;
            break;
        }
        if (toks[0] <= 0) throw ParseError("line " + std::to_string(i) + ": ballot weight must be positive");
        if (toks.back() != 0) throw ParseError("line " + std::to_string(i) + ": ballot line must end with 0");
        std::vector<CandidateId> prefs;
        std::vector<char> seen(static_cast<size_t>(doc.m), 0);
        for (size_t t = 1; t + 1 < toks.size(); ++t) {
            long long v = toks[t];
            if (v < 1 || v > doc.m) throw ParseError("line " + std::to_string(i) + ": preference out of range");
            if (seen[static_cast<size_t>(v - 1)])
                throw ParseError("line " + std::to_string(i) + ": duplicate candidate in one ballot");
            seen[static_cast<size_t>(v - 1)] = 1;
            prefs.push_back(static_cast<CandidateId>(v - 1));
        }
        if (prefs.empty()) throw ParseError("line " + std::to_string(i) + ": empty ballot");
        doc.ballot_lines.emplace_back(toks[0], std::move(prefs));
    }
    if (!saw_terminator) throw ParseError("missing ballot terminator line");

    for (int c = 0; c < doc.m; ++c) {
        const std::string* line = next_nonempty();
        if (!line) throw ParseError("missing candidate name " + std::to_string(c + 1));
        std::string name = unquote(*line, i + 1);
        doc.candidate_party.push_back(extract_party(name));
        doc.candidate_names.push_back(std::move(name));
        ++i;
    }
    if (const std::string* line = next_nonempty()) {
        doc.title = unquote(*line, i + 1);
        ++i;
    }
    return doc;
}

std::string serialize_blt(const BltDocument& doc) {
    std::ostringstream out;
    out << doc.m << ' ' << doc.seats << '\n';
    if (!doc.withdrawn.empty()) {
        for (size_t j = 0; j < doc.withdrawn.size(); ++j)
            out << (j ? " " : "") << -(doc.withdrawn[j] + 1);
        out << '\n';
    }
    for (const auto& [w, prefs] : doc.ballot_lines) {
        out << w;
        for (CandidateId c : prefs) out << ' ' << c + 1;
        out << " 0\n";
    }
    out << "0\n";
    for (const auto& name : doc.candidate_names) out << '"' << name << '"' << '\n';
    out << '"' << doc.title << '"' << '\n';
    return out.str();
}

Profile to_profile(const BltDocument& doc, long long* dropped_ballots) {
    std::vector<int> remap(static_cast<size_t>(doc.m), -1);
    int kept = 0;
    for (CandidateId c = 0; c < doc.m; ++c) {
        if (std::find(doc.withdrawn.begin(), doc.withdrawn.end(), c) == doc.withdrawn.end())
            remap[static_cast<size_t>(c)] = kept++;
    }
    Profile p;
    p.m = kept;
    p.seats = doc.seats;
    p.title = doc.title;
    for (CandidateId c = 0; c < doc.m; ++c) {
        if (remap[static_cast<size_t>(c)] < 0) continue;
        p.names.push_back(c < static_cast<int>(doc.candidate_names.size()) ? doc.candidate_names[static_cast<size_t>(c)]
                                                                           : std::to_string(c + 1));
        p.party.push_back(c < static_cast<int>(doc.candidate_party.size()) ? doc.candidate_party[static_cast<size_t>(c)]
                                                                           : "");
    }
    p.withdrawn_candidates = static_cast<int>(doc.withdrawn.size());
    long long dropped = 0;
    for (const auto& [w, prefs] : doc.ballot_lines) {
        std::vector<CandidateId> compacted;
        for (CandidateId c : prefs)
            if (remap[static_cast<size_t>(c)] >= 0) compacted.push_back(remap[static_cast<size_t>(c)]);
        if (compacted.empty()) {
            dropped += w;
            continue;
        }
        p.add(compacted, w);
    }
    p.dropped_ballots = dropped;
    if (dropped_ballots) *dropped_ballots = dropped;
    if (p.ballots.empty()) throw ParseError("no ballots remain after withdrawal compaction");
    return p;
}

ProfileStats profile_stats(const Profile& p, int top_n) {
    ProfileStats s;
    s.voter_count = p.voters();
    s.distinct_types = p.type_count();
    s.length_histogram = p.cast_length_hist;
    if (s.length_histogram.empty()) {
        for (const auto& [b, cnt] : p.ballots) s.length_histogram[b.length()] += cnt;
    }
    long long total_len = 0, total = 0;
    for (const auto& [len, cnt] : s.length_histogram) {
        total_len += static_cast<long long>(len) * cnt;
        total += cnt;
    }
    s.mean_length = total > 0 ? static_cast<double>(total_len) / static_cast<double>(total) : 0.0;
    std::vector<std::pair<Ballot, long long>> all(p.ballots.begin(), p.ballots.end());
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [b, cnt] : all) {
        if (static_cast<int>(s.top_ballots.size()) >= top_n) break;
        s.top_ballots.emplace_back(b, cnt);
    }
    for (const auto& [b, cnt] : all)
        if (cnt == 1) ++s.singleton_type_count;
    return s;
}

std::string stats_text(const Profile& p, const ProfileStats& s) {
    std::ostringstream out;
    out << "title\t" << p.title << '\n';
    out << "candidates\t" << p.m << '\n';
    if (p.seats > 0) out << "seats\t" << p.seats << '\n';
    out << "voters\t" << s.voter_count << '\n';
    out << "distinct_types\t" << s.distinct_types << '\n';
    if (p.m <= 20) out << "possible_ballots\t" << count_ballots(p.m) << '\n';
    {
        std::ostringstream mean;
        mean.setf(std::ios::fixed);
        mean.precision(4);
        mean << s.mean_length;
        out << "mean_length\t" << mean.str() << '\n';
    }
    out << "singleton_types\t" << s.singleton_type_count << '\n';
    if (p.withdrawn_candidates > 0)
        out << "withdrawn_candidates\t" << p.withdrawn_candidates << '\n';
    if (p.dropped_ballots > 0) out << "dropped_ballots\t" << p.dropped_ballots << '\n';
    for (const auto& [len, cnt] : s.length_histogram)
        out << "length\t" << len << '\t' << cnt << '\n';
    for (const auto& [b, cnt] : s.top_ballots)
        out << "top\t" << b.str() << '\t' << cnt << '\n';
    return out.str();
}

std::string serialize_profile(const Profile& p) {
    std::ostringstream out;
    out << "m=" << p.m << " voters=" << p.voters();
    if (p.seats > 0) out << " seats=" << p.seats;
    out << '\n';
    for (const auto& [b, cnt] : p.ballots) out << cnt << '\t' << b.str() << '\n';
    for (int c = 0; c < p.m; ++c)
        out << "name\t" << c + 1 << '\t'
            << (c < static_cast<int>(p.names.size()) ? p.names[static_cast<size_t>(c)] : "") << '\n';
    bool any_party = false;
    for (const auto& pt : p.party) any_party = any_party || !pt.empty();
    if (any_party)
        for (int c = 0; c < p.m; ++c)
            out << "party\t" << c + 1 << '\t' << p.party[static_cast<size_t>(c)] << '\n';
    if (!p.title.empty()) out << "title\t" << p.title << '\n';
    return out.str();
}

Profile parse_profile(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty profile text");
    auto to_ll = [](const std::string& s, size_t lineno) -> long long {
        try {
            size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": expected integer, got '" + s + "'");
        }
    };
    Profile p;
    long long declared_voters = -1;
    {
        std::istringstream in(lines[0]);
        std::string tok;
        while (in >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError("profile header entries must be key=value");
            std::string key = tok.substr(0, eq);
            long long val = to_ll(tok.substr(eq + 1), 1);
            if (key == "m") p.m = static_cast<int>(val);
            else if (key == "voters") declared_voters = val;
            else if (key == "seats") p.seats = static_cast<int>(val);
            else throw ParseError("unknown profile header key: " + key);
        }
        if (p.m < 1 || p.m > 512) throw ParseError("profile header must set a sane m");
    }
    p.names.resize(static_cast<size_t>(p.m));
    p.party.assign(static_cast<size_t>(p.m), "");
    for (int c = 0; c < p.m; ++c) p.names[static_cast<size_t>(c)] = std::to_string(c + 1);

    for (size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("line " + std::to_string(i + 1) + ": expected tab-separated fields");
        std::string head = line.substr(0, tab);
        std::string rest = line.substr(tab + 1);
        if (head == "name" || head == "party") {
            auto tab2 = rest.find('\t');
            if (tab2 == std::string::npos) throw ParseError("line " + std::to_string(i + 1) + ": expected index and value");
            long long idx = to_ll(rest.substr(0, tab2), i + 1);
            if (idx < 1 || idx > p.m) throw ParseError("line " + std::to_string(i + 1) + ": candidate index out of range");
            if (head == "name") p.names[static_cast<size_t>(idx - 1)] = rest.substr(tab2 + 1);
            else p.party[static_cast<size_t>(idx - 1)] = rest.substr(tab2 + 1);
        } else if (head == "title") {
            p.title = rest;
        } else {
            long long count = to_ll(head, i + 1);
            if (count <= 0) throw ParseError("line " + std::to_string(i + 1) + ": ballot count must be positive");
            std::vector<CandidateId> prefs;
            std::istringstream bs(rest);
            std::string tok;
            while (std::getline(bs, tok, '>')) {
                if (tok.empty()) throw ParseError("line " + std::to_string(i + 1) + ": empty ballot entry");
                long long v = to_ll(tok, i + 1);
                if (v < 1 || v > p.m) throw ParseError("line " + std::to_string(i + 1) + ": candidate out of range");
                prefs.push_back(static_cast<CandidateId>(v - 1));
            }
            if (prefs.empty()) throw ParseError("line " + std::to_string(i + 1) + ": empty ballot");
            try {
                p.add(prefs, count);
            } catch (const std::invalid_argument& e) {
                throw ParseError("line " + std::to_string(i + 1) + ": " + e.what());
            }
        }
    }
    if (p.ballots.empty()) throw ParseError("profile has no ballots");
    if (declared_voters >= 0 && declared_voters != p.voters())
        throw ParseError("profile header declares " + std::to_string(declared_voters) +
                         " voters but the ballot lines sum to " + std::to_string(p.voters()));
    return p;
}

Profile load_profile_text(std::string_view text, long long* dropped_ballots) {
    size_t start = text.find_first_not_of(" \t\r\n");
    if (start == std::string_view::npos) throw ParseError("empty input");
    if (text.substr(start, 2) == "m=") {
        if (dropped_ballots) *dropped_ballots = 0;
        return parse_profile(text);
    }
    return to_profile(parse_blt(text), dropped_ballots);
}

Profile load_profile_file(const std::string& path, long long* dropped_ballots) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_profile_text(buf.str(), dropped_ballots);
}

} // namespace ballotgeo
