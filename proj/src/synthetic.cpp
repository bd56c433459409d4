#include "ballotgeo/synthetic.hpp"

#include <stdexcept>

#include "ballotgeo/rng.hpp"

namespace ballotgeo {

std::vector<Ballot> mallows_cluster(const MallowsSpec& spec, std::vector<int>* step_counts) {
    if (!spec.center.complete()) throw std::invalid_argument("Mallows center must be complete");
    if (!(spec.p > 0.0 && spec.p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
    if (spec.n < 0) throw std::invalid_argument("cluster size must be non-negative");
    const int m = spec.center.m();
    auto gen = make_stream(spec.seed, 0);
    std::vector<Ballot> out;
    out.reserve(static_cast<size_t>(spec.n));
    if (step_counts) step_counts->clear();
    for (int i = 0; i < spec.n; ++i) {
        std::vector<CandidateId> walk = spec.center.ranking();
        // Swap count ~ Geometric(p) with support {0,1,...}: tails before the
        // first heads of a p-weighted coin.
        int steps = 0;
        while (rand_u01(gen) >= spec.p) {
            const size_t pos = static_cast<size_t>(rand_below(gen, static_cast<std::uint64_t>(m - 1)));
            std::swap(walk[pos], walk[pos + 1]);
            ++steps;
        }
        if (step_counts) step_counts->push_back(steps);
        out.emplace_back(std::move(walk), m);
    }
    return out;
}

BenchmarkFamily parse_family(const std::string& name) {
    if (name == "E" || name == "e") return BenchmarkFamily::E;
    if (name == "E2" || name == "e2") return BenchmarkFamily::E2;
    if (name == "E3" || name == "e3") return BenchmarkFamily::E3;
    throw std::invalid_argument("unknown election family: " + name);
}

namespace {

Ballot from_letters(const std::string& letters, int m) {
    std::vector<CandidateId> r;
    r.reserve(letters.size());
    for (char c : letters) r.push_back(c - 'A');
    return Ballot(std::move(r), m);
}

struct Component {
    Ballot center;
    int n;
};

std::vector<Component> family_components(BenchmarkFamily family, double p) {
    switch (family) {
        case BenchmarkFamily::E:
            return {{from_letters("ABCDE", 5), 300}, {from_letters("EDCBA", 5), 700}};
        case BenchmarkFamily::E2:
            if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("E2 requires p in (0,1)");
            return {{from_letters("ABCDEFGHI", 9), 300}, {from_letters("HGEIFCBAD", 9), 700}};
        case BenchmarkFamily::E3:
            if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("E3 requires p in (0,1)");
            return {{from_letters("ABCDEFGHI", 9), 200},
                    {from_letters("DFEAHBGCI", 9), 200},
                    {from_letters("HIGDEFCBA", 9), 600}};
    }
    throw std::invalid_argument("unknown election family");
}

} // namespace

std::vector<Ballot> benchmark_centers(BenchmarkFamily family) {
    std::vector<Ballot> out;
    for (const auto& c : family_components(family, 0.5)) out.push_back(c.center);
    return out;
}

Profile benchmark_election(BenchmarkFamily family, double p, std::uint64_t seed) {
    const auto components = family_components(family, family == BenchmarkFamily::E ? 0.3 : p);
    Profile profile;
    profile.m = components[0].center.m();
    profile.names.resize(static_cast<size_t>(profile.m));
    profile.party.assign(static_cast<size_t>(profile.m), "");
    for (int c = 0; c < profile.m; ++c) profile.names[static_cast<size_t>(c)] = std::string(1, static_cast<char>('A' + c));
    const double effective_p = family == BenchmarkFamily::E ? 0.3 : p;
    for (size_t idx = 0; idx < components.size(); ++idx) {
        MallowsSpec spec;
        spec.center = components[idx].center;
        spec.n = components[idx].n;
        spec.p = effective_p;
        spec.seed = mix64(seed) ^ mix64(idx + 1);
        for (const Ballot& b : mallows_cluster(spec)) profile.add(b, 1);
    }
    switch (family) {
        case BenchmarkFamily::E: profile.title = "synthetic E"; break;
        case BenchmarkFamily::E2: profile.title = "synthetic E2"; break;
        case BenchmarkFamily::E3: profile.title = "synthetic E3"; break;
    }
    return profile;
}

} // namespace ballotgeo
