#ifndef BALLOTGEO_SYNTHETIC_HPP
#define BALLOTGEO_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ballotgeo/core.hpp"

namespace ballotgeo {

/// Mallows-style cluster: n ballots, each a random walk from `center` taking
/// N adjacent swaps with N ~ Geometric(p) on {0,1,2,...}.
struct MallowsSpec {
    Ballot center; // complete
    int n = 0;
    double p = 0.3;
    std::uint64_t seed = 0;
};

/// step_counts, when given, receives each walk's swap count (the geometric
/// draws), which the walk itself may partially cancel.
std::vector<Ballot> mallows_cluster(const MallowsSpec& spec,
                                    std::vector<int>* step_counts = nullptr);

enum class BenchmarkFamily { E, E2, E3 };

BenchmarkFamily parse_family(const std::string& name);

/// The benchmark mixtures:
///   E     = C(ABCDE, 300, 0.3) u C(EDCBA, 700, 0.3)
///   E2(p) = C(ABCDEFGHI, 300, p) u C(HGEIFCBAD, 700, p)
///   E3(p) = C(ABCDEFGHI, 200, p) u C(DFEAHBGCI, 200, p) u C(HIGDEFCBA, 600, p)
/// Each component draws from its own (seed, index)-derived stream, so
/// mixtures are reproducible component-wise.
Profile benchmark_election(BenchmarkFamily family, double p, std::uint64_t seed);

/// Ground-truth centers of a family, in component order.
std::vector<Ballot> benchmark_centers(BenchmarkFamily family);

} // namespace ballotgeo

#endif
