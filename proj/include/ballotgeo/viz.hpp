#ifndef BALLOTGEO_VIZ_HPP
#define BALLOTGEO_VIZ_HPP

#include <array>
#include <string>
#include <vector>

#include "ballotgeo/clustering.hpp"
#include "ballotgeo/slates.hpp"

namespace ballotgeo {

/// Planar embedding of a distance matrix with per-point weights and an
/// optional color key. Coordinates are defined up to rigid motion.
struct Embedding2D {
    std::vector<std::array<double, 2>> points;
    std::vector<double> weight;
    std::vector<std::string> color_key;
    std::vector<std::string> id;
};

/// Classical MDS: double-center the squared distances, take the top two
/// eigenpairs (power iteration with deflation), scale by sqrt(eigenvalue).
/// Sign fixed so the first non-zero loading of each axis is positive.
Embedding2D classical_mds(const DistanceMatrix& d);

/// MDS of a profile's ballot types under a metric; weights are voter counts
/// and the color key is the party of the first-place candidate (or "").
Embedding2D mds_of_profile(const Profile& p, const DistanceSpec& spec, int jobs = 1);

/// Aggregated simplex images of the cast ballots: one entry per distinct
/// f(sigma) value with its total voter weight. Exact aggregation.
std::vector<std::pair<SimplexPoint, double>> simplex_density(const Profile& p,
                                                             const SlatePartition& s);

/// `id,x,y,weight,color_key` lines, 6-decimal coordinates.
std::string embedding_csv(const Embedding2D& e);

/// `v1,...,vk,weight` lines.
std::string simplex_csv(const std::vector<std::pair<SimplexPoint, double>>& density);

/// Self-contained SVG scatter; marker area proportional to weight.
std::string render_svg(const Embedding2D& e, int width = 640, int height = 480);

/// Simplex density rendered inside a segment (k=2) or triangle (k=3).
std::string render_simplex_svg(const std::vector<std::pair<SimplexPoint, double>>& density,
                               int k, int width = 640, int height = 560);

} // namespace ballotgeo

#endif
