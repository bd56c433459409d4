#include "ballotgeo/viz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ballotgeo {

namespace {

// Deterministic pseudo-random start vector for power iteration (xorshift64).
// Each axis gets its own stream: reusing one start would leave the second
// pass with no component along the deflated direction when the top
// eigenvalue is degenerate.
std::vector<double> start_vector(int n, std::uint64_t stream) {
    std::vector<double> v(static_cast<size_t>(n));
    std::uint64_t s = 0x9e3779b97f4a7c15ull ^ (stream * 0xff51afd7ed558ccdull + 1);
    for (int i = 0; i < n; ++i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        v[static_cast<size_t>(i)] = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
    }
    return v;
}

void mat_vec(const std::vector<double>& mat, int n, const std::vector<double>& x,
             std::vector<double>& y) {
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        const double* row = &mat[static_cast<size_t>(i) * n];
        for (int j = 0; j < n; ++j) s += row[j] * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = s;
    }
}

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Dominant eigenpair of a symmetric matrix by power iteration, kept
// orthogonal to an optional previously-found eigenvector.
std::pair<double, std::vector<double>> dominant_eigenpair(const std::vector<double>& mat, int n,
                                                          std::uint64_t stream,
                                                          const std::vector<double>* against) {
    std::vector<double> v = start_vector(n, stream);
    auto orthogonalize = [&](std::vector<double>& x) {
        if (!against) return;
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += x[static_cast<size_t>(i)] * (*against)[static_cast<size_t>(i)];
        for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] -= dot * (*against)[static_cast<size_t>(i)];
    };
    orthogonalize(v);
    double nv = norm(v);
    if (nv < 1e-14) return {0.0, std::vector<double>(static_cast<size_t>(n), 0.0)};
    for (auto& x : v) x /= nv;
    std::vector<double> w(static_cast<size_t>(n));
    double lambda = 0.0;
    for (int iter = 0; iter < 5000; ++iter) {
        mat_vec(mat, n, v, w);
        orthogonalize(w);
        double nw = norm(w);
        if (nw < 1e-14) return {0.0, std::vector<double>(static_cast<size_t>(n), 0.0)};
        for (auto& x : w) x /= nw;
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            // compare up to sign
            double diff = std::abs(std::abs(w[static_cast<size_t>(i)]) - std::abs(v[static_cast<size_t>(i)]));
            delta = std::max(delta, diff);
        }
        v = w;
        if (delta < 1e-13 && iter > 10) break;
    }
    mat_vec(mat, n, v, w);
    lambda = 0.0;
    for (int i = 0; i < n; ++i) lambda += v[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
    return {lambda, v};
}

void fix_sign(std::vector<double>& v) {
    for (double x : v) {
        if (std::abs(x) > 1e-9) {
            if (x < 0)
                for (auto& y : v) y = -y;
            return;
        }
    }
}

} // namespace

Embedding2D classical_mds(const DistanceMatrix& d) {
    const int n = d.n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (std::abs(d.at(i, j) - d.at(j, i)) > 1e-9)
                throw std::invalid_argument("MDS input matrix must be symmetric");
        }
        if (std::abs(d.at(i, i)) > 1e-9)
            throw std::invalid_argument("MDS input matrix must have a zero diagonal");
    }
    // B = -1/2 J D^2 J  (double centering of squared distances)
    std::vector<double> b(static_cast<size_t>(n) * n);
    std::vector<double> row_mean(static_cast<size_t>(n), 0.0);
    double grand = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double sq = d.at(i, j) * d.at(i, j);
            b[static_cast<size_t>(i) * n + j] = sq;
            row_mean[static_cast<size_t>(i)] += sq;
        }
        row_mean[static_cast<size_t>(i)] /= n;
        grand += row_mean[static_cast<size_t>(i)];
    }
    grand /= n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b[static_cast<size_t>(i) * n + j] =
                -0.5 * (b[static_cast<size_t>(i) * n + j] - row_mean[static_cast<size_t>(i)] -
                        row_mean[static_cast<size_t>(j)] + grand);

    auto [l1, v1] = dominant_eigenpair(b, n, 0, nullptr);
    // Deflate and take the second axis.
    std::vector<double> b2 = b;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b2[static_cast<size_t>(i) * n + j] -= l1 * v1[static_cast<size_t>(i)] * v1[static_cast<size_t>(j)];
    auto [l2, v2] = dominant_eigenpair(b2, n, 1, &v1);

    fix_sign(v1);
    fix_sign(v2);
    const double s1 = l1 > 0 ? std::sqrt(l1) : 0.0;
    const double s2 = l2 > 0 ? std::sqrt(l2) : 0.0;
    Embedding2D e;
    e.points.resize(static_cast<size_t>(n));
    e.weight.assign(static_cast<size_t>(n), 1.0);
    e.color_key.assign(static_cast<size_t>(n), "");
    e.id.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        e.points[static_cast<size_t>(i)] = {s1 * v1[static_cast<size_t>(i)], s2 * v2[static_cast<size_t>(i)]};
        e.id[static_cast<size_t>(i)] = std::to_string(i);
    }
    return e;
}

Embedding2D mds_of_profile(const Profile& p, const DistanceSpec& spec, int jobs) {
    auto d = distance_matrix(p, spec, jobs);
    Embedding2D e = classical_mds(d);
    const auto types = p.types();
    const auto counts = p.type_counts();
    for (size_t t = 0; t < types.size(); ++t) {
        e.id[t] = types[t].str();
        e.weight[t] = static_cast<double>(counts[t]);
        const CandidateId first = types[t].at(0);
        e.color_key[t] = first < static_cast<int>(p.party.size()) ? p.party[static_cast<size_t>(first)] : "";
    }
    return e;
}

std::vector<std::pair<SimplexPoint, double>> simplex_density(const Profile& p,
                                                             const SlatePartition& s) {
    std::map<std::vector<std::int64_t>, std::pair<SimplexPoint, double>> agg;
    for (const auto& [b, cnt] : p.ballots) {
        SimplexPoint pt = simplex_map(b, s);
        auto it = agg.find(pt.key);
        if (it == agg.end()) {
            agg.emplace(pt.key, std::make_pair(pt, static_cast<double>(cnt)));
        } else {
            it->second.second += static_cast<double>(cnt);
        }
    }
    std::vector<std::pair<SimplexPoint, double>> out;
    out.reserve(agg.size());
    for (auto& [key, val] : agg) out.push_back(std::move(val));
    return out;
}

namespace {

std::string fmt(double v, int decimals = 6) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(decimals);
    out << v;
    std::string s = out.str();
    if (s == "-0.000000") s = "0.000000";
    return s;
}

} // namespace

std::string embedding_csv(const Embedding2D& e) {
    std::ostringstream out;
    out << "id,x,y,weight,color_key\n";
    for (size_t i = 0; i < e.points.size(); ++i) {
        out << e.id[i] << ',' << fmt(e.points[i][0]) << ',' << fmt(e.points[i][1]) << ','
            << fmt(e.weight[i], 0) << ',' << e.color_key[i] << '\n';
    }
    return out.str();
}

std::string simplex_csv(const std::vector<std::pair<SimplexPoint, double>>& density) {
    std::ostringstream out;
    if (!density.empty()) {
        for (size_t i = 0; i < density[0].first.coords.size(); ++i) out << 'v' << i + 1 << ',';
        out << "weight\n";
    } else {
        out << "weight\n";
    }
    for (const auto& [pt, w] : density) {
        for (double c : pt.coords) out << fmt(c) << ',';
        out << fmt(w, 0) << '\n';
    }
    return out.str();
}

namespace {

const char* palette(size_t idx) {
    static const char* colors[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                                   "#66ccee", "#aa3377", "#bbbbbb", "#222255"};
    return colors[idx % 8];
}

} // namespace

std::string render_svg(const Embedding2D& e, int width, int height) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    if (!e.points.empty()) {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300, wmax = 0.0;
        for (size_t i = 0; i < e.points.size(); ++i) {
            xmin = std::min(xmin, e.points[i][0]);
            xmax = std::max(xmax, e.points[i][0]);
            ymin = std::min(ymin, e.points[i][1]);
            ymax = std::max(ymax, e.points[i][1]);
            wmax = std::max(wmax, e.weight[i]);
        }
        const double margin = 24.0;
        const double spanx = std::max(xmax - xmin, 1e-9);
        const double spany = std::max(ymax - ymin, 1e-9);
        const double scale = std::min((width - 2 * margin) / spanx, (height - 2 * margin) / spany);
        std::map<std::string, size_t> color_ids;
        for (const auto& key : e.color_key)
            if (!color_ids.count(key)) color_ids.emplace(key, color_ids.size());
        for (size_t i = 0; i < e.points.size(); ++i) {
            const double px = margin + (e.points[i][0] - xmin) * scale;
            const double py = height - margin - (e.points[i][1] - ymin) * scale;
            const double r = 2.0 + 10.0 * std::sqrt(std::max(e.weight[i], 0.0) / std::max(wmax, 1.0));
            out << "  <circle cx=\"" << fmt(px, 2) << "\" cy=\"" << fmt(py, 2) << "\" r=\""
                << fmt(r, 2) << "\" fill=\"" << palette(color_ids[e.color_key[i]])
                << "\" fill-opacity=\"0.7\"><title>" << e.id[i] << "</title></circle>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_simplex_svg(const std::vector<std::pair<SimplexPoint, double>>& density,
                               int k, int width, int height) {
    if (k != 2 && k != 3) throw std::invalid_argument("simplex rendering supports k=2 or k=3");
    Embedding2D e;
    for (const auto& [pt, w] : density) {
        double x, y;
        if (k == 2) {
            x = pt.coords[1];
            y = 0.0;
        } else {
            // vertices of an equilateral triangle
            x = pt.coords[1] + 0.5 * pt.coords[2];
            y = 0.8660254037844386 * pt.coords[2];
        }
        e.points.push_back({x, y});
        e.weight.push_back(w);
        e.color_key.push_back("");
        std::string id;
        for (size_t i = 0; i < pt.coords.size(); ++i)
            id += (i ? "," : "") + fmt(pt.coords[i], 3);
        e.id.push_back(id);
    }
    return render_svg(e, width, height);
}

} // namespace ballotgeo
