#include "ballotgeo/ballotgeo.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ballotgeo/clustering.hpp"
#include "ballotgeo/core.hpp"
#include "ballotgeo/errors.hpp"
#include "ballotgeo/graphs.hpp"
#include "ballotgeo/ingest.hpp"
#include "ballotgeo/metrics.hpp"
#include "ballotgeo/slates.hpp"
#include "ballotgeo/synthetic.hpp"
#include "ballotgeo/viz.hpp"

using json = nlohmann::ordered_json;
using namespace ballotgeo;

struct bg_profile {
    Profile profile;
    long long dropped = 0;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
bg_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        fn();
        return BG_OK;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return BG_ERROR_PARSE;
    } catch (const BudgetError& e) {
        g_last_error = e.what();
        return BG_ERROR_BUDGET;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return BG_ERROR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BG_ERROR_INTERNAL;
    }
}

Ballot parse_one_ballot(const char* text, int m, const bg_profile* roster) {
    const std::vector<std::string>* names = roster ? &roster->profile.names : nullptr;
    auto g = parse_ballot_literal(text, m, names);
    auto b = g.as_partial();
    if (!b) throw std::invalid_argument("interior ties are not allowed here: " + std::string(text));
    return *b;
}

json clustering_json(const Profile& p, const Clustering& c, const std::string& algo,
                     const std::string& metric, unsigned long long seed, int restarts,
                     double sil, bool has_sil) {
    json out;
    out["algo"] = algo;
    out["metric"] = metric;
    out["k"] = c.k;
    out["seed"] = seed;
    out["restarts"] = restarts;
    out["cost"] = c.cost;
    if (has_sil) out["silhouette"] = sil;
    auto sizes = c.sizes(p);
    json clusters = json::array();
    for (int i = 0; i < c.k; ++i) {
        json cl;
        const auto& ctr = c.centers[static_cast<size_t>(i)];
        switch (ctr.kind) {
            case Clustering::Center::Kind::cast_ballot:
                cl["center_kind"] = "cast_ballot";
                cl["center"] = ctr.ballot.str();
                break;
            case Clustering::Center::Kind::valid_ballot:
                cl["center_kind"] = "valid_ballot";
                cl["center"] = ctr.ballot.str();
                break;
            case Clustering::Center::Kind::coordinate:
                cl["center_kind"] = "coordinate";
                cl["center"] = ctr.coords;
                break;
        }
        cl["size"] = sizes[static_cast<size_t>(i)];
        if (i < static_cast<int>(c.cluster_costs.size()))
            cl["cost"] = c.cluster_costs[static_cast<size_t>(i)];
        clusters.push_back(cl);
    }
    out["clusters"] = clusters;
    out["assignment"] = c.assignment;
    return out;
}

std::string clustering_report(const Profile& p, const Clustering& c, const std::string& algo,
                              const std::string& metric, double sil, bool has_sil) {
    std::ostringstream out;
    out << "algorithm\t" << algo << "\nmetric\t" << metric << "\nk\t" << c.k << "\ncost\t"
        << c.cost << '\n';
    if (has_sil) out << "silhouette\t" << sil << '\n';
    auto sizes = c.sizes(p);
    for (int i = 0; i < c.k; ++i) {
        out << "cluster\t" << i + 1 << "\tsize\t" << sizes[static_cast<size_t>(i)] << "\tcenter\t";
        const auto& ctr = c.centers[static_cast<size_t>(i)];
        if (ctr.kind == Clustering::Center::Kind::coordinate) {
            for (size_t j = 0; j < ctr.coords.size(); ++j)
                out << (j ? "," : "") << ctr.coords[j];
        } else {
            out << ctr.ballot.str();
        }
        out << '\n';
    }
    return out.str();
}

DissimKind parse_dissim(const std::string& name, BordaConvention& convention) {
    if (name == "rank-diff") {
        convention = BordaConvention::pessimistic;
        return DissimKind::rank_difference;
    }
    if (name == "rank-diff-avg") {
        convention = BordaConvention::averaged;
        return DissimKind::rank_difference;
    }
    if (name == "cloud") {
        convention = BordaConvention::averaged;
        return DissimKind::completion_cloud;
    }
    throw std::invalid_argument("unknown dissimilarity: " + name);
}

Linkage parse_linkage(const std::string& name) {
    if (name == "single") return Linkage::single;
    if (name == "average") return Linkage::average;
    if (name == "complete") return Linkage::complete;
    throw std::invalid_argument("unknown linkage: " + name);
}

SlatePartition run_slates(const Profile& p, int k, const std::string& method,
                          const std::string& linkage, const std::string& dissim_name) {
    if (method == "simplex-opt") return slates_by_simplex_optimization(p, k);
    BordaConvention conv = BordaConvention::pessimistic;
    DissimKind kind = parse_dissim(dissim_name, conv);
    CandidateDissimilarity d = kind == DissimKind::rank_difference
                                   ? dissim_rank_difference(p, conv)
                                   : dissim_completion_cloud(p);
    if (method == "centers") return slates_by_centers(p, k, d);
    if (method == "agglom") return slates_by_agglomeration(p, k, d, parse_linkage(linkage));
    throw std::invalid_argument("unknown slate method: " + method);
}

json slates_json(const Profile& p, const SlatePartition& s, const std::string& method,
                 const std::string& linkage, const std::string& dissim) {
    json out;
    out["method"] = method;
    if (method == "agglom") out["linkage"] = linkage;
    out["dissimilarity"] = dissim;
    out["k"] = s.k;
    json slates = json::array();
    for (const auto& slate : s.slates) {
        json sl = json::array();
        for (CandidateId c : slate) sl.push_back(c + 1);
        slates.push_back(sl);
    }
    out["slates"] = slates;
    if (!s.centers.empty()) {
        json centers = json::array();
        for (CandidateId c : s.centers) centers.push_back(c + 1);
        out["centers"] = centers;
    }
    if (!s.merge_history.empty()) {
        json merges = json::array();
        for (const auto& mg : s.merge_history) {
            json m;
            json l = json::array(), r = json::array();
            for (CandidateId c : mg.left) l.push_back(c + 1);
            for (CandidateId c : mg.right) r.push_back(c + 1);
            m["left"] = l;
            m["right"] = r;
            m["distance"] = mg.distance;
            merges.push_back(m);
        }
        out["merges"] = merges;
    }
    auto assign = assign_ballots_to_slates(p, s, SlateAssignRule::borda_per_candidate);
    auto counts = p.type_counts();
    std::vector<long long> sizes(static_cast<size_t>(s.k), 0);
    for (size_t t = 0; t < assign.size(); ++t)
        sizes[static_cast<size_t>(assign[t])] += counts[t];
    out["bloc_rule"] = "borda_per_candidate";
    out["bloc_sizes"] = sizes;
    out["bloc_assignment"] = assign;
    return out;
}

std::string slates_report(const Profile& p, const SlatePartition& s) {
    std::ostringstream out;
    out << "k\t" << s.k << '\n';
    for (int i = 0; i < s.k; ++i) {
        out << "slate\t" << i + 1 << '\t';
        const auto& slate = s.slates[static_cast<size_t>(i)];
        for (size_t j = 0; j < slate.size(); ++j) {
            if (j) out << ',';
            out << slate[j] + 1;
            const auto& party = p.party[static_cast<size_t>(slate[j])];
            if (!party.empty()) out << '(' << party << ')';
        }
        out << '\n';
    }
    if (!s.centers.empty()) {
        out << "centers\t";
        for (size_t j = 0; j < s.centers.size(); ++j) out << (j ? "," : "") << s.centers[j] + 1;
        out << '\n';
    }
    for (const auto& mg : s.merge_history) {
        out << "merge\t{";
        for (size_t j = 0; j < mg.left.size(); ++j) out << (j ? "," : "") << mg.left[j] + 1;
        out << "}+{";
        for (size_t j = 0; j < mg.right.size(); ++j) out << (j ? "," : "") << mg.right[j] + 1;
        out << "}\t" << mg.distance << '\n';
    }
    return out.str();
}

/* Parties with >= 2 candidates that the k slates separate. */
std::vector<std::string> split_parties(const Profile& p, const SlatePartition& s) {
    std::vector<std::string> out;
    std::map<std::string, std::vector<int>> members;
    for (int c = 0; c < p.m; ++c) {
        const auto& party = p.party[static_cast<size_t>(c)];
        if (!party.empty()) members[party].push_back(c);
    }
    for (const auto& [party, cs] : members) {
        if (cs.size() < 2) continue;
        int slate0 = s.slate_of(cs[0]);
        for (size_t i = 1; i < cs.size(); ++i) {
            if (s.slate_of(cs[i]) != slate0) {
                out.push_back(party);
                break;
            }
        }
    }
    return out;
}

} // namespace

extern "C" {

const char* bg_version(void) { return "0.1.0"; }

const char* bg_last_error(void) { return g_last_error.c_str(); }

void bg_string_free(char* s) { delete[] s; }

bg_status bg_profile_from_file(const char* path, bg_profile** out) {
    if (!path || !out) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        auto h = std::make_unique<bg_profile>();
        h->profile = load_profile_file(path, &h->dropped);
        *out = h.release();
    });
}

bg_status bg_profile_from_text(const char* text, bg_profile** out) {
    if (!text || !out) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        auto h = std::make_unique<bg_profile>();
        h->profile = load_profile_text(text, &h->dropped);
        *out = h.release();
    });
}

void bg_profile_free(bg_profile* p) { delete p; }

int bg_profile_candidates(const bg_profile* p) { return p ? p->profile.m : 0; }
long long bg_profile_voters(const bg_profile* p) { return p ? p->profile.voters() : 0; }
int bg_profile_types(const bg_profile* p) { return p ? p->profile.type_count() : 0; }
int bg_profile_withdrawn_candidates(const bg_profile* p) {
    return p ? p->profile.withdrawn_candidates : 0;
}
long long bg_profile_dropped_ballots(const bg_profile* p) { return p ? p->dropped : 0; }

bg_status bg_profile_serialize(const bg_profile* p, char** out) {
    if (!p || !out) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] { *out = dup_string(serialize_profile(p->profile)); });
}

bg_status bg_profile_stats_text(const bg_profile* p, char** out) {
    if (!p || !out) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] { *out = dup_string(stats_text(p->profile, profile_stats(p->profile))); });
}

bg_status bg_profile_stats_json(const bg_profile* p, char** out) {
    if (!p || !out) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        auto s = profile_stats(p->profile);
        json j;
        j["title"] = p->profile.title;
        j["candidates"] = p->profile.m;
        j["seats"] = p->profile.seats;
        j["voters"] = s.voter_count;
        j["distinct_types"] = s.distinct_types;
        if (p->profile.m <= 20) j["possible_ballots"] = count_ballots(p->profile.m);
        j["mean_length"] = s.mean_length;
        j["singleton_types"] = s.singleton_type_count;
        j["withdrawn_candidates"] = p->profile.withdrawn_candidates;
        j["dropped_ballots"] = p->dropped;
        json hist = json::object();
        for (const auto& [len, cnt] : s.length_histogram) hist[std::to_string(len)] = cnt;
        j["length_histogram"] = hist;
        json top = json::array();
        for (const auto& [b, cnt] : s.top_ballots) top.push_back({{"ballot", b.str()}, {"count", cnt}});
        j["top_ballots"] = top;
        *out = dup_string(j.dump(2));
    });
}

bg_status bg_distance_report(const char* ballot_a, const char* ballot_b, int m,
                             const bg_profile* roster, char** out_json) {
    if (!ballot_a || !ballot_b || !out_json) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        const int mm = roster ? roster->profile.m : m;
        if (mm < 1) throw std::invalid_argument("candidate count required (--m or a roster)");
        const std::vector<std::string>* names = roster ? &roster->profile.names : nullptr;
        auto ga = parse_ballot_literal(ballot_a, mm, names);
        auto gb = parse_ballot_literal(ballot_b, mm, names);
        auto pa = ga.as_partial(), pb = gb.as_partial();
        json j;
        j["a"] = pa ? pa->str() : ga.str();
        j["b"] = pb ? pb->str() : gb.str();
        j["m"] = mm;
        auto d = disagreements(ga, gb);
        j["strong"] = d.strong;
        j["weak"] = d.weak;
        j["weak_forward"] = d.weak_forward;
        j["weak_backward"] = d.weak_backward;
        j["d_h"] = dist_h(ga, gb).value();
        j["d_b_pessimistic"] = dist_b(ga, gb, BordaConvention::pessimistic).value();
        j["d_b_averaged"] = dist_b(ga, gb, BordaConvention::averaged).value();
        j["k_1"] = dist_kp(ga, gb, 1.0);
        if (pa && pb) {
            j["d_hausdorff"] = dist_hausdorff(*pa, *pb);
            try {
                auto avg = expected_completion_swaps_exact(*pa, *pb, 400000);
                j["expected_completion_swaps"] = avg.value();
            } catch (const BudgetError&) {
                j["expected_completion_swaps"] = nullptr;
            }
        }
        *out_json = dup_string(j.dump(2));
    });
}

bg_status bg_graph_check(int m, int include_generalized, int include_empty,
                         long long max_nodes, int* pass, char** report) {
    if (!pass || !report) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        GraphOptions opts;
        opts.include_empty = include_empty != 0;
        if (max_nodes > 0) opts.max_nodes = max_nodes;
        std::ostringstream out;
        bool ok = true;

        auto basic = build_graph(m, GraphVariant::basic, opts);
        auto shortcut = build_graph(m, GraphVariant::shortcut, opts);
        long long mismatches = 0;
        const auto& nodes = basic.ballot_nodes();
        const int n = static_cast<int>(nodes.size());
        for (int i = 0; i < n; ++i) {
            auto dh_all = path_distances_from(basic, i);
            auto db_all = path_distances_from(shortcut, i);
            for (int j = 0; j < n; ++j) {
                if (dh_all[static_cast<size_t>(j)] !=
                    dist_h(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)]))
                    ++mismatches;
                if (db_all[static_cast<size_t>(j)] !=
                    dist_b(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)],
                           BordaConvention::pessimistic))
                    ++mismatches;
            }
        }
        out << "basic+shortcut\tm=" << m << "\tnodes=" << n << "\tpairs=" << 1ll * n * n
            << "\tmismatches=" << mismatches << '\t' << (mismatches == 0 ? "PASS" : "FAIL") << '\n';
        ok = ok && mismatches == 0;

        if (include_generalized) {
            auto gen = build_graph(m, GraphVariant::generalized, opts);
            const auto& gnodes = gen.generalized_nodes();
            const int gn = static_cast<int>(gnodes.size());
            long long gmis = 0;
            for (int i = 0; i < gn; ++i) {
                auto d_all = path_distances_from(gen, i);
                for (int j = 0; j < gn; ++j) {
                    if (d_all[static_cast<size_t>(j)] !=
                        dist_h(gnodes[static_cast<size_t>(i)], gnodes[static_cast<size_t>(j)]))
                        ++gmis;
                }
            }
            out << "generalized\tm=" << m << "\tnodes=" << gn << "\tpairs=" << 1ll * gn * gn
                << "\tmismatches=" << gmis << '\t' << (gmis == 0 ? "PASS" : "FAIL") << '\n';
            ok = ok && gmis == 0;
        }
        *pass = ok ? 1 : 0;
        *report = dup_string(out.str());
    });
}

bg_status bg_graph_export(int m, const char* variant, int include_empty, long long max_nodes,
                          char** edges) {
    if (!variant || !edges) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        GraphVariant v;
        std::string name = variant;
        if (name == "basic") v = GraphVariant::basic;
        else if (name == "shortcut") v = GraphVariant::shortcut;
        else if (name == "generalized") v = GraphVariant::generalized;
        else if (name == "generalized-shortcut") v = GraphVariant::generalized_shortcut;
        else throw std::invalid_argument("unknown graph variant: " + name);
        GraphOptions opts;
        opts.include_empty = include_empty != 0;
        if (max_nodes > 0) opts.max_nodes = max_nodes;
        *edges = dup_string(export_edge_list(build_graph(m, v, opts)));
    });
}

bg_status bg_cluster(const bg_profile* p, const char* algo, int k, const char* metric,
                     unsigned long long seed, int restarts, int jobs, long long budget,
                     char** report, char** out_json) {
    if (!p || !algo || !metric || !report || !out_json) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        const std::string algo_name = algo;
        const std::string metric_name = metric;
        Clustering c;
        bool coordinate_metric = false;
        if (algo_name == "pam" || algo_name == "exact-medoid") {
            DistanceSpec spec = DistanceSpec::parse(metric_name);
            auto d = distance_matrix(p->profile, spec, jobs);
            c = algo_name == "pam"
                    ? pam_with_matrix(p->profile, d, k, seed, restarts)
                    : exact_k_medoids_with_matrix(p->profile, d, k,
                                                  budget > 0 ? static_cast<int>(budget) : 2000);
        } else if (algo_name == "lloyd" || algo_name == "median") {
            EmbeddingKind kind;
            if (metric_name == "db") kind = EmbeddingKind::borda_pessimistic;
            else if (metric_name == "db-avg") kind = EmbeddingKind::borda_averaged;
            else if (metric_name == "dh") kind = EmbeddingKind::head_to_head;
            else throw std::invalid_argument(algo_name + " needs an embedding: db, db-avg or dh");
            coordinate_metric = true;
            if (algo_name == "lloyd") {
                c = lloyd(p->profile, k, kind, seed, restarts);
            } else {
                auto center = coordinatewise_median_center(p->profile, kind);
                c.k = 1;
                Clustering::Center ctr;
                ctr.kind = Clustering::Center::Kind::coordinate;
                ctr.coords = center;
                c.centers.push_back(ctr);
                c.assignment.assign(p->profile.ballots.size(), 0);
                auto pts = embed_types(p->profile, kind);
                auto counts = p->profile.type_counts();
                double cost = 0.0;
                for (size_t t = 0; t < pts.size(); ++t) {
                    double l1 = 0.0;
                    for (size_t i = 0; i < center.size(); ++i)
                        l1 += std::abs(pts[t][i] - center[i]);
                    cost += l1 * static_cast<double>(counts[t]);
                }
                c.cost = cost;
                c.cluster_costs = {cost};
            }
        } else {
            throw std::invalid_argument("unknown algorithm: " + algo_name);
        }
        double sil = 0.0;
        bool has_sil = c.k >= 2;
        if (has_sil) {
            DistanceSpec sil_spec = coordinate_metric
                                        ? DistanceSpec::parse(metric_name == "db-avg" ? "db-avg"
                                                              : metric_name == "db"   ? "db"
                                                                                      : "dh")
                                        : DistanceSpec::parse(metric_name);
            sil = silhouette_with_matrix(p->profile, distance_matrix(p->profile, sil_spec, jobs), c);
        }
        *report = dup_string(clustering_report(p->profile, c, algo_name, metric_name, sil, has_sil));
        *out_json = dup_string(
            clustering_json(p->profile, c, algo_name, metric_name, seed, restarts, sil, has_sil)
                .dump(2));
    });
}

bg_status bg_kemeny(const bg_profile* p, int k, long long max_ops, char** report, char** out_json) {
    if (!p || !report || !out_json) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        DistanceSpec spec{DistanceSpec::Kind::head_to_head, 0.5};
        auto c = exact_kemeny(p->profile, k, spec, max_ops > 0 ? max_ops : 2000000000ll);
        double sil = 0.0;
        bool has_sil = c.k >= 2;
        if (has_sil) sil = silhouette_with_matrix(p->profile, distance_matrix(p->profile, spec), c);
        *report = dup_string(clustering_report(p->profile, c, "kemeny", "dh", sil, has_sil));
        *out_json =
            dup_string(clustering_json(p->profile, c, "kemeny", "dh", 0, 0, sil, has_sil).dump(2));
    });
}

bg_status bg_slates(const bg_profile* p, int k, const char* method, const char* linkage,
                    const char* dissim, char** report, char** out_json) {
    if (!p || !method || !linkage || !dissim || !report || !out_json)
        return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        auto s = run_slates(p->profile, k, method, linkage, dissim);
        *report = dup_string(slates_report(p->profile, s));
        *out_json = dup_string(slates_json(p->profile, s, method, linkage, dissim).dump(2));
    });
}

bg_status bg_simplex(const bg_profile* p, int k, const char* method, const char* linkage,
                     char** csv, char** svg) {
    if (!p || !method || !linkage || !csv) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        auto s = run_slates(p->profile, k, method, linkage, "cloud");
        auto density = simplex_density(p->profile, s);
        *csv = dup_string(simplex_csv(density));
        if (svg) *svg = (k == 2 || k == 3) ? dup_string(render_simplex_svg(density, k)) : nullptr;
    });
}

bg_status bg_mds(const bg_profile* p, const char* metric, int jobs, char** csv, char** svg) {
    if (!p || !metric || !csv) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        auto e = mds_of_profile(p->profile, DistanceSpec::parse(metric), jobs);
        *csv = dup_string(embedding_csv(e));
        if (svg) *svg = dup_string(render_svg(e));
    });
}

bg_status bg_synth(const char* family, double p, unsigned long long seed, bg_profile** out) {
    if (!family || !out) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        auto h = std::make_unique<bg_profile>();
        h->profile = benchmark_election(parse_family(family), p, seed);
        *out = h.release();
    });
}

bg_status bg_corpus_file_summary(const char* path, unsigned long long seed, int restarts,
                                 int max_types_exact, char** out_json) {
    if (!path || !out_json) return BG_ERROR_INVALID_ARGUMENT;
    return guarded([&] {
        Profile p = load_profile_file(path);
        json j;
        j["path"] = path;
        j["title"] = p.title;
        j["m"] = p.m;
        j["voters"] = p.voters();
        j["types"] = p.type_count();

        DistanceSpec db{DistanceSpec::Kind::borda_pessimistic, 0.5};
        DistanceSpec dh{DistanceSpec::Kind::head_to_head, 0.5};
        auto mat_b = distance_matrix(p, db);
        auto mat_h = distance_matrix(p, dh);

        auto k1_b = exact_k_medoids_with_matrix(p, mat_b, 1);
        auto k1_h = exact_k_medoids_with_matrix(p, mat_h, 1);
        j["k1_center_db"] = k1_b.centers[0].ballot.str();
        j["k1_center_dh"] = k1_h.centers[0].ballot.str();
        j["k1_centers_agree"] = k1_b.centers[0].ballot == k1_h.centers[0].ballot;

        const bool k2_feasible = p.type_count() >= 2 && p.type_count() <= max_types_exact;
        j["k2_exact_feasible"] = k2_feasible;
        Clustering k2_b, k2_h;
        if (k2_feasible) {
            k2_b = exact_k_medoids_with_matrix(p, mat_b, 2, max_types_exact);
            k2_h = exact_k_medoids_with_matrix(p, mat_h, 2, max_types_exact);
            auto centers_of = [](const Clustering& c) {
                std::vector<std::string> out = {c.centers[0].ballot.str(), c.centers[1].ballot.str()};
                std::sort(out.begin(), out.end());
                return out;
            };
            j["k2_centers_db"] = centers_of(k2_b);
            j["k2_centers_dh"] = centers_of(k2_h);
            j["k2_centers_agree"] = centers_of(k2_b) == centers_of(k2_h);
            j["k2_sizes_db"] = k2_b.sizes(p);
        }

        // heuristic partitions for the method-difference table
        auto pam_b = pam_with_matrix(p, mat_b, 2, seed, restarts);
        auto pam_h = pam_with_matrix(p, mat_h, 2, seed, restarts);
        auto lloyd_b = lloyd(p, 2, EmbeddingKind::borda_pessimistic, seed, restarts);
        auto lloyd_h = lloyd(p, 2, EmbeddingKind::head_to_head, seed, restarts);
        if (k2_feasible) {
            j["pam_db_optimal"] = pam_b.cost <= k2_b.cost + 1e-9;
            j["pam_dh_optimal"] = pam_h.cost <= k2_h.cost + 1e-9;
        }
        const Clustering* methods[] = {&lloyd_b, &lloyd_h, &pam_b, &pam_h};
        json table = json::array();
        for (int a = 0; a < 4; ++a) {
            json row = json::array();
            for (int b = 0; b < 4; ++b)
                row.push_back(partition_difference(p, *methods[a], *methods[b]));
            table.push_back(row);
        }
        j["method_order"] = {"lloyd_db", "lloyd_dh", "pam_db", "pam_dh"};
        j["method_difference"] = table;

        // k=2 slates under both methods, with party-splitting flags
        if (p.m >= 2) {
            auto d_rank = dissim_rank_difference(p, BordaConvention::pessimistic);
            auto d_cloud = dissim_completion_cloud(p);
            auto s_centers = slates_by_centers(p, 2, d_rank);
            auto s_agglom = slates_by_agglomeration(p, 2, d_cloud, Linkage::average);
            j["slates_centers"] = slates_json(p, s_centers, "centers", "", "rank-diff")["slates"];
            j["slates_agglom"] = slates_json(p, s_agglom, "agglom", "average", "cloud")["slates"];
            j["split_parties_centers"] = split_parties(p, s_centers);
            j["split_parties_agglom"] = split_parties(p, s_agglom);
            int multi = 0;
            std::map<std::string, int> party_sizes;
            for (const auto& party : p.party)
                if (!party.empty()) ++party_sizes[party];
            for (const auto& [name, cnt] : party_sizes) multi += cnt >= 2;
            j["parties_with_pairs"] = multi;
        }
        *out_json = dup_string(j.dump(2));
    });
}

} // extern "C"
