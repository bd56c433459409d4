// ballotgeo: ranked-ballot geometry toolkit.
//
// Subcommands: stats, distance, graph-check, cluster, kemeny, slates,
// simplex, mds, synth, corpus-sweep. All domain computation goes through the
// shared-library C API (ballotgeo.h); this binary only parses arguments,
// moves bytes and aggregates corpus sweeps.
//
// Exit codes: 0 success, 1 usage, 2 parse error, 3 budget exceeded,
// 4 internal assertion.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ballotgeo/ballotgeo.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

int exit_for(bg_status st) {
    switch (st) {
        case BG_OK: return 0;
        case BG_ERROR_INVALID_ARGUMENT: return kExitUsage;
        case BG_ERROR_PARSE: return kExitParse;
        case BG_ERROR_BUDGET: return kExitBudget;
        case BG_ERROR_INTERNAL: return kExitInternal;
    }
    return kExitInternal;
}

[[noreturn]] void die(bg_status st, const std::string& context) {
    std::cerr << "ballotgeo: " << context;
    const char* msg = bg_last_error();
    if (msg && *msg) std::cerr << ": " << msg;
    std::cerr << '\n';
    std::exit(exit_for(st));
}

std::string take(char* s) {
    std::string out = s ? s : "";
    bg_string_free(s);
    return out;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "ballotgeo: cannot open " << path << '\n';
        std::exit(kExitParse);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

int default_jobs() {
    if (const char* env = std::getenv("BALLOTGEO_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

// Everything a run needs to be replayed; serialized into the manifest so
// outputs are traceable. No timestamps: identical configs give identical
// bytes.
struct OutputSink {
    std::string out_dir;
    json manifest;

    void init(const std::string& subcommand, const std::vector<std::string>& argv_tail) {
        manifest["tool"] = "ballotgeo";
        manifest["version"] = bg_version();
        manifest["subcommand"] = subcommand;
        // The output directory is where the manifest lives; recording its
        // path would make otherwise-identical runs differ byte-wise.
        json args = json::array();
        for (size_t i = 0; i < argv_tail.size(); ++i) {
            if (argv_tail[i] == "--out") {
                ++i;
                continue;
            }
            args.push_back(argv_tail[i]);
        }
        manifest["args"] = args;
    }
    void record_input(const std::string& path, const std::string& content) {
        json entry;
        entry["path"] = path;
        entry["fnv1a64"] = hex64(fnv1a64(content));
        manifest["inputs"].push_back(entry);
    }
    void write(const std::string& name, const std::string& content) {
        if (out_dir.empty()) return;
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        out << content;
        manifest["outputs"].push_back(name);
    }
    void finish() {
        if (out_dir.empty()) return;
        std::ofstream out(fs::path(out_dir) / "manifest.json", std::ios::binary);
        out << manifest.dump(2) << '\n';
    }
};

bg_profile* load_profile_arg(const std::string& input, OutputSink& sink) {
    std::string text = read_input(input);
    sink.record_input(input, text);
    bg_profile* p = nullptr;
    bg_status st = bg_profile_from_text(text.c_str(), &p);
    if (st != BG_OK) die(st, "loading " + input);
    if (bg_profile_withdrawn_candidates(p) > 0 || bg_profile_dropped_ballots(p) > 0) {
        std::cerr << "ballotgeo: " << input << ": removed "
                  << bg_profile_withdrawn_candidates(p) << " withdrawn candidate(s), dropped "
                  << bg_profile_dropped_ballots(p) << " emptied ballot(s)\n";
    }
    return p;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric geometry of ranked ballots: distances, ballot graphs, "
                 "voter blocs and candidate slates"};
    app.require_subcommand(1);
    std::vector<std::string> argv_tail(argv + 1, argv + argc);

    std::string out_dir;
    app.add_option("--out", out_dir, "directory for output artifacts and the run manifest")
        ->each([](const std::string&) {});

    // ---- stats ----
    auto* cmd_stats = app.add_subcommand("stats", "profile statistics for a BLT or profile file");
    std::string stats_input = "-";
    bool stats_json = false;
    cmd_stats->add_option("input", stats_input, "BLT or profile file, - for stdin");
    cmd_stats->add_flag("--json", stats_json, "emit JSON instead of text");

    // ---- distance ----
    auto* cmd_dist = app.add_subcommand("distance", "all pairwise distances between two ballots");
    std::string dist_a, dist_b_arg, dist_roster;
    int dist_m = 0;
    cmd_dist->add_option("a", dist_a, "first ballot literal (e.g. \"1>3>2\" or \"A>C>B\")")->required();
    cmd_dist->add_option("b", dist_b_arg, "second ballot literal")->required();
    cmd_dist->add_option("--m", dist_m, "number of candidates (when no roster is given)");
    cmd_dist->add_option("--roster", dist_roster, "profile/BLT file whose names resolve the literals");

    // ---- graph-check ----
    auto* cmd_graph = app.add_subcommand("graph-check",
                                         "verify that graph shortest paths match the distances");
    int graph_m = 4;
    bool graph_generalized = false, graph_empty = false;
    long long graph_max_nodes = 0;
    cmd_graph->add_option("--m", graph_m, "number of candidates")->required();
    cmd_graph->add_flag("--generalized", graph_generalized, "also check the tier-merge graph");
    cmd_graph->add_flag("--include-empty", graph_empty, "add the empty-ballot node");
    cmd_graph->add_option("--max-nodes", graph_max_nodes, "node budget override");

    // ---- graph-export ----
    auto* cmd_gexp = app.add_subcommand("graph-export", "write a ballot graph as an edge list");
    int gexp_m = 3;
    std::string gexp_variant = "basic";
    bool gexp_empty = false;
    long long gexp_max_nodes = 0;
    cmd_gexp->add_option("--m", gexp_m, "number of candidates")->required();
    cmd_gexp->add_option("--variant", gexp_variant,
                         "basic | shortcut | generalized | generalized-shortcut (experimental)");
    cmd_gexp->add_flag("--include-empty", gexp_empty, "add the empty-ballot node");
    cmd_gexp->add_option("--max-nodes", gexp_max_nodes, "node budget override");

    // ---- cluster ----
    auto* cmd_cluster = app.add_subcommand("cluster", "voter bloc detection");
    std::string cluster_input = "-", cluster_metric = "dh", cluster_algo = "pam";
    int cluster_k = 2, cluster_restarts = 2, cluster_jobs = default_jobs();
    unsigned long long cluster_seed = 0;
    long long cluster_budget = 0;
    cmd_cluster->add_option("input", cluster_input, "BLT or profile file, - for stdin");
    cmd_cluster->add_option("--k", cluster_k, "number of blocs");
    cmd_cluster->add_option("--metric", cluster_metric, "db | db-avg | dh | haus | kp:<p>");
    cmd_cluster->add_option("--algo", cluster_algo, "pam | lloyd | exact-medoid | median");
    cmd_cluster->add_option("--seed", cluster_seed, "random seed");
    cmd_cluster->add_option("--restarts", cluster_restarts, "extra random restarts");
    cmd_cluster->add_option("--jobs", cluster_jobs, "distance-matrix worker threads");
    cmd_cluster->add_option("--budget", cluster_budget, "type budget for exact-medoid");

    // ---- kemeny ----
    auto* cmd_kemeny = app.add_subcommand("kemeny", "optimal complete-ranking centers");
    std::string kemeny_input = "-";
    int kemeny_k = 1;
    long long kemeny_budget = 0;
    cmd_kemeny->add_option("input", kemeny_input, "BLT or profile file, - for stdin");
    cmd_kemeny->add_option("--k", kemeny_k, "1 or 2 centers");
    cmd_kemeny->add_option("--budget", kemeny_budget, "operation budget");

    // ---- slates ----
    auto* cmd_slates = app.add_subcommand("slates", "candidate slate detection");
    std::string slates_input = "-", slates_method = "agglom", slates_linkage = "average",
                slates_dissim;
    int slates_k = 2;
    cmd_slates->add_option("input", slates_input, "BLT or profile file, - for stdin");
    cmd_slates->add_option("--k", slates_k, "number of slates");
    cmd_slates->add_option("--method", slates_method, "centers | agglom");
    cmd_slates->add_option("--linkage", slates_linkage, "single | average | complete");
    cmd_slates->add_option("--dissim", slates_dissim,
                           "rank-diff | rank-diff-avg | cloud (default: rank-diff for centers, "
                           "cloud for agglom)");

    // ---- simplex ----
    auto* cmd_simplex = app.add_subcommand("simplex", "slate-support simplex density data");
    std::string simplex_input = "-", simplex_method = "agglom", simplex_linkage = "average";
    int simplex_k = 3;
    cmd_simplex->add_option("input", simplex_input, "BLT or profile file, - for stdin");
    cmd_simplex->add_option("--k", simplex_k, "number of slates");
    cmd_simplex->add_option("--method", simplex_method, "centers | agglom");
    cmd_simplex->add_option("--linkage", simplex_linkage, "single | average | complete");

    // ---- mds ----
    auto* cmd_mds = app.add_subcommand("mds", "2-D embedding of the ballot types");
    std::string mds_input = "-", mds_metric = "db";
    int mds_jobs = default_jobs();
    cmd_mds->add_option("input", mds_input, "BLT or profile file, - for stdin");
    cmd_mds->add_option("--metric", mds_metric, "db | db-avg | dh | haus | kp:<p>");
    cmd_mds->add_option("--jobs", mds_jobs, "distance-matrix worker threads");

    // ---- synth ----
    auto* cmd_synth = app.add_subcommand("synth", "generate a benchmark election");
    std::string synth_family = "E";
    double synth_p = 0.3;
    unsigned long long synth_seed = 0;
    cmd_synth->add_option("--family", synth_family, "E | E2 | E3")->required();
    cmd_synth->add_option("--p", synth_p, "dispersion parameter for E2/E3");
    cmd_synth->add_option("--seed", synth_seed, "random seed");

    // ---- corpus-sweep ----
    auto* cmd_corpus = app.add_subcommand("corpus-sweep",
                                          "dataset-wide method comparison over a directory of "
                                          "BLT files");
    std::string corpus_dir;
    int corpus_jobs = default_jobs(), corpus_restarts = 2, corpus_max_types = 2000;
    unsigned long long corpus_seed = 1;
    cmd_corpus->add_option("dir", corpus_dir, "directory containing .blt files")->required();
    cmd_corpus->add_option("--jobs", corpus_jobs, "files processed in parallel");
    cmd_corpus->add_option("--seed", corpus_seed, "random seed for the heuristics");
    cmd_corpus->add_option("--restarts", corpus_restarts, "restarts for PAM and Lloyd");
    cmd_corpus->add_option("--max-types", corpus_max_types, "exact k=2 budget per election");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    OutputSink sink;
    sink.out_dir = out_dir;

    if (cmd_stats->parsed()) {
        sink.init("stats", argv_tail);
        bg_profile* p = load_profile_arg(stats_input, sink);
        char* text = nullptr;
        bg_status st = stats_json ? bg_profile_stats_json(p, &text) : bg_profile_stats_text(p, &text);
        if (st != BG_OK) die(st, "stats");
        std::string body = take(text);
        std::cout << body;
        if (!stats_json && !body.empty() && body.back() != '\n') std::cout << '\n';
        sink.write(stats_json ? "stats.json" : "stats.txt", body);
        bg_profile_free(p);
        sink.finish();
        return 0;
    }

    if (cmd_dist->parsed()) {
        sink.init("distance", argv_tail);
        bg_profile* roster = nullptr;
        if (!dist_roster.empty()) roster = load_profile_arg(dist_roster, sink);
        char* js = nullptr;
        bg_status st = bg_distance_report(dist_a.c_str(), dist_b_arg.c_str(), dist_m, roster, &js);
        if (st != BG_OK) die(st, "distance");
        std::string body = take(js);
        std::cout << body << '\n';
        sink.write("distance.json", body);
        if (roster) bg_profile_free(roster);
        sink.finish();
        return 0;
    }

    if (cmd_graph->parsed()) {
        sink.init("graph-check", argv_tail);
        int pass = 0;
        char* report = nullptr;
        bg_status st = bg_graph_check(graph_m, graph_generalized ? 1 : 0, graph_empty ? 1 : 0,
                                      graph_max_nodes, &pass, &report);
        if (st != BG_OK) die(st, "graph-check");
        std::string body = take(report);
        std::cout << body;
        sink.write("graph-check.txt", body);
        sink.finish();
        return pass ? 0 : kExitInternal;
    }

    if (cmd_gexp->parsed()) {
        sink.init("graph-export", argv_tail);
        char* edges = nullptr;
        bg_status st = bg_graph_export(gexp_m, gexp_variant.c_str(), gexp_empty ? 1 : 0,
                                       gexp_max_nodes, &edges);
        if (st != BG_OK) die(st, "graph-export");
        std::string body = take(edges);
        std::cout << body;
        sink.write("edges.tsv", body);
        sink.finish();
        return 0;
    }

    if (cmd_cluster->parsed()) {
        sink.init("cluster", argv_tail);
        bg_profile* p = load_profile_arg(cluster_input, sink);
        char *report = nullptr, *js = nullptr;
        bg_status st = bg_cluster(p, cluster_algo.c_str(), cluster_k, cluster_metric.c_str(),
                                  cluster_seed, cluster_restarts, cluster_jobs, cluster_budget,
                                  &report, &js);
        if (st != BG_OK) die(st, "cluster");
        std::string body = take(report);
        std::cout << body;
        sink.write("clustering.txt", body);
        sink.write("clustering.json", take(js));
        bg_profile_free(p);
        sink.finish();
        return 0;
    }

    if (cmd_kemeny->parsed()) {
        sink.init("kemeny", argv_tail);
        bg_profile* p = load_profile_arg(kemeny_input, sink);
        char *report = nullptr, *js = nullptr;
        bg_status st = bg_kemeny(p, kemeny_k, kemeny_budget, &report, &js);
        if (st != BG_OK) die(st, "kemeny");
        std::string body = take(report);
        std::cout << body;
        sink.write("kemeny.txt", body);
        sink.write("kemeny.json", take(js));
        bg_profile_free(p);
        sink.finish();
        return 0;
    }

    if (cmd_slates->parsed()) {
        sink.init("slates", argv_tail);
        if (slates_dissim.empty())
            slates_dissim = slates_method == "centers" ? "rank-diff" : "cloud";
        bg_profile* p = load_profile_arg(slates_input, sink);
        char *report = nullptr, *js = nullptr;
        bg_status st = bg_slates(p, slates_k, slates_method.c_str(), slates_linkage.c_str(),
                                 slates_dissim.c_str(), &report, &js);
        if (st != BG_OK) die(st, "slates");
        std::string body = take(report);
        std::cout << body;
        sink.write("slates.txt", body);
        sink.write("slates.json", take(js));
        bg_profile_free(p);
        sink.finish();
        return 0;
    }

    if (cmd_simplex->parsed()) {
        sink.init("simplex", argv_tail);
        bg_profile* p = load_profile_arg(simplex_input, sink);
        char *csv = nullptr, *svg = nullptr;
        bg_status st = bg_simplex(p, simplex_k, simplex_method.c_str(), simplex_linkage.c_str(),
                                  &csv, &svg);
        if (st != BG_OK) die(st, "simplex");
        std::string body = take(csv);
        std::cout << body;
        sink.write("simplex.csv", body);
        if (svg) sink.write("simplex.svg", take(svg));
        bg_profile_free(p);
        sink.finish();
        return 0;
    }

    if (cmd_mds->parsed()) {
        sink.init("mds", argv_tail);
        bg_profile* p = load_profile_arg(mds_input, sink);
        char *csv = nullptr, *svg = nullptr;
        bg_status st = bg_mds(p, mds_metric.c_str(), mds_jobs, &csv, &svg);
        if (st != BG_OK) die(st, "mds");
        std::string body = take(csv);
        std::cout << body;
        sink.write("mds.csv", body);
        if (svg) sink.write("mds.svg", take(svg));
        bg_profile_free(p);
        sink.finish();
        return 0;
    }

    if (cmd_synth->parsed()) {
        sink.init("synth", argv_tail);
        bg_profile* p = nullptr;
        bg_status st = bg_synth(synth_family.c_str(), synth_p, synth_seed, &p);
        if (st != BG_OK) die(st, "synth");
        char* text = nullptr;
        st = bg_profile_serialize(p, &text);
        if (st != BG_OK) die(st, "synth");
        std::string body = take(text);
        std::cout << body;
        sink.write("profile.txt", body);
        bg_profile_free(p);
        sink.finish();
        return 0;
    }

    if (cmd_corpus->parsed()) {
        sink.init("corpus-sweep", argv_tail);
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(corpus_dir)) {
            if (!entry.is_regular_file()) continue;
            auto ext = entry.path().extension().string();
            if (ext == ".blt" || ext == ".BLT") files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            std::cerr << "ballotgeo: no .blt files under " << corpus_dir << '\n';
            return kExitUsage;
        }

        // parallel over files, results slotted by index so merge order is
        // the filename order regardless of the job count
        std::vector<std::string> results(files.size());
        std::vector<int> statuses(files.size(), 0);
        {
            const int workers = std::max(1, std::min<int>(corpus_jobs, static_cast<int>(files.size())));
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (size_t i = static_cast<size_t>(w); i < files.size();
                         i += static_cast<size_t>(workers)) {
                        char* js = nullptr;
                        bg_status st = bg_corpus_file_summary(files[i].c_str(), corpus_seed,
                                                              corpus_restarts, corpus_max_types, &js);
                        statuses[i] = st;
                        results[i] = st == BG_OK ? take(js) : std::string(bg_last_error());
                    }
                });
            }
            for (auto& t : pool) t.join();
        }

        json agg;
        agg["files"] = files.size();
        long long parsed = 0, k1_agree = 0, k2_feasible = 0, k2_agree = 0;
        long long pam_db_opt = 0, pam_dh_opt = 0;
        long long with_party_pairs = 0, split_centers = 0, split_agglom = 0;
        std::vector<std::vector<double>> table(4, std::vector<double>(4, 0.0));
        std::map<int, long long> small_slate_centers, small_slate_agglom;
        json per_file = json::array();
        for (size_t i = 0; i < results.size(); ++i) {
            if (statuses[i] != BG_OK) {
                json err;
                err["path"] = files[i];
                err["error"] = results[i];
                per_file.push_back(err);
                continue;
            }
            json j = json::parse(results[i]);
            per_file.push_back(j);
            ++parsed;
            k1_agree += j["k1_centers_agree"].get<bool>() ? 1 : 0;
            if (j["k2_exact_feasible"].get<bool>()) {
                ++k2_feasible;
                k2_agree += j["k2_centers_agree"].get<bool>() ? 1 : 0;
                pam_db_opt += j["pam_db_optimal"].get<bool>() ? 1 : 0;
                pam_dh_opt += j["pam_dh_optimal"].get<bool>() ? 1 : 0;
            }
            auto t = j["method_difference"];
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) table[static_cast<size_t>(a)][static_cast<size_t>(b)] +=
                    t[a][b].get<double>();
            if (j.contains("parties_with_pairs") && j["parties_with_pairs"].get<int>() > 0) {
                ++with_party_pairs;
                split_centers += j["split_parties_centers"].empty() ? 0 : 1;
                split_agglom += j["split_parties_agglom"].empty() ? 0 : 1;
            }
            if (j["m"].get<int>() == 7) {
                auto smaller = [](const json& slates) {
                    size_t a = slates[0].size(), b = slates[1].size();
                    return static_cast<int>(std::min(a, b));
                };
                ++small_slate_centers[smaller(j["slates_centers"])];
                ++small_slate_agglom[smaller(j["slates_agglom"])];
            }
        }
        agg["parsed"] = parsed;
        if (parsed > 0) {
            agg["k1_center_agreement"] = static_cast<double>(k1_agree) / static_cast<double>(parsed);
            agg["k2_exact_feasible"] = k2_feasible;
            if (k2_feasible > 0) {
                agg["k2_center_agreement"] =
                    static_cast<double>(k2_agree) / static_cast<double>(k2_feasible);
                agg["pam_db_optimal_share"] =
                    static_cast<double>(pam_db_opt) / static_cast<double>(k2_feasible);
                agg["pam_dh_optimal_share"] =
                    static_cast<double>(pam_dh_opt) / static_cast<double>(k2_feasible);
            }
            json tj = json::array();
            for (int a = 0; a < 4; ++a) {
                json row = json::array();
                for (int b = 0; b < 4; ++b)
                    row.push_back(table[static_cast<size_t>(a)][static_cast<size_t>(b)] /
                                  static_cast<double>(parsed));
                tj.push_back(row);
            }
            agg["method_order"] = {"lloyd_db", "lloyd_dh", "pam_db", "pam_dh"};
            agg["mean_method_difference"] = tj;
            agg["elections_with_party_pairs"] = with_party_pairs;
            agg["party_splits_centers"] = split_centers;
            agg["party_splits_agglom"] = split_agglom;
            json sc = json::object(), sa = json::object();
            for (const auto& [size, cnt] : small_slate_centers) sc[std::to_string(size)] = cnt;
            for (const auto& [size, cnt] : small_slate_agglom) sa[std::to_string(size)] = cnt;
            agg["m7_smaller_slate_centers"] = sc;
            agg["m7_smaller_slate_agglom"] = sa;
        }
        json full;
        full["summary"] = agg;
        full["elections"] = per_file;
        std::cout << agg.dump(2) << '\n';
        sink.write("sweep.json", full.dump(2));
        sink.finish();
        return parsed == static_cast<long long>(files.size()) ? 0 : kExitParse;
    }

    return kExitUsage;
}
