// Exercises the shared-library surface the way an external binding would:
// through ballotgeo.h only, checking statuses, handles and output strings.

#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>

#include "ballotgeo/ballotgeo.h"

static int g_failures = 0;

#define EXPECT(cond)                                                        \
    do {                                                                    \
        if (!(cond)) {                                                      \
            std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);     \
            ++g_failures;                                                   \
        }                                                                   \
    } while (0)

static const char* kBlt =
    "4 2\n"
    "3 1 3 0\n"
    "2 1 3 4 2 0\n"
    "1 2 0\n"
    "1 4 2 0\n"
    "0\n"
    "\"Ann (X)\"\n"
    "\"Bea (X)\"\n"
    "\"Cal (Y)\"\n"
    "\"Dee (Y)\"\n"
    "\"Testville\"\n";

static std::string take(char* s) {
    std::string out = s ? s : "";
    bg_string_free(s);
    return out;
}

int main() {
    EXPECT(std::strlen(bg_version()) > 0);

    bg_profile* p = nullptr;
    EXPECT(bg_profile_from_text(kBlt, &p) == BG_OK);
    EXPECT(p != nullptr);
    EXPECT(bg_profile_candidates(p) == 4);
    EXPECT(bg_profile_voters(p) == 7);
    EXPECT(bg_profile_types(p) == 4);
    EXPECT(bg_profile_dropped_ballots(p) == 0);

    {
        char* text = nullptr;
        EXPECT(bg_profile_serialize(p, &text) == BG_OK);
        std::string s = take(text);
        EXPECT(s.rfind("m=4 voters=7", 0) == 0);

        bg_profile* round = nullptr;
        EXPECT(bg_profile_from_text(s.c_str(), &round) == BG_OK);
        char* text2 = nullptr;
        EXPECT(bg_profile_serialize(round, &text2) == BG_OK);
        EXPECT(take(text2) == s);
        bg_profile_free(round);
    }

    {
        char* stats = nullptr;
        EXPECT(bg_profile_stats_text(p, &stats) == BG_OK);
        EXPECT(take(stats).find("voters\t7") != std::string::npos);
        char* js = nullptr;
        EXPECT(bg_profile_stats_json(p, &js) == BG_OK);
        std::string j = take(js);
        EXPECT(j.find("\"voters\": 7") != std::string::npos);
        EXPECT(j.find("\"possible_ballots\": 40") != std::string::npos);
    }

    {
        char* js = nullptr;
        EXPECT(bg_distance_report("A>B>C", "A>E", 5, nullptr, &js) == BG_OK);
        std::string j = take(js);
        EXPECT(j.find("\"strong\": 2") != std::string::npos);
        EXPECT(j.find("\"weak\": 4") != std::string::npos);
        EXPECT(j.find("\"d_h\": 4.0") != std::string::npos);

        EXPECT(bg_distance_report("A>A", "B", 3, nullptr, &js) == BG_ERROR_PARSE);
        EXPECT(std::strlen(bg_last_error()) > 0);
        // roster names resolve
        EXPECT(bg_distance_report("Ann (X)>Cal (Y)", "Bea (X)", 0, p, &js) == BG_OK);
        std::string withnames = take(js);
        EXPECT(withnames.find("\"a\": \"1>3\"") != std::string::npos);
    }

    {
        int pass = 0;
        char* report = nullptr;
        EXPECT(bg_graph_check(3, 1, 0, 0, &pass, &report) == BG_OK);
        EXPECT(pass == 1);
        EXPECT(take(report).find("PASS") != std::string::npos);

        char* edges = nullptr;
        EXPECT(bg_graph_export(3, "basic", 0, 0, &edges) == BG_OK);
        EXPECT(take(edges).find('\t') != std::string::npos);
        EXPECT(bg_graph_export(3, "nope", 0, 0, &edges) == BG_ERROR_INVALID_ARGUMENT);
        EXPECT(bg_graph_export(12, "basic", 0, 1000, &edges) == BG_ERROR_BUDGET);
    }

    {
        bg_profile* e = nullptr;
        EXPECT(bg_synth("E", 0.3, 7, &e) == BG_OK);
        EXPECT(bg_profile_voters(e) == 1000);
        char *report = nullptr, *js = nullptr;
        EXPECT(bg_cluster(e, "pam", 2, "dh", 7, 2, 1, 0, &report, &js) == BG_OK);
        std::string j = take(js);
        EXPECT(j.find("\"center\": \"1>2>3>4>5\"") != std::string::npos);
        EXPECT(j.find("\"center\": \"5>4>3>2>1\"") != std::string::npos);
        EXPECT(take(report).find("algorithm\tpam") != std::string::npos);

        // byte-identical reruns with the same seed
        char *r2 = nullptr, *j2 = nullptr;
        EXPECT(bg_cluster(e, "pam", 2, "dh", 7, 2, 1, 0, &r2, &j2) == BG_OK);
        EXPECT(take(j2) == j);
        bg_string_free(r2);

        // parallel distance matrix must not change anything
        char *r4 = nullptr, *j4 = nullptr;
        EXPECT(bg_cluster(e, "pam", 2, "dh", 7, 2, 4, 0, &r4, &j4) == BG_OK);
        EXPECT(take(j4) == j);
        bg_string_free(r4);

        EXPECT(bg_cluster(e, "lloyd", 2, "dh", 7, 2, 1, 0, &report, &js) == BG_OK);
        bg_string_free(report);
        bg_string_free(js);
        EXPECT(bg_cluster(e, "median", 1, "db", 7, 1, 1, 0, &report, &js) == BG_OK);
        bg_string_free(report);
        bg_string_free(js);
        EXPECT(bg_cluster(e, "pam", 2, "zzz", 7, 1, 1, 0, &report, &js) ==
               BG_ERROR_INVALID_ARGUMENT);
        bg_profile_free(e);
    }

    {
        char *report = nullptr, *js = nullptr;
        EXPECT(bg_kemeny(p, 1, 0, &report, &js) == BG_OK);
        EXPECT(take(js).find("\"algo\": \"kemeny\"") != std::string::npos);
        bg_string_free(report);

        EXPECT(bg_slates(p, 2, "agglom", "average", "cloud", &report, &js) == BG_OK);
        std::string sj = take(js);
        EXPECT(sj.find("\"slates\"") != std::string::npos);
        EXPECT(sj.find("\"merges\"") != std::string::npos);
        EXPECT(take(report).find("slate\t1") != std::string::npos);

        EXPECT(bg_slates(p, 2, "centers", "average", "rank-diff", &report, &js) == BG_OK);
        bg_string_free(report);
        bg_string_free(js);

        char *csv = nullptr, *svg = nullptr;
        EXPECT(bg_simplex(p, 2, "agglom", "average", &csv, &svg) == BG_OK);
        EXPECT(take(csv).rfind("v1,v2,weight", 0) == 0);
        EXPECT(svg != nullptr);
        EXPECT(take(svg).find("<svg") != std::string::npos);

        EXPECT(bg_mds(p, "db", 1, &csv, &svg) == BG_OK);
        EXPECT(take(csv).rfind("id,x,y,weight,color_key", 0) == 0);
        EXPECT(take(svg).find("</svg>") != std::string::npos);
    }

    {
        // corpus summary over a temp file
        const char* path = "capi_test_ward.blt";
        std::FILE* f = std::fopen(path, "wb");
        std::fwrite(kBlt, 1, std::strlen(kBlt), f);
        std::fclose(f);
        char* js = nullptr;
        EXPECT(bg_corpus_file_summary(path, 1, 1, 2000, &js) == BG_OK);
        std::string j = take(js);
        EXPECT(j.find("\"k1_centers_agree\"") != std::string::npos);
        EXPECT(j.find("\"method_difference\"") != std::string::npos);
        EXPECT(j.find("\"split_parties_centers\"") != std::string::npos);
        std::remove(path);
        EXPECT(bg_corpus_file_summary("no_such_file.blt", 1, 1, 2000, &js) == BG_ERROR_PARSE);
    }

    // null-argument contract
    EXPECT(bg_profile_from_text(nullptr, nullptr) == BG_ERROR_INVALID_ARGUMENT);
    EXPECT(bg_profile_from_text("garbage", nullptr) == BG_ERROR_INVALID_ARGUMENT);
    {
        bg_profile* bad = nullptr;
        EXPECT(bg_profile_from_text("not a blt", &bad) == BG_ERROR_PARSE);
    }

    bg_profile_free(p);
    if (g_failures == 0) std::printf("capi_tests: all checks passed\n");
    return g_failures == 0 ? 0 : 1;
}
