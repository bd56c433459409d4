#ifndef BALLOTGEO_BALLOTGEO_H
#define BALLOTGEO_BALLOTGEO_H

/* C API for the ballot-geometry library. All functions return a bg_status;
 * results come back through out-parameters. Strings returned through char**
 * are heap-allocated and must be released with bg_string_free. Handles are
 * opaque and must be released with their _free function. Error details for
 * the calling thread are available via bg_last_error(). */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bg_status {
    BG_OK = 0,
    BG_ERROR_INVALID_ARGUMENT = 1, /* bad parameters or unusable input */
    BG_ERROR_PARSE = 2,            /* malformed BLT/profile/ballot text */
    BG_ERROR_BUDGET = 3,           /* exact computation exceeds its budget */
    BG_ERROR_INTERNAL = 4
} bg_status;

const char* bg_version(void);

/* Message for the last failing call on this thread; empty if none. */
const char* bg_last_error(void);

void bg_string_free(char* s);

/* ---- profiles ------------------------------------------------------- */

typedef struct bg_profile bg_profile;

/* Auto-detects BLT vs profile text. */
bg_status bg_profile_from_file(const char* path, bg_profile** out);
bg_status bg_profile_from_text(const char* text, bg_profile** out);
void bg_profile_free(bg_profile* p);

int bg_profile_candidates(const bg_profile* p);
long long bg_profile_voters(const bg_profile* p);
int bg_profile_types(const bg_profile* p);
/* Candidates removed by withdrawal compaction and ballots dropped because
 * nothing remained on them. */
int bg_profile_withdrawn_candidates(const bg_profile* p);
long long bg_profile_dropped_ballots(const bg_profile* p);

bg_status bg_profile_serialize(const bg_profile* p, char** out);
bg_status bg_profile_stats_text(const bg_profile* p, char** out);
bg_status bg_profile_stats_json(const bg_profile* p, char** out);

/* ---- pairwise distances --------------------------------------------- */

/* Ballot literals: candidates joined by '>', 1-based numbers, roster names
 * (when a roster profile is supplied) or letters A..Z; "{2,3}" groups a
 * tier. The JSON reports every distance and the disagreement counts. */
bg_status bg_distance_report(const char* ballot_a, const char* ballot_b, int m,
                             const bg_profile* roster, char** json);

/* ---- ballot graphs --------------------------------------------------- */

/* Exhaustively verifies that shortest paths match the coordinate distances
 * (basic graph vs d_H, shortcut vs pessimistic d_B and, when
 * include_generalized is set, tier-merge graph vs generalized d_H).
 * *pass is 1 when every pair agrees. */
bg_status bg_graph_check(int m, int include_generalized, int include_empty,
                         long long max_nodes, int* pass, char** report);

/* variant: "basic", "shortcut", "generalized", "generalized-shortcut"
 * (the last is experimental). One edge per line:
 * node_a<TAB>node_b<TAB>doubled_weight. */
bg_status bg_graph_export(int m, const char* variant, int include_empty,
                          long long max_nodes, char** edges);

/* ---- clustering ------------------------------------------------------ */

/* algo: "pam", "lloyd", "exact-medoid", "median".
 * metric: "db", "db-avg", "dh", "haus", "kp:<p>" (lloyd and median accept
 * the embeddings "db", "db-avg", "dh"). Emits a text report and a
 * machine-readable JSON document. */
bg_status bg_cluster(const bg_profile* p, const char* algo, int k, const char* metric,
                     unsigned long long seed, int restarts, int jobs, long long budget,
                     char** report, char** json);

/* Optimal complete-ranking centers (k = 1 or 2) under Kendall tau. */
bg_status bg_kemeny(const bg_profile* p, int k, long long max_ops, char** report, char** json);

/* ---- slates ---------------------------------------------------------- */

/* method: "centers", "agglom", or "simplex-opt" (exhaustive, m <= 10 and
 * k <= 3); linkage: "single", "average", "complete"; dissim: "rank-diff"
 * (pessimistic), "rank-diff-avg", "cloud". */
bg_status bg_slates(const bg_profile* p, int k, const char* method, const char* linkage,
                    const char* dissim, char** report, char** json);

/* Simplex images of every cast ballot against the k slates (CSV) plus an
 * SVG rendering for k = 2 or 3 (NULL svg for other k). */
bg_status bg_simplex(const bg_profile* p, int k, const char* method, const char* linkage,
                     char** csv, char** svg);

/* ---- plots ----------------------------------------------------------- */

bg_status bg_mds(const bg_profile* p, const char* metric, int jobs, char** csv, char** svg);

/* ---- synthetic elections --------------------------------------------- */

/* family: "E", "E2", "E3"; p ignored for "E". */
bg_status bg_synth(const char* family, double p, unsigned long long seed, bg_profile** out);

/* ---- corpus sweep support -------------------------------------------- */

/* Everything the dataset-wide tables need for one election file: exact
 * k=1/k=2 centers under d_B and d_H with agreement flags, PAM-vs-exact
 * optimality, the 4x4 method-difference table (Lloyd/PAM x Borda/H2H),
 * and k=2 slate party-splitting flags for both slate methods. */
bg_status bg_corpus_file_summary(const char* path, unsigned long long seed, int restarts,
                                 int max_types_exact, char** json);

#ifdef __cplusplus
}
#endif

#endif
