/* C interface to the weighted Moore-Penrose inverse library.
 *
 * All functions return a status code:
 *   WMP_OK             success
 *   WMP_ERR_INVALID    input or validation error
 *   WMP_ERR_NUMERICAL  numerical failure (positive-definiteness violation,
 *                      conditioning, precondition residual)
 * which the command-line tool forwards as its exit code. Reports and error
 * details are JSON documents; strings returned through char** outputs are
 * owned by the caller and released with wmp_free().
 */
#ifndef WMP_H
#define WMP_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define WMP_API __declspec(dllexport)
#else
#define WMP_API __attribute__((visibility("default")))
#endif

#define WMP_OK 0
#define WMP_ERR_INVALID 1
#define WMP_ERR_NUMERICAL 2

/* Opaque handle to a parsed and validated problem document. */
typedef struct wmp_problem wmp_problem;

WMP_API const char* wmp_version(void);

/* Parse a problem from a JSON file or from JSON text. On success *out
 * receives a handle to free with wmp_problem_free. On failure *out is NULL
 * and wmp_last_error() describes the problem. */
WMP_API int wmp_problem_load(const char* path, wmp_problem** out);
WMP_API int wmp_problem_parse(const char* json_text, wmp_problem** out);
WMP_API void wmp_problem_free(wmp_problem* p);

/* Run a subcommand ("pinv", "wpinv", "wpinv-1x2", "wpinv-2x2", "verify",
 * "compare") against a problem. options_json may be NULL or a JSON object
 * with any of: "method" (string), "n3" (path), "candidate" (path),
 * "trace" (bool), "rank_rtol", "num_tol", "cmp_tol" (numbers). *report_out
 * receives the report document (also on failure, with an "error" field). */
WMP_API int wmp_run(const wmp_problem* p, const char* command,
                    const char* options_json, char** report_out);

/* Convenience: load a problem file and run in one call. */
WMP_API int wmp_run_file(const char* path, const char* command,
                         const char* options_json, char** report_out);

/* Run the built-in worked example and compare every intermediate against
 * its exact value; WMP_OK iff everything matches to 1e-10. */
WMP_API int wmp_run_example(const char* options_json, char** report_out);

/* Message for the most recent failure on this thread ("" if none). */
WMP_API const char* wmp_last_error(void);

WMP_API void wmp_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* WMP_H */
