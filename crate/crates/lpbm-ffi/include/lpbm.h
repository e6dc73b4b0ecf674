/* C interface for the lpbm checking harness.
 *
 * Conventions:
 *   - Fixtures are opaque handles created by lpbm_fixture_builtin and
 *     released with lpbm_fixture_free.
 *   - Fallible functions return an int32_t status code; LPBM_OK is zero.
 *     On error, lpbm_last_error() returns a thread-local message valid
 *     until the next failing call on the same thread.
 *   - const char * returned from accessors is borrowed; char * placed in
 *     result structs is owned by the caller and must be released with
 *     lpbm_string_free.
 */

#ifndef LPBM_H
#define LPBM_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define LPBM_OK 0
#define LPBM_ERR_NULL_ARGUMENT 1
#define LPBM_ERR_INVALID_UTF8 2
#define LPBM_ERR_UNKNOWN_THEOREM 3
#define LPBM_ERR_INVALID_PARAMETER 4
#define LPBM_ERR_OUT_OF_RANGE 5
#define LPBM_ERR_COMPUTE 6

/* Opaque fixture handle. */
typedef struct LpbmFixture LpbmFixture;

/* Check parameters. s is the curvature parameter; INFINITY selects the
 * minimum combination. Obtain defaults via lpbm_params_default. */
typedef struct LpbmParams {
    double p;
    double t;
    double s;
    size_t lambda_count;
    size_t resolution;
    double tolerance_scale;
} LpbmParams;

/* One check outcome. lambda and s are NaN when the statement does not
 * carry that parameter. notes is owned by the caller; release it with
 * lpbm_string_free (it is NULL only if allocating the note failed). */
typedef struct LpbmCheckResult {
    double p;
    double t;
    double lambda;
    double s;
    double lhs;
    double rhs;
    double margin;
    double tolerance;
    bool pass;
    bool applicable;
    char *notes;
} LpbmCheckResult;

/* Library version as a static NUL-terminated string. */
const char *lpbm_version(void);

/* Message for the most recent error on this thread. Borrowed; never NULL. */
const char *lpbm_last_error(void);

/* Number of registered inequality identifiers. */
size_t lpbm_theorem_count(void);

/* Name of the identifier at index, or NULL when out of range. Static
 * storage; do not free. */
const char *lpbm_theorem_name(size_t index);

/* Fill out with the default check parameters. */
int32_t lpbm_params_default(LpbmParams *out);

/* Number of built-in fixtures registered for the named inequality. */
int32_t lpbm_fixture_builtin_count(const char *theorem, size_t *out);

/* Create a handle to built-in fixture `index` for the named inequality.
 * Release the handle with lpbm_fixture_free. */
int32_t lpbm_fixture_builtin(const char *theorem, size_t index,
                             LpbmFixture **out);

/* Name of the fixture behind handle. Borrowed from the handle; valid while
 * the handle lives. NULL if handle is NULL. */
const char *lpbm_fixture_name(const LpbmFixture *handle);

/* Ambient dimension of the fixture, or 0 if handle is NULL. */
size_t lpbm_fixture_dim(const LpbmFixture *handle);

/* Release a fixture handle. NULL is accepted and ignored. */
void lpbm_fixture_free(LpbmFixture *handle);

/* Run one inequality check on a fixture. On success fills out; the notes
 * field is owned by the caller (free with lpbm_string_free). */
int32_t lpbm_check(const char *theorem, const LpbmFixture *fixture,
                   const LpbmParams *params, LpbmCheckResult *out);

/* Estimate the empirical constant over the built-in log-concave body
 * family at the single (p, t) point taken from params. */
int32_t lpbm_gz_constant_builtin(const LpbmParams *params, double *out_c);

/* Release a string previously handed out in an owned field. NULL is
 * accepted and ignored. */
void lpbm_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* LPBM_H */
