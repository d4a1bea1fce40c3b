#ifndef LINKRANK_H
#define LINKRANK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes. Zero is success.
 */
typedef enum LrStatus {
  LR_STATUS_OK = 0,
  LR_STATUS_NULL_POINTER = 1,
  LR_STATUS_INVALID_UTF8 = 2,
  LR_STATUS_INVALID_ARGUMENT = 3,
  LR_STATUS_CONFIG = 4,
  LR_STATUS_PARSE = 5,
  LR_STATUS_INVALID_WEIGHT = 6,
  LR_STATUS_MISSING_LABEL = 7,
  LR_STATUS_WRONG_MODE = 8,
  LR_STATUS_DIMENSION_MISMATCH = 9,
  LR_STATUS_NON_FINITE = 10,
  LR_STATUS_EMPTY_NETWORK = 11,
  LR_STATUS_ZERO_VECTOR = 12,
  LR_STATUS_INSUFFICIENT_DATA = 13,
  LR_STATUS_IO = 14,
  LR_STATUS_BUFFER_TOO_SMALL = 15,
  LR_STATUS_PANIC = 16,
} LrStatus;

typedef enum LrMode {
  LR_MODE_WWW = 0,
  LR_MODE_TRADING = 1,
} LrMode;

/*
 Ranking algorithms. Two-sided algorithms fill both outputs of
 [`lr_rank`]: HITS gives (authority, hub), buyer/seller gives (buyer, seller).
 */
typedef enum LrAlgorithm {
  LR_ALGORITHM_PAGE_RANK = 0,
  LR_ALGORITHM_HITS = 1,
  LR_ALGORITHM_HITS_ACCELERATED = 2,
  LR_ALGORITHM_TRADE_RANK = 3,
  LR_ALGORITHM_BUYER_SELLER = 4,
} LrAlgorithm;

/*
 Opaque configuration handle.
 */
typedef struct LrConfig LrConfig;

/*
 Opaque network handle.
 */
typedef struct LrNetwork LrNetwork;

/*
 Opaque ranking handle.
 */
typedef struct LrRanking LrRanking;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or null. The pointer
 stays valid until the next call into this library on the same thread.
 */
const char *lr_last_error_message(void);

/*
 Build a network from parallel arrays of `n_edges` edges. `weights` may be
 null (all weights 1); `resources` may be null.

 # Safety
 Every non-null array must hold `n_edges` valid elements, and strings must be
 NUL-terminated.
 */
enum LrStatus lr_network_from_edges(const char *const *sources,
                                    const char *const *targets,
                                    const double *weights,
                                    const char *const *resources,
                                    size_t n_edges,
                                    enum LrMode mode,
                                    struct LrNetwork **out);

/*
 Read an edge-list file.

 # Safety
 `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LrStatus lr_network_read_file(const char *path, enum LrMode mode, struct LrNetwork **out);

/*
 Number of vertices, or 0 for a null handle.

 # Safety
 `net` must be null or a live handle.
 */
size_t lr_network_vertex_count(const struct LrNetwork *net);

/*
 Number of distinct non-loop links, or 0 for a null handle.

 # Safety
 `net` must be null or a live handle.
 */
size_t lr_network_link_count(const struct LrNetwork *net);

/*
 Copy the id of vertex `index` into `buf` (NUL-terminated). `needed`, if
 non-null, receives the buffer size required including the terminator.

 # Safety
 `buf` must hold `buf_len` bytes or be null with `buf_len == 0`.
 */
enum LrStatus lr_network_vertex_id(const struct LrNetwork *net,
                                   size_t index,
                                   char *buf,
                                   size_t buf_len,
                                   size_t *needed);

/*
 # Safety
 `net` must be null or a handle not yet freed.
 */
void lr_network_free(struct LrNetwork *net);

/*
 New configuration with default settings.
 */
struct LrConfig *lr_config_new(void);

/*
 Set one configuration key (alpha, beta, zeta, c, tolerance,
 max_iterations, seed, degree_weighting). The configuration is unchanged on
 failure.

 # Safety
 `cfg` must be a live handle; `key` and `value` NUL-terminated strings.
 */
enum LrStatus lr_config_set(struct LrConfig *cfg, const char *key, const char *value);

/*
 # Safety
 `cfg` must be null or a handle not yet freed.
 */
void lr_config_free(struct LrConfig *cfg);

/*
 Run `algo` on `net`. `cfg` may be null for defaults. `secondary` receives
 the second ranking of two-sided algorithms and may be null if unwanted; it
 is set to null for one-sided ones.

 # Safety
 Handles must be live; `primary` must be a valid pointer.
 */
enum LrStatus lr_rank(const struct LrNetwork *net,
                      const struct LrConfig *cfg,
                      enum LrAlgorithm algo,
                      struct LrRanking **primary,
                      struct LrRanking **secondary);

/*
 Blend a converged ranking with reserved amounts:
 `c·scores + (1−c)·reserved/Σreserved`.

 # Safety
 `rank` must be live, `reserved` must hold `len` values, `out` valid.
 */
enum LrStatus lr_ranking_blend(const struct LrRanking *rank,
                               const double *reserved,
                               size_t len,
                               double c,
                               struct LrRanking **out);

/*
 Number of scores, or 0 for a null handle.

 # Safety
 `rank` must be null or a live handle.
 */
size_t lr_ranking_len(const struct LrRanking *rank);

/*
 Copy the scores into `out`, which must hold at least `len` values.

 # Safety
 `out` must be writable for `len` values.
 */
enum LrStatus lr_ranking_scores(const struct LrRanking *rank, double *out, size_t len);

/*
 Iterations performed, or 0 for a null handle.

 # Safety
 `rank` must be null or a live handle.
 */
size_t lr_ranking_iterations(const struct LrRanking *rank);

/*
 Whether the residual fell below the tolerance.

 # Safety
 `rank` must be null or a live handle.
 */
bool lr_ranking_converged(const struct LrRanking *rank);

/*
 Last residual, NaN if none was recorded.

 # Safety
 `rank` must be null or a live handle.
 */
double lr_ranking_final_residual(const struct LrRanking *rank);

/*
 # Safety
 `rank` must be null or a handle not yet freed.
 */
void lr_ranking_free(struct LrRanking *rank);

/*
 Cosine similarity of two vectors of length `len`.

 # Safety
 `x` and `y` must hold `len` values; `out` must be valid.
 */
enum LrStatus lr_cosine(const double *x, const double *y, size_t len, double *out);

/*
 Spearman rank correlation of two score vectors of length `len`.

 # Safety
 `x` and `y` must hold `len` values; `out` must be valid.
 */
enum LrStatus lr_spearman(const double *x, const double *y, size_t len, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINKRANK_H */
