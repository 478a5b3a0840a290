#ifndef TWISTED_DOUBLE_H
#define TWISTED_DOUBLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TdStatus {
  TD_STATUS_OK = 0,
  TD_STATUS_NULL_POINTER = 1,
  TD_STATUS_INVALID_UTF8 = 2,
  TD_STATUS_PARSE = 3,
  TD_STATUS_VALIDATION = 4,
  TD_STATUS_COMPUTATION = 5,
  TD_STATUS_BUFFER_TOO_SMALL = 6,
  TD_STATUS_PANIC = 7,
} TdStatus;

typedef struct TdAlgebra TdAlgebra;

typedef struct TdCocycle TdCocycle;

typedef struct TdDouble TdDouble;

typedef struct TdGSet TdGSet;

typedef struct TdGroup TdGroup;

typedef struct TdSetCocycle TdSetCocycle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. Valid until the
 next call into this library on the same thread.
 */
const char *td_last_error_message(void);

/*
 Releases a string returned by this library.

 # Safety
 `s` must be null or a string returned by this library, freed once.
 */
void td_string_free(char *s);

/*
 Parses a group file (`order N` table or `perm` cycles).

 # Safety
 `src` must be a nul-terminated string; `out` must be writable.
 */
enum TdStatus td_group_from_text(const char *src, struct TdGroup **out);

/*
 The symmetric group on `n` points.

 # Safety
 `out` must be writable.
 */
enum TdStatus td_group_symmetric(size_t n, struct TdGroup **out);

/*
 # Safety
 `g` must be a live group handle; `out` must be writable.
 */
enum TdStatus td_group_order(const struct TdGroup *g, size_t *out);

/*
 # Safety
 `g` must be null or a group handle not yet freed.
 */
void td_group_free(struct TdGroup *g);

/*
 Parses a G-set file (`size M` plus one row per point) over `g`.

 # Safety
 `g` must be a live group handle, `src` nul-terminated, `out` writable.
 */
enum TdStatus td_gset_from_text(const struct TdGroup *g, const char *src, struct TdGSet **out);

/*
 `size` points, every element acting trivially.

 # Safety
 `g` must be a live group handle; `out` must be writable.
 */
enum TdStatus td_gset_trivial(const struct TdGroup *g, size_t size, struct TdGSet **out);

/*
 # Safety
 `s` must be a live G-set handle; `out` must be writable.
 */
enum TdStatus td_gset_size(const struct TdGSet *s, size_t *out);

/*
 # Safety
 `s` must be null or a G-set handle not yet freed.
 */
void td_gset_free(struct TdGSet *s);

/*
 Parses a scalar cocycle file (`cocycle N=<n>` plus `x y k` lines). The
 cocycle law is not checked here; see [`td_cocycle_is_valid`].

 # Safety
 `g` must be a live group handle, `src` nul-terminated, `out` writable.
 */
enum TdStatus td_cocycle_from_text(const struct TdGroup *g,
                                   const char *src,
                                   struct TdCocycle **out);

/*
 # Safety
 `c` must be a live cocycle handle; `out` must be writable.
 */
enum TdStatus td_cocycle_is_valid(const struct TdCocycle *c, bool *out);

/*
 # Safety
 `c` must be null or a cocycle handle not yet freed.
 */
void td_cocycle_free(struct TdCocycle *c);

/*
 Parses a cocycle file against a G-set. Three-column files give the same
 cocycle at every point.

 # Safety
 `s` must be a live G-set handle, `src` nul-terminated, `out` writable.
 */
enum TdStatus td_set_cocycle_from_text(const struct TdGSet *s,
                                       const char *src,
                                       struct TdSetCocycle **out);

/*
 # Safety
 `c` must be null or a set cocycle handle not yet freed.
 */
void td_set_cocycle_free(struct TdSetCocycle *c);

/*
 Builds the twisted group algebra; fails with `Validation` if the cocycle
 law does not hold.

 # Safety
 `c` must be a live cocycle handle; `out` must be writable.
 */
enum TdStatus td_algebra_new(const struct TdCocycle *c, struct TdAlgebra **out);

/*
 # Safety
 `a` must be a live algebra handle; `out` must be writable.
 */
enum TdStatus td_algebra_center_dim(const struct TdAlgebra *a, size_t *out);

/*
 # Safety
 `a` must be a live algebra handle; `out` must be writable.
 */
enum TdStatus td_algebra_regular_class_count(const struct TdAlgebra *a, size_t *out);

/*
 # Safety
 `a` must be a live algebra handle; `out` must be writable.
 */
enum TdStatus td_algebra_is_semisimple(const struct TdAlgebra *a, bool *out);

/*
 Dimensions of the simple modules in ascending order. Writes the count to
 `len`; if it exceeds `cap`, nothing is copied and `BufferTooSmall` is
 returned so the caller can retry.

 # Safety
 `a` must be a live algebra handle, `dims` valid for `cap` writes (or null
 when `cap` is 0), `len` writable.
 */
enum TdStatus td_algebra_simple_dims(const struct TdAlgebra *a,
                                     double tolerance,
                                     uint64_t seed,
                                     size_t *dims,
                                     size_t cap,
                                     size_t *len);

/*
 Canonical JSON report `{dim, regular_class_count, center_dim, semisimple,
 simple_dims}`; release with [`td_string_free`].

 # Safety
 `a` must be a live algebra handle; `out` must be writable.
 */
enum TdStatus td_algebra_report_json(const struct TdAlgebra *a,
                                     double tolerance,
                                     uint64_t seed,
                                     char **out);

/*
 # Safety
 `a` must be null or an algebra handle not yet freed.
 */
void td_algebra_free(struct TdAlgebra *a);

/*
 Builds the double; fails with `Validation` if the set cocycle law fails.

 # Safety
 `c` must be a live set cocycle handle; `out` must be writable.
 */
enum TdStatus td_double_new(const struct TdSetCocycle *c, struct TdDouble **out);

/*
 # Safety
 `d` must be a live double handle; `out` must be writable.
 */
enum TdStatus td_double_dim(const struct TdDouble *d, size_t *out);

/*
 # Safety
 `d` must be a live double handle; `out` must be writable.
 */
enum TdStatus td_double_center_dim(const struct TdDouble *d, size_t *out);

/*
 Canonical JSON report `{dim, orbits, total_center_dim, zlt_path}`;
 release with [`td_string_free`].

 # Safety
 `d` must be a live double handle; `out` must be writable.
 */
enum TdStatus td_double_report_json(const struct TdDouble *d,
                                    double tolerance,
                                    uint64_t seed,
                                    char **out);

/*
 # Safety
 `d` must be null or a double handle not yet freed.
 */
void td_double_free(struct TdDouble *d);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTED_DOUBLE_H */
