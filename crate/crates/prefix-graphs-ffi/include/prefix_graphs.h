#ifndef PREFIX_GRAPHS_H
#define PREFIX_GRAPHS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum PgStatus {
  PG_STATUS_OK = 0,
  PG_STATUS_NULL_POINTER = 1,
  PG_STATUS_INVALID_UTF8 = 2,
  PG_STATUS_PARSE = 3,
  PG_STATUS_INVALID_ARGUMENT = 4,
  PG_STATUS_NOT_DIAGONAL = 5,
  PG_STATUS_PANIC = 6,
} PgStatus;

// Which graph on the trees of an alphabet.
typedef enum PgGraph {
  PG_GRAPH_PREFIX = 0,
  PG_GRAPH_TWISTED = 1,
} PgGraph;

// Which commutator an operad duality check uses.
typedef enum PgPair {
  PG_PAIR_UV = 0,
  PG_PAIR_UU = 1,
} PgPair;

// An alphabet of letters with arities.
typedef struct PgAlphabet PgAlphabet;

// A syntax tree.
typedef struct PgTree PgTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call on the same thread.
const char *pg_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void pg_string_free(char *s);

// Parses an alphabet such as `a:2,c:3`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a valid pointer.
enum PgStatus pg_alphabet_parse(const char *spec, struct PgAlphabet **out);

// # Safety
// `a` must come from [`pg_alphabet_parse`] and not have been freed.
void pg_alphabet_free(struct PgAlphabet *a);

// Parses a tree such as `a[*,c[*,*,*]]` over an alphabet.
//
// # Safety
// Pointers must be valid; `term` NUL-terminated.
enum PgStatus pg_tree_parse(const struct PgAlphabet *alphabet,
                            const char *term,
                            struct PgTree **out);

// # Safety
// `t` must come from [`pg_tree_parse`] and not have been freed.
void pg_tree_free(struct PgTree *t);

// The canonical rendering of a tree.
//
// # Safety
// Pointers must be valid.
enum PgStatus pg_tree_render(const struct PgTree *t, char **out);

// Number of internal nodes.
//
// # Safety
// Pointers must be valid.
enum PgStatus pg_tree_degree(const struct PgTree *t, size_t *out);

// Hook coefficient of the tree in the prefix graph, in decimal.
//
// # Safety
// Pointers must be valid.
enum PgStatus pg_tree_hook(const struct PgTree *t, char **out);

// Hook coefficient of the tree in the twisted prefix graph, in decimal.
//
// # Safety
// Pointers must be valid.
enum PgStatus pg_tree_twisted_hook(const struct PgTree *t, char **out);

// Numbers of initial paths of ranks `0..=max`, comma-separated.
//
// # Safety
// Pointers must be valid.
enum PgStatus pg_paths_series(const struct PgAlphabet *alphabet,
                              enum PgGraph graph,
                              size_t max,
                              char **out);

// Checks `V★U − UV★ = #letters · nf` on all trees of degree `≤ max`.
// Returns `PG_STATUS_NOT_DIAGONAL` on failure and, when `witness` is not
// null, stores the failing tree there.
//
// # Safety
// `alphabet` must be valid; `witness` may be null.
enum PgStatus pg_check_duality(const struct PgAlphabet *alphabet, size_t max, char **witness);

// Checks the declared duality of an operad (`as`, `dias`, `comp`, `motz`,
// `fcat:<m>`) on elements of degree `≤ max`. Pairs without a declared
// diagonal are checked for being diagonal at all. The failing element is
// stored in `witness` when it is not null.
//
// # Safety
// `operad` must be NUL-terminated; `witness` may be null.
enum PgStatus pg_operad_check_duality(const char *operad,
                                      enum PgPair pair,
                                      size_t max,
                                      char **witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREFIX_GRAPHS_H */
