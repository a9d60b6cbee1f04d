#ifndef ADJOINT_KIT_H
#define ADJOINT_KIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Require the converse of fact stability.
 */
#define AK_FLAG_STRICT_FACTS 1

/**
 * Require the equality forms of the no-miracle and lift laws.
 */
#define AK_FLAG_NON_PARANOID 2

/**
 * Restrict kernel discharge to modality-free right-hand sides.
 */
#define AK_FLAG_NO_KERNEL_SHORTCUT 4

/**
 * Check no-miracle on every element.
 */
#define AK_FLAG_FULL_LATTICE_AXIOMS 8

/**
 * Result of every call.
 */
typedef enum AkStatus {
  AK_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  AK_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not UTF-8.
   */
  AK_STATUS_INVALID_UTF8 = 2,
  /**
   * The scenario text failed to parse or resolve.
   */
  AK_STATUS_PARSE_ERROR = 3,
  /**
   * An algebraic precondition failed: bad element, non-lattice, map not join-preserving.
   */
  AK_STATUS_ALGEBRA_ERROR = 4,
  /**
   * A panic was caught at the boundary.
   */
  AK_STATUS_INTERNAL = 5,
} AkStatus;

/**
 * A finite lattice.
 */
typedef struct AkLattice AkLattice;

/**
 * A join-preserving map on a lattice, or the right adjoint of one.
 */
typedef struct AkMap AkMap;

/**
 * A parsed scenario document.
 */
typedef struct AkScenario AkScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The string
 * belongs to the caller.
 */
char *ak_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ak_string_free(char *s);

/**
 * Parses and resolves scenario text.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum AkStatus ak_scenario_parse(const char *text, struct AkScenario **out);

/**
 * # Safety
 * `s` must come from [`ak_scenario_parse`] and not have been freed. Null is ignored.
 */
void ak_scenario_free(struct AkScenario *s);

/**
 * The scenario name.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_scenario_name(const struct AkScenario *s, char **out);

/**
 * Number of queries in the scenario.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_scenario_query_count(const struct AkScenario *s, uintptr_t *out);

/**
 * Canonical text of the scenario.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_scenario_serialize(const struct AkScenario *s, char **out);

/**
 * Validates the scenario and runs every query. Writes the JSON report and,
 * when `out_exit_code` is non-null, the command-line exit code (0 ok,
 * 1 query failed, 2 axiom violated, 3 resolution error, 4 internal).
 *
 * # Safety
 * `s` must be a live handle; `out_json` must be writable.
 */
enum AkStatus ak_scenario_run_json(const struct AkScenario *s,
                                   uint32_t flag_bits,
                                   char **out_json,
                                   int32_t *out_exit_code);

/**
 * Axiom report only.
 *
 * # Safety
 * As for [`ak_scenario_run_json`].
 */
enum AkStatus ak_scenario_validate_json(const struct AkScenario *s,
                                        uint32_t flag_bits,
                                        char **out_json,
                                        int32_t *out_exit_code);

/**
 * Runs the derivation engine on one query; the proof tree is in the verdict.
 *
 * # Safety
 * As for [`ak_scenario_run_json`]; `query_id` must be a nul-terminated string.
 */
enum AkStatus ak_scenario_prove_json(const struct AkScenario *s,
                                     const char *query_id,
                                     uint32_t flag_bits,
                                     char **out_json,
                                     int32_t *out_exit_code);

/**
 * Evaluates one query semantically.
 *
 * # Safety
 * As for [`ak_scenario_prove_json`].
 */
enum AkStatus ak_scenario_query_json(const struct AkScenario *s,
                                     const char *query_id,
                                     uint32_t flag_bits,
                                     char **out_json,
                                     int32_t *out_exit_code);

/**
 * The powerset of `count` named worlds. Element `i` is the set whose bit
 * `k` says whether world `k` is a member.
 *
 * # Safety
 * `worlds` must hold `count` nul-terminated strings; `out` must be writable.
 */
enum AkStatus ak_lattice_powerset(const char *const *worlds,
                                  uintptr_t count,
                                  struct AkLattice **out);

/**
 * A lattice from labels and order pairs `labels[lower[i]] <= labels[upper[i]]`.
 * The reflexive-transitive closure is taken, then validated. Elements are
 * numbered in a linear extension of the order; use [`ak_lattice_find`] to
 * map labels to indices.
 *
 * # Safety
 * `labels` must hold `count` strings; `lower` and `upper` must hold
 * `pair_count` indices each; `out` must be writable.
 */
enum AkStatus ak_lattice_from_order(const char *const *labels,
                                    uintptr_t count,
                                    const uintptr_t *lower,
                                    const uintptr_t *upper,
                                    uintptr_t pair_count,
                                    struct AkLattice **out);

/**
 * # Safety
 * `l` must come from this library and not have been freed. Null is ignored.
 */
void ak_lattice_free(struct AkLattice *l);

/**
 * Number of elements.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_lattice_size(const struct AkLattice *l, uintptr_t *out);

/**
 * Index of a label (or of a world set written `{w1,w2}` on powersets).
 *
 * # Safety
 * `l` must be a live handle; `name` a nul-terminated string; `out` writable.
 */
enum AkStatus ak_lattice_find(const struct AkLattice *l, const char *name, uintptr_t *out);

/**
 * Display name of an element.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_lattice_name(const struct AkLattice *l, uintptr_t e, char **out);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_lattice_leq(const struct AkLattice *l, uintptr_t a, uintptr_t b, bool *out);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_lattice_join(const struct AkLattice *l, uintptr_t a, uintptr_t b, uintptr_t *out);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_lattice_meet(const struct AkLattice *l, uintptr_t a, uintptr_t b, uintptr_t *out);

/**
 * A join-preserving map from a full table, `values[x]` being the image of `x`.
 *
 * # Safety
 * `l` must be a live handle; `values` must hold `count` indices; `out` writable.
 */
enum AkStatus ak_map_from_table(const struct AkLattice *l,
                                const uintptr_t *values,
                                uintptr_t count,
                                struct AkMap **out);

/**
 * A join-preserving map from images of join-irreducibles, `from[i] ↦ to[i]`.
 *
 * # Safety
 * `l` must be a live handle; `from` and `to` must hold `count` indices; `out` writable.
 */
enum AkStatus ak_map_from_generators(const struct AkLattice *l,
                                     const uintptr_t *from,
                                     const uintptr_t *to,
                                     uintptr_t count,
                                     struct AkMap **out);

/**
 * # Safety
 * `m` must come from this library and not have been freed. Null is ignored.
 */
void ak_map_free(struct AkMap *m);

/**
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_map_apply(const struct AkMap *m, uintptr_t x, uintptr_t *out);

/**
 * The right adjoint `f*(b) = ⋁{x | f(x) ≤ b}`, as a new handle.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum AkStatus ak_map_right_adjoint(const struct AkMap *m, struct AkMap **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADJOINT_KIT_H */
