#ifndef PACKETMULT_H
#define PACKETMULT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum PmStatus {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_POINTER = 1,
  PM_STATUS_INVALID_ARGUMENT = 2,
  PM_STATUS_PARSE_ERROR = 3,
  PM_STATUS_ORDER_CAP = 4,
  PM_STATUS_PRECONDITION = 5,
  /**
   * Valid input contradicting a packet identity.
   */
  PM_STATUS_FINDING = 6,
  PM_STATUS_BUFFER_TOO_SMALL = 7,
  PM_STATUS_PANIC = 8,
} PmStatus;

/**
 * A group with its character table.
 */
typedef struct PmGroup PmGroup;

/**
 * An analyzed packet report.
 */
typedef struct PmReport PmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or NULL. Valid until the next call
 * into this library on the same thread.
 */
const char *pm_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void pm_string_free(char *s);

/**
 * Builds a group from its text description (e.g. "Q8", "heisenberg(3)").
 *
 * # Safety
 * `spec` is a NUL-terminated string; `out` is writable.
 */
enum PmStatus pm_group_new(const char *spec, struct PmGroup **out);

/**
 * # Safety
 * `g` is NULL or a handle from [`pm_group_new`] not yet freed.
 */
void pm_group_free(struct PmGroup *g);

/**
 * # Safety
 * `g` is a live handle; `out` is writable.
 */
enum PmStatus pm_group_order(const struct PmGroup *g, size_t *out);

/**
 * # Safety
 * `g` is a live handle; `out` is writable.
 */
enum PmStatus pm_group_class_count(const struct PmGroup *g, size_t *out);

/**
 * # Safety
 * `g` is a live handle; `out` is writable.
 */
enum PmStatus pm_group_center_order(const struct PmGroup *g, size_t *out);

/**
 * Irreducible degrees in table order.
 *
 * # Safety
 * `g` is a live handle; `buf` holds `cap` entries; `len` is writable.
 */
enum PmStatus pm_group_degrees(const struct PmGroup *g, uint64_t *buf, size_t cap, size_t *len);

/**
 * Degrees of the irreducibles whose central character on the (cyclic)
 * center sends its canonical generator to `exp(2 pi i k / |Z|)`.
 *
 * # Safety
 * As for [`pm_group_degrees`].
 */
enum PmStatus pm_group_central_degrees(const struct PmGroup *g,
                                       uint64_t zeta_exponent,
                                       uint64_t *buf,
                                       size_t cap,
                                       size_t *len);

/**
 * `|F^x / (F^x)^n|` as a decimal string.
 *
 * # Safety
 * `out` is writable; release the string with [`pm_string_free`].
 */
enum PmStatus pm_coset_card(uint64_t p, uint32_t e, uint32_t f, uint32_t a, uint64_t n, char **out);

/**
 * Largest `A` with `A^2 | c`.
 *
 * # Safety
 * `out` is writable.
 */
enum PmStatus pm_square_divisor_bound(uint64_t c, uint64_t *out);

/**
 * `sqrt(card_star / card_g)`.
 *
 * # Safety
 * `out` is writable.
 */
enum PmStatus pm_multiplicity_from_packet_cards(uint64_t card_star, uint64_t card_g, uint64_t *out);

/**
 * `(-1)^(m(d-1))`, or 0 when `m` or `d` is 0.
 */
int32_t pm_kottwitz_sign(uint64_t m, uint64_t d);

/**
 * Analyzes one scenario record given as JSON
 * (`{label, m, d, group, central_subgroup, zeta_exponent, field?}`).
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum PmStatus pm_analyze_scenario_json(const char *json, struct PmReport **out);

/**
 * # Safety
 * `r` is NULL or a handle from [`pm_analyze_scenario_json`] not yet freed.
 */
void pm_report_free(struct PmReport *r);

/**
 * `|Pi(G*)|`, or 0 for NULL.
 *
 * # Safety
 * `r` is NULL or a live handle.
 */
uint64_t pm_report_card_star(const struct PmReport *r);

/**
 * `|Pi(G)|`, or 0 for NULL.
 *
 * # Safety
 * `r` is NULL or a live handle.
 */
uint64_t pm_report_card_g(const struct PmReport *r);

/**
 * Multiplicity, or 0 for NULL.
 *
 * # Safety
 * `r` is NULL or a live handle.
 */
uint64_t pm_report_multiplicity(const struct PmReport *r);

/**
 * `|S|`, or 0 for NULL.
 *
 * # Safety
 * `r` is NULL or a live handle.
 */
uint64_t pm_report_s_card(const struct PmReport *r);

/**
 * Signed endoscopic coefficient, or 0 for NULL.
 *
 * # Safety
 * `r` is NULL or a live handle.
 */
int64_t pm_report_endoscopic_coefficient(const struct PmReport *r);

/**
 * The full report as JSON.
 *
 * # Safety
 * `r` is a live handle; `out` is writable.
 */
enum PmStatus pm_report_to_json(const struct PmReport *r, char **out);

/**
 * Writes the `SL(4)` triples as consecutive `(card_star, card_g, mult)`
 * entries; `count` receives the number of triples.
 *
 * # Safety
 * `buf` holds `3 * cap_triples` entries; `count` is writable.
 */
enum PmStatus pm_sl4_enumerate(uint64_t coset, uint64_t *buf, size_t cap_triples, size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PACKETMULT_H */
