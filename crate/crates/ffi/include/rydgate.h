#ifndef RYDGATE_H
#define RYDGATE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. `RG_STATUS_OK` is zero; everything else is a failure.
typedef enum RgStatus {
  RG_STATUS_OK = 0,
  RG_STATUS_NULL_POINTER = 1,
  RG_STATUS_INVALID_ARGUMENT = 2,
  RG_STATUS_INVALID_UTF8 = 3,
  RG_STATUS_UNKNOWN_PROTOCOL = 4,
  RG_STATUS_SCHEMA = 5,
  RG_STATUS_RESOURCE_LIMIT = 6,
  RG_STATUS_NUMERICAL = 7,
  RG_STATUS_BUFFER_SIZE = 8,
  RG_STATUS_OUT_OF_RANGE = 9,
  RG_STATUS_IO = 10,
  RG_STATUS_PANIC = 11,
} RgStatus;

// Validated experiment config.
typedef struct RgExperiment RgExperiment;

// Pulse schedule for one gate.
typedef struct RgGate RgGate;

// Records from one experiment run, in sweep order.
typedef struct RgRecords RgRecords;

// Simulated gate: realized map and derived figures of merit.
typedef struct RgResult RgResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *rg_last_error_message(void);

// Library version as a static string.
const char *rg_version(void);

// Static name of a status code.
const char *rg_status_name(enum RgStatus status);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void rg_string_free(char *s);

// pi - 2pi - pi blockade CZ. Frequencies in rad/us.
//
// # Safety
// `out` must be a valid pointer.
enum RgStatus rg_gate_blockade_cz(double omega, double v, double delta, struct RgGate **out);

// Detuned two-pulse phase gate for conditional phase `theta`, branch chosen automatically.
//
// # Safety
// `out` must be a valid pointer.
enum RgStatus rg_gate_detuned_phase(double theta,
                                    double omega,
                                    double v,
                                    bool blockade_correction,
                                    struct RgGate **out);

// Weak-interaction wait-phase gate.
//
// # Safety
// `out` must be a valid pointer.
enum RgStatus rg_gate_wait_phase(double omega,
                                 double v,
                                 double phi,
                                 bool compensate,
                                 struct RgGate **out);

// Gate duration in us.
//
// # Safety
// `gate` and `out` must be valid pointers.
enum RgStatus rg_gate_duration(const struct RgGate *gate, double *out);

// Simulates the gate, optionally with Rydberg decay.
//
// # Safety
// `gate` and `out` must be valid pointers.
enum RgStatus rg_gate_simulate(const struct RgGate *gate, bool decay, struct RgResult **out);

// # Safety
// `gate` must come from this library and not be freed twice. Null is ignored.
void rg_gate_free(struct RgGate *gate);

// Headline fidelity of a simulated gate.
//
// # Safety
// `result` and `out` must be valid pointers.
enum RgStatus rg_result_fidelity(const struct RgResult *result, double *out);

// Conditional phase of the realized map, in (-pi, pi].
//
// # Safety
// `result` and `out` must be valid pointers.
enum RgStatus rg_result_conditional_phase(const struct RgResult *result, double *out);

// Side length of the realized map.
//
// # Safety
// `result` and `out` must be valid pointers.
enum RgStatus rg_result_map_dim(const struct RgResult *result, size_t *out);

// Copies the realized map column-major into `re`/`im`, each of length `len = dim * dim`.
//
// # Safety
// `re` and `im` must point to `len` writable doubles.
enum RgStatus rg_result_map(const struct RgResult *result, double *re, double *im, size_t len);

// # Safety
// `result` must come from this library and not be freed twice. Null is ignored.
void rg_result_free(struct RgResult *result);

// Phase-insensitive gate fidelity of `u` against `ideal`, both dim x dim column-major.
//
// # Safety
// Each array must hold `dim * dim` doubles.
enum RgStatus rg_pedersen_fidelity(const double *u_re,
                                   const double *u_im,
                                   const double *ideal_re,
                                   const double *ideal_im,
                                   size_t dim,
                                   double *out);

// Parses and validates a TOML experiment config (frequencies in MHz).
//
// # Safety
// `toml` must be a NUL-terminated string and `out` a valid pointer.
enum RgStatus rg_experiment_parse(const char *toml, struct RgExperiment **out);

// Evaluates every sweep point. Output paths in the config are ignored.
//
// # Safety
// `exp` and `out` must be valid pointers.
enum RgStatus rg_experiment_run(const struct RgExperiment *exp, struct RgRecords **out);

// # Safety
// `exp` must come from this library and not be freed twice. Null is ignored.
void rg_experiment_free(struct RgExperiment *exp);

// Number of records (sweep points).
//
// # Safety
// `records` and `out` must be valid pointers.
enum RgStatus rg_records_len(const struct RgRecords *records, size_t *out);

// Mean and standard error of metric `name` at record `index`.
//
// # Safety
// `name` must be NUL-terminated; the other pointers must be valid.
enum RgStatus rg_records_metric(const struct RgRecords *records,
                                size_t index,
                                const char *name,
                                double *mean,
                                double *se);

// Records as the JSON document `rydgate run` writes. Free with `rg_string_free`.
//
// # Safety
// `records` and `out` must be valid pointers.
enum RgStatus rg_records_to_json(const struct RgRecords *records, char **out);

// # Safety
// `records` must come from this library and not be freed twice. Null is ignored.
void rg_records_free(struct RgRecords *records);

// Protocol catalog with parameter schemas, as JSON. Free with `rg_string_free`.
//
// # Safety
// `out` must be a valid pointer.
enum RgStatus rg_catalog_json(char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RYDGATE_H */
