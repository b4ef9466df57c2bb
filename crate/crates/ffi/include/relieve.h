#ifndef RELIEVE_H
#define RELIEVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result code of every fallible call.
 */
typedef enum RelieveStatus {
  RELIEVE_STATUS_OK = 0,
  RELIEVE_STATUS_NULL_ARGUMENT = 1,
  RELIEVE_STATUS_INVALID_UTF8 = 2,
  RELIEVE_STATUS_PARSE = 3,
  RELIEVE_STATUS_USAGE = 4,
  RELIEVE_STATUS_PARAMETER = 5,
  RELIEVE_STATUS_UNKNOWN_FEATURE = 6,
  RELIEVE_STATUS_TOO_EXPENSIVE = 7,
  RELIEVE_STATUS_IO = 8,
  RELIEVE_STATUS_JSON = 9,
  RELIEVE_STATUS_INTERNAL = 10,
  RELIEVE_STATUS_PANIC = 11,
} RelieveStatus;

/*
 A parsed dataset.
 */
typedef struct RelieveDataset RelieveDataset;

/*
 Relevant/irrelevant feature split of a synthetic dataset.
 */
typedef struct RelieveTruth RelieveTruth;

/*
 One weight per feature, in dataset feature order.
 */
typedef struct RelieveWeights RelieveWeights;

/*
 Options for [`relieve_weigh`]; start from [`relieve_weigh_options_default`].
 */
typedef struct RelieveWeighOptions {
  /*
   Nearest hits and misses per class.
   */
  size_t k;
  /*
   Iterations; 0 means one per instance.
   */
  size_t m;
  uint64_t seed;
  /*
   Probability-based difference for missing values.
   */
  bool relief_d;
  /*
   Add-one smoothing for `relief_d`.
   */
  bool laplace;
  /*
   Fixed steepness for pdrelieff; 0 or less selects `2 / ln m`.
   */
  double steepness;
  /*
   Positive value for PCF and binary CCF, or NULL.
   */
  const char *positive;
  /*
   Class reported by PCF, or NULL.
   */
  const char *class_value;
  bool vdm_classic;
} RelieveWeighOptions;

/*
 Scores of a weight vector against ground truth.
 */
typedef struct RelieveCriteria {
  double separability;
  double usability;
  double minimality;
  double completeness;
} RelieveCriteria;

/*
 Message of the last failed call on this thread, or NULL if none. The
 caller owns the returned string.
 */
char *relieve_last_error(void);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void relieve_string_free(char *s);

/*
 Library version as a static string.
 */
const char *relieve_version(void);

/*
 Parses CSV text (header row, class in the last column). `schema_json`
 maps feature names to `"nominal"` or `"linear"` and may be NULL.

 # Safety
 String arguments are NULL or NUL-terminated; `out` is writable.
 */
enum RelieveStatus relieve_dataset_parse(const char *csv,
                                         const char *schema_json,
                                         struct RelieveDataset **out);

/*
 Loads a CSV file; see [`relieve_dataset_parse`].

 # Safety
 String arguments are NULL or NUL-terminated; `out` is writable.
 */
enum RelieveStatus relieve_dataset_load(const char *path,
                                        const char *schema_json,
                                        struct RelieveDataset **out);

/*
 # Safety
 `d` is NULL or a live handle, released at most once.
 */
void relieve_dataset_free(struct RelieveDataset *d);

/*
 Instance count, or 0 for NULL.

 # Safety
 `d` is NULL or a live handle.
 */
size_t relieve_dataset_n_instances(const struct RelieveDataset *d);

/*
 Feature count (class excluded), or 0 for NULL.

 # Safety
 `d` is NULL or a live handle.
 */
size_t relieve_dataset_n_features(const struct RelieveDataset *d);

/*
 Name of feature `index`, as an owned string.

 # Safety
 `d` is a live handle; `out` is writable.
 */
enum RelieveStatus relieve_dataset_feature_name(const struct RelieveDataset *d,
                                                size_t index,
                                                char **out);

/*
 The dataset as CSV text (owned string).

 # Safety
 `d` is a live handle; `out` is writable.
 */
enum RelieveStatus relieve_dataset_to_csv(const struct RelieveDataset *d, char **out);

/*
 Modulo-p: class = sum of `important` features mod `p`, plus `random`
 uniform features.

 # Safety
 Output pointers are writable.
 */
enum RelieveStatus relieve_gen_modulo(size_t p,
                                      size_t important,
                                      size_t random,
                                      size_t n,
                                      uint64_t seed,
                                      struct RelieveDataset **out_data,
                                      struct RelieveTruth **out_truth);

/*
 CorrAl; `n == 0` selects the canonical 64-row set.

 # Safety
 Output pointers are writable.
 */
enum RelieveStatus relieve_gen_corral(size_t n,
                                      uint64_t seed,
                                      struct RelieveDataset **out_data,
                                      struct RelieveTruth **out_truth);

/*
 Seven-segment LED digits with `noise` segment flips and `irrelevant`
 extra features.

 # Safety
 Output pointers are writable.
 */
enum RelieveStatus relieve_gen_led(size_t n,
                                   size_t irrelevant,
                                   double noise,
                                   uint64_t seed,
                                   struct RelieveDataset **out_data,
                                   struct RelieveTruth **out_truth);

/*
 Monk-1 or Monk-3 (`which`). `n == 0` enumerates all 432 attribute
 configurations; a negative `noise` selects the problem's default.

 # Safety
 Output pointers are writable.
 */
enum RelieveStatus relieve_gen_monk(uint8_t which,
                                    size_t n,
                                    double noise,
                                    uint64_t seed,
                                    struct RelieveDataset **out_data,
                                    struct RelieveTruth **out_truth);

/*
 Ground truth from JSON `{"relevant": [...], "irrelevant": [...]}`.

 # Safety
 `json` is NUL-terminated; `out` is writable.
 */
enum RelieveStatus relieve_truth_parse(const char *json, struct RelieveTruth **out);

/*
 # Safety
 `t` is NULL or a live handle, released at most once.
 */
void relieve_truth_free(struct RelieveTruth *t);

/*
 Defaults: k = 10, one iteration per instance, seed 0, basic difference,
 automatic steepness.
 */
struct RelieveWeighOptions relieve_weigh_options_default(void);

/*
 Weighs every feature of `d` with `algorithm` (e.g. `"relieff"`,
 `"pdrelieff"`, `"ig"`). `opts` may be NULL for defaults.

 # Safety
 `d` is a live handle; `algorithm` is NUL-terminated; `opts` is NULL or
 valid with NULL or NUL-terminated string fields; `out` is writable.
 */
enum RelieveStatus relieve_weigh(const struct RelieveDataset *d,
                                 const char *algorithm,
                                 const struct RelieveWeighOptions *opts,
                                 struct RelieveWeights **out);

/*
 # Safety
 `w` is NULL or a live handle, released at most once.
 */
void relieve_weights_free(struct RelieveWeights *w);

/*
 Number of weights, or 0 for NULL.

 # Safety
 `w` is NULL or a live handle.
 */
size_t relieve_weights_len(const struct RelieveWeights *w);

/*
 Weight at position `index` (dataset feature order).

 # Safety
 `w` is a live handle; `out` is writable.
 */
enum RelieveStatus relieve_weights_value(const struct RelieveWeights *w, size_t index, double *out);

/*
 Weight of the named feature.

 # Safety
 `w` is a live handle; `feature` is NUL-terminated; `out` is writable.
 */
enum RelieveStatus relieve_weights_get(const struct RelieveWeights *w,
                                       const char *feature,
                                       double *out);

/*
 The full result (algorithm, weights, parameters, notes) as JSON.

 # Safety
 `w` is a live handle; `out` is writable.
 */
enum RelieveStatus relieve_weights_to_json(const struct RelieveWeights *w, char **out);

/*
 Separability, usability, minimality and completeness of `w`.

 # Safety
 Handles are live; `out` is writable.
 */
enum RelieveStatus relieve_criteria(const struct RelieveWeights *w,
                                    const struct RelieveTruth *truth,
                                    struct RelieveCriteria *out);

/*
 Redundancy level of `feature` among the comma-separated `universe`
 (features and/or the class; NULL for every column). `as_printed` maximizes
 the discrepancy instead of minimizing it. `out_subset`, if not NULL,
 receives the best subset as an owned comma-separated string.

 # Safety
 `d` is a live handle; strings are NULL or NUL-terminated; `out_level` is
 writable; `out_subset` is NULL or writable.
 */
enum RelieveStatus relieve_redundancy_level(const struct RelieveDataset *d,
                                            const char *feature,
                                            const char *universe,
                                            bool as_printed,
                                            double *out_level,
                                            char **out_subset);

#endif  /* RELIEVE_H */
