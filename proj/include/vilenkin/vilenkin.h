#ifndef VILENKIN_VILENKIN_H
#define VILENKIN_VILENKIN_H

/* C interface to the Vilenkin analysis library.
 * Handles are opaque; every fallible call returns a vl_status and leaves a
 * thread-local message readable through vl_last_error(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VL_API __declspec(dllexport)
#else
#define VL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vl_status {
  VL_OK = 0,
  VL_ERR_DOMAIN = 1,
  VL_ERR_CAPACITY = 2,
  VL_ERR_USAGE = 3,
  VL_ERR_IO = 4,
  VL_ERR_INTERNAL = 5
} vl_status;

typedef struct vl_radix vl_radix;
typedef struct vl_function vl_function;
typedef struct vl_config vl_config;
typedef struct vl_report vl_report;

VL_API const char* vl_version(void);
/* Message of the last failed call on this thread; empty after success. */
VL_API const char* vl_last_error(void);
VL_API void vl_string_free(char* text);

/* Radix sequences: "2,3,2,4"; a nonzero repeat cycles the list to that length. */
VL_API vl_status vl_radix_parse(const char* list, size_t repeat, vl_radix** out);
VL_API void vl_radix_free(vl_radix* radix);
VL_API size_t vl_radix_capacity(const vl_radix* radix);
/* M_k; 0 when k exceeds the capacity. */
VL_API uint64_t vl_radix_order(const vl_radix* radix, size_t k);

/* Cylinder functions at resolution N, values indexed by rank as (re, im) pairs. */
VL_API vl_status vl_function_new(const vl_radix* radix, size_t resolution,
                                 const double* interleaved, vl_function** out);
VL_API void vl_function_free(vl_function* f);
VL_API uint64_t vl_function_size(const vl_function* f);
VL_API vl_status vl_function_values(const vl_function* f, double* interleaved, size_t capacity);

/* Fourier coefficients f^(0..M_N-1), stored in a function handle. */
VL_API vl_status vl_forward(const vl_function* f, vl_function** spectrum);
VL_API vl_status vl_inverse(const vl_function* spectrum, vl_function** f);
VL_API vl_status vl_partial_sum(const vl_function* f, uint64_t n, vl_function** out);
VL_API vl_status vl_dirichlet(const vl_radix* radix, size_t resolution, uint64_t n,
                              vl_function** out);
VL_API vl_status vl_hardy_norm(const vl_function* f, double p, double* out);
VL_API vl_status vl_weak_lp_norm(const vl_function* f, double p, double* out);

/* Configuration by flag name, e.g. ("radix", "2,3"), ("p", "1/2"). */
VL_API vl_status vl_config_new(vl_config** out);
VL_API void vl_config_free(vl_config* config);
VL_API vl_status vl_config_set(vl_config* config, const char* key, const char* value);

/* command: suite (argument = suite name), kernel, kernel_table,
 * counterexample, maximal, growth. */
VL_API vl_status vl_run(const vl_config* config, const char* command, const char* argument,
                        vl_report** out);
VL_API void vl_report_free(vl_report* report);
/* 1 if every check passed, 0 otherwise. */
VL_API int vl_report_passed(const vl_report* report);
/* format: "json" or "csv". The caller frees *text with vl_string_free. */
VL_API vl_status vl_report_render(const vl_report* report, const char* format, char** text);
VL_API vl_status vl_report_write(const vl_report* report, const char* format, const char* path);
/* Looks up a reported empirical constant. */
VL_API vl_status vl_report_constant(const vl_report* report, const char* key, double* out);

/* Regression file: compare adds one check per constant; record merges the
 * report's constants into the file, creating it if needed. */
VL_API vl_status vl_regression_compare(vl_report* report, const char* path);
VL_API vl_status vl_regression_record(const vl_report* report, const char* path);

#ifdef __cplusplus
}
#endif

#endif
