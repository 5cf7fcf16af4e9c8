/* C interface of the semlink shared library. All functions return a status
 * code; string outputs are heap-allocated and released with
 * semlink_string_free. semlink_last_error() describes the most recent
 * failure on the calling thread. */

#ifndef SEMLINK_H
#define SEMLINK_H

#include <stddef.h>

#if defined(_MSC_VER)
#define SEMLINK_API __declspec(dllexport)
#else
#define SEMLINK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum semlink_status {
    SEMLINK_OK = 0,
    SEMLINK_ERR_CONFIG = 1,
    SEMLINK_ERR_IO = 2,
    SEMLINK_ERR_FORMAT = 3,
    SEMLINK_ERR_DOMAIN = 4,
    SEMLINK_ERR_RANGE = 5,
    SEMLINK_ERR_FRAMING = 6,
    SEMLINK_ERR_SHAPE = 7,
    SEMLINK_ERR_CONTRACT = 8,
    SEMLINK_ERR_UNSUPPORTED = 9,
    SEMLINK_ERR_INTERNAL = 10,
} semlink_status;

SEMLINK_API const char* semlink_version(void);

/* Message for the last failing call on this thread; empty string if none. */
SEMLINK_API const char* semlink_last_error(void);

SEMLINK_API void semlink_string_free(char* s);

/* Experiment runs: parse once, run any number of times. */
typedef struct semlink_experiment semlink_experiment;

SEMLINK_API semlink_status semlink_experiment_open(const char* config_path,
                                                   semlink_experiment** out);

/* Runs the sweep; writes the CSV to the configured output path (when set)
 * and, when csv_out is non-NULL, also returns the CSV text. */
SEMLINK_API semlink_status semlink_experiment_run(semlink_experiment* experiment,
                                                  char** csv_out);

/* Configured output path, or "" when the config names none. */
SEMLINK_API const char* semlink_experiment_output_path(
    const semlink_experiment* experiment);

SEMLINK_API void semlink_experiment_close(semlink_experiment* experiment);

/* Human-readable scheme catalog plus the SNR-adaptive LDPC table. */
SEMLINK_API semlink_status semlink_schemes_text(char** out);

/* Symbol budget of one catalog scheme (by its catalog name) for the default
 * 8-frame 256x256 RGB source. */
SEMLINK_API semlink_status semlink_budget_text(const char* scheme_name, char** out);

/* Writes deterministic demo payload files (sketch/frame/video) into dir. */
SEMLINK_API semlink_status semlink_write_demo_fixtures(const char* dir);

#ifdef __cplusplus
}
#endif

#endif
