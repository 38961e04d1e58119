/* C interface to the impurity-model simulator and self-consistency engine.
 *
 * Usage: create a config, adjust keys or load a key=value file, then invoke a
 * subcommand (dmft, sweep, greens, asp, pps). All functions return a status
 * code; on failure siam_last_error() describes what went wrong. The library
 * writes its results as CSV/text files under the configured output_dir.
 */

#ifndef SIAMDMFT_H
#define SIAMDMFT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum siam_status {
    SIAM_OK = 0,
    SIAM_ERR_NULL_ARGUMENT = 1,
    SIAM_ERR_UNKNOWN_KEY = 2,
    SIAM_ERR_INVALID_VALUE = 3,
    SIAM_ERR_PARSE = 4,
    SIAM_ERR_IO = 5,
    SIAM_ERR_RUN = 6,
    SIAM_ERR_BUFFER_TOO_SMALL = 7,
    SIAM_ERR_UNKNOWN_COMMAND = 8
} siam_status;

typedef struct siam_config siam_config;

/* Library version, e.g. "1.0.0". */
const char* siam_version(void);

/* Stable name of a status code, e.g. "SIAM_OK". */
const char* siam_status_name(siam_status status);

/* Message describing the most recent failure on this thread; empty string if
 * none. The pointer stays valid until the next failing call on the thread. */
const char* siam_last_error(void);

/* Fresh config holding the built-in defaults; NULL when out of memory.
 * Destroy with siam_config_destroy (NULL is a safe no-op). */
siam_config* siam_config_create(void);
void siam_config_destroy(siam_config* cfg);

/* Load key=value text into cfg: '#' starts a comment, commas may separate
 * several assignments on one line. Applied on top of the current values. */
siam_status siam_config_load_string(siam_config* cfg, const char* text);
siam_status siam_config_load_file(siam_config* cfg, const char* path);

/* Set or read back one key. siam_config_get writes a NUL-terminated string
 * into buffer (size bytes); returns SIAM_ERR_BUFFER_TOO_SMALL when it does
 * not fit, with the required size reported via siam_last_error(). */
siam_status siam_config_set(siam_config* cfg, const char* key, const char* value);
siam_status siam_config_get(const siam_config* cfg, const char* key, char* buffer, size_t size);

/* Run a subcommand: "dmft", "sweep", "greens", "asp" or "pps". On success a
 * one-line summary is copied into summary (summary_size bytes) when summary
 * is non-NULL. */
siam_status siam_run(const siam_config* cfg, const char* subcommand, char* summary,
                     size_t summary_size);

#ifdef __cplusplus
}
#endif

#endif /* SIAMDMFT_H */
