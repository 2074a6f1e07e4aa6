/* courant: exact computations for regular Courant algebroids over tori.
   C interface; all strings returned by the library are freed with
   ca_string_free. */
#ifndef COURANT_H
#define COURANT_H

#if defined(__GNUC__)
#define CA_API __attribute__((visibility("default")))
#else
#define CA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ca_spec ca_spec;

typedef enum {
    CA_OK = 0,
    CA_ERR_INPUT = 1,     /* malformed or inconsistent spec, unknown catalog entry */
    CA_ERR_CHECK = 2,     /* run finished but some check failed */
    CA_ERR_INTERNAL = 3,
    CA_ERR_ARG = 4        /* null pointer, unknown command, bad option */
} ca_status;

typedef struct {
    int max_degree;   /* highest total degree computed, default 6 */
    int page;         /* last spectral page printed, 0..2, default 2 */
    int truncate;     /* window radius, -1 for the spec default */
    int samples;      /* random elements per contraction identity, default 200 */
} ca_options;

CA_API void ca_options_default(ca_options* opt);

CA_API ca_status ca_spec_from_catalog(const char* name, ca_spec** out);
CA_API ca_status ca_spec_from_file(const char* path, ca_spec** out);
CA_API ca_status ca_spec_from_text(const char* json_text, ca_spec** out);
CA_API ca_status ca_spec_to_json(const ca_spec* spec, char** out);
CA_API const char* ca_spec_name(const ca_spec* spec);
CA_API void ca_spec_free(ca_spec* spec);
/* applies the spec file's task section (degrees, page, truncation) to opt
   and returns its command, or null when the file has none */
CA_API const char* ca_spec_task(const ca_spec* spec, ca_options* opt);

/* command: validate, master, contraction, minimal, betti, pages, compare, all.
   text and json may be null. Returns CA_ERR_CHECK when a check failed. */
CA_API ca_status ca_run(const ca_spec* spec, const char* command, const ca_options* opt,
                 char** text, char** json, int* all_pass);

/* newline separated catalog entry names */
CA_API ca_status ca_catalog_names(char** out);

/* message of the last error on this thread, never null */
CA_API const char* ca_last_error(void);
CA_API void ca_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
