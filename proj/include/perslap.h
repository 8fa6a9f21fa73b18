#ifndef PERSLAP_H
#define PERSLAP_H

/*
 * C interface to the persistent spectral graph toolkit.
 *
 * Conventions:
 *   - opaque handles created/destroyed by this library only;
 *   - every fallible call returns a status code; on failure
 *     perslap_last_error() (thread-local) holds a diagnostic;
 *   - strings and arrays returned through out-parameters are heap blocks the
 *     caller releases with perslap_string_free / perslap_doubles_free;
 *   - config structs must be initialised with their _init function before
 *     overriding individual fields, so defaults stay in one place.
 */

#ifdef __cplusplus
extern "C" {
#endif

#define PERSLAP_OK 0
#define PERSLAP_ERR_DOMAIN 1 /* operation mathematically undefined for this input */
#define PERSLAP_ERR_INPUT 2  /* bad arguments, files, or formats */
#define PERSLAP_ERR_INTERNAL 3

const char* perslap_version(void);

/* Message from the most recent failing call on this thread. */
const char* perslap_last_error(void);

void perslap_string_free(char* s);
void perslap_doubles_free(double* p);

/* ---- point clouds ---- */

typedef struct perslap_cloud perslap_cloud;

/* Standard XYZ (count/comment/`element x y z`), falling back to bare
 * `x y z` rows. */
int perslap_cloud_from_xyz_file(const char* path, perslap_cloud** out);

/* Alpha-carbon extraction from fixed-column PDB ATOM records (first model,
 * altLoc blank or 'A'), keeping the B-factor column. */
int perslap_cloud_from_pdb_ca_file(const char* path, perslap_cloud** out);

/* coords: n*dim doubles, row-major (point i at coords[i*dim .. i*dim+dim-1]) */
int perslap_cloud_from_coords(const double* coords, int n, int dim, perslap_cloud** out);

void perslap_cloud_free(perslap_cloud* cloud);

int perslap_cloud_size(const perslap_cloud* cloud); /* -1 on null handle */
int perslap_cloud_dim(const perslap_cloud* cloud);  /* -1 on null handle */
int perslap_cloud_diameter(const perslap_cloud* cloud, double* out);
int perslap_cloud_write_xyz(const perslap_cloud* cloud, const char* comment, char** out);

/* ---- direct queries ---- */

/* Number of simplices per dimension 0..q_max of the Vietoris-Rips complex at
 * radius r. counts must have q_max+1 slots. strict_overlap selects the open
 * overlap rule (d < 2r) instead of the default closed rule (d <= 2r). */
int perslap_rips_counts(const perslap_cloud* cloud, double r, int q_max,
                        int strict_overlap, int* counts);

/* Full spectrum of the persistent q-Laplacian between radii t and t+p.
 *   weight: "none" | "vol" | "inv" (simplex-volume / inverse-volume weights)
 *   literal_weights: 0 = consistent convention (default), 1 = literal
 *   rule: "truncated" (default) | "kernel" (boundary-compatible subspace)
 *   tau <= 0 selects the default relative zero tolerance (1e-9)
 * On success *eigs_out holds *n_out ascending eigenvalues (caller frees),
 * *betti_out the nullity, and *lambda2_out the smallest nonzero eigenvalue
 * when *has_lambda2_out is 1. Any out-pointer may be NULL to skip it. */
int perslap_persistent_spectrum(const perslap_cloud* cloud, double t, double p, int q,
                                const char* weight, int literal_weights, const char* rule,
                                int strict_overlap, double tau, double** eigs_out,
                                int* n_out, int* betti_out, double* lambda2_out,
                                int* has_lambda2_out);

/* Exact persistent Betti number by integer-free rank arithmetic.
 * field: "rational" (default) | "z2". */
int perslap_betti_oracle(const perslap_cloud* cloud, double t, double p, int q,
                         const char* field, int strict_overlap, int* betti_out);

/* ---- report builders (the CLI subcommands) ---- */
/* All reports are deterministic byte streams; format is "csv" or "json". */

int perslap_report_rips(const perslap_cloud* cloud, double r, int q_max,
                        int strict_overlap, const char* format, char** report_out);

typedef struct {
    double r_min, r_max, dr; /* schedule, ignored in pair mode */
    int q;
    const char* weight; /* "none" | "vol" | "inv" */
    int literal_weights;
    int strict_overlap;
    double tau;      /* <= 0: default */
    int has_pair;    /* 1: single record for the (t, t+p) pair */
    double t, p;
    int has_offset;  /* 1: records for (r, r+offset_p) across the schedule */
    double offset_p;
    const char* rule;   /* "truncated" | "kernel" */
    const char* format; /* "csv" | "json" */
} perslap_spectra_config;

void perslap_spectra_config_init(perslap_spectra_config* cfg);
int perslap_report_spectra(const perslap_cloud* cloud, const perslap_spectra_config* cfg,
                           char** report_out);

typedef struct {
    const char* alpha; /* "sum"|"avg"|"max"|"std"|"var"|"sec" or "betti" */
    int q;
    int has_schedule; /* 0: default schedule 0 .. diameter/2 + dr */
    double r_min, r_max;
    double dr;
    const char* weight;
    int literal_weights;
    int strict_overlap;
    const char* format;
} perslap_curve_config;

void perslap_curve_config_init(perslap_curve_config* cfg);
int perslap_report_curve(const perslap_cloud* cloud, const perslap_curve_config* cfg,
                         char** report_out);

typedef struct {
    const char* alpha; /* statistic integrated per structure; default "max" */
    double dr;
    int has_schedule; /* 0: per-structure 0 .. diameter/2 + dr */
    double r_min, r_max;
    const char* format;
} perslap_fullerene_config;

void perslap_fullerene_config_init(perslap_fullerene_config* cfg);

/* dir: directory of .xyz structures; energies_csv: `name,energy_ev_per_atom`
 * rows joined on the file basename without extension. */
int perslap_report_fullerene(const char* dir, const char* energies_csv,
                             const perslap_fullerene_config* cfg, char** report_out,
                             double* pearson_out);

typedef struct {
    double r_min, r_max, dr; /* default 2..12 step 1 */
    const char* format;
} perslap_bfactor_config;

void perslap_bfactor_config_init(perslap_bfactor_config* cfg);

/* cloud must carry experimental B-factors (a PDB-parsed cloud). */
int perslap_report_bfactor(const perslap_cloud* cloud, const perslap_bfactor_config* cfg,
                           char** report_out, double* pearson_out);

typedef struct {
    int has_schedule; /* 0: probe radii derived from pairwise distances */
    double r_min, r_max, dr;
    int q_max;        /* default 2 */
    const char* rule; /* default "kernel" */
    const char* format;
    int random_clouds; /* > 0: validate generated clouds instead of an input */
    int random_points; /* default 6 */
    int random_dim;    /* default 2 */
    unsigned seed;
} perslap_validate_config;

void perslap_validate_config_init(perslap_validate_config* cfg);

/* Laplacian-nullity vs exact-oracle cross-check. cloud may be NULL when
 * cfg->random_clouds > 0. *mismatches_out counts disagreeing records;
 * *warnings_out (optional) gets a newline-joined advisory string or NULL. */
int perslap_report_validate(const perslap_cloud* cloud, const perslap_validate_config* cfg,
                            char** report_out, int* mismatches_out, char** warnings_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PERSLAP_H */
