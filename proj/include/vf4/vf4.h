#ifndef VF4_H
#define VF4_H

/* C interface to the varifold verification engine.  All functions return a
 * vf4_status; outputs are written through pointers.  Objects are opaque
 * handles released with the matching _free call.  Strings returned through
 * char** are owned by the caller and released with vf4_string_free.  On any
 * failure vf4_last_error() describes the problem for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VF4_API __declspec(dllexport)
#else
#define VF4_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vf4_status {
  VF4_OK = 0,
  VF4_ERR_CHECK = 1,   /* a verification check failed */
  VF4_ERR_PARSE = 2,   /* bad scenario / usage */
  VF4_ERR_DOMAIN = 3,  /* parameters outside the valid domain */
  VF4_ERR_INTERNAL = 4
} vf4_status;

typedef struct vf4_varifold vf4_varifold;
typedef struct vf4_field vf4_field;

typedef struct vf4_quad_spec {
  int order;             /* Gauss-Legendre points per axis (default 16) */
  int subdivisions;      /* initial cells per axis (default 1) */
  int adaptive;          /* nonzero: refine dyadically (default 1) */
  double target_rel_error; /* default 1e-9 */
  int circle_nodes;      /* trapezoid nodes on circles (default 256) */
} vf4_quad_spec;

VF4_API const char* vf4_last_error(void);
VF4_API void vf4_string_free(char* s);
VF4_API void vf4_quad_spec_default(vf4_quad_spec* q);

/* ---- constructions ---- */

VF4_API vf4_status vf4_varifold_ring(double d, double alpha0, double t1,
                                     double t2, vf4_varifold** out);
VF4_API vf4_status vf4_varifold_v00(double r1, double r2, int64_t k,
                                    vf4_varifold** out);
VF4_API vf4_status vf4_varifold_mini_layer(int which, int64_t k, double gamma,
                                           double r2, vf4_varifold** out);
/* system: 'A' or 'B'; c_out receives the layer constant in (1-eps, 1) */
VF4_API vf4_status vf4_varifold_layer(char system, double r1, double r2,
                                      double r3, double r4, double eps,
                                      vf4_varifold** out, double* c_out);
/* variant: 0 nonconical (shells 2^-n), 1 conical (shells 2^-n^3) */
VF4_API vf4_status vf4_varifold_full(int variant, int window,
                                     vf4_varifold** out);
VF4_API vf4_status vf4_varifold_nonrectifiable(int pow2pow, int i_min,
                                               int i_max, vf4_varifold** out);
VF4_API void vf4_varifold_free(vf4_varifold* v);

/* ---- measure queries ---- */

VF4_API vf4_status vf4_mass(const vf4_varifold* v, double s1, double s2,
                            double* out);
VF4_API vf4_status vf4_pushforward_scale(const vf4_varifold* v, double lambda,
                                         vf4_varifold** out);
VF4_API vf4_status vf4_restrict(const vf4_varifold* v, double s1, double s2,
                                vf4_varifold** out);
VF4_API vf4_status vf4_tail_mass_bound(const vf4_varifold* v, double* out);

/* ---- test vector fields ---- */

VF4_API vf4_status vf4_field_radial_bump(double r_in, double r_out,
                                         vf4_field** out);
VF4_API vf4_status vf4_field_directional_bump(double r_in, double r_out,
                                              const double dir[4],
                                              vf4_field** out);
VF4_API void vf4_field_free(vf4_field* f);
VF4_API vf4_status vf4_field_value(const vf4_field* f, const double x[4],
                                   double out[4]);
/* row-major 4x4 Jacobian */
VF4_API vf4_status vf4_field_jacobian(const vf4_field* f, const double x[4],
                                      double out[16]);

VF4_API vf4_status vf4_first_variation(const vf4_varifold* v,
                                       const vf4_field* f,
                                       const vf4_quad_spec* q, double* value,
                                       double* quad_error, double* tail_bound);
VF4_API vf4_status vf4_boundary_functional_k(double rho, int64_t k,
                                             const vf4_field* f,
                                             const vf4_quad_spec* q,
                                             double* out);
VF4_API vf4_status vf4_boundary_functional_inf(double rho, const vf4_field* f,
                                               const vf4_quad_spec* q,
                                               double* out);

/* ---- analysis ---- */

/* kind: 0 = J13 band, 1 = J12 band.  fraction = band mass / total mass */
VF4_API vf4_status vf4_band_fraction(const vf4_varifold* v, double s1,
                                     double s2, int kind, double eps,
                                     double* fraction, double* total_mass);
VF4_API vf4_status vf4_epsilon0_estimate(int samples, double* value,
                                         double* spread);

/* ---- commands (scenario text in, report/CSV/OBJ text out) ---- */

/* pass receives 1 when every check passed.  json nonzero selects JSON. */
VF4_API vf4_status vf4_cmd_verify(const char* suite, const char* scenario_text,
                                  int json, char** report, int* pass);
VF4_API vf4_status vf4_cmd_mass_profile(const char* scenario_text, double r_min,
                                        double r_max, int steps, char** csv);
VF4_API vf4_status vf4_cmd_variation(const char* scenario_text, int truncation,
                                     int json, char** report, int* pass);
VF4_API vf4_status vf4_cmd_blowup(const char* scenario_text, double lambda,
                                  int json, char** report, int* pass);
VF4_API vf4_status vf4_cmd_certify(const char* scenario_text, int index,
                                   int json, char** report, int* pass);
VF4_API vf4_status vf4_cmd_export_mesh(const char* scenario_text, char** obj);

#ifdef __cplusplus
}
#endif

#endif /* VF4_H */
