#include "vf4/vf4.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "core/analysis.hpp"
#include "core/commands.hpp"

namespace {

thread_local std::string g_last_error;

vf4_status fail(vf4_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
vf4_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error& e) {
    return fail(VF4_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(VF4_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(VF4_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

vf4::QuadratureSpec to_spec(const vf4_quad_spec* q) {
  vf4::QuadratureSpec spec;
  if (q) {
    spec.order = q->order;
    spec.subdivisions = q->subdivisions;
    spec.adaptive = q->adaptive != 0;
    spec.target_rel_error = q->target_rel_error;
    spec.circle_nodes = q->circle_nodes;
  }
  return spec;
}

vf4::Scenario parse_scenario(const char* text) {
  return vf4::Scenario::parse(text ? text : "");
}

}  // namespace

struct vf4_varifold {
  vf4::VarifoldSum sum;
  std::optional<vf4::FullVarifold> full;
};

struct vf4_field {
  vf4::TestVectorField field;
};

extern "C" {

const char* vf4_last_error(void) { return g_last_error.c_str(); }

void vf4_string_free(char* s) { std::free(s); }

void vf4_quad_spec_default(vf4_quad_spec* q) {
  if (!q) return;
  const vf4::QuadratureSpec spec;
  q->order = spec.order;
  q->subdivisions = spec.subdivisions;
  q->adaptive = spec.adaptive ? 1 : 0;
  q->target_rel_error = spec.target_rel_error;
  q->circle_nodes = spec.circle_nodes;
}

vf4_status vf4_varifold_ring(double d, double alpha0, double t1, double t2,
                             vf4_varifold** out) {
  if (!out) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    *out = new vf4_varifold{vf4::build_ring(d, alpha0, t1, t2), std::nullopt};
    return VF4_OK;
  });
}

vf4_status vf4_varifold_v00(double r1, double r2, int64_t k,
                            vf4_varifold** out) {
  if (!out) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    *out = new vf4_varifold{vf4::build_v00(r1, r2, k), std::nullopt};
    return VF4_OK;
  });
}

vf4_status vf4_varifold_mini_layer(int which, int64_t k, double gamma,
                                   double r2, vf4_varifold** out) {
  if (!out) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    const auto p = vf4::MiniLayerParams::create(k, gamma, r2);
    *out = new vf4_varifold{vf4::build_mini_layer(which, p), std::nullopt};
    return VF4_OK;
  });
}

vf4_status vf4_varifold_layer(char system, double r1, double r2, double r3,
                              double r4, double eps, vf4_varifold** out,
                              double* c_out) {
  if (!out) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    vf4::LayerParams lp{r1, r2, r3, r4, eps, 1e-8};
    vf4::Layer layer = vf4::build_layer(system, lp);
    if (c_out) *c_out = layer.derived.c;
    *out = new vf4_varifold{std::move(layer.varifold), std::nullopt};
    return VF4_OK;
  });
}

vf4_status vf4_varifold_full(int variant, int window, vf4_varifold** out) {
  if (!out) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    vf4::FullParams fp;
    fp.variant = variant == 0 ? vf4::FullVariant::Nonconical
                              : vf4::FullVariant::Conical;
    fp.window = window;
    vf4::FullVarifold full = vf4::build_full(fp);
    auto sum = full.varifold;
    *out = new vf4_varifold{std::move(sum), std::move(full)};
    return VF4_OK;
  });
}

vf4_status vf4_varifold_nonrectifiable(int pow2pow, int i_min, int i_max,
                                       vf4_varifold** out) {
  if (!out) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    vf4::NonRectParams np;
    np.generator = pow2pow ? vf4::RadiiGenerator::Pow2Pow
                           : vf4::RadiiGenerator::Pow2;
    np.i_min = i_min;
    np.i_max = i_max;
    *out = new vf4_varifold{vf4::build_nonrectifiable(np), std::nullopt};
    return VF4_OK;
  });
}

void vf4_varifold_free(vf4_varifold* v) { delete v; }

vf4_status vf4_mass(const vf4_varifold* v, double s1, double s2, double* out) {
  if (!v || !out) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    *out = vf4::mass(v->sum, s1, s2);
    return VF4_OK;
  });
}

vf4_status vf4_pushforward_scale(const vf4_varifold* v, double lambda,
                                 vf4_varifold** out) {
  if (!v || !out) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    *out = new vf4_varifold{
        vf4::pushforward_scale(v->sum, vf4::Vec4::Zero(), lambda), std::nullopt};
    return VF4_OK;
  });
}

vf4_status vf4_restrict(const vf4_varifold* v, double s1, double s2,
                        vf4_varifold** out) {
  if (!v || !out) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    *out = new vf4_varifold{vf4::restrict_annulus(v->sum, s1, s2), std::nullopt};
    return VF4_OK;
  });
}

vf4_status vf4_tail_mass_bound(const vf4_varifold* v, double* out) {
  if (!v || !out) return fail(VF4_ERR_PARSE, "null pointer");
  *out = v->sum.tail_mass_bound;
  return VF4_OK;
}

vf4_status vf4_field_radial_bump(double r_in, double r_out, vf4_field** out) {
  if (!out) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    *out = new vf4_field{vf4::TestVectorField::radial_bump(r_in, r_out)};
    return VF4_OK;
  });
}

vf4_status vf4_field_directional_bump(double r_in, double r_out,
                                      const double dir[4], vf4_field** out) {
  if (!out || !dir) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    *out = new vf4_field{vf4::TestVectorField::directional_bump(
        r_in, r_out, vf4::Vec4(dir[0], dir[1], dir[2], dir[3]))};
    return VF4_OK;
  });
}

void vf4_field_free(vf4_field* f) { delete f; }

vf4_status vf4_field_value(const vf4_field* f, const double x[4],
                           double out[4]) {
  if (!f || !x || !out) return fail(VF4_ERR_PARSE, "null pointer");
  const vf4::Vec4 v = f->field.value(vf4::Vec4(x[0], x[1], x[2], x[3]));
  for (int i = 0; i < 4; ++i) out[i] = v[i];
  return VF4_OK;
}

vf4_status vf4_field_jacobian(const vf4_field* f, const double x[4],
                              double out[16]) {
  if (!f || !x || !out) return fail(VF4_ERR_PARSE, "null pointer");
  const vf4::Mat4 j = f->field.jacobian(vf4::Vec4(x[0], x[1], x[2], x[3]));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[4 * r + c] = j(r, c);
  return VF4_OK;
}

vf4_status vf4_first_variation(const vf4_varifold* v, const vf4_field* f,
                               const vf4_quad_spec* q, double* value,
                               double* quad_error, double* tail_bound) {
  if (!v || !f || !value) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    const auto rep = vf4::first_variation(v->sum, f->field, to_spec(q));
    *value = rep.value;
    if (quad_error) *quad_error = rep.quadrature_error_estimate;
    if (tail_bound) *tail_bound = rep.truncation_error_bound;
    return VF4_OK;
  });
}

vf4_status vf4_boundary_functional_k(double rho, int64_t k, const vf4_field* f,
                                     const vf4_quad_spec* q, double* out) {
  if (!f || !out) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    *out = vf4::boundary_functional_k(rho, k, f->field, to_spec(q)).value;
    return VF4_OK;
  });
}

vf4_status vf4_boundary_functional_inf(double rho, const vf4_field* f,
                                       const vf4_quad_spec* q, double* out) {
  if (!f || !out) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    *out = vf4::boundary_functional_inf(rho, f->field, to_spec(q)).value;
    return VF4_OK;
  });
}

vf4_status vf4_band_fraction(const vf4_varifold* v, double s1, double s2,
                             int kind, double eps, double* fraction,
                             double* total_mass) {
  if (!v || !fraction) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    const auto rep = vf4::band_classify(
        v->sum, s1, s2, kind == 0 ? vf4::BandKind::J13 : vf4::BandKind::J12,
        {eps});
    *fraction = rep.total_mass > 0 ? rep.mass_in_band[0] / rep.total_mass : 0.0;
    if (total_mass) *total_mass = rep.total_mass;
    return VF4_OK;
  });
}

vf4_status vf4_epsilon0_estimate(int samples, double* value, double* spread) {
  if (!value) return fail(VF4_ERR_PARSE, "null pointer");
  return guarded([&] {
    const auto est = vf4::epsilon0_estimate(samples);
    *value = est.value;
    if (spread) *spread = est.spread;
    return VF4_OK;
  });
}

namespace {

vf4_status report_out(const vf4::Report& rep, int json, char** report,
                      int* pass) {
  if (report) *report = dup_string(json ? rep.to_json() : rep.to_text());
  if (pass) *pass = rep.all_pass() ? 1 : 0;
  return rep.all_pass() ? VF4_OK : VF4_ERR_CHECK;
}

}  // namespace

vf4_status vf4_cmd_verify(const char* suite, const char* scenario_text,
                          int json, char** report, int* pass) {
  if (!suite) return fail(VF4_ERR_PARSE, "null suite");
  return guarded([&] {
    const auto rep = vf4::cmd_verify(suite, parse_scenario(scenario_text));
    return report_out(rep, json, report, pass);
  });
}

vf4_status vf4_cmd_mass_profile(const char* scenario_text, double r_min,
                                double r_max, int steps, char** csv) {
  if (!csv) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    *csv = dup_string(
        vf4::cmd_mass_profile(parse_scenario(scenario_text), r_min, r_max, steps));
    return VF4_OK;
  });
}

vf4_status vf4_cmd_variation(const char* scenario_text, int truncation,
                             int json, char** report, int* pass) {
  return guarded([&] {
    const auto rep = vf4::cmd_variation(parse_scenario(scenario_text), truncation);
    return report_out(rep, json, report, pass);
  });
}

vf4_status vf4_cmd_blowup(const char* scenario_text, double lambda, int json,
                          char** report, int* pass) {
  return guarded([&] {
    const auto rep = vf4::cmd_blowup(parse_scenario(scenario_text), lambda);
    return report_out(rep, json, report, pass);
  });
}

vf4_status vf4_cmd_certify(const char* scenario_text, int index, int json,
                           char** report, int* pass) {
  return guarded([&] {
    const auto rep = vf4::cmd_certify(parse_scenario(scenario_text), index);
    return report_out(rep, json, report, pass);
  });
}

vf4_status vf4_cmd_export_mesh(const char* scenario_text, char** obj) {
  if (!obj) return fail(VF4_ERR_PARSE, "null output pointer");
  return guarded([&] {
    *obj = dup_string(vf4::cmd_export_mesh(parse_scenario(scenario_text)));
    return VF4_OK;
  });
}

}  // extern "C"
