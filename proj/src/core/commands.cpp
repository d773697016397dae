#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "analysis.hpp"

namespace vf4 {

namespace {

constexpr double kPi = std::numbers::pi;

double epsilon0_cached(const Scenario& s) {
  // one optimizer run is enough; the value is direction-independent
  const int samples = s.get_int("certify.eps0_samples", 4);
  static double cached = -1.0;
  static int cached_samples = -1;
  if (cached < 0 || cached_samples != samples) {
    cached = epsilon0_estimate(samples).value;
    cached_samples = samples;
  }
  return cached;
}

}  // namespace

Report cmd_verify(const std::string& suite, const Scenario& s) {
  return run_suite(suite, s);
}

std::string cmd_mass_profile(const Scenario& s, double r_min, double r_max,
                             int steps) {
  if (steps < 1) throw std::domain_error("mass-profile: steps must be >= 1");
  if (!(0 < r_min && r_min <= r_max))
    throw std::domain_error("mass-profile: require 0 < r_min <= r_max");
  const BuiltConstruction built = make_construction(s);
  if (built.full) {
    const double lo = built.full->shells.back().R4;
    const double hi = built.full->window_radius;
    if (r_min < lo || r_max > hi)
      throw std::domain_error("mass-profile: radii outside truncation window");
  }
  std::ostringstream out;
  out << "r,mass,ratio,lower_band,upper_band\n";
  for (int i = 0; i < steps; ++i) {
    const double r = steps == 1
                         ? r_min
                         : r_min + (r_max - r_min) * i / (steps - 1);
    const double m = mass(built.varifold, 0.0, r);
    out << format_double(r) << ',' << format_double(m) << ','
        << format_double(m / (r * r));
    if (built.full) {
      const DensityProfile prof = density_profile(*built.full, {r});
      out << ',' << format_double(prof.rows[0].lower) << ','
          << format_double(prof.rows[0].upper);
    } else {
      out << ",,";
    }
    out << "\n";
  }
  return out.str();
}

Report cmd_variation(const Scenario& s, int truncation) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = "variation";
  rep.scenario_echo = s.serialize();
  const BuiltConstruction built = make_construction(s);
  const QuadratureSpec quad = make_quad(s);
  std::vector<std::string> names;
  std::vector<TestVectorField> fields = make_fields(s, &names);
  if (fields.empty()) {
    fields.push_back(TestVectorField::radial_bump(0.5, 2.0));
    names.push_back("field.default");
  }
  if (built.full) {
    const int m = truncation != 0 ? truncation : built.full->shells.back().n;
    const auto rows = stationarity_suite(*built.full, fields, names, {m}, quad);
    for (const auto& row : rows)
      rep.add(row.field + ".residual", row.residual, row.bound, row.pass,
              "truncation " + std::to_string(row.truncation));
  } else {
    for (size_t i = 0; i < fields.size(); ++i) {
      const FirstVariationReport r =
          first_variation(built.varifold, fields[i], quad);
      const double bound =
          r.quadrature_error_estimate + r.truncation_error_bound + 1e-12;
      rep.add(names[i] + ".residual", std::abs(r.value), bound,
              std::abs(r.value) <= bound);
    }
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

Report cmd_blowup(const Scenario& s, double lambda) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = "blowup";
  rep.scenario_echo = s.serialize();
  const BuiltConstruction built = make_construction(s);
  const VarifoldSum scaled =
      pushforward_scale(built.varifold, Vec4::Zero(), lambda);
  const double base = s.get_double("blowup.r_base", 1.0);
  for (int i = 0; i < 4; ++i) {
    const double a = base * std::pow(2.0, -i), b = 2 * a;
    const double lhs = mass(scaled, a, b);
    const double rhs =
        mass(built.varifold, lambda * a, lambda * b) / (lambda * lambda);
    const double rel =
        std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs));
    rep.add("scaling.A_" + format_double(a) + "_" + format_double(b), rel,
            1e-12, rel <= 1e-12);
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

Report cmd_certify(const Scenario& s, int index) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = "certify";
  rep.scenario_echo = s.serialize();
  const std::string kind = s.get_or("construction.kind", "full_nonconical");
  const double eps0 = epsilon0_cached(s);
  ConicityCertificate cert;
  std::string expected;
  if (kind == "full_nonconical") {
    const BuiltConstruction built = make_construction(s);
    cert = nonconical_certificate(*built.full, index, eps0);
    expected = "non-conical-evidence";
  } else if (kind == "full_conical") {
    const BuiltConstruction built = make_construction(s);
    cert = distinct_tangents_certificate(*built.full, index, eps0);
    expected = "distinct-tangents-evidence";
  } else if (kind == "planar_control") {
    cert = planar_control_certificate(eps0);
    expected = "inconclusive";
  } else {
    throw std::invalid_argument("certify: construction.kind must be "
                                "full_nonconical, full_conical or planar_control");
  }
  const std::string got = verdict_name(cert.verdict);
  rep.add("verdict." + got, got == expected ? 0.0 : 1.0, 0.0, got == expected,
          cert.reason);
  rep.add("epsilon0", cert.epsilon0, 0.0, cert.epsilon0 > 0);
  rep.add("epsilon_used", cert.epsilon_used, cert.epsilon0,
          cert.epsilon_used < cert.epsilon0);
  rep.add("mass.scale_a", cert.mass_a, cert.mass_floor,
          cert.mass_a >= cert.mass_floor);
  rep.add("mass.scale_b", cert.mass_b, cert.mass_floor,
          cert.mass_b >= cert.mass_floor);
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

std::string cmd_export_mesh(const Scenario& s) {
  MeshSpec spec;
  spec.d = s.get_double("mesh.d", s.get_double("construction.d", 1.0));
  spec.alpha0 = s.get_double("mesh.alpha0", s.get_double("construction.alpha0", 0.0));
  spec.t1 = s.get_double("mesh.t1", s.get_double("construction.t1", -kPi / 8));
  spec.t2 = s.get_double("mesh.t2", s.get_double("construction.t2", kPi / 8));
  spec.res_alpha = s.get_int("mesh.res_alpha", 64);
  spec.res_beta = s.get_int("mesh.res_beta", 64);
  const std::string proj = s.get_or("mesh.projection", "drop-axis");
  if (proj == "drop-axis")
    spec.projection = MeshProjection::DropAxis;
  else if (proj == "stereographic")
    spec.projection = MeshProjection::Stereographic;
  else if (proj == "none")
    spec.projection = MeshProjection::None;
  else
    throw std::invalid_argument("export-mesh: unknown projection " + proj);
  spec.drop_axis = s.get_int("mesh.drop_axis", 3);
  return export_mesh(spec);
}

}  // namespace vf4
