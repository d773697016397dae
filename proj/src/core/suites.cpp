#include "suites.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "analysis.hpp"

namespace vf4 {

namespace {

constexpr double kPi = std::numbers::pi;

Vec4 random_unit4(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec4 v(g(rng), g(rng), g(rng), g(rng));
  while (v.norm() < 1e-6) v = Vec4(g(rng), g(rng), g(rng), g(rng));
  return v.normalized();
}

void suite_geom(Report& rep, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-2.0, 2.0);

  double worst_radial = 0, worst_norm = 0, worst_exchange = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 ab(unif(rng), unif(rng)), cd(unif(rng), unif(rng));
    const double t = std::abs(unif(rng)) + 0.1;
    const Vec4 f = f_map(ab, cd);
    worst_radial = std::max(worst_radial,
                            (f_map(t * ab, cd) - t * f).norm() +
                                (f_map(ab, t * cd) - t * f).norm());
    worst_norm = std::max(worst_norm,
                          std::abs(f.norm() - ab.norm() * cd.norm()));
    const Vec4 ex = cd[0] * Vec4(ab[0], ab[1], 0, 0) +
                    cd[1] * Vec4(0, 0, ab[0], ab[1]);
    worst_exchange = std::max(worst_exchange, (f - ex).norm());
  }
  rep.add("geom.f_radial_scaling", worst_radial, 1e-13, worst_radial <= 1e-13);
  rep.add("geom.f_norm_product", worst_norm, 1e-13, worst_norm <= 1e-13);
  rep.add("geom.f_exchange", worst_exchange, 1e-14, worst_exchange <= 1e-14);

  double worst_j = 0;
  for (int i = 0; i < 200; ++i) {
    const double a = unif(rng), b = unif(rng);
    const Mat4 j = j_matrix(a, b);
    worst_j = std::max(worst_j,
                       (j.transpose() * j - (a * a + b * b) * Mat4::Identity())
                           .norm());
    worst_j = std::max(
        worst_j, (j_matrix(b, a) * j - j_matrix(0, a * a + b * b)).norm());
  }
  const double beta = 0.7;
  const Mat4 b_mat = j_matrix(std::cos(beta), std::sin(beta));
  const Mat4 bp_mat = j_matrix(-std::sin(beta), std::cos(beta));
  worst_j = std::max(worst_j, (bp_mat - j13_24() * b_mat).norm());
  worst_j = std::max(worst_j, (b_mat.transpose() * bp_mat - j13_24()).norm());
  rep.add("geom.j_identities", worst_j, 1e-13, worst_j <= 1e-13);

  int distinct_failures = 0;
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const double u = ang(rng), v = ang(rng);
    const auto r = spans_distinct(span_g1(Vec2(std::cos(u), std::sin(u))),
                                  span_g2(Vec2(std::cos(v), std::sin(v))));
    if (!r.distinct) ++distinct_failures;
  }
  rep.add("geom.g1_g2_distinct", distinct_failures, 0, distinct_failures == 0);

  const auto pre = f_preimage(Vec4(1, 0, 0, 0), 2.0);
  bool found = false;
  for (const auto& [ab, cd] : pre)
    if ((ab - Vec2(2, 0)).norm() < 1e-12 && (cd - Vec2(0.5, 0)).norm() < 1e-12)
      found = true;
  rep.add("geom.preimage_scaling", found ? 0.0 : 1.0, 0, found);

  const double e0 = band_achieved_epsilon(Vec4(1, 0, 0, 0),
                                          span_g1(Vec2(1, 0)), BandKind::J13);
  rep.add("geom.band_g1_exact", e0, 1e-9, e0 <= 1e-9);
}

void suite_surface(Report& rep, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dd(0.1, 10.0), a0d(0.0, 2 * kPi),
      offd(-kPi / 4 + 0.01, kPi / 4 - 0.01), bd(0.0, 2 * kPi);
  double worst_ode = 0, worst_h = 0, worst_metric = 0, worst_rings = 0,
         worst_band = 0;
  for (int i = 0; i < 1000; ++i) {
    const SurfaceParams p(dd(rng), a0d(rng));
    const double alpha = p.alpha0 + offd(rng), beta = bd(rng);
    const Profile pr = profile(p, alpha);
    worst_ode = std::max(worst_ode, ode_residual(p, alpha) / (pr.r * pr.r));
    worst_h = std::max(worst_h, mean_curvature(p, alpha, beta).norm());
    const MetricTensor g = metric(p, alpha, beta);
    const SurfacePoint pt = evaluate(p, alpha, beta);
    worst_metric = std::max(
        worst_metric,
        std::abs(g.g11 - pt.du_alpha.squaredNorm()) +
            std::abs(g.g22 - pt.du_beta.squaredNorm()) +
            std::abs(pt.du_alpha.dot(pt.du_beta)));
    const auto tp = tangent_plane(p, alpha, beta);
    const double bound = 2 * std::cos(2 * (alpha - p.alpha0));
    worst_band = std::max(worst_band, tp.band_epsilon - bound);

    const double off = std::abs(offd(rng)) / 2;
    const double a1 = a0d(rng), a2 = a1 + 2 * off;
    const Vec4 gap = two_rings_gap(1.0, a1, a2, a1 + off, beta);
    const Vec4 n = evaluate(SurfaceParams(1.0, a1), a1 + off, beta)
                       .position.normalized();
    worst_rings =
        std::max(worst_rings, (gap - 2 * std::sin(2 * off) * n).norm());
  }
  rep.add("surface.ode_residual_rel", worst_ode, 1e-10, worst_ode <= 1e-10);
  rep.add("surface.mean_curvature", worst_h, 1e-10, worst_h <= 1e-10);
  rep.add("surface.metric_vs_partials", worst_metric, 1e-12,
          worst_metric <= 1e-12);
  rep.add("surface.two_rings_gap", worst_rings, 1e-10, worst_rings <= 1e-10);
  rep.add("surface.tangent_band_bound", worst_band, 1e-10, worst_band <= 1e-10);

  const Vec4 h_fd = mean_curvature_fd(SurfaceParams(1.0, 0.0), 0.1, 0.3, 1e-4);
  rep.add("surface.mean_curvature_fd", h_fd.norm(), 1e-6, h_fd.norm() <= 1e-6);
}

void suite_ring(Report& rep, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dd(0.2, 5.0), a0d(0.0, 2 * kPi);
  QuadratureSpec quad;

  double worst_mass = 0;
  for (int i = 0; i < 20; ++i) {
    const double d = dd(rng), a0 = a0d(rng);
    std::uniform_real_distribution<double> td(a0 - kPi / 4 + 0.02,
                                              a0 + kPi / 4 - 0.02);
    double t1 = td(rng), t2 = td(rng);
    if (t1 > t2) std::swap(t1, t2);
    if (t2 - t1 < 1e-3) t2 = t1 + 1e-3;
    const SurfaceParams p(d, a0);
    const double closed = mass(build_ring(d, a0, t1, t2), 0,
                               std::numeric_limits<double>::infinity());
    const auto quadr = integrate_2d(
        [&](double a, double) { return area_element(p, a); }, t1, t2, 0.0,
        2 * kPi, quad, 4, 1);
    worst_mass = std::max(worst_mass,
                          std::abs(quadr.value - closed) / std::abs(closed));
  }
  rep.add("ring.mass_quadrature_vs_closed", worst_mass, 1e-8,
          worst_mass <= 1e-8);

  // the d=1, t=(0, pi/8) ring has mass pi exactly
  const double m_pi = mass(build_ring(1.0, 0.0, 0.0, kPi / 8), 0,
                           std::numeric_limits<double>::infinity());
  rep.add("ring.mass_pi_case", std::abs(m_pi - kPi), 1e-12,
          std::abs(m_pi - kPi) <= 1e-12);

  // stationary in the interior; boundary crossings match the co-normal
  // circle integrals
  const VarifoldSum ring = build_ring(1.0, 0.0, -kPi / 8, kPi / 8);
  const SurfaceParams p(1.0, 0.0);
  const double r_lo = profile(p, 0.0).r;                 // 1
  const double r_hi = profile(p, kPi / 8).r;             // 2^(1/4)
  const auto interior = TestVectorField::radial_bump(r_lo + 0.01, r_hi - 0.01);
  const auto rep_int = first_variation(ring, interior, quad);
  rep.add("ring.interior_stationary", std::abs(rep_int.value),
          rep_int.quadrature_error_estimate + 1e-12,
          std::abs(rep_int.value) <=
              rep_int.quadrature_error_estimate + 1e-12);

  const auto crossing = TestVectorField::radial_bump(1.05, 1.4);
  const auto rep_cross = first_variation(ring, crossing, quad);
  // boundary integral over the two edge circles t = +-pi/8 (same radius)
  double oracle = 0.0;
  for (double t : {kPi / 8, -kPi / 8}) {
    const double sign = t > 0 ? 1.0 : -1.0;
    const auto line = integrate_periodic(
        [&](double beta) {
          const SurfacePoint pt = evaluate(p, t, beta);
          return crossing.value(pt.position).dot(conormal(p, t, beta)) *
                 std::sqrt(metric(p, t, beta).g22);
        },
        2 * kPi, 4096);
    oracle += sign * line.value;
  }
  const double diff = std::abs(rep_cross.value - oracle);
  const double tol = std::max(1e-6 * std::abs(oracle),
                              rep_cross.quadrature_error_estimate * 10);
  rep.add("ring.boundary_first_variation", diff, tol, diff <= tol);
}

void suite_minilayer(Report& rep, std::mt19937_64& rng) {
  QuadratureSpec quad;
  const auto p = MiniLayerParams::create(24, 0.6, 1.0);
  std::uniform_real_distribution<double> sd(p.r1, p.r2);

  for (int which : {1, 2}) {
    const VarifoldSum v = build_mini_layer(which, p);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      double s1 = sd(rng), s2 = sd(rng);
      if (s1 > s2) std::swap(s1, s2);
      if (s2 - s1 < 1e-6) continue;
      const double m = mass(v, s1, s2);
      const double area = kPi * (s2 * s2 - s1 * s1);
      const double lo = p.c_lower * area;
      const double hi = 4.0 / std::sin(2 * (p.gamma - kPi / p.k)) * area;
      worst = std::max(worst, std::max(lo - m, m - hi));
    }
    rep.add("minilayer.mass_bounds_v" + std::to_string(which), worst, 0.0,
            worst <= 0.0);

    const auto field = TestVectorField::radial_bump(p.r1 * 0.8, p.r2 * 1.1);
    const auto fv = first_variation(v, field, quad);
    const double b_outer =
        boundary_functional_k(p.r2, which == 1 ? 2 * p.k : p.k, field, quad).value;
    const double b_inner =
        boundary_functional_k(p.r1, which == 1 ? p.k : 2 * p.k, field, quad).value;
    const double rhs = which == 1
                           ? p.c_tilde_upper * b_outer - p.c_tilde_lower * b_inner
                           : p.c_upper * b_outer - p.c_lower * b_inner;
    const double diff = std::abs(fv.value - rhs);
    const double tol =
        std::max(1e-5 * std::max(1.0, std::abs(rhs)),
                 10 * fv.quadrature_error_estimate);
    rep.add("minilayer.first_variation_v" + std::to_string(which), diff, tol,
            diff <= tol);
  }
}

void suite_layer(Report& rep, std::mt19937_64& rng) {
  QuadratureSpec quad;
  LayerParams lp{1.0, 2.0, 3.0, 4.0, 0.2, 1e-8};
  const Layer layer = build_layer('A', lp);
  rep.add("layer.c_in_range", layer.derived.c, 1.0,
          layer.derived.c > 1 - lp.epsilon && layer.derived.c < 1.0);

  std::uniform_real_distribution<double> sd(lp.R1, lp.R4);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    double s1 = sd(rng), s2 = sd(rng);
    if (s1 > s2) std::swap(s1, s2);
    if (s2 - s1 < 1e-6) continue;
    const double m = mass(layer.varifold, s1, s2);
    const double area = kPi * (s2 * s2 - s1 * s1);
    const double slack = layer.varifold.tail_mass_bound;
    worst = std::max(worst, std::max((1 - lp.epsilon) * area - m - slack,
                                     m - (1 + lp.epsilon) * area));
  }
  rep.add("layer.mass_bounds", worst, 0.0, worst <= 0.0);

  // telescoped first variation at the coarsest kept level
  const int m0 = layer.derived.n0;
  const VarifoldSum vm = layer_partial(layer, m0);
  const auto& lvl = layer.derived.levels.front();
  const auto field = TestVectorField::radial_bump(0.9 * lp.R1, 1.1 * lp.R4);
  const auto fv = first_variation(vm, field, quad);
  const auto b_hi = boundary_functional_k(lvl.R_hi, 2 * lvl.k, field, quad);
  const auto b_lo = boundary_functional_k(lvl.r_lo, 2 * lvl.k, field, quad);
  const double rhs = lvl.c1_next * b_hi.value -
                     layer.derived.c1 * lvl.c2_next * b_lo.value;
  const double diff = std::abs(fv.value - rhs);
  const double tol = std::max(1e-4 * std::max(1.0, std::abs(rhs)),
                              10 * (fv.quadrature_error_estimate +
                                    b_hi.error + b_lo.error));
  rep.add("layer.telescoped_first_variation", diff, tol, diff <= tol);

  // null-sphere decay at r = 2.5
  double prev = std::numeric_limits<double>::infinity();
  bool decays = true;
  for (double h : {0.1, 0.05, 0.025}) {
    const double m = mass(layer.varifold, 2.5 - h, 2.5 + h);
    if (m > (1 + lp.epsilon) * kPi * (std::pow(2.5 + h, 2) - std::pow(2.5 - h, 2)))
      decays = false;
    if (m > prev) decays = false;
    prev = m;
  }
  rep.add("layer.null_sphere_decay", prev, 1.0, decays);
}

void suite_full(Report& rep, std::mt19937_64& rng) {
  (void)rng;
  QuadratureSpec quad;
  FullParams fp;
  fp.window = 6;
  const FullVarifold full = build_full(fp);

  std::vector<double> radii;
  for (int n = 1; n <= 4; ++n) radii.push_back(full.shell(n)->R4);
  const DensityProfile prof = density_profile(full, radii);
  bool bands_ok = true;
  for (const auto& row : prof.rows) bands_ok = bands_ok && row.pass;
  rep.add("full.density_in_bands", bands_ok ? 0.0 : 1.0, 0.0, bands_ok);

  const double theta_mid = 0.5 * (prof.theta_lo + prof.theta_hi);
  const double dev = std::abs(prof.limit_estimate - theta_mid);
  const double band = prof.rows.back().upper - prof.rows.back().lower +
                      prof.rows.back().allowance;
  rep.add("full.theta_extrapolation", dev, band, dev <= band);

  // scaling law on the layer of shell 1
  std::mt19937_64 rng2(99);
  std::uniform_real_distribution<double> ld(0.3, 3.0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double lambda = ld(rng2);
    double a = ld(rng2) * 0.3, b = a + ld(rng2) * 0.3;
    const VarifoldSum scaled =
        pushforward_scale(full.varifold, Vec4::Zero(), lambda);
    const double lhs = mass(scaled, a, b);
    const double rhs = mass(full.varifold, lambda * a, lambda * b) /
                       (lambda * lambda);
    worst = std::max(worst, std::abs(lhs - rhs) /
                                std::max(1e-300, std::abs(rhs)));
  }
  rep.add("full.scaling_law", worst, 1e-12, worst <= 1e-12);

  const auto field = TestVectorField::radial_bump(0.2, 1.5);
  const auto rows = stationarity_suite(full, {field}, {"radial"}, {2, 4}, quad);
  bool st_ok = true;
  double worst_res = 0;
  for (const auto& row : rows) {
    st_ok = st_ok && row.pass;
    worst_res = std::max(worst_res, row.residual);
  }
  rep.add("full.stationarity_within_bounds", worst_res, 0.0, st_ok);
}

}  // namespace

Report run_suite(const std::string& name, const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(static_cast<unsigned>(s.get_int("suite.seed", 4242)));
  Report rep;
  rep.command = "verify --suite " + name;
  rep.scenario_echo = s.serialize();
  bool known = false;
  if (name == "geom" || name == "all") {
    suite_geom(rep, rng);
    known = true;
  }
  if (name == "surface" || name == "all") {
    suite_surface(rep, rng);
    known = true;
  }
  if (name == "ring" || name == "all") {
    suite_ring(rep, rng);
    known = true;
  }
  if (name == "minilayer" || name == "all") {
    suite_minilayer(rep, rng);
    known = true;
  }
  if (name == "layer" || name == "all") {
    suite_layer(rep, rng);
    known = true;
  }
  if (name == "full" || name == "all") {
    suite_full(rep, rng);
    known = true;
  }
  if (!known) throw std::invalid_argument("run_suite: unknown suite " + name);
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace vf4
