#include "varifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace vf4 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double clip_area(double r_in, double r_out, double s1, double s2) {
  const double lo = std::max(r_in, s1), hi = std::min(r_out, s2);
  if (!(hi > lo)) return 0.0;
  if (std::isinf(hi)) return kInf;
  return kPi * (hi * hi - lo * lo);
}

// half-angle from alpha0 at which the profile radius reaches s
double alpha_offset(double d, double s) {
  if (!(s > 0) || s * s <= d) return 0.0;
  if (std::isinf(s)) return kPi / 4;
  return 0.5 * std::acos(std::min(1.0, d / (s * s)));
}

double ring_mass_closed(const SurfaceParams& surf, double t1, double t2) {
  // 2 pi  Int d cos^-2 2(a - a0) da = pi d (tan 2(t2-a0) - tan 2(t1-a0))
  return kPi * surf.d *
         (std::tan(2 * (t2 - surf.alpha0)) - std::tan(2 * (t1 - surf.alpha0)));
}

Plane2 g_plane(int which, double theta) {
  const Vec2 p(std::cos(theta), std::sin(theta));
  return which == 1 ? span_g1(p) : span_g2(p);
}

IntegralResult ring_copy_fv(const SurfaceParams& surf, double t1, double t2,
                            double theta, bool swap23,
                            const TestVectorField& field,
                            const QuadratureSpec& spec) {
  // alpha is the thin axis (mini-layer rings span pi/k); the GL tensor
  // iterates alpha-major, so the profile work is cached per alpha
  struct Cache {
    double alpha = std::numeric_limits<double>::quiet_NaN();
    Profile pr;
    double ca = 0, sa = 0, g11s = 0;
  };
  auto cache = std::make_shared<Cache>();
  auto integrand = [&field, surf, theta, swap23, cache](double alpha,
                                                        double beta) {
    Cache& c = *cache;
    if (alpha != c.alpha) {
      c.alpha = alpha;
      c.pr = profile(surf, alpha);
      c.ca = std::cos(alpha);
      c.sa = std::sin(alpha);
      c.g11s = std::sqrt(c.pr.dr * c.pr.dr + c.pr.r * c.pr.r);
    }
    const double cb = std::cos(beta), sb = std::sin(beta);
    const Vec4 ba(c.ca * cb, c.sa * cb, c.ca * sb, c.sa * sb);
    const Vec4 bap(-c.sa * cb, c.ca * cb, -c.sa * sb, c.ca * sb);
    const Vec4 bpa(-c.ca * sb, -c.sa * sb, c.ca * cb, c.sa * cb);
    const Vec4 x = orbit_apply(theta, swap23, c.pr.r * ba);
    const Vec4 u1 =
        orbit_apply(theta, swap23, (c.pr.dr * ba + c.pr.r * bap) / c.g11s);
    const Vec4 u2 = orbit_apply(theta, swap23, bpa);
    return field.div_tangent(x, u1, u2) * c.pr.r * c.g11s;
  };
  const int cells_a = std::clamp(static_cast<int>((t2 - t1) / 0.2) + 1, 1, 8);
  const double floor =
      spec.target_rel_error * field.c1_bound() * ring_mass_closed(surf, t1, t2);
  return integrate_2d(integrand, t1, t2, 0.0, 2 * kPi, spec, cells_a, 4,
                      std::min(8, spec.order), spec.order, floor);
}

IntegralResult plane_fv(const Plane2& plane, double r_in, double r_out,
                        const TestVectorField& field,
                        const QuadratureSpec& spec) {
  const double lo = std::max(r_in, field.support_inner());
  const double hi = std::min(r_out, field.support_radius());
  if (!(hi > lo)) return {0.0, 0.0};
  const Vec4 u1 = plane.frame.col(0), u2 = plane.frame.col(1);
  auto integrand = [&](double rho, double phi) {
    const Vec4 x = rho * (std::cos(phi) * u1 + std::sin(phi) * u2);
    return field.div_tangent(x, u1, u2) * rho;
  };
  const int cells_r =
      std::clamp(static_cast<int>(5.0 * (hi - lo) / hi) + 1, 1, 8);
  const double floor = spec.target_rel_error * field.c1_bound() * kPi *
                       (hi * hi - lo * lo);
  return integrate_2d(integrand, lo, hi, 0.0, 2 * kPi, spec, cells_r, 4,
                      std::min(8, spec.order), spec.order, floor);
}

// Sum of per-copy integrals F(2 pi j / count).  Exact for small orbits;
// large orbits are trapezoid sums of a smooth 2 pi periodic map, replaced
// by an adaptively refined trapezoid mean with the spectral-gap error
// folded into the estimate.  per_copy_scale fixes the absolute convergence
// floor (c1 bound of the field times the per-copy mass); refinement also
// stops once the trapezoid difference sinks to the inner-quadrature noise.
IntegralResult orbit_sum(std::int64_t count,
                         const std::function<IntegralResult(double)>& per_copy,
                         const QuadratureSpec& spec, double per_copy_scale) {
  if (count <= spec.orbit_exact_limit) {
    IntegralResult acc;
    for (std::int64_t j = 0; j < count; ++j)
      acc += per_copy(2 * kPi * j / static_cast<double>(count));
    return acc;
  }
  double inner_err = 0.0;
  long evals = 0;
  auto value_of = [&](double theta) {
    const IntegralResult r = per_copy(theta);
    inner_err += r.error;
    ++evals;
    return r.value;
  };
  int n = std::max(2, spec.orbit_min_nodes);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += value_of(2 * kPi * i / n);
  mean /= n;
  double diff = std::abs(mean);
  const int max_nodes = 8 * spec.circle_nodes;
  while (n < max_nodes) {
    double odd = 0.0;
    for (int i = 0; i < n; ++i) odd += value_of(2 * kPi * (2 * i + 1) / (2 * n));
    const double next = 0.5 * (mean + odd / n);
    diff = std::abs(next - mean);
    n *= 2;
    mean = next;
    const double noise_floor = inner_err / evals;
    if (diff <= 0.1 * spec.target_rel_error * std::abs(mean) ||
        diff <= spec.target_rel_error * per_copy_scale ||
        diff <= noise_floor || diff <= 1e-17)
      break;
  }
  const double cnt = static_cast<double>(count);
  const double avg_inner = evals > 0 ? inner_err / evals : 0.0;
  return {cnt * mean, cnt * (diff + avg_inner)};
}

IntegralResult atom_first_variation(const Atom& atom,
                                    const TestVectorField& field,
                                    const QuadratureSpec& spec) {
  const double support_mass =
      atom_mass(atom, field.support_inner(), field.support_radius());
  if (support_mass == 0.0) return {0.0, 0.0};
  if (std::holds_alternative<RingAtom>(atom)) {
    const auto& ring = std::get<RingAtom>(atom);
    const double scale =
        field.c1_bound() * support_mass / static_cast<double>(ring.count);
    const auto pieces = ring_alpha_clip(ring.surf, ring.t1, ring.t2,
                                        field.support_inner(),
                                        field.support_radius());
    IntegralResult acc;
    for (const auto& [a, b] : pieces) {
      acc += orbit_sum(
          ring.count,
          [&](double theta) {
            return ring_copy_fv(ring.surf, a, b, theta, ring.swap23, field,
                                spec);
          },
          spec, scale);
    }
    return acc;
  }
  if (std::holds_alternative<PlaneOrbitAtom>(atom)) {
    const auto& po = std::get<PlaneOrbitAtom>(atom);
    const double scale =
        field.c1_bound() * support_mass / static_cast<double>(po.count);
    return orbit_sum(
        po.count,
        [&](double theta) {
          return plane_fv(g_plane(po.which, po.offset + theta), po.r_in,
                          po.r_out, field, spec);
        },
        spec, scale);
  }
  if (std::holds_alternative<FamilyAtom>(atom)) {
    const auto& fam = std::get<FamilyAtom>(atom);
    double inner_err = 0.0;
    long evals = 0;
    auto value_of = [&](double theta) {
      const IntegralResult r =
          plane_fv(g_plane(fam.which, theta), fam.r_in, fam.r_out, field, spec);
      inner_err += r.error;
      ++evals;
      return r.value;
    };
    const IntegralResult circ =
        integrate_periodic(value_of, 2 * kPi, spec.circle_nodes);
    const double avg_inner = evals > 0 ? inner_err / evals : 0.0;
    return {circ.value, circ.error + 2 * kPi * avg_inner};
  }
  const auto& pl = std::get<PlanarAtom>(atom);
  return plane_fv(pl.plane, pl.r_in, pl.r_out, field, spec);
}

}  // namespace

Vec4 orbit_apply(double theta, bool swap23, const Vec4& v) {
  Vec4 out = v;
  if (theta != 0.0) {
    const double c = std::cos(theta), s = std::sin(theta);
    out = Vec4(c * v[0] - s * v[1], s * v[0] + c * v[1], c * v[2] - s * v[3],
               s * v[2] + c * v[3]);
  }
  if (swap23) std::swap(out[1], out[2]);
  return out;
}

RingNode ring_node(const SurfaceParams& surf, double alpha, double beta) {
  const Profile pr = profile(surf, alpha);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const Vec4 ba(ca * cb, sa * cb, ca * sb, sa * sb);       // B(beta) A(alpha)
  const Vec4 bap(-sa * cb, ca * cb, -sa * sb, ca * sb);    // B(beta) A'(alpha)
  const Vec4 bpa(-ca * sb, -sa * sb, ca * cb, sa * cb);    // B'(beta) A(alpha)
  const double g11s = std::sqrt(pr.dr * pr.dr + pr.r * pr.r);
  RingNode n;
  n.x = pr.r * ba;
  n.u1 = (pr.dr * ba + pr.r * bap) / g11s;
  n.u2 = bpa;
  n.area = pr.r * g11s;
  return n;
}

std::vector<std::pair<double, double>> ring_alpha_clip(const SurfaceParams& s,
                                                       double t1, double t2,
                                                       double s1, double s2) {
  std::vector<std::pair<double, double>> out;
  if (!(s2 > 0) || s2 * s2 <= s.d) return out;
  const double d1 = alpha_offset(s.d, s1), d2 = alpha_offset(s.d, s2);
  const std::pair<double, double> windows[2] = {
      {s.alpha0 - d2, s.alpha0 - d1}, {s.alpha0 + d1, s.alpha0 + d2}};
  auto radius_at = [&](double alpha) {
    return std::sqrt(s.d / std::cos(2 * (alpha - s.alpha0)));
  };
  for (const auto& [wa, wb] : windows) {
    const double a = std::max(t1, wa), b = std::min(t2, wb);
    if (!(b > a + 1e-300)) continue;
    // near the domain edge dr/dalpha diverges, so the alpha windows cannot
    // resolve the radius bounds; recheck the piece with the closed form
    const double ra = radius_at(a), rb = radius_at(b);
    if (std::max(ra, rb) < s1 * (1 - 1e-13)) continue;
    if (std::isfinite(s2) && std::min(ra, rb) > s2 * (1 + 1e-13)) continue;
    out.emplace_back(a, b);
  }
  return out;
}

double div_s(const TestVectorField& x_field, const Vec4& x, const Plane2& s) {
  return x_field.div_tangent(x, s.frame.col(0), s.frame.col(1));
}

double atom_mass(const Atom& atom, double s1, double s2) {
  if (std::holds_alternative<RingAtom>(atom)) {
    const auto& ring = std::get<RingAtom>(atom);
    double m = 0.0;
    for (const auto& [a, b] : ring_alpha_clip(ring.surf, ring.t1, ring.t2, s1, s2))
      m += ring_mass_closed(ring.surf, a, b);
    return static_cast<double>(ring.count) * m;
  }
  if (std::holds_alternative<PlaneOrbitAtom>(atom)) {
    const auto& po = std::get<PlaneOrbitAtom>(atom);
    return static_cast<double>(po.count) * clip_area(po.r_in, po.r_out, s1, s2);
  }
  if (std::holds_alternative<FamilyAtom>(atom)) {
    const auto& fam = std::get<FamilyAtom>(atom);
    return 2 * kPi * clip_area(fam.r_in, fam.r_out, s1, s2);
  }
  const auto& pl = std::get<PlanarAtom>(atom);
  return clip_area(pl.r_in, pl.r_out, s1, s2);
}

double mass(const VarifoldSum& v, double s1, double s2) {
  if (s1 < 0 || !(s2 >= s1))
    throw std::domain_error("mass: require 0 <= s1 <= s2");
  double m = 0.0;
  for (const auto& term : v.terms) m += term.coeff * atom_mass(term.atom, s1, s2);
  return m;
}

FirstVariationReport first_variation(const VarifoldSum& v,
                                     const TestVectorField& x,
                                     const QuadratureSpec& spec) {
  if (std::isinf(x.support_radius()))
    throw std::domain_error("first_variation: field must be compactly supported");
  std::vector<IntegralResult> per_term(v.terms.size());
  parallel_for_indexed(static_cast<int>(v.terms.size()), [&](int i) {
    per_term[i] = atom_first_variation(v.terms[i].atom, x, spec);
  });
  FirstVariationReport rep;
  for (size_t i = 0; i < v.terms.size(); ++i) {
    rep.value += v.terms[i].coeff * per_term[i].value;
    rep.quadrature_error_estimate +=
        std::abs(v.terms[i].coeff) * per_term[i].error;
  }
  rep.truncation_error_bound = x.c1_bound() * v.tail_mass_bound;
  return rep;
}

IntegralResult boundary_functional_k(double rho, std::int64_t k,
                                     const TestVectorField& x,
                                     const QuadratureSpec& spec) {
  if (!(rho > 0)) throw std::domain_error("boundary_functional_k: rho > 0");
  if (k < 1) throw std::domain_error("boundary_functional_k: k >= 1");
  if (k > (1 << 21))
    throw std::domain_error(
        "boundary_functional_k: k too large for exact evaluation");
  const int kk = static_cast<int>(k);
  std::vector<IntegralResult> per_circle(kk);
  parallel_for_indexed(kk, [&](int i) {
    const double alpha = 2 * kPi * (i + 1) / static_cast<double>(k);
    per_circle[i] = integrate_periodic(
        [&](double beta) {
          // X.N times the arclength element rho: (X.p/rho) rho = X.p
          const Vec4 p = circle_point(rho, alpha, beta);
          return x.value(p).dot(p);
        },
        2 * kPi, spec.circle_nodes);
  });
  IntegralResult acc;
  for (const auto& r : per_circle) acc += r;
  acc.value /= static_cast<double>(k);
  acc.error /= static_cast<double>(k);
  return acc;
}

IntegralResult boundary_functional_inf(double rho, const TestVectorField& x,
                                       const QuadratureSpec& spec) {
  if (!(rho > 0)) throw std::domain_error("boundary_functional_inf: rho > 0");
  auto slice = [&](double alpha) {
    return integrate_periodic(
               [&](double beta) {
                 const Vec4 p = circle_point(rho, alpha, beta);
                 return x.value(p).dot(p) / rho;
               },
               2 * kPi, spec.circle_nodes)
        .value;
  };
  const IntegralResult outer = integrate_periodic(slice, 2 * kPi, spec.circle_nodes);
  // H^2 element of the embedded torus is rho^2 d(alpha) d(beta); normalize by 2 pi rho
  return {outer.value * rho / (2 * kPi), outer.error * rho / (2 * kPi)};
}

VarifoldSum pushforward_scale(const VarifoldSum& v, const Vec4& x0,
                              double lambda) {
  if (!(lambda > 0)) throw std::domain_error("pushforward_scale: lambda > 0");
  if (x0.norm() != 0.0)
    throw std::domain_error(
        "pushforward_scale: only blow-ups centered at the origin are supported");
  VarifoldSum out;
  out.truncation_index = v.truncation_index;
  out.tail_mass_bound = v.tail_mass_bound / (lambda * lambda);
  out.terms.reserve(v.terms.size());
  for (const auto& term : v.terms) {
    Term t = term;
    if (std::holds_alternative<RingAtom>(t.atom)) {
      auto& ring = std::get<RingAtom>(t.atom);
      ring.surf = SurfaceParams(ring.surf.d / (lambda * lambda), ring.surf.alpha0);
    } else if (std::holds_alternative<PlaneOrbitAtom>(t.atom)) {
      auto& po = std::get<PlaneOrbitAtom>(t.atom);
      po.r_in /= lambda;
      po.r_out /= lambda;
    } else if (std::holds_alternative<FamilyAtom>(t.atom)) {
      auto& fam = std::get<FamilyAtom>(t.atom);
      fam.r_in /= lambda;
      fam.r_out /= lambda;
    } else {
      auto& pl = std::get<PlanarAtom>(t.atom);
      pl.r_in /= lambda;
      pl.r_out /= lambda;
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

VarifoldSum restrict_annulus(const VarifoldSum& v, double s1, double s2) {
  if (s1 < 0 || !(s2 >= s1))
    throw std::domain_error("restrict_annulus: require 0 <= s1 <= s2");
  VarifoldSum out;
  out.truncation_index = v.truncation_index;
  out.tail_mass_bound = v.tail_mass_bound;
  for (const auto& term : v.terms) {
    if (std::holds_alternative<RingAtom>(term.atom)) {
      const auto& ring = std::get<RingAtom>(term.atom);
      for (const auto& [a, b] :
           ring_alpha_clip(ring.surf, ring.t1, ring.t2, s1, s2)) {
        RingAtom piece = ring;
        piece.t1 = a;
        piece.t2 = b;
        out.terms.push_back(Term{term.coeff, piece});
      }
      continue;
    }
    Term t = term;
    double* rin = nullptr;
    double* rout = nullptr;
    if (std::holds_alternative<PlaneOrbitAtom>(t.atom)) {
      auto& po = std::get<PlaneOrbitAtom>(t.atom);
      rin = &po.r_in;
      rout = &po.r_out;
    } else if (std::holds_alternative<FamilyAtom>(t.atom)) {
      auto& fam = std::get<FamilyAtom>(t.atom);
      rin = &fam.r_in;
      rout = &fam.r_out;
    } else {
      auto& pl = std::get<PlanarAtom>(t.atom);
      rin = &pl.r_in;
      rout = &pl.r_out;
    }
    *rin = std::max(*rin, s1);
    *rout = std::min(*rout, s2);
    if (*rout > *rin) out.terms.push_back(std::move(t));
  }
  return out;
}

VarifoldSum add(const std::vector<std::pair<double, VarifoldSum>>& parts) {
  VarifoldSum out;
  for (const auto& [c, v] : parts) {
    if (!(c > 0)) throw std::domain_error("add: coefficients must be positive");
    for (const auto& term : v.terms)
      out.terms.push_back(Term{c * term.coeff, term.atom});
    out.tail_mass_bound += c * v.tail_mass_bound;
    out.truncation_index = std::max(out.truncation_index, v.truncation_index);
  }
  return out;
}

double mean_value_rho(double d, double r1, double r2) {
  if (!(d >= 0)) throw std::domain_error("mean_value_rho: d >= 0 required");
  const double lo = std::min(r1, r2), hi = std::max(r1, r2);
  if (!(lo > 0) || std::sqrt(d) > lo * (1 + 1e-12))
    throw std::domain_error("mean_value_rho: require sqrt(d) <= min(r1, r2)");
  if (r1 == r2) throw std::domain_error("mean_value_rho: require r1 != r2");
  const double f1 = std::sqrt(std::max(0.0, lo * lo * lo * lo - d * d));
  const double f2 = std::sqrt(std::max(0.0, hi * hi * hi * hi - d * d));
  const double dq = hi * hi - lo * lo;
  const double ratio = dq / (f2 - f1);  // = sqrt(1 - d^2/rho^4) <= 1
  const double one_minus = 1.0 - ratio * ratio;
  if (one_minus < 1e-14) return std::sqrt(lo * hi);  // d ~ 0: factor already 1
  const double rho = std::pow(d * d / one_minus, 0.25);
  return std::clamp(rho, lo, hi);
}

namespace {

void sample_atom(const Atom& atom, double coeff, double s1, double s2, int res,
                 std::vector<SupportNode>& out) {
  const auto& gl = gauss_legendre(res);
  if (std::holds_alternative<RingAtom>(atom)) {
    const auto& ring = std::get<RingAtom>(atom);
    const double w_orbit = coeff * static_cast<double>(ring.count);
    for (const auto& [a, b] :
         ring_alpha_clip(ring.surf, ring.t1, ring.t2, s1, s2)) {
      const double ma = 0.5 * (a + b), ha = 0.5 * (b - a);
      for (const auto& [xa, wa] : gl) {
        const double alpha = ma + ha * xa;
        for (const auto& [xb, wb] : gl) {
          const double beta = kPi + kPi * xb;
          RingNode n = ring_node(ring.surf, alpha, beta);
          SupportNode node;
          node.x = orbit_apply(0.0, ring.swap23, n.x);
          node.u1 = orbit_apply(0.0, ring.swap23, n.u1);
          node.u2 = orbit_apply(0.0, ring.swap23, n.u2);
          node.weight = w_orbit * wa * ha * wb * kPi * n.area;
          out.push_back(node);
        }
      }
    }
    return;
  }
  auto sample_plane = [&](const Plane2& plane, double r_in, double r_out,
                          double weight) {
    const double lo = std::max(r_in, s1), hi = std::min(r_out, s2);
    if (!(hi > lo) || std::isinf(hi)) return;
    const Vec4 u1 = plane.frame.col(0), u2 = plane.frame.col(1);
    const double mr = 0.5 * (lo + hi), hr = 0.5 * (hi - lo);
    for (const auto& [xr, wr] : gl) {
      const double rho = mr + hr * xr;
      for (const auto& [xp, wp] : gl) {
        const double phi = kPi + kPi * xp;
        SupportNode node;
        node.x = rho * (std::cos(phi) * u1 + std::sin(phi) * u2);
        node.u1 = u1;
        node.u2 = u2;
        node.weight = weight * wr * hr * wp * kPi * rho;
        out.push_back(node);
      }
    }
  };
  if (std::holds_alternative<PlaneOrbitAtom>(atom)) {
    const auto& po = std::get<PlaneOrbitAtom>(atom);
    sample_plane(g_plane(po.which, po.offset), po.r_in, po.r_out,
                 coeff * static_cast<double>(po.count));
    return;
  }
  if (std::holds_alternative<FamilyAtom>(atom)) {
    const auto& fam = std::get<FamilyAtom>(atom);
    sample_plane(g_plane(fam.which, 0.0), fam.r_in, fam.r_out, coeff * 2 * kPi);
    return;
  }
  const auto& pl = std::get<PlanarAtom>(atom);
  sample_plane(pl.plane, pl.r_in, pl.r_out, coeff);
}

}  // namespace

std::vector<SupportNode> sample_support(const VarifoldSum& v, double s1,
                                        double s2, int res) {
  std::vector<SupportNode> out;
  for (const auto& term : v.terms)
    sample_atom(term.atom, term.coeff, s1, s2, res, out);
  return out;
}

}  // namespace vf4
