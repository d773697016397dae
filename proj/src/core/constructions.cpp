#include "constructions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vf4 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLevelCap = 56;     // 100 * 2^56 still fits in int64
constexpr int kProductCap = 140;  // suffix products are flat beyond this

double k_of(int n) { return 100.0 * std::pow(2.0, n); }

double gamma_of(double k) { return kPi / 4 - kPi / std::sqrt(k); }

// 1 - c~/C~ for level n; the product formula
// sin(2g - pi/k) cos(pi/k) = (sin 2g + sin(2g - 2pi/k))/2 cancels the
// leading terms, leaving cos(2g - pi/k) sin(pi/k) / sin(2g) exactly.
double delta_tilde(int n) {
  const double k = k_of(n), g = gamma_of(k);
  return std::cos(2 * g - kPi / k) * std::sin(kPi / k) / std::sin(2 * g);
}

// 1 - c/C for level n, same cancellation against the denominator
double delta_plain(int n) {
  const double k = k_of(n), g = gamma_of(k);
  return std::cos(2 * g - kPi / k) * std::sin(kPi / k) /
         (std::sin(2 * g - kPi / k) * std::cos(kPi / k));
}

double ratio_plain(int n) { return 1.0 - delta_plain(n); }

double log_sigma_of(int n) {
  const double k = k_of(n), g = gamma_of(k);
  return 0.5 * (std::log(std::cos(2 * g)) - std::log(std::cos(2 * (g - kPi / k))));
}

double eps_level(int n) {
  const double k = k_of(n), g = gamma_of(k);
  return 2 * std::cos(2 * (g - kPi / k));
}

void append_scaled(VarifoldSum& dst, double coeff, const VarifoldSum& src) {
  for (const auto& term : src.terms)
    dst.terms.push_back(Term{coeff * term.coeff, term.atom});
  dst.tail_mass_bound += coeff * src.tail_mass_bound;
}

VarifoldSum assemble_layer(const LayerDerived& d, bool swap, int m_last) {
  VarifoldSum v;
  append_scaled(v, d.c1, build_v00(d.r_n0, d.R_n0, d.k0, swap));
  for (const auto& lvl : d.levels) {
    if (lvl.n > m_last) break;
    append_scaled(v, lvl.coeff_v2,
                  build_mini_layer(2, MiniLayerParams::create(lvl.k, lvl.gamma, lvl.r_hi),
                                   swap));
    append_scaled(v, lvl.coeff_v1,
                  build_mini_layer(1, MiniLayerParams::create(lvl.k, lvl.gamma, lvl.R_hi),
                                   swap));
  }
  return v;
}

}  // namespace

VarifoldSum build_ring(double d, double alpha0, double t1, double t2) {
  const SurfaceParams surf(d, alpha0);
  if (!(t1 < t2) || !in_profile_domain(surf, t1) || !in_profile_domain(surf, t2))
    throw std::domain_error(
        "build_ring: require alpha0 - pi/4 < t1 < t2 < alpha0 + pi/4");
  VarifoldSum v;
  v.terms.push_back(Term{1.0, RingAtom{surf, t1, t2, 1, false}});
  return v;
}

VarifoldSum build_v00(double r1, double r2, std::int64_t k, bool swap23) {
  if (!(0 <= r1 && r1 < r2))
    throw std::domain_error("build_v00: require 0 <= r1 < r2");
  if (k < 1) throw std::domain_error("build_v00: require k >= 1");
  VarifoldSum v;
  v.terms.push_back(Term{1.0 / static_cast<double>(k),
                         PlaneOrbitAtom{swap23 ? 2 : 1, r1, r2, k, 0.0}});
  return v;
}

MiniLayerParams MiniLayerParams::create(std::int64_t k, double gamma, double r2) {
  if (k <= 20) throw std::domain_error("MiniLayerParams: require k > 20");
  if (!(gamma > kPi / 8 && gamma < kPi / 4))
    throw std::domain_error("MiniLayerParams: require gamma in (pi/8, pi/4)");
  if (!(r2 > 0) || !std::isfinite(r2))
    throw std::domain_error("MiniLayerParams: require finite r2 > 0");
  MiniLayerParams p;
  p.k = k;
  p.gamma = gamma;
  p.r2 = r2;
  const double kd = static_cast<double>(k);
  p.sigma = std::sqrt(std::cos(2 * gamma) / std::cos(2 * (gamma - kPi / kd)));
  p.r1 = p.sigma * r2;
  p.epsilon = 2 * std::cos(2 * (gamma - kPi / kd));
  p.c_tilde_upper = 4 * std::sin(2 * gamma);
  p.c_tilde_lower = 4 * std::sin(2 * gamma - kPi / kd) * std::cos(kPi / kd);
  p.c_upper = p.c_tilde_lower;
  p.c_lower = 4 * std::sin(2 * (gamma - kPi / kd));
  p.d = r2 * r2 * std::cos(2 * gamma);
  if (!(p.sigma > 0 && p.sigma < 1) || !(p.c_lower > 0) ||
      p.c_lower > p.c_tilde_upper)
    throw std::domain_error("MiniLayerParams: derived constants out of range");
  return p;
}

VarifoldSum build_mini_layer(int which, const MiniLayerParams& p, bool swap23) {
  if (which != 1 && which != 2)
    throw std::domain_error("build_mini_layer: which must be 1 or 2");
  const double kd = static_cast<double>(p.k);
  const double step = kPi / kd;  // each ring spans an alpha interval of width pi/k
  VarifoldSum v;
  const double inv_k = 1.0 / kd;
  if (which == 1) {
    // V01 base pair (copy 0): alpha0 = pi/k -+ gamma on (0, pi/k), (pi/k, 2pi/k)
    v.terms.push_back(Term{inv_k, RingAtom{SurfaceParams(p.d, step - p.gamma),
                                           0.0, step, p.k, swap23}});
    v.terms.push_back(Term{inv_k, RingAtom{SurfaceParams(p.d, step + p.gamma),
                                           step, 2 * step, p.k, swap23}});
    append_scaled(v, 2 * std::sin(2 * p.gamma), build_v00(p.r1, p.r2, p.k, swap23));
  } else {
    // V02 base pair: alpha0 = -+ gamma on (-pi/k, 0), (0, pi/k)
    v.terms.push_back(Term{inv_k, RingAtom{SurfaceParams(p.d, -p.gamma),
                                           -step, 0.0, p.k, swap23}});
    v.terms.push_back(Term{inv_k, RingAtom{SurfaceParams(p.d, p.gamma),
                                           0.0, step, p.k, swap23}});
    append_scaled(v, 2 * std::sin(2 * (p.gamma - kPi / kd)),
                  build_v00(p.r1, p.r2, p.k, swap23));
  }
  return v;
}

LayerDerived derive_layer(const LayerParams& p) {
  if (!(0 < p.R1 && p.R1 < p.R2 && p.R2 < p.R3 && p.R3 < p.R4))
    throw std::domain_error("derive_layer: require 0 < R1 < R2 < R3 < R4");
  if (!(p.epsilon > 0)) throw std::domain_error("derive_layer: epsilon > 0");

  // suffix products log c_{1,n} = sum_{m>=n} log(c~_m/C~_m), and the same
  // for c/C and sigma; ratios are 1 to double precision past the cap
  std::vector<double> log_c1(kProductCap + 2, 0.0);
  std::vector<double> log_c2_suf(kProductCap + 2, 0.0);
  std::vector<double> log_sigma_suf(kProductCap + 2, 0.0);
  for (int n = kProductCap; n >= 1; --n) {
    log_c1[n] = log_c1[n + 1] + std::log1p(-delta_tilde(n));
    log_c2_suf[n] = log_c2_suf[n + 1] + std::log1p(-delta_plain(n));
    log_sigma_suf[n] = log_sigma_suf[n + 1] + log_sigma_of(n);
  }

  const double sigma_need = std::max(p.R1 / p.R2, p.R3 / p.R4);
  LayerDerived out;
  for (int n0 = 1; n0 <= 40; ++n0) {
    const double k = k_of(n0), g = gamma_of(k);
    const double sin2 = std::sin(2 * (g - kPi / k));
    const double m_bound =
        1.0 / (std::sin(2 * g - kPi / k) * std::cos(kPi / k) * sin2);
    const double c1 = std::exp(log_c1[n0]);
    const double c2 = std::exp(log_c2_suf[n0]);
    const double sigma = std::exp(log_sigma_suf[n0]);
    const bool ok_eps = eps_level(n0) < p.epsilon;
    const bool ok_sin = sin2 > 1 - p.epsilon / 3;
    const bool ok_m = m_bound < 1 + p.epsilon;
    // the interval checks run on the log sums: deep products sit within
    // machine epsilon of 1 and would round to exactly 1.0
    const bool ok_c1 =
        log_c1[n0] < 0 && log_c1[n0] > std::log1p(-p.epsilon / 3);
    const bool ok_c2 =
        log_c2_suf[n0] < 0 && log_c2_suf[n0] > std::log1p(-p.epsilon / 3);
    const bool ok_sigma =
        log_sigma_suf[n0] < 0 && log_sigma_suf[n0] > std::log(sigma_need);
    if (ok_eps && ok_sin && ok_m && ok_c1 && ok_c2 && ok_sigma) {
      out.n0 = n0;
      out.c1 = c1;
      out.c2 = c2;
      out.c = c1 * c2;
      out.sigma = sigma;
      out.mass_coeff_bound = m_bound;
      break;
    }
    if (n0 == 40) {
      std::ostringstream diag;
      diag << "derive_layer: no admissible n0 <= 40;";
      if (!ok_eps) diag << " eps_n >= epsilon;";
      if (!ok_sin) diag << " sin 2(gamma - pi/k) <= 1 - eps/3;";
      if (!ok_m) diag << " M >= 1 + epsilon;";
      if (!ok_c1) diag << " c1 outside (1 - eps/3, 1);";
      if (!ok_c2) diag << " c2 outside (1 - eps/3, 1);";
      if (!ok_sigma) diag << " sigma outside (max(R1/R2, R3/R4), 1);";
      throw std::domain_error(diag.str());
    }
  }

  out.k0 = static_cast<std::int64_t>(100) << out.n0;
  out.r_n0 = p.R1 / out.sigma;
  out.R_n0 = out.sigma * p.R4;

  const double shell_mass_lower =
      (1 - p.epsilon) * kPi * (p.R4 * p.R4 - p.R1 * p.R1);
  double r_n = out.r_n0, R_n = out.R_n0;
  double c2_run = 1.0;  // c_{2,n0} = 1
  for (int n = out.n0; n <= kLevelCap; ++n) {
    LayerLevel lvl;
    lvl.n = n;
    lvl.k = static_cast<std::int64_t>(100) << n;
    lvl.gamma = gamma_of(k_of(n));
    lvl.sigma_n = std::exp(log_sigma_of(n));
    lvl.r_hi = r_n;
    lvl.r_lo = lvl.sigma_n * r_n;
    lvl.R_lo = R_n;
    lvl.R_hi = R_n / lvl.sigma_n;
    const double c_upper_n = 4 * std::sin(2 * lvl.gamma - kPi / k_of(n)) *
                             std::cos(kPi / k_of(n));  // C_n = c~_n
    const double c_tilde_upper_n = 4 * std::sin(2 * lvl.gamma);
    lvl.coeff_v2 = out.c1 * c2_run / c_upper_n;
    lvl.c1_next = std::exp(log_c1[std::min(n + 1, kProductCap + 1)]);
    lvl.coeff_v1 = lvl.c1_next / c_tilde_upper_n;
    c2_run *= ratio_plain(n);
    lvl.c2_next = c2_run;
    out.levels.push_back(lvl);

    r_n = lvl.r_lo;
    R_n = lvl.R_hi;
    const double tail = out.mass_coeff_bound * kPi *
                        ((r_n * r_n - p.R1 * p.R1) + (p.R4 * p.R4 - R_n * R_n));
    out.tail_mass_bound = tail;
    if (tail <= p.tail_rel * shell_mass_lower) break;
  }
  out.levels_kept = static_cast<int>(out.levels.size());
  return out;
}

Layer build_layer(char system, const LayerParams& p) {
  if (system != 'A' && system != 'B')
    throw std::domain_error("build_layer: system must be 'A' or 'B'");
  Layer layer;
  layer.system = system;
  layer.params = p;
  layer.derived = derive_layer(p);
  layer.varifold = assemble_layer(layer.derived, system == 'B', kLevelCap + 1);
  layer.varifold.tail_mass_bound += layer.derived.tail_mass_bound;
  layer.varifold.truncation_index = layer.derived.levels.back().n;
  return layer;
}

VarifoldSum layer_partial(const Layer& layer, int m) {
  const auto& d = layer.derived;
  if (m < d.n0 || m > d.levels.back().n)
    throw std::domain_error("layer_partial: m outside kept levels");
  VarifoldSum v = assemble_layer(d, layer.system == 'B', m);
  double r_next = 0, R_next = 0;
  for (const auto& lvl : d.levels)
    if (lvl.n == m) {
      r_next = lvl.r_lo;
      R_next = lvl.R_hi;
    }
  v.tail_mass_bound += d.mass_coeff_bound * kPi *
                       ((r_next * r_next - layer.params.R1 * layer.params.R1) +
                        (layer.params.R4 * layer.params.R4 - R_next * R_next));
  v.truncation_index = m;
  return v;
}

double nonrect_radius(RadiiGenerator gen, int i) {
  if (gen == RadiiGenerator::Pow2) return std::pow(2.0, i);
  // 2^(sign(i) 2^|i|): the signed exponent keeps the sequence increasing
  // with limits 0 and infinity (r_0 = 1)
  if (i == 0) return 1.0;
  const double e = std::pow(2.0, std::abs(i));
  return std::pow(2.0, i > 0 ? e : -e);
}

VarifoldSum build_nonrectifiable(const NonRectParams& p) {
  std::vector<double> radii;
  long long base_index = 0;
  if (p.explicit_radii) {
    radii = *p.explicit_radii;
  } else {
    if (p.i_min >= p.i_max)
      throw std::domain_error("build_nonrectifiable: require i_min < i_max");
    if (p.generator == RadiiGenerator::Pow2Pow && (p.i_max > 9 || p.i_min < -9))
      throw std::domain_error(
          "build_nonrectifiable: pow2pow indices limited to |i| <= 9");
    for (int i = p.i_min; i <= p.i_max; ++i)
      radii.push_back(nonrect_radius(p.generator, i));
    base_index = p.i_min;
  }
  for (size_t j = 0; j + 1 < radii.size(); ++j)
    if (!(radii[j] < radii[j + 1]))
      throw std::domain_error(
          "build_nonrectifiable: radii must be strictly increasing");
  if (radii.size() < 2)
    throw std::domain_error("build_nonrectifiable: need at least two radii");

  VarifoldSum v;
  // family 1 on [r_{2i}, r_{2i+1}], family 2 on [r_{2i+1}, r_{2i+2}]
  for (size_t j = 0; j + 1 < radii.size(); ++j) {
    const long long global = base_index + static_cast<long long>(j);
    const int which = (((global % 2) + 2) % 2 == 0) ? 1 : 2;
    v.terms.push_back(Term{1.0, FamilyAtom{which, radii[j], radii[j + 1]}});
  }
  // omitted inner shells fill A_0^{r_min} with mass 2 pi * pi r^2
  v.tail_mass_bound = 2 * kPi * kPi * radii.front() * radii.front();
  return v;
}

double epsilon_shell(int n) {
  return 1.0 / (4.0 * (static_cast<double>(n) * n + 1));
}

namespace {

double log2_r1(FullVariant variant, int n) {
  const double nd = n;
  return variant == FullVariant::Nonconical ? -nd : -(nd * nd * nd);
}

// layer constant c(eps): the n0 conditions depend only on eps and the
// radius ratios R1/R2 and R3/R4, so a canonical shell shape suffices
double layer_constant(double eps) {
  LayerParams lp{1.0, 1.0 + eps, 2.0 * (1.0 - eps), 2.0, eps, 1e-8};
  return derive_layer(lp).c;
}

}  // namespace

const ShellInfo* FullVarifold::shell(int n) const {
  for (const auto& s : shells)
    if (s.n == n) return &s;
  return nullptr;
}

double FullVarifold::epsilon_n(int n) const { return epsilon_shell(n); }

FullVarifold build_full(const FullParams& p) {
  if (p.window < 1) throw std::domain_error("build_full: window >= 1");
  FullVarifold full;
  full.params = p;

  // conical radii leave double range quickly; keep shells only while the
  // squared radii stay representable
  auto representable = [&](int n) {
    const double l1 = log2_r1(p.variant, n), l4 = log2_r1(p.variant, n - 1);
    return std::abs(l1) < 450.0 && std::abs(l4) < 450.0;
  };

  std::vector<int> kept;
  for (int n = -p.window; n <= p.window; ++n)
    if (representable(n)) kept.push_back(n);
  if (kept.empty()) throw std::domain_error("build_full: window too small");

  const int n_lo = kept.front(), n_hi = kept.back();
  std::vector<double> c_of(n_hi - n_lo + 1, 0.0);
  for (int n = n_lo; n <= n_hi; ++n)
    c_of[n - n_lo] = layer_constant(epsilon_shell(n));
  std::vector<double> big_c(n_hi - n_lo + 1, 1.0);
  auto big_c_at = [&](int n) -> double& { return big_c[n - n_lo]; };
  for (int n = 1; n <= n_hi; ++n)
    big_c_at(n) = big_c_at(n - 1) * c_of[n - 1 - n_lo];
  for (int n = -1; n >= n_lo; --n) big_c_at(n) = big_c_at(n + 1) / c_of[n - n_lo];

  for (int n : kept) {
    const double eps = epsilon_shell(n);
    const double r1 = std::exp2(log2_r1(p.variant, n));
    const double r4 = std::exp2(log2_r1(p.variant, n - 1));
    LayerParams lp{r1, (1 + eps) * r1, (1 - eps) * r4, r4, eps, p.layer_tail_rel};
    Layer layer = build_layer(n % 2 == 0 ? 'A' : 'B', lp);

    ShellInfo info;
    info.n = n;
    info.R1 = r1;
    info.R2 = lp.R2;
    info.R3 = lp.R3;
    info.R4 = r4;
    info.eps = eps;
    info.system = layer.system;
    info.c_n = layer.derived.c;
    info.big_c = big_c_at(n);
    info.mass_lower = (1 - eps) * kPi * (r4 * r4 - r1 * r1);
    info.mass_upper = (1 + eps) * kPi * (r4 * r4 - r1 * r1);
    full.shells.push_back(info);

    append_scaled(full.varifold, info.big_c, layer.varifold);
  }

  // shells omitted inside the window ball: mass below R1(n_hi) is at most
  // sum of 2 pi C (R4^2 - R1^2) which telescopes to 2 pi C^(n_hi+1) R1(n_hi)^2
  const double r1_inner = std::exp2(log2_r1(p.variant, n_hi));
  full.varifold.tail_mass_bound +=
      2 * kPi * big_c_at(n_hi) * c_of[n_hi - n_lo] * r1_inner * r1_inner;
  full.varifold.truncation_index = n_hi;
  full.window_radius = std::exp2(log2_r1(p.variant, n_lo - 1));

  // C^(inf): exact factors for shells 0..256, then 1 >= tail >= prod(1 - eps)
  double c_exact = 1.0;
  for (int n = 0; n <= 256; ++n) c_exact *= layer_constant(epsilon_shell(n));
  double log_tail_lo = 0.0;
  for (int n = 257; n <= 1000000; ++n)
    log_tail_lo += std::log1p(-epsilon_shell(n));
  log_tail_lo -= 1.0 / (4.0 * 1000000.0);  // remainder of the epsilon sum
  full.c_inf_hi = c_exact;
  full.c_inf_lo = c_exact * std::exp(log_tail_lo);
  return full;
}

}  // namespace vf4
