#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varifold.hpp"

// Builders for the concrete stationary varifolds: single rings, the
// averaged plane varifold V00, branching mini-layers V1/V2, telescoping
// layers (system A and its x2<->x3 image, system B), the alternating
// non-rectifiable sum, and the full examples with nonconical respectively
// non-unique conical tangent behaviour at the origin.

namespace vf4 {

/// Weight-1 ring varifold V^{d,alpha0}_{t1,t2}.
VarifoldSum build_ring(double d, double alpha0, double t1, double t2);

/// V00 = (1/k) sum of k g1-plane annuli at angles 2 i pi / k (g2 planes
/// when swap23 is set).  Mass over any sub-annulus is exactly pi (s2^2-s1^2).
/// r1 = 0 gives plane disks (the conical control object).
VarifoldSum build_v00(double r1, double r2, std::int64_t k, bool swap23 = false);

struct MiniLayerParams {
  std::int64_t k;   // > 20
  double gamma;     // in (pi/8, pi/4)
  double r2;        // outer radius; r1 = sigma r2

  // derived
  double sigma;
  double r1;
  double epsilon;        // 2 cos 2(gamma - pi/k)
  double c_tilde_upper;  // 4 sin 2 gamma
  double c_tilde_lower;  // 4 sin(2 gamma - pi/k) cos(pi/k)
  double c_upper;        // equals c_tilde_lower
  double c_lower;        // 4 sin 2(gamma - pi/k)
  double d;              // ring scale: r2 = sqrt(d / cos 2 gamma)

  static MiniLayerParams create(std::int64_t k, double gamma, double r2);
};

/// 2k rings plus the weighted V00.  which = 1 branches at the outer radius
/// (delta V1 = C~ B_{r2,2k} - c~ B_{r1,k}), which = 2 at the inner one.
VarifoldSum build_mini_layer(int which, const MiniLayerParams& p,
                             bool swap23 = false);

struct LayerParams {
  double R1, R2, R3, R4;
  double epsilon;
  double tail_rel = 1e-8;  // keep levels until tail mass < tail_rel * shell mass
};

struct LayerLevel {
  int n;
  std::int64_t k;
  double gamma;
  double sigma_n;
  double r_hi, r_lo;      // V2 mini-layer spans [r_lo, r_hi] = [r(n+1), r(n)]
  double R_lo, R_hi;      // V1 mini-layer spans [R(n), R(n+1)]
  double coeff_v2;        // c1 c_{2,n} / C_n
  double coeff_v1;        // c_{1,n+1} / C~_n
  double c1_next;         // c_{1,n+1}
  double c2_next;         // c_{2,n+1}
};

struct LayerDerived {
  int n0 = 0;
  double c1 = 0, c2 = 0, c = 0;  // c = c1 c2 in (1 - eps, 1)
  double sigma = 0;
  double r_n0 = 0, R_n0 = 0;
  std::int64_t k0 = 0;
  double mass_coeff_bound = 0;  // the M of the n0 conditions
  int levels_kept = 0;
  double tail_mass_bound = 0;
  std::vector<LayerLevel> levels;
};

/// n0 selection and the infinite products only; no atoms are materialized.
LayerDerived derive_layer(const LayerParams& p);

struct Layer {
  char system;  // 'A' or 'B'
  LayerParams params;
  LayerDerived derived;
  VarifoldSum varifold;
};

Layer build_layer(char system, const LayerParams& p);

/// Partial sum V_m keeping mini-layer levels n0..m (plus V00); the tail
/// bound covers the dropped levels.
VarifoldSum layer_partial(const Layer& layer, int m);

enum class RadiiGenerator { Pow2, Pow2Pow };

struct NonRectParams {
  RadiiGenerator generator = RadiiGenerator::Pow2;
  int i_min = -8;  // shells use radii indices i_min..i_max
  int i_max = 8;
  std::optional<std::vector<double>> explicit_radii;  // overrides generator
};

/// Alternating sum of family shells V_{1,r_{2i},r_{2i+1}} + V_{2,r_{2i+1},r_{2i+2}}.
VarifoldSum build_nonrectifiable(const NonRectParams& p);

/// Radius r_i of the generator: 2^i, or 2^(sign(i) 2^|i|) for Pow2Pow (the
/// signed exponent keeps r_i -> 0 as i -> -infinity).
double nonrect_radius(RadiiGenerator gen, int i);

enum class FullVariant { Nonconical, Conical };

struct FullParams {
  FullVariant variant = FullVariant::Nonconical;
  int window = 12;          // shells n = -window..window
  double layer_tail_rel = 1e-8;
};

struct ShellInfo {
  int n;
  double R1, R2, R3, R4;
  double eps;
  char system;     // 'A' for even n, 'B' for odd
  double c_n;      // layer constant
  double big_c;    // C^(n), the running product weight
  double mass_lower, mass_upper;  // bounds on mass(V^(n)) from the layer
};

struct FullVarifold {
  FullParams params;
  VarifoldSum varifold;
  std::vector<ShellInfo> shells;  // ascending n
  double c_inf_lo = 0, c_inf_hi = 0;  // bracket of C^(inf) = lim C^(n)
  double window_radius = 0;           // R4 of the outermost built shell

  const ShellInfo* shell(int n) const;
  double epsilon_n(int n) const;  // 1 / (4 (n^2 + 1))
};

/// V = sum_n C^(n) V^(n) with alternating system A/B layers on dyadic
/// (nonconical) or 2^{-n^3} (conical) shells.  The conical window is capped
/// so every radius stays inside double range.
FullVarifold build_full(const FullParams& p);

/// C^(n) for shells inside the window plus a bracket of the limit; layer
/// constants are evaluated analytically (no atoms).
struct FullCoefficients {
  std::vector<double> c_n;    // by shell index offset
  double c_inf_lo, c_inf_hi;
};

double epsilon_shell(int n);

}  // namespace vf4
