#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "fields.hpp"
#include "geom.hpp"
#include "quadrature.hpp"
#include "surface.hpp"

// The measure model.  A varifold is a weighted list of atoms; every atom
// has closed-form mass over centered annuli and quadrature rules for the
// first variation.  Congruent copies related by the rotation
// rot12_34(2 pi j / count) (optionally composed with the x2 <-> x3 swap)
// are stored once as an orbit: the rotation commutes with both band
// matrices and preserves |x|, so mass and band statistics are exact, and
// orbit sums of smooth integrands are trapezoid sums in the angle.

namespace vf4 {

/// weight * H^2 on `count` rotated copies of the ring S^{d,alpha0}_{t1,t2}.
struct RingAtom {
  SurfaceParams surf;
  double t1, t2;
  std::int64_t count = 1;
  bool swap23 = false;
};

/// `count` g-family plane annuli at angles offset + 2 pi j / count.
struct PlaneOrbitAtom {
  int which = 1;  // 1: g1 planes (J13-invariant), 2: g2 planes
  double r_in = 0, r_out = 0;
  std::int64_t count = 1;
  double offset = 0.0;
};

/// V_{which,r,s}: the circle-averaged family phi_#(H^1 x L^2).
struct FamilyAtom {
  int which = 1;
  double r_in = 0, r_out = 0;  // r_out may be infinity
};

/// weight * H^2 on (plane ∩ A_{r_in}^{r_out}) for an arbitrary plane.
struct PlanarAtom {
  Plane2 plane;
  double r_in = 0, r_out = 0;
};

using Atom = std::variant<RingAtom, PlaneOrbitAtom, FamilyAtom, PlanarAtom>;

struct Term {
  double coeff;
  Atom atom;
};

struct VarifoldSum {
  std::vector<Term> terms;
  int truncation_index = 0;
  double tail_mass_bound = 0.0;  // certified bound on omitted mass
};

struct FirstVariationReport {
  double value = 0.0;
  double quadrature_error_estimate = 0.0;
  double truncation_error_bound = 0.0;  // c1_bound(X) * tail_mass_bound
};

/// Divergence of X restricted and projected to the affine plane x + S.
double div_s(const TestVectorField& x_field, const Vec4& x, const Plane2& s);

/// Closed-form mass of one atom restricted to G_2(A_{s1}^{s2}).
double atom_mass(const Atom& atom, double s1, double s2);

/// Sum of the closed-form atom masses over A_{s1}^{s2} (s2 may be inf).
double mass(const VarifoldSum& v, double s1, double s2);

FirstVariationReport first_variation(const VarifoldSum& v,
                                     const TestVectorField& x,
                                     const QuadratureSpec& spec);

/// (1/k) sum of circle integrals of X . N over S(rho, 2 i pi / k).
IntegralResult boundary_functional_k(double rho, std::int64_t k,
                                     const TestVectorField& x,
                                     const QuadratureSpec& spec);

/// Torus integral of X . N over F((rho S^1) x S^1) normalized by 2 pi rho.
IntegralResult boundary_functional_inf(double rho, const TestVectorField& x,
                                       const QuadratureSpec& spec);

/// Blow-up pushforward eta_{x0,lambda ##}: positions y -> (y - x0)/lambda,
/// planes unchanged, mass scaled by lambda^{-2}.  Only x0 = 0 keeps the
/// closed-form atom families closed; nonzero x0 is rejected.
VarifoldSum pushforward_scale(const VarifoldSum& v, const Vec4& x0,
                              double lambda);

VarifoldSum restrict_annulus(const VarifoldSum& v, double s1, double s2);

VarifoldSum add(const std::vector<std::pair<double, VarifoldSum>>& parts);

/// Solves sqrt(r2^4-d^2) - sqrt(r1^4-d^2) = (r2^2-r1^2)/sqrt(1-d^2/rho^4)
/// for rho in [min(r1,r2), max(r1,r2)]; requires sqrt(d) <= min(r1,r2).
double mean_value_rho(double d, double r1, double r2);

/// Measure-weighted point/plane samples of the support inside A_{s1}^{s2};
/// orbits contribute their base copy with the full orbit weight (the orbit
/// rotation leaves both the radius and the band epsilons unchanged).
struct SupportNode {
  Vec4 x;
  Vec4 u1, u2;  // orthonormal tangent frame
  double weight;
};

std::vector<SupportNode> sample_support(const VarifoldSum& v, double s1,
                                        double s2, int res);

/// Fast evaluation of one ring point: position, unit tangents, area element.
struct RingNode {
  Vec4 x;
  Vec4 u1, u2;
  double area;
};

RingNode ring_node(const SurfaceParams& surf, double alpha, double beta);

/// Apply the orbit transform rot12_34(theta) (then optionally swap x2,x3).
Vec4 orbit_apply(double theta, bool swap23, const Vec4& v);

/// Alpha-subintervals of [t1,t2] where the profile radius lies in [s1,s2].
std::vector<std::pair<double, double>> ring_alpha_clip(const SurfaceParams& s,
                                                       double t1, double t2,
                                                       double s1, double s2);

}  // namespace vf4
