#pragma once

#include <array>
#include <vector>

#include "geom.hpp"

// Smooth compactly supported test vector fields with analytic Jacobians.
// Three built-in families: radial bump f(|x|) x, fixed-direction bump
// f(|x|) v, and (degree <= 3 polynomial) x bump.  The profile is the
// standard exp(-1/(1-t^2)) bump rescaled to [r_in, r_out] and normalized to
// peak value 1; for r_in = 0 a one-sided ball profile with f(0) = 1 is used.

namespace vf4 {

struct PolyTerm {
  double coef;
  std::array<int, 4> expo;  // exponents of x1..x4, total degree <= 3
  int component;            // which output coordinate this term feeds
};

class TestVectorField {
 public:
  enum class Family { RadialBump, DirectionalBump, PolynomialBump };

  static TestVectorField radial_bump(double r_in, double r_out);
  static TestVectorField directional_bump(double r_in, double r_out,
                                          const Vec4& direction);
  static TestVectorField polynomial_bump(double r_in, double r_out,
                                         std::vector<PolyTerm> terms);

  Vec4 value(const Vec4& x) const;
  Mat4 jacobian(const Vec4& x) const;

  /// Divergence of X restricted to the plane with orthonormal frame {u1,u2}:
  /// trace(P DX) evaluated without forming the Jacobian.
  double div_tangent(const Vec4& x, const Vec4& u1, const Vec4& u2) const;

  double support_radius() const { return r_out_; }
  double support_inner() const { return r_in_; }

  /// Upper bound for sup |X| + 2 sup |DX|_2; the factor 2 dominates the
  /// tangential divergence over any 2-plane, so c1_bound * mass bounds a
  /// first-variation tail.
  double c1_bound() const { return c1_bound_; }

  Family family() const { return family_; }

  double bump(double rho) const;
  double bump_deriv(double rho) const;

 private:
  TestVectorField(Family f, double r_in, double r_out);

  Family family_;
  double r_in_, r_out_;
  Vec4 direction_ = Vec4::Zero();
  std::vector<PolyTerm> terms_;
  double c1_bound_ = 0.0;

  void compute_c1_bound();
  Vec4 poly_value(const Vec4& x) const;
  Mat4 poly_jacobian(const Vec4& x) const;
};

}  // namespace vf4
