#include "fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace vf4 {

namespace {

// f(t) = exp(1 - 1/(1-t^2)) on |t| < 1, 0 outside; peak value 1 at t = 0.
double shape(double t) {
  const double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t2));
}

double shape_deriv(double t) {
  const double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  const double w = 1.0 - t2;
  return shape(t) * (-2.0 * t / (w * w));
}

}  // namespace

TestVectorField::TestVectorField(Family f, double r_in, double r_out)
    : family_(f), r_in_(r_in), r_out_(r_out) {
  if (!(r_out > 0.0) || r_in < 0.0 || r_in >= r_out)
    throw std::domain_error("TestVectorField: require 0 <= r_in < r_out");
}

double TestVectorField::bump(double rho) const {
  if (r_in_ == 0.0) return shape(rho / r_out_);
  const double t = (2 * rho - (r_out_ + r_in_)) / (r_out_ - r_in_);
  return shape(t);
}

double TestVectorField::bump_deriv(double rho) const {
  if (r_in_ == 0.0) return shape_deriv(rho / r_out_) / r_out_;
  const double t = (2 * rho - (r_out_ + r_in_)) / (r_out_ - r_in_);
  return shape_deriv(t) * 2.0 / (r_out_ - r_in_);
}

TestVectorField TestVectorField::radial_bump(double r_in, double r_out) {
  TestVectorField f(Family::RadialBump, r_in, r_out);
  f.compute_c1_bound();
  return f;
}

TestVectorField TestVectorField::directional_bump(double r_in, double r_out,
                                                  const Vec4& direction) {
  if (direction.norm() < 1e-14)
    throw std::domain_error("TestVectorField: zero direction");
  TestVectorField f(Family::DirectionalBump, r_in, r_out);
  f.direction_ = direction.normalized();
  f.compute_c1_bound();
  return f;
}

TestVectorField TestVectorField::polynomial_bump(double r_in, double r_out,
                                                 std::vector<PolyTerm> terms) {
  TestVectorField f(Family::PolynomialBump, r_in, r_out);
  for (const auto& t : terms) {
    int deg = t.expo[0] + t.expo[1] + t.expo[2] + t.expo[3];
    if (deg > 3 || t.component < 0 || t.component > 3)
      throw std::domain_error("TestVectorField: bad polynomial term");
  }
  f.terms_ = std::move(terms);
  f.compute_c1_bound();
  return f;
}

Vec4 TestVectorField::poly_value(const Vec4& x) const {
  Vec4 p = Vec4::Zero();
  for (const auto& t : terms_) {
    double m = t.coef;
    for (int i = 0; i < 4; ++i)
      for (int e = 0; e < t.expo[i]; ++e) m *= x[i];
    p[t.component] += m;
  }
  return p;
}

Mat4 TestVectorField::poly_jacobian(const Vec4& x) const {
  Mat4 jac = Mat4::Zero();
  for (const auto& t : terms_) {
    for (int j = 0; j < 4; ++j) {
      if (t.expo[j] == 0) continue;
      double m = t.coef * t.expo[j];
      for (int i = 0; i < 4; ++i) {
        const int e = (i == j) ? t.expo[i] - 1 : t.expo[i];
        for (int k = 0; k < e; ++k) m *= x[i];
      }
      jac(t.component, j) += m;
    }
  }
  return jac;
}

Vec4 TestVectorField::value(const Vec4& x) const {
  const double rho = x.norm();
  if (rho >= r_out_ || rho <= r_in_) return Vec4::Zero();
  const double f = bump(rho);
  switch (family_) {
    case Family::RadialBump:
      return f * x;
    case Family::DirectionalBump:
      return f * direction_;
    case Family::PolynomialBump:
      return f * poly_value(x);
  }
  return Vec4::Zero();
}

Mat4 TestVectorField::jacobian(const Vec4& x) const {
  const double rho = x.norm();
  if (rho >= r_out_ || rho <= r_in_) return Mat4::Zero();
  const double f = bump(rho);
  const double df = bump_deriv(rho);
  const double dfr = rho > 1e-300 ? df / rho : 0.0;
  switch (family_) {
    case Family::RadialBump:
      return f * Mat4::Identity() + dfr * (x * x.transpose());
    case Family::DirectionalBump:
      return dfr * (direction_ * x.transpose());
    case Family::PolynomialBump:
      return f * poly_jacobian(x) + dfr * (poly_value(x) * x.transpose());
  }
  return Mat4::Zero();
}

double TestVectorField::div_tangent(const Vec4& x, const Vec4& u1,
                                    const Vec4& u2) const {
  const double rho = x.norm();
  if (rho >= r_out_ || rho <= r_in_) return 0.0;
  const double f = bump(rho);
  const double df = bump_deriv(rho);
  const double dfr = rho > 1e-300 ? df / rho : 0.0;
  const double xu1 = u1.dot(x), xu2 = u2.dot(x);
  switch (family_) {
    case Family::RadialBump:
      return 2 * f + dfr * (xu1 * xu1 + xu2 * xu2);
    case Family::DirectionalBump:
      return dfr * (xu1 * u1.dot(direction_) + xu2 * u2.dot(direction_));
    case Family::PolynomialBump: {
      const Vec4 p = poly_value(x);
      const Mat4 jp = poly_jacobian(x);
      return dfr * (xu1 * u1.dot(p) + xu2 * u2.dot(p)) +
             f * (u1.dot(jp * u1) + u2.dot(jp * u2));
    }
  }
  return 0.0;
}

void TestVectorField::compute_c1_bound() {
  double sup_x = 0.0, sup_dx = 0.0;
  if (family_ == Family::PolynomialBump) {
    std::mt19937_64 rng(2718281828u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> rad(r_in_, r_out_);
    for (int i = 0; i < 20000; ++i) {
      Vec4 dir(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
      dir.normalize();
      const Vec4 x = rad(rng) * dir;
      sup_x = std::max(sup_x, value(x).norm());
      sup_dx = std::max(sup_dx, jacobian(x).operatorNorm());
    }
    c1_bound_ = 1.1 * sup_x + 2.2 * sup_dx;
    return;
  }
  const int n = 8192;
  for (int i = 0; i <= n; ++i) {
    const double rho = r_in_ + (r_out_ - r_in_) * i / n;
    const double f = bump(rho), df = bump_deriv(rho);
    const double dfr = rho > 1e-300 ? df / rho : std::abs(df);
    if (family_ == Family::RadialBump) {
      sup_x = std::max(sup_x, std::abs(f) * rho);
      sup_dx = std::max(sup_dx, std::max(std::abs(f), std::abs(f + df * rho)));
      (void)dfr;
    } else {
      sup_x = std::max(sup_x, std::abs(f));
      sup_dx = std::max(sup_dx, std::abs(df));
    }
  }
  c1_bound_ = 1.01 * sup_x + 2.02 * sup_dx;
}

}  // namespace vf4
