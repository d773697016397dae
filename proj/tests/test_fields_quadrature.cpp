#include "doctest.h"

#include <random>

#include "core/fields.hpp"
#include "core/quadrature.hpp"
#include "helpers.hpp"

using namespace vf4;
using testutil::kPi;

namespace {

Mat4 jacobian_fd(const TestVectorField& f, const Vec4& x, double h) {
  Mat4 j;
  for (int c = 0; c < 4; ++c) {
    Vec4 dx = Vec4::Zero();
    dx[c] = h;
    const Vec4 col = (f.value(x + dx) - f.value(x - dx)) / (2 * h);
    j.col(c) = col;
  }
  return j;
}

std::vector<TestVectorField> sample_fields() {
  std::vector<PolyTerm> terms = {
      {0.7, {1, 0, 0, 0}, 1}, {-0.3, {0, 2, 1, 0}, 0}, {1.1, {0, 0, 0, 3}, 2},
      {0.5, {0, 0, 0, 0}, 3}};
  return {TestVectorField::radial_bump(0.5, 2.0),
          TestVectorField::radial_bump(0.0, 1.5),
          TestVectorField::directional_bump(0.8, 1.6, Vec4(1, -2, 0.5, 0.25)),
          TestVectorField::directional_bump(0.0, 2.5, Vec4(0, 1, 0, 0)),
          TestVectorField::polynomial_bump(0.4, 1.8, terms)};
}

}  // namespace

TEST_CASE("bump profile shape") {
  const auto f = TestVectorField::radial_bump(1.0, 2.0);
  CHECK(f.bump(1.5) == doctest::Approx(1.0));  // peak normalized
  CHECK(f.bump(1.0) == 0.0);
  CHECK(f.bump(2.0) == 0.0);
  CHECK(f.bump(0.5) == 0.0);
  const auto ball = TestVectorField::directional_bump(0.0, 1.0, Vec4(1, 0, 0, 0));
  CHECK(ball.bump(0.0) == doctest::Approx(1.0));
  CHECK(ball.bump_deriv(0.0) == doctest::Approx(0.0));
}

TEST_CASE("jacobians match finite differences") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> rd(0.05, 2.6);
  for (const auto& f : sample_fields()) {
    double worst = 0;
    for (int i = 0; i < 400; ++i) {
      const Vec4 x = rd(rng) * testutil::random_unit4(rng);
      worst = std::max(worst, (f.jacobian(x) - jacobian_fd(f, x, 1e-5)).norm());
    }
    CHECK(worst <= 1e-7);
  }
}

TEST_CASE("support and c1 bound") {
  std::mt19937_64 rng(22);
  for (const auto& f : sample_fields()) {
    double sup_seen = 0;
    std::uniform_real_distribution<double> rd(0.0, f.support_radius() * 1.3);
    for (int i = 0; i < 3000; ++i) {
      const Vec4 x = rd(rng) * testutil::random_unit4(rng);
      const double nx = x.norm();
      if (nx >= f.support_radius() || nx <= f.support_inner()) {
        CHECK(f.value(x).norm() == 0.0);
        CHECK(f.jacobian(x).norm() == 0.0);
      }
      sup_seen = std::max(sup_seen,
                          f.value(x).norm() + 2 * f.jacobian(x).operatorNorm());
    }
    CHECK(f.c1_bound() >= sup_seen);
  }
}

TEST_CASE("tangential divergence agrees with the Jacobian trace and FD") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> rd(0.3, 2.2);
  for (const auto& f : sample_fields()) {
    for (int i = 0; i < 200; ++i) {
      const Vec4 x = rd(rng) * testutil::random_unit4(rng);
      const Plane2 s = Plane2::from_span(Vec4(g(rng), g(rng), g(rng), g(rng)),
                                         Vec4(g(rng), g(rng), g(rng), g(rng)));
      const double via_div = f.div_tangent(x, s.frame.col(0), s.frame.col(1));
      const double via_trace = (s.projection * f.jacobian(x)).trace();
      CHECK(std::abs(via_div - via_trace) <= 1e-11 * std::max(1.0, std::abs(via_trace)));

      const double h = 1e-5;
      double fd = 0;
      for (int c = 0; c < 2; ++c) {
        const Vec4 u = s.frame.col(c);
        fd += (f.value(x + h * u) - f.value(x - h * u)).dot(u) / (2 * h);
      }
      CHECK(std::abs(via_div - fd) <= 1e-7);
    }
  }
}

TEST_CASE("gauss-legendre nodes and adaptive integration") {
  // order-8 rule integrates degree-15 polynomials exactly
  const auto& nw = gauss_legendre(8);
  double acc = 0;
  for (const auto& [x, w] : nw) acc += w * std::pow(x, 14);
  CHECK(acc == doctest::Approx(2.0 / 15).epsilon(1e-14));

  QuadratureSpec spec;
  const auto r1 = integrate_1d([](double x) { return std::exp(-x * x); }, -3, 3, spec);
  CHECK(r1.value == doctest::Approx(std::sqrt(kPi) * std::erf(3.0)).epsilon(1e-10));

  const auto r2 = integrate_2d(
      [](double x, double y) { return std::sin(3 * x) * std::sin(3 * x) + y; },
      0, kPi, 0, 1, spec);
  CHECK(r2.value == doctest::Approx(kPi / 2 + kPi / 2).epsilon(1e-10));

  // trapezoid on a smooth periodic function is spectrally accurate
  const auto per = integrate_periodic(
      [](double t) { return std::exp(std::sin(t)); }, 2 * kPi, 64);
  const double bessel_based = 7.9549265210128452;  // 2 pi I_0(1)
  CHECK(per.value == doctest::Approx(bessel_based).epsilon(1e-12));

  const auto mean = periodic_mean_adaptive(
      [](double t) { return std::cos(t) * std::cos(t); }, 2 * kPi, 8, 1024, 1e-12);
  CHECK(mean.value == doctest::Approx(0.5).epsilon(1e-12));
}
