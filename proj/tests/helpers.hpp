#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "core/geom.hpp"

// Shared test utilities.  The quadrature oracle here is intentionally
// primitive (composite Simpson) and independent of the library rules.

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

inline vf4::Vec4 random_unit4(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  vf4::Vec4 v(g(rng), g(rng), g(rng), g(rng));
  while (v.norm() < 1e-6) v = vf4::Vec4(g(rng), g(rng), g(rng), g(rng));
  return v.normalized();
}

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

inline double simpson2(const std::function<double(double, double)>& f,
                       double a1, double b1, double a2, double b2, int n1,
                       int n2) {
  return simpson(
      [&](double x) {
        return simpson([&](double y) { return f(x, y); }, a2, b2, n2);
      },
      a1, b1, n1);
}

// independent frame search for the achieved band epsilon: dense sweep over
// the frame angle and both flips, then local ternary refinement
inline double band_oracle(const vf4::Vec4& x, const vf4::Plane2& s,
                          vf4::BandKind kind) {
  const vf4::Vec4 a = x.normalized();
  const vf4::Vec4 b = vf4::band_matrix(kind) * a;
  double best = 1e9;
  for (int flip = 0; flip < 2; ++flip) {
    const double sgn = flip ? -1.0 : 1.0;
    auto value = [&](double t) {
      const vf4::Vec4 u = std::cos(t) * s.frame.col(0) + std::sin(t) * s.frame.col(1);
      const vf4::Vec4 v =
          sgn * (-std::sin(t) * s.frame.col(0) + std::cos(t) * s.frame.col(1));
      return std::max((u - a).norm(), (v - b).norm());
    };
    const int n = 20000;
    int ibest = 0;
    double fbest = value(0);
    for (int i = 1; i < n; ++i) {
      const double f = value(2 * kPi * i / n);
      if (f < fbest) {
        fbest = f;
        ibest = i;
      }
    }
    double lo = 2 * kPi * (ibest - 1) / n, hi = 2 * kPi * (ibest + 1) / n;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (value(m1) < value(m2))
        hi = m2;
      else
        lo = m1;
    }
    best = std::min(best, value(0.5 * (lo + hi)));
  }
  return best;
}

}  // namespace testutil
