#include "geom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vf4 {

namespace {

constexpr double kPi = std::numbers::pi;

// max over theta and flip of min(<u(theta),a>, <v(theta,flip),b>) for the
// frame u = cos(t) s1 + sin(t) s2, v = flip (-sin(t) s1 + cos(t) s2).
// Exact: the optimum sits at a peak of one cosine or at a crossing.
double best_frame_alignment(const Frame2& s, const Vec4& a, const Vec4& b) {
  const double p1 = s.col(0).dot(a), p2 = s.col(1).dot(a);
  const double q1 = s.col(0).dot(b), q2 = s.col(1).dot(b);
  double best = -2.0;
  for (int flip = 0; flip < 2; ++flip) {
    const double sgn = flip ? -1.0 : 1.0;
    // h1(t) = p1 cos t + p2 sin t, h2(t) = sgn (-q1 sin t + q2 cos t)
    const double c1 = p1, s1 = p2;
    const double c2 = sgn * q2, s2 = -sgn * q1;
    double cands[6];
    int n = 0;
    cands[n++] = std::atan2(s1, c1);
    cands[n++] = std::atan2(s2, c2);
    const double cc = c1 - c2, ss = s1 - s2;
    if (std::abs(cc) + std::abs(ss) > 1e-300) {
      const double t0 = std::atan2(-cc, ss);
      cands[n++] = t0;
      cands[n++] = t0 + kPi;
    }
    for (int i = 0; i < n; ++i) {
      const double ct = std::cos(cands[i]), st = std::sin(cands[i]);
      best = std::max(best, std::min(c1 * ct + s1 * st, c2 * ct + s2 * st));
    }
  }
  return best;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

Vec4 f_map(const Vec2& ab, const Vec2& cd) {
  return Vec4(ab[0] * cd[0], ab[1] * cd[0], ab[0] * cd[1], ab[1] * cd[1]);
}

std::vector<std::pair<Vec2, Vec2>> f_preimage(const Vec4& x, double t,
                                              double tol) {
  if (x.norm() == 0.0)
    throw std::domain_error("f_preimage: preimage family undefined at origin");
  if (!(t > 0.0)) throw std::domain_error("f_preimage: t must be positive");
  const double nx = x.norm();
  const double a = t * std::hypot(x[0], x[2]);
  const double b = t * std::hypot(x[1], x[3]);
  const double c = (nx / t) * std::hypot(x[0], x[1]);
  const double d = (nx / t) * std::hypot(x[2], x[3]);
  std::vector<std::pair<Vec2, Vec2>> out;
  for (int sa : {1, -1})
    for (int sb : {1, -1})
      for (int sc : {1, -1})
        for (int sd : {1, -1}) {
          const Vec2 ab(sa * a, sb * b), cd(sc * c, sd * d);
          if ((f_map(ab, cd) - x).norm() <= tol * std::max(1.0, nx)) {
            bool dup = false;
            for (const auto& [pab, pcd] : out)
              if ((pab - ab).norm() + (pcd - cd).norm() < 1e-15) dup = true;
            if (!dup) out.emplace_back(ab, cd);
          }
        }
  return out;
}

Mat4 j_matrix(double a, double b) {
  Mat4 j;
  j << a, 0, -b, 0,  //
      0, a, 0, -b,   //
      b, 0, a, 0,    //
      0, b, 0, a;
  return j;
}

Mat4 j13_24() { return j_matrix(0.0, 1.0); }

Mat4 j12_34() {
  Mat4 j;
  j << 0, -1, 0, 0,  //
      1, 0, 0, 0,    //
      0, 0, 0, -1,   //
      0, 0, 1, 0;
  return j;
}

Mat4 rot12_34(double phi) {
  return std::cos(phi) * Mat4::Identity() + std::sin(phi) * j12_34();
}

Vec4 radial_direction(const Vec4& x) {
  const double n = x.norm();
  if (n == 0.0) throw std::domain_error("radial_direction: x must be nonzero");
  return x / n;
}

Plane2 Plane2::from_span(const Vec4& u, const Vec4& v) {
  Vec4 e1 = u;
  const double n1 = e1.norm();
  if (n1 < 1e-14) throw std::domain_error("Plane2: degenerate span");
  e1 /= n1;
  Vec4 e2 = v - e1.dot(v) * e1;
  const double n2 = e2.norm();
  if (n2 < 1e-14 * std::max(1.0, v.norm()))
    throw std::domain_error("Plane2: degenerate span");
  e2 /= n2;
  // gauge: largest-magnitude component of the first frame vector positive
  int imax = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(e1[i]) > std::abs(e1[imax])) imax = i;
  if (e1[imax] < 0) e1 = -e1;
  Plane2 p;
  p.frame.col(0) = e1;
  p.frame.col(1) = e2;
  p.projection = e1 * e1.transpose() + e2 * e2.transpose();
  return p;
}

Plane2 Plane2::from_orthogonal(const Vec4& u, const Vec4& v) {
  return from_span(u, v);
}

bool Plane2::approx_equal(const Plane2& other, double tol) const {
  return (projection - other.projection).norm() <= tol;
}

Plane2 Plane2::transformed(const Mat4& q) const {
  return from_span(q * frame.col(0), q * frame.col(1));
}

Plane2 span_g1(const Vec2& ab) {
  if (ab.norm() == 0.0) throw std::domain_error("span_g1: degenerate span");
  return Plane2::from_span(Vec4(ab[0], ab[1], 0, 0), Vec4(0, 0, ab[0], ab[1]));
}

Plane2 span_g2(const Vec2& cd) {
  if (cd.norm() == 0.0) throw std::domain_error("span_g2: degenerate span");
  return Plane2::from_span(Vec4(cd[0], 0, cd[1], 0), Vec4(0, cd[0], 0, cd[1]));
}

SpanDistinctness spans_distinct(const Plane2& p, const Plane2& q, double tol) {
  const Mat4 diff = p.projection - q.projection;
  Eigen::SelfAdjointEigenSolver<Mat4> es(diff);
  const double margin = es.eigenvalues().cwiseAbs().maxCoeff();

  Mat4 stacked;
  stacked.row(0) = p.frame.col(0).transpose();
  stacked.row(1) = p.frame.col(1).transpose();
  stacked.row(2) = q.frame.col(0).transpose();
  stacked.row(3) = q.frame.col(1).transpose();
  Eigen::JacobiSVD<Mat4> svd(stacked);
  int rank = 0;
  for (int i = 0; i < 4; ++i)
    if (svd.singularValues()[i] > 1e-10) ++rank;

  return SpanDistinctness{margin > tol, margin, rank};
}

Mat4 band_matrix(BandKind kind) {
  return kind == BandKind::J13 ? j13_24() : j12_34();
}

double band_achieved_epsilon(const Vec4& x, const Plane2& s, BandKind kind) {
  const Vec4 a = radial_direction(x);
  const Vec4 b = band_matrix(kind) * a;
  const double p1 = s.frame.col(0).dot(a), p2 = s.frame.col(1).dot(a);
  const double q1 = s.frame.col(0).dot(b), q2 = s.frame.col(1).dot(b);
  double best = -2.0;
  for (int flip = 0; flip < 2; ++flip) {
    const double sgn = flip ? -1.0 : 1.0;
    auto worst = [&](double t) {
      const double ct = std::cos(t), st = std::sin(t);
      const double cu = p1 * ct + p2 * st;
      const double cv = sgn * (q2 * ct - q1 * st);
      return -std::min(cu, cv);
    };
    // 720-point sweep, then golden-section around the best basin
    const int n = 720;
    int ibest = 0;
    double fbest = worst(0.0);
    for (int i = 1; i < n; ++i) {
      const double f = worst(2 * kPi * i / n);
      if (f < fbest) {
        fbest = f;
        ibest = i;
      }
    }
    const double h = 2 * kPi / n;
    const double refined =
        golden_min(worst, 2 * kPi * ibest / n - h, 2 * kPi * ibest / n + h, 1e-10);
    best = std::max(best, -refined);
  }
  best = std::clamp(best, -1.0, 1.0);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * best));
}

BandMembership band_membership(const Vec4& x, const Plane2& s,
                               const DirectionBand& band) {
  const double achieved = band_achieved_epsilon(x, s, band.kind);
  return BandMembership{achieved <= band.epsilon + kSearchTol, achieved};
}

namespace {

// Fast exact evaluation of the achieved band epsilon; cross-checked against
// the sweep-based band_achieved_epsilon in the test suite.
double achieved_fast(const Frame2& s, const Vec4& a, const Vec4& b) {
  const double m = std::clamp(best_frame_alignment(s, a, b), -1.0, 1.0);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * m));
}

struct BandPairObjective {
  Vec4 a, b13, b12;
  double operator()(const Vec4& u_raw, const Vec4& v_raw) const {
    Vec4 e1 = u_raw;
    const double n1 = e1.norm();
    if (n1 < 1e-8) return 10.0;
    e1 /= n1;
    Vec4 e2 = v_raw - e1.dot(v_raw) * e1;
    const double n2 = e2.norm();
    if (n2 < 1e-8) return 10.0;
    e2 /= n2;
    Frame2 f;
    f.col(0) = e1;
    f.col(1) = e2;
    return std::max(achieved_fast(f, a, b13), achieved_fast(f, a, b12));
  }
};

// Nelder-Mead over R^8 (raw span vectors), deterministic.
double nelder_mead_plane(const BandPairObjective& obj, Vec4 u0, Vec4 v0) {
  constexpr int dim = 8;
  using Pt = Eigen::Matrix<double, dim, 1>;
  auto eval = [&](const Pt& p) {
    return obj(p.head<4>(), p.tail<4>());
  };
  std::vector<std::pair<double, Pt>> simplex;
  Pt base;
  base.head<4>() = u0;
  base.tail<4>() = v0;
  simplex.reserve(dim + 1);
  simplex.emplace_back(eval(base), base);
  for (int i = 0; i < dim; ++i) {
    Pt p = base;
    p[i] += 0.05;
    simplex.emplace_back(eval(p), p);
  }
  auto by_value = [](const auto& x, const auto& y) { return x.first < y.first; };
  for (int iter = 0; iter < 4000; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.back().first - simplex.front().first < 1e-13) break;
    Pt centroid = Pt::Zero();
    for (int i = 0; i < dim; ++i) centroid += simplex[i].second;
    centroid /= dim;
    const Pt& worst = simplex.back().second;
    Pt refl = centroid + (centroid - worst);
    double frefl = eval(refl);
    if (frefl < simplex.front().first) {
      Pt expd = centroid + 2.0 * (centroid - worst);
      double fexp = eval(expd);
      simplex.back() = fexp < frefl ? std::make_pair(fexp, expd)
                                    : std::make_pair(frefl, refl);
    } else if (frefl < simplex[dim - 1].first) {
      simplex.back() = {frefl, refl};
    } else {
      Pt contr = centroid + 0.5 * (worst - centroid);
      double fcon = eval(contr);
      if (fcon < simplex.back().first) {
        simplex.back() = {fcon, contr};
      } else {
        for (int i = 1; i <= dim; ++i) {
          simplex[i].second =
              simplex[0].second + 0.5 * (simplex[i].second - simplex[0].second);
          simplex[i].first = eval(simplex[i].second);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return simplex.front().first;
}

double epsilon0_direction(const Vec4& w, std::mt19937_64& rng) {
  const Vec4 a = radial_direction(w);
  const Vec4 b13 = j13_24() * a;
  const Vec4 b12 = j12_34() * a;
  BandPairObjective obj{a, b13, b12};

  // Planes containing the radial direction have closed-form achieved
  // epsilons sqrt(2 - 2|<y,b>|); the symmetric span is the analytic seed.
  double best = 10.0;
  std::vector<Vec4> seeds = {(b13 + b12).normalized(), (b13 - b12).normalized()};
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 6; ++i)
    seeds.push_back(Vec4(unif(rng), unif(rng), unif(rng), unif(rng)));
  for (const Vec4& y : seeds) {
    if (y.norm() < 1e-6) continue;
    best = std::min(best, nelder_mead_plane(obj, a, y.normalized()));
  }
  return best;
}

}  // namespace

Epsilon0Estimate epsilon0_estimate(int samples, unsigned seed) {
  if (samples < 1)
    throw std::domain_error("epsilon0_estimate: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  double lo = 10.0, hi = -10.0;
  for (int i = 0; i < samples; ++i) {
    // Directions are sampled on the support cone range(F): off the cone the
    // two rotated directions J13 N and J12 N can collide (e.g. at
    // (1,0,0,1)/sqrt(2) they are opposite) and the bands are not separated.
    Vec4 w;
    if (i == 0) {
      w = Vec4(1, 0, 0, 0);
    } else {
      const double al = ang(rng), be = ang(rng);
      w = f_map(Vec2(std::cos(al), std::sin(al)),
                Vec2(std::cos(be), std::sin(be)));
    }
    const double v = epsilon0_direction(w, rng);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 0.0))
    throw std::runtime_error("epsilon0_estimate: estimate not positive");
  return Epsilon0Estimate{lo, hi - lo, samples};
}

}  // namespace vf4
