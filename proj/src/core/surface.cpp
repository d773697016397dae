#include "surface.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vf4 {

namespace {

constexpr double kPi = std::numbers::pi;

Vec4 vec_a(double alpha) {
  return Vec4(std::cos(alpha), std::sin(alpha), 0, 0);
}

Vec4 vec_a_prime(double alpha) {
  return Vec4(-std::sin(alpha), std::cos(alpha), 0, 0);
}

Mat4 mat_b(double beta) { return j_matrix(std::cos(beta), std::sin(beta)); }

Mat4 mat_b_prime(double beta) {
  return j_matrix(-std::sin(beta), std::cos(beta));
}

void require_domain(const SurfaceParams& p, double alpha) {
  if (!in_profile_domain(p, alpha))
    throw std::domain_error("surface: outside profile domain");
}

}  // namespace

SurfaceParams::SurfaceParams(double d_, double alpha0_) : d(d_), alpha0(alpha0_) {
  if (!(d > 0.0) || !std::isfinite(d) || !std::isfinite(alpha0))
    throw std::domain_error("SurfaceParams: require finite d > 0");
}

bool in_profile_domain(const SurfaceParams& p, double alpha) {
  return std::abs(alpha - p.alpha0) < kPi / 4 - kDomainMargin;
}

Profile profile(const SurfaceParams& p, double alpha) {
  require_domain(p, alpha);
  const double u = 2 * (alpha - p.alpha0);
  const double c = std::cos(u), s = std::sin(u);
  const double sq = std::sqrt(p.d);
  const double r = sq / std::sqrt(c);
  const double dr = sq * s / std::pow(c, 1.5);
  const double ddr = sq * (3 * s * s / std::pow(c, 2.5) + 2 / std::sqrt(c));
  return Profile{r, dr, ddr};
}

SurfacePoint evaluate(const SurfaceParams& p, double alpha, double beta) {
  const Profile pr = profile(p, alpha);
  const Mat4 b = mat_b(beta);
  const Vec4 a = vec_a(alpha), ap = vec_a_prime(alpha);
  SurfacePoint out;
  out.alpha = alpha;
  out.beta = beta;
  out.position = pr.r * (b * a);
  out.du_alpha = b * (pr.dr * a + pr.r * ap);
  out.du_beta = pr.r * (mat_b_prime(beta) * a);
  return out;
}

MetricTensor metric(const SurfaceParams& p, double alpha, double /*beta*/) {
  const Profile pr = profile(p, alpha);
  return MetricTensor{pr.dr * pr.dr + pr.r * pr.r, 0.0, pr.r * pr.r};
}

double area_element(const SurfaceParams& p, double alpha) {
  require_domain(p, alpha);
  const double c = std::cos(2 * (alpha - p.alpha0));
  return p.d / (c * c);
}

Vec4 mean_curvature(const SurfaceParams& p, double alpha, double beta) {
  const Profile pr = profile(p, alpha);
  const Mat4 b = mat_b(beta);
  const Vec4 a = vec_a(alpha), ap = vec_a_prime(alpha);
  const Vec4 uaa = b * ((pr.ddr - pr.r) * a + 2 * pr.dr * ap);
  const Vec4 ubb = -pr.r * (b * a);
  const double g11 = pr.dr * pr.dr + pr.r * pr.r, g22 = pr.r * pr.r;
  const Vec4 h = uaa / g11 + ubb / g22;
  const Vec4 t1 = (b * (pr.dr * a + pr.r * ap)).normalized();
  const Vec4 t2 = (mat_b_prime(beta) * a).normalized();
  return h - t1.dot(h) * t1 - t2.dot(h) * t2;
}

Vec4 mean_curvature_fd_profile(const std::function<double(double)>& rho,
                               double alpha, double beta, double h) {
  auto embed = [&](double al, double be) -> Vec4 {
    return rho(al) * (mat_b(be) * vec_a(al));
  };
  const Vec4 ua = (embed(alpha + h, beta) - embed(alpha - h, beta)) / (2 * h);
  const Vec4 ub = (embed(alpha, beta + h) - embed(alpha, beta - h)) / (2 * h);
  const Vec4 x = embed(alpha, beta);
  const Vec4 uaa = (embed(alpha + h, beta) - 2 * x + embed(alpha - h, beta)) / (h * h);
  const Vec4 ubb = (embed(alpha, beta + h) - 2 * x + embed(alpha, beta - h)) / (h * h);
  const double g11 = ua.squaredNorm(), g22 = ub.squaredNorm();
  const Vec4 hh = uaa / g11 + ubb / g22;
  const Vec4 t1 = ua.normalized(), t2 = (ub - ub.dot(t1) * t1).normalized();
  return hh - t1.dot(hh) * t1 - t2.dot(hh) * t2;
}

Vec4 mean_curvature_fd(const SurfaceParams& p, double alpha, double beta,
                       double h) {
  require_domain(p, alpha);
  if (!in_profile_domain(p, alpha + h) || !in_profile_domain(p, alpha - h))
    throw std::domain_error("mean_curvature_fd: stencil leaves profile domain");
  auto rho = [&](double al) { return profile(p, al).r; };
  return mean_curvature_fd_profile(rho, alpha, beta, h);
}

double ode_residual(const SurfaceParams& p, double alpha) {
  const Profile pr = profile(p, alpha);
  return std::abs(pr.r * pr.ddr - 3 * pr.dr * pr.dr - 2 * pr.r * pr.r);
}

Vec4 conormal(const SurfaceParams& p, double alpha, double beta) {
  const SurfacePoint pt = evaluate(p, alpha, beta);
  return pt.du_alpha.normalized();
}

Vec4 two_rings_gap(double d, double alpha1, double alpha2, double alpha,
                   double beta) {
  const double lhs = alpha - alpha1, rhs = alpha2 - alpha;
  if (std::abs(lhs - rhs) > 1e-12 || lhs < 0 || lhs >= kPi / 4)
    throw std::domain_error(
        "two_rings_gap: require alpha - alpha1 = alpha2 - alpha in [0, pi/4)");
  const SurfaceParams p1(d, alpha1), p2(d, alpha2);
  const Vec4 x1 = evaluate(p1, alpha, beta).position;
  const Vec4 x2 = evaluate(p2, alpha, beta).position;
  if ((x1 - x2).norm() > 1e-12 * x1.norm())
    throw std::runtime_error("two_rings_gap: surfaces fail to touch");
  return conormal(p1, alpha, beta) - conormal(p2, alpha, beta);
}

TangentPlaneResult tangent_plane(const SurfaceParams& p, double alpha,
                                 double beta) {
  const SurfacePoint pt = evaluate(p, alpha, beta);
  const Plane2 plane = Plane2::from_orthogonal(pt.du_alpha, pt.du_beta);
  const double eps = band_achieved_epsilon(pt.position, plane, BandKind::J13);
  return TangentPlaneResult{plane, eps};
}

Vec4 circle_point(double rho, double alpha, double beta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  return rho * Vec4(ca * cb, sa * cb, ca * sb, sa * sb);
}

std::vector<Vec4> circle_points(double rho, double alpha, int n) {
  if (!(rho > 0.0)) throw std::domain_error("circle_points: rho must be > 0");
  if (n < 1) throw std::domain_error("circle_points: n must be >= 1");
  std::vector<Vec4> pts;
  pts.reserve(n);
  for (int j = 0; j < n; ++j)
    pts.push_back(circle_point(rho, alpha, 2 * kPi * j / n));
  return pts;
}

}  // namespace vf4
