#pragma once

#include <functional>
#include <vector>

#include "geom.hpp"

// The basic minimal surface U^{d,alpha0}(alpha,beta) = r(alpha) B(beta) A(alpha)
// with profile r(alpha) = sqrt(d / cos 2(alpha - alpha0)): closed-form
// derivatives, metric, mean curvature, co-normals, tangent planes and the
// boundary circles swept in beta.

namespace vf4 {

struct SurfaceParams {
  double d;       // scale, units of length^2; r(alpha0) = sqrt(d)
  double alpha0;  // profile minimum angle

  SurfaceParams(double d_, double alpha0_);
};

// operations reject |alpha - alpha0| >= pi/4 - kDomainMargin (cos -> 0 there)
inline constexpr double kDomainMargin = 1e-9;

bool in_profile_domain(const SurfaceParams& p, double alpha);

struct Profile {
  double r;
  double dr;
  double ddr;
};

/// r, r', r''.  sqrt(r'^2 + r^2) = sqrt(d) cos^{-3/2} 2(alpha - alpha0).
Profile profile(const SurfaceParams& p, double alpha);

struct SurfacePoint {
  double alpha = 0, beta = 0;
  Vec4 position = Vec4::Zero();
  Vec4 du_alpha = Vec4::Zero();
  Vec4 du_beta = Vec4::Zero();
};

SurfacePoint evaluate(const SurfaceParams& p, double alpha, double beta);

struct MetricTensor {
  double g11;  // r'^2 + r^2
  double g12;  // 0
  double g22;  // r^2
};

MetricTensor metric(const SurfaceParams& p, double alpha, double beta);

/// Area element sqrt(g11 g22) = d / cos^2 2(alpha - alpha0).
double area_element(const SurfaceParams& p, double alpha);

/// (sum_i g^{ii} d^2U/dx_i^2) projected off the tangent plane; vanishes on U.
Vec4 mean_curvature(const SurfaceParams& p, double alpha, double beta);

/// Same quantity by central finite differences of the embedding with step h.
Vec4 mean_curvature_fd(const SurfaceParams& p, double alpha, double beta,
                       double h);

/// Finite-difference mean curvature for an arbitrary radial profile
/// rho(alpha); used as a negative-control oracle against perturbed profiles.
Vec4 mean_curvature_fd_profile(const std::function<double(double)>& rho,
                               double alpha, double beta, double h);

/// |r r'' - 3 r'^2 - 2 r^2| from the closed-form derivatives.
double ode_residual(const SurfaceParams& p, double alpha);

/// Unit co-normal N(dU/dalpha) = (r' B A + r B A') / sqrt(r'^2 + r^2).
Vec4 conormal(const SurfaceParams& p, double alpha, double beta);

/// eta_{alpha1}(U^{d,alpha1}) - eta_{alpha2}(U^{d,alpha2}) at a touch point
/// alpha - alpha1 = alpha2 - alpha; equals 2 sin 2(alpha - alpha1) N(U).
Vec4 two_rings_gap(double d, double alpha1, double alpha2, double alpha,
                   double beta);

struct TangentPlaneResult {
  Plane2 plane;
  double band_epsilon;  // achieved J13 band epsilon at the point
};

/// Tangent plane from the normalized partials; its achieved J13 epsilon is
/// bounded by 2 cos 2(alpha - alpha0).
TangentPlaneResult tangent_plane(const SurfaceParams& p, double alpha,
                                 double beta);

/// n equispaced beta samples of the circle S(rho, alpha).
std::vector<Vec4> circle_points(double rho, double alpha, int n);

/// One point of S(rho, alpha): rho (cos a cos b, sin a cos b, cos a sin b, sin a sin b).
Vec4 circle_point(double rho, double alpha, double beta);

}  // namespace vf4
