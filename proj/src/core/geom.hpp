#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

// Linear algebra on R^4 and the Grassmannian G(4,2): the quadratic map F,
// the J rotation matrices, the two ruling families g1/g2 of the Clifford
// cone, and the direction bands used to separate tangent-plane classes.

namespace vf4 {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Frame2 = Eigen::Matrix<double, 4, 2>;

inline constexpr double kIdentityTol = 1e-12;   // exact-identity checks
inline constexpr double kSearchTol = 1e-10;     // 1-D search based results

/// F((a,b),(c,d)) = ac e1 + bc e2 + ad e3 + bd e4.
Vec4 f_map(const Vec2& ab, const Vec2& cd);

/// Candidate preimages of x under F at scale parameter t, sign combinations
/// filtered by F(candidate) == x within tol. Throws for x == 0.
std::vector<std::pair<Vec2, Vec2>> f_preimage(const Vec4& x, double t,
                                              double tol = kIdentityTol);

/// Block matrix J(a,b); J(1,0) = I, J(0,1) rotates e1 -> e3, e2 -> e4.
Mat4 j_matrix(double a, double b);

Mat4 j13_24();  // J(0,1)
Mat4 j12_34();  // rotates e1 -> e2, e3 -> e4

/// Rotation by phi in the (e1,e2) and (e3,e4) planes: cos(phi) I + sin(phi) J12_34.
/// Commutes with both J13_24 and J12_34; shifts the g1/g2 family parameter.
Mat4 rot12_34(double phi);

/// N(x) = x / |x|. Throws for x == 0.
Vec4 radial_direction(const Vec4& x);

/// A 2-dimensional linear subspace of R^4.  Stores an orthonormal frame
/// (Gram-Schmidt of the input span, first-vector sign fixed by making its
/// largest-magnitude component positive) together with the projection
/// matrix.  Equality tests use projections; frames are gauge-dependent.
struct Plane2 {
  Frame2 frame;
  Mat4 projection;

  static Plane2 from_span(const Vec4& u, const Vec4& v);
  static Plane2 from_orthogonal(const Vec4& u, const Vec4& v);

  bool approx_equal(const Plane2& other, double tol = kIdentityTol) const;
  Plane2 transformed(const Mat4& q) const;  // q orthogonal
};

/// g1((a,b)) = Span{a e1 + b e2, a e3 + b e4}; scale invariant.
Plane2 span_g1(const Vec2& ab);
/// g2((c,d)) = Span{c e1 + d e3, c e2 + d e4}; scale invariant.
Plane2 span_g2(const Vec2& cd);

struct SpanDistinctness {
  bool distinct;
  double margin;  // operator-norm distance of the projections
  int stacked_rank;
};

/// Distinct iff the projection distance exceeds tol; also reports the rank
/// of the 4x4 matrix stacking both frames (rank 2 <=> equal planes).
SpanDistinctness spans_distinct(const Plane2& p, const Plane2& q,
                                double tol = kIdentityTol);

enum class BandKind { J13, J12 };

struct DirectionBand {
  BandKind kind = BandKind::J13;
  double epsilon = 0.0;
};

Mat4 band_matrix(BandKind kind);

/// Smallest eps such that some orthonormal frame {u,v} of S satisfies
/// |u - N(x)| <= eps and |v - D N(x)| <= eps, where D is the band matrix.
/// Frames are parameterized by rotation angle and orientation flip; the
/// minimum is located by a 720-point sweep plus golden-section refinement.
/// Throws for x == 0.
double band_achieved_epsilon(const Vec4& x, const Plane2& s, BandKind kind);

struct BandMembership {
  bool member;
  double achieved;
};

BandMembership band_membership(const Vec4& x, const Plane2& s,
                               const DirectionBand& band);

struct Epsilon0Estimate {
  double value;   // minimum over sampled directions
  double spread;  // max - min over sampled directions
  int samples;
};

/// Estimates the largest eps0 with G^eps_{rad,J13}(w) and G^eps_{rad,J12}(w)
/// disjoint for eps < eps0, minimizing max(achieved13, achieved12) over
/// planes.  The value is independent of w up to optimizer noise; the spread
/// over `samples` random directions is reported.  samples >= 1 required.
Epsilon0Estimate epsilon0_estimate(int samples, unsigned seed = 12345);

}  // namespace vf4
