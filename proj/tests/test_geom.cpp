#include "doctest.h"

#include <random>

#include "core/geom.hpp"
#include "helpers.hpp"

using namespace vf4;
using testutil::kPi;

TEST_CASE("f_map basic values and identities") {
  CHECK((f_map({1, 0}, {1, 0}) - Vec4(1, 0, 0, 0)).norm() == 0.0);
  CHECK((f_map({0, 1}, {1, 0}) - Vec4(0, 1, 0, 0)).norm() == 0.0);
  const Vec4 v = f_map({2, 1}, {3, -1});
  CHECK((v - Vec4(6, 3, -2, -1)).norm() == 0.0);
  CHECK(v.norm() == doctest::Approx(std::sqrt(5.0) * std::sqrt(10.0)).epsilon(1e-14));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 ab(u(rng), u(rng)), cd(u(rng), u(rng));
    const double t = std::abs(u(rng)) + 0.01;
    const Vec4 f = f_map(ab, cd);
    const double scale = std::max(1.0, f.norm());
    CHECK((f_map(t * ab, cd) - t * f).norm() <= 1e-14 * t * scale);
    CHECK((f_map(ab, t * cd) - t * f).norm() <= 1e-14 * t * scale);
    CHECK(std::abs(f.norm() - ab.norm() * cd.norm()) <= 1e-14 * scale);
    const Vec4 exchange = cd[0] * Vec4(ab[0], ab[1], 0, 0) +
                          cd[1] * Vec4(0, 0, ab[0], ab[1]);
    CHECK((f - exchange).norm() <= 1e-14 * scale);
  }
}

TEST_CASE("f_preimage candidates") {
  const auto at_e1 = f_preimage(Vec4(1, 0, 0, 0), 1.0);
  bool has_unit = false;
  for (const auto& [ab, cd] : at_e1)
    if ((ab - Vec2(1, 0)).norm() == 0 && (cd - Vec2(1, 0)).norm() == 0)
      has_unit = true;
  CHECK(has_unit);

  const auto scaled = f_preimage(Vec4(1, 0, 0, 0), 2.0);
  bool has_scaled = false;
  for (const auto& [ab, cd] : scaled)
    if ((ab - Vec2(2, 0)).norm() <= 1e-14 && (cd - Vec2(0.5, 0)).norm() <= 1e-14)
      has_scaled = true;
  CHECK(has_scaled);

  const Vec4 x = Vec4(1, 1, 1, 1) / 2;
  const auto pre = f_preimage(x, 1.0);
  CHECK(!pre.empty());
  for (const auto& [ab, cd] : pre) CHECK((f_map(ab, cd) - x).norm() <= 1e-12);

  CHECK_THROWS_AS(f_preimage(Vec4::Zero(), 1.0), std::domain_error);
}

TEST_CASE("j_matrix identities") {
  CHECK((j_matrix(1, 0) - Mat4::Identity()).norm() == 0.0);

  Mat4 j13_expected;
  j13_expected << 0, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 0;
  CHECK((j_matrix(0, 1) - j13_expected).norm() == 0.0);
  CHECK((j13_expected * Vec4(1, 0, 0, 0) - Vec4(0, 0, 1, 0)).norm() == 0.0);
  CHECK((j_matrix(0, 1) * j_matrix(0, 1) + Mat4::Identity()).norm() == 0.0);

  Mat4 j12_expected;
  j12_expected << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  CHECK((j12_34() - j12_expected).norm() == 0.0);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng);
    const Mat4 j = j_matrix(a, b);
    CHECK((j.transpose() * j - (a * a + b * b) * Mat4::Identity()).norm() <= 1e-14 * 10);
    CHECK((j_matrix(b, a) * j - j_matrix(0, a * a + b * b)).norm() <= 1e-14 * 10);
  }
  const double beta = 0.7;
  const Mat4 b_mat = j_matrix(std::cos(beta), std::sin(beta));
  const Mat4 bp = j_matrix(-std::sin(beta), std::cos(beta));
  CHECK((b_mat.transpose() * b_mat - Mat4::Identity()).norm() <= 1e-14 * 4);
  CHECK((bp - j13_24() * b_mat).norm() <= 1e-15 * 4);
}

TEST_CASE("plane spans and distinctness") {
  const Plane2 g1u = span_g1({1, 0});
  Mat4 p13 = Mat4::Zero();
  p13(0, 0) = p13(2, 2) = 1;
  CHECK((g1u.projection - p13).norm() <= 1e-14);

  const Plane2 g2u = span_g2({1, 0});
  Mat4 p12 = Mat4::Zero();
  p12(0, 0) = p12(1, 1) = 1;
  CHECK((g2u.projection - p12).norm() <= 1e-14);

  CHECK(span_g1({3, 4}).approx_equal(span_g1({3.0 / 5, 4.0 / 5}), 1e-12));
  CHECK_THROWS_AS(span_g1({0, 0}), std::domain_error);

  const auto same = spans_distinct(g1u, g1u);
  CHECK(!same.distinct);
  CHECK(same.margin <= 1e-14);
  CHECK(same.stacked_rank == 2);

  const auto diff = spans_distinct(g1u, g2u);
  CHECK(diff.distinct);
  CHECK(diff.stacked_rank > 2);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const double s = ang(rng), t = ang(rng);
    const auto r = spans_distinct(span_g1({std::cos(s), std::sin(s)}),
                                  span_g2({std::cos(t), std::sin(t)}));
    CHECK(r.distinct);
  }

  // frame orthonormality invariants
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec4 u(g(rng), g(rng), g(rng), g(rng)), v(g(rng), g(rng), g(rng), g(rng));
    if (u.norm() < 0.1 || (v - u.dot(v) / u.squaredNorm() * u).norm() < 0.1) continue;
    const Plane2 p = Plane2::from_span(u, v);
    CHECK(std::abs(p.frame.col(0).norm() - 1) <= 1e-12);
    CHECK(std::abs(p.frame.col(1).norm() - 1) <= 1e-12);
    CHECK(std::abs(p.frame.col(0).dot(p.frame.col(1))) <= 1e-12);
    CHECK((p.projection * p.projection - p.projection).norm() <= 1e-12);
    CHECK(std::abs(p.projection.trace() - 2) <= 1e-12);
  }
}

TEST_CASE("band membership achieved epsilon") {
  const Plane2 s13 = span_g1({1, 0});  // span{e1,e3}
  CHECK(band_achieved_epsilon(Vec4(1, 0, 0, 0), s13, BandKind::J13) <= 1e-10);

  const Plane2 s12 = span_g2({1, 0});  // span{e1,e2}
  CHECK(band_achieved_epsilon(Vec4(1, 0, 0, 0), s12, BandKind::J13) > 0.1);

  // e1 against span{e2,e3}: compare with the independent sweep oracle
  const Plane2 s23 = Plane2::from_span(Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0));
  const double impl = band_achieved_epsilon(Vec4(1, 0, 0, 0), s23, BandKind::J13);
  const double oracle = testutil::band_oracle(Vec4(1, 0, 0, 0), s23, BandKind::J13);
  CHECK(std::abs(impl - oracle) <= 1e-8);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vec4 x = testutil::random_unit4(rng);
    Vec4 u(g(rng), g(rng), g(rng), g(rng)), v(g(rng), g(rng), g(rng), g(rng));
    const Plane2 s = Plane2::from_span(u, v);
    for (BandKind kind : {BandKind::J13, BandKind::J12}) {
      const double a = band_achieved_epsilon(x, s, kind);
      const double o = testutil::band_oracle(x, s, kind);
      CHECK(std::abs(a - o) <= 1e-7);
      CHECK(a <= 2.0 + 1e-12);
    }
  }

  CHECK_THROWS_AS(band_achieved_epsilon(Vec4::Zero(), s13, BandKind::J13),
                  std::domain_error);

  const BandMembership m = band_membership(Vec4(1, 0, 0, 0), s13,
                                           DirectionBand{BandKind::J13, 0.0});
  CHECK(m.member);
}

TEST_CASE("band invariance under commuting rotations and the coordinate swap") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat4 swap = Mat4::Identity();
  swap(1, 1) = swap(2, 2) = 0;
  swap(1, 2) = swap(2, 1) = 1;
  for (int i = 0; i < 30; ++i) {
    const Vec4 x = testutil::random_unit4(rng);
    const Plane2 s = Plane2::from_span(Vec4(g(rng), g(rng), g(rng), g(rng)),
                                       Vec4(g(rng), g(rng), g(rng), g(rng)));
    // rot12_34 and J(cos,sin) both commute with J13_24
    const Mat4 q = rot12_34(0.8) * j_matrix(std::cos(0.3), std::sin(0.3));
    const double before = band_achieved_epsilon(x, s, BandKind::J13);
    const double after = band_achieved_epsilon(q * x, s.transformed(q), BandKind::J13);
    CHECK(std::abs(before - after) <= 1e-8);

    // x2 <-> x3 exchanges the two band kinds
    const double j13 = band_achieved_epsilon(x, s, BandKind::J13);
    const double j12 =
        band_achieved_epsilon(swap * x, s.transformed(swap), BandKind::J12);
    CHECK(std::abs(j13 - j12) <= 1e-8);
  }
}

TEST_CASE("epsilon0 estimate") {
  CHECK_THROWS_AS(epsilon0_estimate(0), std::domain_error);

  const auto single = epsilon0_estimate(1);
  CHECK(single.value > 0.0);

  // sampling oracle at w = e1: the minimum over random planes of the larger
  // achieved epsilon can only overestimate the true optimum
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 1.0);
  double sampled_min = 1e9;
  for (int i = 0; i < 20000; ++i) {
    Vec4 u(g(rng), g(rng), g(rng), g(rng)), v(g(rng), g(rng), g(rng), g(rng));
    if (u.norm() < 0.2) continue;
    Plane2 s = Plane2::from_span(u, v);
    const double m =
        std::max(testutil::band_oracle(Vec4(1, 0, 0, 0), s, BandKind::J13),
                 testutil::band_oracle(Vec4(1, 0, 0, 0), s, BandKind::J12));
    sampled_min = std::min(sampled_min, m);
  }
  CHECK(single.value <= sampled_min + 1e-9);
  CHECK(single.value >= sampled_min - 0.08);

  const auto multi = epsilon0_estimate(10);
  CHECK(multi.value > 0.0);
  CHECK(multi.spread < 1e-6);
}
