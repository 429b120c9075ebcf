#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isoconv/body.hpp"
#include "isoconv/error.hpp"
#include "isoconv/experiments.hpp"
#include "oracles.hpp"

using namespace isoconv;
using oracle::Gen;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

std::vector<ConvexBody> analytic_families(int n) {
  Gen g(n);
  Mat a = g.orthogonal(n) * g.normal(n).array().exp().matrix().asDiagonal();
  return {make_ball(n), make_cube(n), make_cross_polytope(n), make_lp_ball(n, 1.5), make_lp_ball(n, 7.0),
          make_ellipsoid(a), unit_volume(make_cube(n))};
}

}  // namespace

TEST_CASE("standard bodies: support values") {
  CHECK(make_ball(5).support(Vec(Vec::Unit(5, 0))) == doctest::Approx(1.0));
  CHECK(make_cube(2).support(v2(1, 1)) == doctest::Approx(2.0));
  const ConvexBody c = unit_volume(make_cross_polytope(2));
  CHECK(c.support(v2(1, 0)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(make_cross_polytope(3).support(v3(0.2, -0.9, 0.4)) == doctest::Approx(0.9));
  Mat a(2, 2);
  a << 2, 1, 0, 3;
  CHECK(make_ellipsoid(a).support(v2(0.6, 0.8)) == doctest::Approx((a.transpose() * v2(0.6, 0.8)).norm()));
  Mat verts(2, 3);
  verts << 0, 1, 0, 0, 0, 1;
  CHECK(make_v_polytope(verts).support(v2(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("construction errors name the field") {
  try {
    make_lp_ball(3, 0.5);
    FAIL("expected ConstructionError");
  } catch (const ConstructionError& e) {
    CHECK(e.field() == "p");
  }
  CHECK_THROWS_AS(make_ball(0), ConstructionError);
  CHECK_THROWS_AS(make_ellipsoid(Mat::Zero(2, 2)), Error);
  CHECK_THROWS_AS(scale_body(make_ball(2), -1.0), ConstructionError);
  CHECK_THROWS_AS(linear_image_body(make_ball(2), LinearMap(Mat::Zero(2, 2))), Error);
}

TEST_CASE("scale and linear image") {
  CHECK(scale_body(make_ball(3), 3.0).support(Vec(Vec::Unit(3, 0))) == doctest::Approx(3.0));
  Mat d = Mat::Zero(2, 2);
  d.diagonal() << 2, 1;
  CHECK(linear_image_body(make_ball(2), LinearMap(d)).support(v2(1, 0)) == doctest::Approx(2.0));
  const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
  Mat r(2, 2);
  r << c, -s, s, c;
  CHECK(linear_image_body(make_cube(2), LinearMap(r)).support(v2(1, 0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const ConvexBody img = linear_image_body(make_cube(2), LinearMap(r));
  CHECK(img.contains(v2(0, 1.4)));
  CHECK_FALSE(img.contains(v2(1.0, 1.0)));
}

TEST_CASE("product bodies") {
  const ConvexBody half_sq = scale_body(make_cube(2), 0.5);
  const ConvexBody p = product_body(half_sq, scale_body(make_cube(1), 0.5));
  CHECK(p.dim() == 3);
  CHECK(p.contains(v3(0, 0, 0)));
  CHECK_FALSE(p.contains(v3(0, 0, 0.6)));
  CHECK(p.family() == Family::product);
  CHECK(p.support(v3(1, -1, 1)) == doctest::Approx(1.5));

  const ConvexBody sq = product_body(make_ball(1), make_ball(1));
  CHECK(sq.contains(v2(0.9, 0.9)));
  CHECK_FALSE(sq.contains(v2(1.1, 0.0)));

  // Q_3 from the unit square and a unit interval is the unit cube.
  const ConvexBody q = make_qm_body(unit_volume(make_cube(2)), 1);
  Gen g(3);
  for (int i = 0; i < 200; ++i) {
    const Vec t = g.direction(3);
    CHECK(q.support(t) == doctest::Approx(0.5 * t.lpNorm<1>()).epsilon(1e-12));
  }
}

TEST_CASE("symmetric hull") {
  Gen g(4);
  const ConvexBody cube = make_cube(3);
  const ConvexBody h = sym_hull(cube);
  CHECK(h.symmetric());
  for (int i = 0; i < 100; ++i) {
    const Vec t = g.direction(3);
    CHECK(h.support(t) == doctest::Approx(cube.support(t)).epsilon(1e-14));
  }
  Mat seg(1, 2);
  seg << 0, 1;
  const ConvexBody s = sym_hull(make_v_polytope(seg));
  CHECK(s.support(Vec(Vec::Constant(1, 1.0))) == doctest::Approx(1.0));
  CHECK(s.support(Vec(Vec::Constant(1, -1.0))) == doctest::Approx(1.0));
  Mat tri(2, 3);
  tri << 0, 1, 0, 0, 0, 1;
  CHECK(sym_hull(make_v_polytope(tri)).support(v2(-1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("gauge") {
  CHECK(gauge(make_ball(3), v3(2, 0, 0), 1.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(gauge(make_cube(2), v2(1, 1), 1.0) == doctest::Approx(1.0).epsilon(1e-9));
  const ConvexBody c = unit_volume(make_cross_polytope(2));
  CHECK(gauge(c, v2(0.5, 0), 0.5) == doctest::Approx(0.5 / std::sqrt(0.5)).epsilon(1e-9));
  CHECK(gauge(make_ball(2), v2(0, 0), 1.0) == 0.0);

  // A support-only body has no membership oracle.
  ConvexBody::Oracles o;
  o.support = [](const Vec& t) { return t.norm(); };
  const ConvexBody support_only(2, o, Family::ball, true, {}, {}, "support-only");
  CHECK_THROWS_AS(gauge(support_only, v2(1, 0), 1.0), UnsupportedError);

  // A half-plane never leaves the ray through x.
  ConvexBody::Oracles h;
  h.support = [](const Vec&) { return 1.0; };
  h.membership = [](const Vec& x) { return x(0) <= 1.0; };
  const ConvexBody half(2, h, Family::v_polytope, false, {}, {}, "half-plane");
  CHECK_THROWS_AS(gauge(half, v2(-1, 0), 1.0), UnboundedError);
}

TEST_CASE("property: support is positively homogeneous") {
  Gen g(11);
  for (int n : {2, 3, 5}) {
    for (const ConvexBody& k : analytic_families(n)) {
      for (int i = 0; i < 1000; ++i) {
        const Vec t = g.normal(n);
        const double s = g.uniform(0.0, 10.0);
        CHECK(oracle::rel(k.support(Vec(s * t)), s * k.support(t)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: support is subadditive") {
  Gen g(12);
  for (int n : {2, 4}) {
    for (const ConvexBody& k : analytic_families(n)) {
      for (int i = 0; i < 1000; ++i) {
        const Vec a = g.normal(n), b = g.normal(n);
        CHECK(k.support(Vec(a + b)) <= (k.support(a) + k.support(b)) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("property: gauge and support are dual") {
  Gen g(13);
  for (int n : {2, 3}) {
    for (const ConvexBody& k : {make_ball(n), make_cube(n), make_cross_polytope(n), make_lp_ball(n, 3.0)}) {
      const double r0 = 1.0 / std::sqrt(n);  // inside every body tested
      for (int i = 0; i < 20; ++i) {
        const Vec d = g.direction(n);
        const Vec x = d / gauge(k, d, r0, 1e-12);
        double worst = 0.0;
        for (int j = 0; j < 1000; ++j) {
          const Vec t = g.direction(n);
          worst = std::max(worst, x.dot(t) / k.support(t));
        }
        CHECK(worst <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("property: linear images compose") {
  Gen g(14);
  for (int n : {2, 3, 4}) {
    const ConvexBody k = make_cross_polytope(n);
    for (int rep = 0; rep < 10; ++rep) {
      Mat s = g.orthogonal(n) * Mat(g.normal(n).array().exp().matrix().asDiagonal());
      Mat t = g.orthogonal(n) + 0.1 * Mat::Identity(n, n);
      const ConvexBody twice = linear_image_body(linear_image_body(k, LinearMap(s)), LinearMap(t));
      const ConvexBody once = linear_image_body(k, LinearMap(t * s));
      for (int i = 0; i < 100; ++i) {
        const Vec th = g.direction(n);
        CHECK(oracle::rel(twice.support(th), once.support(th)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("volume formulas") {
  for (int k = 1; k <= 8; ++k) CHECK(unit_ball_volume(k) == doctest::Approx(oracle::ball_volume(k)).epsilon(1e-13));
  CHECK(std::exp(log_lp_ball_volume(3, 1.0)) == doctest::Approx(8.0 / 6.0));
  CHECK(std::exp(log_lp_ball_volume(2, 2.0)) == doctest::Approx(std::numbers::pi));
  // E x_1^2 on B_2^3 and B_1^2.
  CHECK(lp_ball_second_moment(3, 2.0) == doctest::Approx(1.0 / 5.0));
  CHECK(lp_ball_second_moment(2, 1.0) == doctest::Approx(1.0 / 6.0));
  CHECK(*unit_volume(make_cube(4)).analytic().volume == doctest::Approx(1.0));
}
