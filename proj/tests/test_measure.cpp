#include <doctest.h>

#include <cmath>

#include "isoconv/body.hpp"
#include "isoconv/error.hpp"
#include "isoconv/experiments.hpp"
#include "isoconv/grassmann.hpp"
#include "isoconv/measure.hpp"
#include "oracles.hpp"

using namespace isoconv;

namespace {

constexpr Eigen::Index kN = 100000;

// Per-coordinate mean and variance against exact values, within 5 SE each.
void check_moments(const SampleSet& s, double var, double fourth) {
  const double n = static_cast<double>(s.count());
  for (int j = 0; j < s.dim(); ++j) {
    const auto col = s.points.col(j).array();
    const double mean = col.mean();
    const double m2 = col.square().mean();
    CHECK(std::abs(mean) <= 5.0 * std::sqrt(var / n));
    CHECK(std::abs(m2 - var) <= 5.0 * std::sqrt((fourth - var * var) / n));
  }
}

}  // namespace

TEST_CASE("exact samplers match analytic moments") {
  SUBCASE("gaussian") { check_moments(draw_samples(make_gaussian(3), kN, 1), 1.0, 3.0); }
  SUBCASE("cube [-1/2,1/2]^4") {
    check_moments(draw_samples(make_uniform(unit_volume(make_cube(4))), kN, 2), 1.0 / 12, 1.0 / 80);
  }
  SUBCASE("exponential") { check_moments(draw_samples(make_exponential_product(3), kN, 3), 2.0, 24.0); }
  SUBCASE("unit-volume cross-polytope R^2") {
    // x_1 on |x| + |y| <= r: E x^2 = r^2/6, E x^4 = r^4/15.
    const double r2 = 0.5;
    check_moments(draw_samples(make_uniform(unit_volume(make_cross_polytope(2))), kN, 4), r2 / 6, r2 * r2 / 15);
  }
  SUBCASE("ball R^3") { check_moments(draw_samples(make_uniform(make_ball(3)), kN, 5), 1.0 / 5, 3.0 / 35); }
  SUBCASE("lp-ball against quadrature") {
    // Marginal density of x_1 on B_p^2 is proportional to (1 - |x|^p)^{1/p}.
    const double p = 3.0;
    auto marg = [p](double e) {
      return oracle::simpson([&](double x) { return std::pow(x, e) * std::pow(1 - std::pow(x, p), 1 / p); }, 0, 1);
    };
    const double var = marg(2) / marg(0), fourth = marg(4) / marg(0);
    check_moments(draw_samples(make_uniform(make_lp_ball(2, p)), kN, 6), var, fourth);
  }
  SUBCASE("ellipsoid") {
    Mat a = Mat::Zero(2, 2);
    a.diagonal() << 2.0, 0.5;
    const SampleSet s = draw_samples(make_uniform(make_ellipsoid(a)), kN, 7);
    // Uniform on the disk: E x^2 = 1/4, E x^4 = 1/8.
    const Vec c0 = s.points.col(0) / 2.0, c1 = s.points.col(1) / 0.5;
    CHECK(std::abs(c0.array().square().mean() - 0.25) <= 5 * std::sqrt((0.125 - 0.0625) / kN));
    CHECK(std::abs(c1.array().square().mean() - 0.25) <= 5 * std::sqrt((0.125 - 0.0625) / kN));
  }
}

TEST_CASE("gaussian covariance within 5/sqrt(N)") {
  const SampleSet s = draw_samples(make_gaussian(2), kN, 8);
  const Mat c = s.points.transpose() * s.points / static_cast<double>(kN);
  CHECK((c - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 5.0 / std::sqrt(kN));
}

TEST_CASE("draws are deterministic in (measure, N, seed)") {
  const auto mu = make_uniform(make_cross_polytope(5));
  const SampleSet a = draw_samples(mu, 10000, 42), b = draw_samples(mu, 10000, 42);
  CHECK(a.points == b.points);
  CHECK(a.seed == 42);
  CHECK_FALSE(draw_samples(mu, 10000, 43).points == a.points);
  // Prefix stability: chunks depend only on their index.
  const SampleSet c = draw_samples(mu, 2 * kChunkRows + 5, 42);
  CHECK(c.points.topRows(kChunkRows) == a.points.topRows(kChunkRows));
  CHECK_THROWS_AS(draw_samples(mu, 0, 1), ConstructionError);
}

TEST_CASE("gaussian R^1 mean") {
  const SampleSet s = draw_samples(make_gaussian(1), 1000000, 9);
  CHECK(std::abs(s.points.col(0).mean()) <= 5.0 / 1000.0);
}

TEST_CASE("uniform without an exact sampler needs mcmc") {
  Mat tri(2, 3);
  tri << 0, 1, 0, 0, 0, 1;
  const ConvexBody t = make_v_polytope(tri);
  CHECK_THROWS_AS(make_uniform(t), UnsupportedError);
  const auto mu = make_uniform(t, true);
  CHECK(mu.approximate());
  const SampleSet s = draw_samples(mu, 20000, 3);
  CHECK(s.approximate);
  CHECK(s.points.col(0).mean() == doctest::Approx(1.0 / 3).epsilon(0.03));
}

TEST_CASE("hit-and-run on the square") {
  const SampleSet s = hit_and_run(make_cube(2), kN, 10);
  CHECK(s.approximate);
  CHECK(std::abs(s.points.col(0).mean()) <= 0.01);
  CHECK(std::abs(s.points.col(1).mean()) <= 0.01);
  // Chains are correlated; allow 3 SE with an effective sample size of N/10.
  const double se = std::sqrt((1.0 / 5 - 1.0 / 9) / (kN / 10.0));
  CHECK(std::abs(s.points.col(0).array().square().mean() - 1.0 / 3) <= 3 * se);
  HitAndRunOptions bad;
  bad.start = (Vec(2) << 2.0, 0.0).finished();
  CHECK_THROWS_AS(hit_and_run(make_cube(2), 100, 1, bad), ConstructionError);
}

TEST_CASE("hit-and-run on Q_3") {
  const ConvexBody q = make_qm_body(unit_volume(make_cube(2)), 1);
  const SampleSet s = hit_and_run(q, kN, 11);
  const Mat c = (s.points.transpose() * s.points) / static_cast<double>(kN);
  CHECK((c - Mat::Identity(3, 3) / 12.0).cwiseAbs().maxCoeff() <= 0.005);
}

TEST_CASE("project_samples") {
  SampleSet s;
  s.points = (Mat(1, 2) << 3.0, 4.0).finished();
  Subspace f;
  f.basis = Mat::Identity(2, 1);
  CHECK(project_samples(s, f).points(0, 0) == 3.0);
  CHECK_THROWS_AS(project_samples(s, random_subspace(3, 1, 0)), DimensionError);

  const SampleSet g = draw_samples(make_gaussian(4), kN, 12);
  const SampleSet p = project_samples(g, random_subspace(4, 2, 5));
  CHECK(p.count() == g.count());
  CHECK(p.seed == g.seed);
  const Mat c = p.points.transpose() * p.points / static_cast<double>(kN);
  CHECK((c - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <= 5.0 / std::sqrt(kN));
}

TEST_CASE("property: nested projections") {
  oracle::Gen gen(21);
  const SampleSet s = draw_samples(make_exponential_product(6), 2000, 13);
  for (int rep = 0; rep < 20; ++rep) {
    const Subspace big = random_subspace(6, 4, 100 + rep);
    // E inside F: span of two random combinations of F's basis.
    const Subspace e = subspace_from_columns(big.basis * gen.orthogonal(4).leftCols(2));
    Subspace e_in_f;
    e_in_f.basis = big.basis.transpose() * e.basis;
    const Mat twice = project_samples(project_samples(s, big), e_in_f).points;
    const Mat once = project_samples(s, e).points;
    CHECK((twice - once).cwiseAbs().maxCoeff() <= 1e-12 * s.points.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("property: projected covariance is B^T C B") {
  oracle::Gen gen(22);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = gen.integer(2, 7), k = gen.integer(1, n);
    SampleSet s;
    s.points = gen.cloud(500, n);
    const Subspace f = random_subspace(n, k, rep);
    auto cov = [](const Mat& x) {
      const Mat c = x.rowwise() - x.colwise().mean();
      return Mat(c.transpose() * c / static_cast<double>(x.rows()));
    };
    const Mat lhs = cov(project_samples(s, f).points);
    const Mat rhs = f.basis.transpose() * cov(s.points) * f.basis;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * rhs.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("cube and lp-ball(64) agree on E max|x_i|") {
  const int n = 4;
  const SampleSet a = draw_samples(make_uniform(make_cube(n)), kN, 14);
  const SampleSet b = draw_samples(make_uniform(make_lp_ball(n, 64.0)), kN, 15);
  const double ea = a.points.rowwise().lpNorm<Eigen::Infinity>().mean();
  const double eb = b.points.rowwise().lpNorm<Eigen::Infinity>().mean();
  CHECK(ea == doctest::Approx(n / (n + 1.0)).epsilon(0.01));
  CHECK(oracle::rel(eb, ea) <= 0.02);
}

TEST_CASE("measure constructions") {
  const auto mu = make_gaussian(3, (Vec(3) << 4.0, 1.0, 0.25).finished());
  const auto iso = isotropic_normalization(mu);
  const SampleSet s = draw_samples(iso, kN, 16);
  const Mat c = s.points.transpose() * s.points / static_cast<double>(kN);
  CHECK((c - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <= 5.0 / std::sqrt(kN));
  CHECK_THROWS_AS(make_gaussian(2, (Vec(2) << 1.0, -1.0).finished()), ConstructionError);
  const auto prod = product_measure(make_gaussian(1), make_uniform(make_cube(2)));
  CHECK(prod.dim() == 3);
  CHECK(*prod.density_sup() == doctest::Approx(0.25 / std::sqrt(2 * oracle::pi)));
}
