#include <doctest.h>

#include <cmath>

#include "isoconv/hull.hpp"
#include "oracles.hpp"

using namespace isoconv;

TEST_CASE("hull of cube corners and interior points") {
  for (int d = 1; d <= 5; ++d) {
    const int corners = 1 << d;
    Eigen::MatrixXd pts(d, corners + 50);
    for (int c = 0; c < corners; ++c)
      for (int i = 0; i < d; ++i) pts(i, c) = (c >> i) & 1 ? 1.0 : -1.0;
    oracle::Gen g(d);
    for (int j = 0; j < 50; ++j) pts.col(corners + j) = 0.9 * g.direction(d) / std::sqrt(d);
    ConvexHull h(pts);
    CHECK(h.volume() == doctest::Approx(std::pow(2.0, d)).epsilon(1e-10));
    CHECK(static_cast<int>(h.vertex_indices().size()) == corners);
    CHECK(h.contains(Eigen::VectorXd::Zero(d)));
    CHECK_FALSE(h.contains(Eigen::VectorXd::Constant(d, 1.01)));
    CHECK(h.inradius_about_origin() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("hull of a simplex") {
  for (int d = 2; d <= 6; ++d) {
    Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(d, d + 1);
    for (int i = 0; i < d; ++i) pts(i, i + 1) = 1.0;
    ConvexHull h(pts);
    CHECK(h.volume() == doctest::Approx(1.0 / std::tgamma(d + 1.0)).epsilon(1e-10));
    CHECK(h.facets().size() == static_cast<std::size_t>(d + 1));
  }
}

TEST_CASE("halfspace intersection volume") {
  // |x_i| <= 1 as 2d halfspaces.
  for (int d = 1; d <= 4; ++d) {
    Eigen::MatrixXd u(d, 2 * d);
    u << Eigen::MatrixXd::Identity(d, d), -Eigen::MatrixXd::Identity(d, d);
    CHECK(halfspace_intersection_volume(u, Eigen::VectorXd::Ones(2 * d)) ==
          doctest::Approx(std::pow(2.0, d)).epsilon(1e-10));
  }
  // Cross-polytope in R^3: <s, x> <= 1 over sign vectors s.
  Eigen::MatrixXd u(3, 8);
  for (int c = 0; c < 8; ++c)
    for (int i = 0; i < 3; ++i) u(i, c) = (c >> i) & 1 ? 1.0 : -1.0;
  CHECK(halfspace_intersection_volume(u, Eigen::VectorXd::Ones(8)) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
}
