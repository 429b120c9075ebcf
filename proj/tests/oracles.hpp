#pragma once

// Independent reference values for the tests: quadrature, closed forms and
// small random generators that do not go through the library's RNG.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using std::numbers::pi;

// Composite Simpson on [a, b] with `m` (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m = 20000) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// E|g|^p for a standard normal g.
inline double gauss_abs_moment(double p) {
  return 2.0 * simpson([p](double x) { return std::pow(x, p) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi); },
                       0.0, 40.0, 200000);
}

// (E|g|^p)^{1/p}.
inline double gauss_cp(double p) { return std::pow(gauss_abs_moment(p), 1.0 / p); }

// Average of f over the unit circle.
inline double circle_mean(const std::function<double(double, double)>& f, int m = 200000) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * pi * (i + 0.5) / m;
    s += f(std::cos(t), std::sin(t));
  }
  return s / m;
}

// Average of f over S^2: z uniform on [-1, 1] (Archimedes), azimuth uniform.
inline double sphere2_mean(const std::function<double(const Eigen::Vector3d&)>& f, int mz = 2000, int ma = 2000) {
  double s = 0.0;
  for (int i = 0; i < mz; ++i) {
    const double z = -1.0 + 2.0 * (i + 0.5) / mz;
    const double r = std::sqrt(1.0 - z * z);
    for (int j = 0; j < ma; ++j) {
      const double t = 2.0 * pi * (j + 0.5) / ma;
      s += f(Eigen::Vector3d(r * std::cos(t), r * std::sin(t), z));
    }
  }
  return s / (static_cast<double>(mz) * ma);
}

// Average of f over S^3 in Hopf coordinates; cos^2 a is uniform on [0, 1].
inline double sphere3_mean(const std::function<double(const Eigen::Vector4d&)>& f, int m = 300) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double u = (i + 0.5) / m;
    const double ca = std::sqrt(u), sa = std::sqrt(1.0 - u);
    for (int j = 0; j < m; ++j) {
      const double b = 2.0 * pi * (j + 0.5) / m;
      for (int k = 0; k < m; ++k) {
        const double c = 2.0 * pi * (k + 0.5) / m;
        s += f(Eigen::Vector4d(ca * std::cos(b), ca * std::sin(b), sa * std::cos(c), sa * std::sin(c)));
      }
    }
  }
  return s / (static_cast<double>(m) * m * m);
}

inline double ball_volume(int k) { return std::pow(pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0); }

// (Vol / Vol B_2^k)^{1/k}.
inline double volrad(double vol, int k) { return std::pow(vol / ball_volume(k), 1.0 / k); }

// Uniform on [-1/2, 1/2]: variance 1/12.
inline const double kCubeL = std::sqrt(1.0 / 12.0);

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

  Eigen::VectorXd normal(int n) {
    std::normal_distribution<double> g;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng_);
    return v;
  }

  Eigen::VectorXd direction(int n) {
    Eigen::VectorXd v = normal(n);
    return v / v.norm();
  }

  Eigen::MatrixXd directions(int n, int count) {
    Eigen::MatrixXd m(n, count);
    for (int j = 0; j < count; ++j) m.col(j) = direction(n);
    return m;
  }

  // Positive spectrum sorted in descending order, spanning a few decades.
  Eigen::VectorXd spectrum(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::exp(uniform(-4.0, 4.0));
    std::sort(v.data(), v.data() + n, std::greater<double>());
    return v;
  }

  Eigen::MatrixXd orthogonal(int n) {
    Eigen::MatrixXd a(n, n);
    for (int j = 0; j < n; ++j) a.col(j) = normal(n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  }

  // Point cloud with N rows in R^n, entries uniform, shifted and stretched.
  Eigen::MatrixXd cloud(Eigen::Index count, int n) {
    Eigen::MatrixXd m(count, n);
    const Eigen::VectorXd stretch = normal(n).array().exp();
    for (Eigen::Index i = 0; i < count; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = stretch(j) * uniform(-1.0, 1.0) + 0.3;
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
