#include "isoconv/centroid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isoconv/error.hpp"

namespace isoconv {

namespace {

constexpr Eigen::Index kBatchElements = 4'000'000;

void check_exponent(double p) {
  if (!(p >= 1.0)) throw ConstructionError("p", "exponent must be >= 1, got " + std::to_string(p));
  if (p > kMaxExponent) throw ConstructionError("p", "exponent is capped at 2^20");
}

double ipow(double x, unsigned e) {
  double r = 1.0;
  while (e) {
    if (e & 1u) r *= x;
    x *= x;
    e >>= 1u;
  }
  return r;
}

double zp_from_projections(const Eigen::Ref<const Vec>& y, double p) {
  return p > kLogDomainThreshold ? detail::zp_log_domain(y, p) : detail::zp_direct(y, p);
}

}  // namespace

namespace detail {

double zp_direct(const Eigen::Ref<const Vec>& y, double p) {
  const double n = static_cast<double>(y.size());
  if (p == 1.0) return y.cwiseAbs().sum() / n;
  if (p == 2.0) return std::sqrt(y.squaredNorm() / n);
  double sum = 0.0;
  if (p == std::floor(p)) {
    const auto e = static_cast<unsigned>(p);
    for (Eigen::Index i = 0; i < y.size(); ++i) sum += ipow(std::abs(y(i)), e);
  } else {
    for (Eigen::Index i = 0; i < y.size(); ++i) sum += std::pow(std::abs(y(i)), p);
  }
  return std::pow(sum / n, 1.0 / p);
}

double zp_log_domain(const Eigen::Ref<const Vec>& y, double p) {
  // max|y| * (mean (|y_i|/max|y|)^p)^{1/p}: a log-mean-exp of p log|y_i|.
  // Zeros contribute nothing to the sum but still count in the 1/N.
  const double top = y.cwiseAbs().maxCoeff();
  if (!(top > 0.0)) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y(i) != 0.0) sum += std::exp(p * std::log(std::abs(y(i)) / top));
  return top * std::exp((std::log(sum) - std::log(static_cast<double>(y.size()))) / p);
}

}  // namespace detail

ZpValue zp_support(const SampleSet& s, double p, const Vec& theta) {
  check_exponent(p);
  if (theta.size() != s.dim()) throw DimensionError("zp_support: direction dimension mismatch");
  const Vec y = s.points * theta;
  const double h = zp_from_projections(y, p);
  return ZpValue{h, h == 0.0};
}

Vec zp_support(const SampleSet& s, double p, const Mat& directions) {
  check_exponent(p);
  if (directions.rows() != s.dim()) throw DimensionError("zp_support: direction dimension mismatch");
  const Eigen::Index d = directions.cols();
  const Eigen::Index block = std::max<Eigen::Index>(1, kBatchElements / std::max<Eigen::Index>(1, s.count()));
  Vec out(d);
  for (Eigen::Index j0 = 0; j0 < d; j0 += block) {
    const Eigen::Index w = std::min(block, d - j0);
    const Mat y = s.points * directions.middleCols(j0, w);
    for (Eigen::Index j = 0; j < w; ++j) out(j0 + j) = zp_from_projections(y.col(j), p);
  }
  return out;
}

Estimate zp_support_estimate(const SampleSet& s, double p, const Vec& theta) {
  const ZpValue h = zp_support(s, p, theta);
  Estimate e;
  e.value = h.value;
  e.n_samples = s.count();
  e.seed = s.seed;
  e.bound = Bound::mc;
  if (h.degenerate) return e;
  // Delta method on m = mean |y|^p, computed on |y|/max|y| to stay finite.
  const Vec y = (s.points * theta).cwiseAbs();
  const double top = y.maxCoeff();
  const Vec w = (y / top).array().pow(p).matrix();
  const double n = static_cast<double>(w.size());
  const double mean = w.mean();
  const double var = (w.array() - mean).square().sum() / std::max(1.0, n - 1.0);
  e.std_error = h.value * std::sqrt(var / n) / (p * mean);
  return e;
}

ConvexBody make_centroid_body(const SampleSet& s, double p) {
  check_exponent(p);
  auto samples = std::make_shared<const SampleSet>(s);
  ConvexBody::Oracles o;
  o.support = [samples, p](const Vec& theta) { return zp_support(*samples, p, theta).value; };
  o.batch_support = [samples, p](const Mat& dirs) { return zp_support(*samples, p, dirs); };
  o.support_point = [samples, p](const Vec& theta) -> Vec {
    const Vec y = samples->points * theta;
    const double h = zp_from_projections(y, p);
    if (h == 0.0) return Vec::Zero(theta.size());
    // gradient of h: (1/N) sum_i sign(y_i) (|y_i|/h)^{p-1} x_i
    Vec w(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i)
      w(i) = std::copysign(std::pow(std::abs(y(i)) / h, p - 1.0), y(i));
    return samples->points.transpose() * w / static_cast<double>(y.size());
  };
  ConvexBody::Structure st;
  st.lp_exponent = p;
  return ConvexBody(s.dim(), std::move(o), Family::centroid, true, AnalyticTable{}, std::move(st),
                    "Z_" + std::to_string(p) + "(" + s.provenance + ")");
}

MonotonicityReport zp_monotonicity_check(const SampleSet& s, double p, double q, const Mat& directions,
                                         double rel_tol) {
  if (p > q) throw ConstructionError("p", "monotonicity check needs p <= q");
  const Vec hp = zp_support(s, p, directions);
  const Vec hq = zp_support(s, q, directions);
  MonotonicityReport r;
  r.directions = static_cast<int>(directions.cols());
  for (Eigen::Index j = 0; j < hp.size(); ++j) {
    const double excess = hq(j) > 0.0 ? (hp(j) - hq(j)) / hq(j) : (hp(j) > 0.0 ? 1.0 : 0.0);
    r.max_violation = std::max(r.max_violation, excess);
    if (excess > rel_tol) ++r.violations;
  }
  return r;
}

double borell_ratio(const SampleSet& s, double p, double q, const Mat& directions) {
  if (p > q) throw ConstructionError("p", "borell_ratio needs p <= q");
  const Vec hp = zp_support(s, p, directions);
  const Vec hq = zp_support(s, q, directions);
  if ((hp.array() <= 0.0).any()) throw DegenerateError("borell_ratio: h_{Z_p} vanishes in a tested direction");
  return (hq.array() / ((q / p) * hp.array())).maxCoeff();
}

double projection_identity_check(const SampleSet& s, double p, const Subspace& f, const Mat& directions) {
  if (f.ambient() != s.dim()) throw DimensionError("projection_identity_check: subspace dimension mismatch");
  const Mat coords = f.basis.transpose() * directions;
  const Mat residual = directions - f.basis * coords;
  for (Eigen::Index j = 0; j < directions.cols(); ++j) {
    if (residual.col(j).norm() > 1e-10 * std::max(1.0, directions.col(j).norm()))
      throw DimensionError("projection_identity_check: direction " + std::to_string(j) + " is not in F");
  }
  const SampleSet projected = project_samples(s, f);
  const Vec ambient = zp_support(s, p, directions);
  const Vec reduced = zp_support(projected, p, coords);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < ambient.size(); ++j) {
    const double scale = std::max(std::abs(ambient(j)), std::numeric_limits<double>::min());
    worst = std::max(worst, std::abs(ambient(j) - reduced(j)) / scale);
  }
  return worst;
}

RatioRange zn_vs_symhull(const ConvexBody& k, const Mat& directions, Eigen::Index count, std::uint64_t seed) {
  if (k.dim() > 16) throw ConstructionError("dim", "zn_vs_symhull is limited to dim <= 16");
  const SampleSet s = draw_samples(make_uniform(k), count, seed);
  const Vec hz = zp_support(s, static_cast<double>(k.dim()), directions);
  const Vec hs = sym_hull(k).support(directions);
  const Vec ratio = hz.array() / hs.array();
  return RatioRange{ratio.minCoeff(), ratio.maxCoeff()};
}

}  // namespace isoconv
