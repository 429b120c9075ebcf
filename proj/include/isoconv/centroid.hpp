#pragma once

#include "isoconv/body.hpp"
#include "isoconv/estimate.hpp"
#include "isoconv/measure.hpp"
#include "isoconv/subspace.hpp"

namespace isoconv {

/// Exponents above this are evaluated in the log domain.
inline constexpr double kLogDomainThreshold = 32.0;
inline constexpr double kMaxExponent = 1048576.0;  // 2^20

struct ZpValue {
  double value = 0.0;
  /// Every <x_i, theta> vanished.
  bool degenerate = false;
};

/// h_{Z_p}(theta) = ((1/N) sum_i |<x_i, theta>|^p)^{1/p} on the empirical measure.
ZpValue zp_support(const SampleSet& s, double p, const Vec& theta);
/// Support values for every column of `directions`.
Vec zp_support(const SampleSet& s, double p, const Mat& directions);
/// As zp_support with a delta-method standard error for the underlying measure.
Estimate zp_support_estimate(const SampleSet& s, double p, const Vec& theta);

namespace detail {
double zp_direct(const Eigen::Ref<const Vec>& projections, double p);
double zp_log_domain(const Eigen::Ref<const Vec>& projections, double p);
}  // namespace detail

/// Z_p of the empirical measure as a ConvexBody (support, batch support and
/// support point; no membership oracle).
ConvexBody make_centroid_body(const SampleSet& s, double p);

struct MonotonicityReport {
  /// max over directions of (h_p - h_q) / h_q, clipped at 0.
  double max_violation = 0.0;
  int violations = 0;
  int directions = 0;
};

/// Checks h_{Z_p} <= h_{Z_q} for p <= q on every column of `directions`
/// (power-mean inequality, exact on the empirical measure up to `rel_tol`).
MonotonicityReport zp_monotonicity_check(const SampleSet& s, double p, double q, const Mat& directions,
                                         double rel_tol = 1e-12);

/// max over directions of h_{Z_q} / ((q/p) h_{Z_p}).
double borell_ratio(const SampleSet& s, double p, double q, const Mat& directions);

/// Max relative deviation between h_{Z_p(S)}(theta) and h_{Z_p(P_F S)}(B^T theta)
/// for ambient directions theta in F (columns of `directions`).
double projection_identity_check(const SampleSet& s, double p, const Subspace& f, const Mat& directions);

struct RatioRange {
  double min = 0.0;
  double max = 0.0;
};

/// Range of h_{Z_n(lambda_K)} / h_{conv(K u -K)} over `directions`, with
/// Z_n computed from `count` exact samples of the uniform measure on K.
RatioRange zn_vs_symhull(const ConvexBody& k, const Mat& directions, Eigen::Index count, std::uint64_t seed);

}  // namespace isoconv
