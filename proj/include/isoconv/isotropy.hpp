#pragma once

#include <cstdint>

#include "isoconv/body.hpp"
#include "isoconv/estimate.hpp"
#include "isoconv/measure.hpp"

namespace isoconv {

/// First and second moments of an empirical measure.
struct MomentSummary {
  Vec barycenter;
  /// Covariance with divisor N.
  Mat covariance;
  /// Eigenvalues lambda_1^2 >= ... >= lambda_n^2 and matching eigenvectors.
  Vec eigenvalues;
  Mat eigenvectors;
  /// det(C)^{1/2n}, with eigenvalues clipped at zero when degenerate.
  double det_root = 0.0;
  bool degenerate = false;
  Eigen::Index n_used = 0;
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(barycenter.size()); }
};

struct Whitening {
  LinearMap map;  // C^{-1/2}
  Vec shift;      // -b; applied as x -> T (x + shift)

  /// x -> T (x - b) for every sample.
  SampleSet apply(const SampleSet& s) const;
};

struct IsotropicConstant {
  double value = 0.0;
  double density_sup = 0.0;
  double det_root = 0.0;
};

MomentSummary estimate_moments(const SampleSet& s);

/// Symmetric inverse square root of the covariance, and the barycenter shift.
Whitening whitening_map(const MomentSummary& m);

/// L = ||f||_inf^{1/n} det(Cov)^{1/2n}.
IsotropicConstant isotropic_constant(const MomentSummary& m, double density_sup);
/// Same, taking the density bound from the measure; unsupported when the
/// measure has no analytic density bound.
IsotropicConstant isotropic_constant(const MomentSummary& m, const LogConcaveMeasure& mu);

/// L with a standard error from `batches` disjoint sub-samples.
Estimate isotropic_constant_estimate(const SampleSet& s, double density_sup, int batches = 20);

/// L(TK)/L(K) on matched samples of K for a volume-preserving T.
double affine_invariance_check(const ConvexBody& k, const LinearMap& t, Eigen::Index count, std::uint64_t seed);

}  // namespace isoconv
