#pragma once

#include <cstdint>
#include <vector>

#include "isoconv/body.hpp"
#include "isoconv/bounds.hpp"
#include "isoconv/estimate.hpp"
#include "isoconv/grassmann.hpp"

namespace isoconv {

inline constexpr Eigen::Index kDefaultSphereSamples = 10000;

/// M*(K): average of h_K over uniform directions on the sphere, SE = sd/sqrt(N).
/// Exact for Euclidean balls (and their scalings).
Estimate mean_width(const ConvexBody& k, Eigen::Index sphere_samples = kDefaultSphereSamples,
                    std::uint64_t seed = 0);

struct UrysohnResult {
  Estimate mstar;
  Estimate volrad;
  bool pass = false;
};

/// Checks M*(K) + 3 SE >= volrad(K) for a body in R^k, k <= 6.
UrysohnResult urysohn_check(const ConvexBody& k, Eigen::Index sphere_samples = kDefaultSphereSamples,
                            std::uint64_t seed = 0, const VolumeOptions& volume = {});

inline constexpr int kMaxCoveringDim = 4;

struct CoveringOptions {
  /// Approximate number of grid points in the cloud that stands in for K.
  Eigen::Index grid_points = 40000;
  /// Lloyd-style minimax passes after the farthest-point pass.
  int refine_passes = 8;
};

/// Greedy covering of K by Euclidean balls. radius[m-1] is a certified
/// upper bound on the smallest r with N(K, r B) <= m.
struct CoveringProfile {
  std::vector<double> radius;
  /// Slack added to the cloud covering radius to cover all of K.
  double grid_slack = 0.0;

  /// Upper bound on log N(K, r B); infinity when r is below every radius.
  double log_count(double r) const;
};

CoveringProfile greedy_covering(const ConvexBody& k, int max_centers, const CoveringOptions& options = {});

struct EntropyBound {
  int index = 0;
  double lower = 0.0;
  double upper = 0.0;
  /// True when lower == upper is the exact value.
  bool exact = false;
};

/// Bounds on e_j(K), j = 0..max_index, for dim(K) <= 4: the upper bound from
/// a greedy covering with 2^j balls, the lower bound volrad(K) 2^{-j/dim}.
/// In 1-D both equal the exact value |K| / 2^{j+1}.
std::vector<EntropyBound> entropy_numbers(const ConvexBody& k, int max_index,
                                          const CoveringOptions& options = {});

/// Where a v_k term of the Milman-Pisier sum came from.
enum class VkSource { analytic, measured, prop31 };

struct MpComparison {
  /// sqrt(n) M*(K).
  Estimate lhs;
  /// sum_k Rad(k, p) v_k / sqrt(k), split by source.
  double rhs = 0.0;
  double rhs_measured = 0.0;
  double rhs_analytic = 0.0;
  /// rhs / lhs; recorded, not asserted.
  double ratio = 0.0;
  std::vector<Estimate> vk;
  std::vector<VkSource> source;
};

/// Compares sqrt(n) M*(K) with sum_{k=1}^n Rad(k, p) v_k(K) / sqrt(k). v_k is
/// taken from the analytic table when known, estimated by vk_estimate for
/// k <= k_max (at most 6), and otherwise filled from the prop31 expression,
/// which needs `spectrum` (covariance eigenvalues, descending) and p.
MpComparison mp_comparison(const ConvexBody& k, double p, const RadModel& rad, int k_max, int trials,
                           Eigen::Index sphere_samples, std::uint64_t seed,
                           const Eigen::VectorXd& spectrum = Eigen::VectorXd());

}  // namespace isoconv
