#pragma once

#include <cstdint>

#include "isoconv/body.hpp"
#include "isoconv/estimate.hpp"
#include "isoconv/subspace.hpp"

namespace isoconv {

/// Haar-random F in G_{n,k}: QR of a Gaussian n x k matrix, with the signs
/// of R's diagonal folded into Q.
Subspace random_subspace(int n, int k, std::uint64_t seed);

/// P_F K as a body in R^k with support u -> h_K(B u).
ConvexBody project_body(const ConvexBody& k, const Subspace& f);

enum class VolumeMethod {
  automatic,      // analytic if known, else exact in 1-D, else support_hull
  analytic,       // exact closed form; unsupported when unknown
  support_hull,   // outer polytope from sampled supports: upper bound
  inner_hull,     // hull of support points: lower bound
  membership_mc,  // Monte Carlo over a bounding box: value +- SE
};

VolumeMethod volume_method_from_string(const std::string& s);

struct VolumeOptions {
  VolumeMethod method = VolumeMethod::automatic;
  /// Support directions for the hull methods.
  Eigen::Index directions = 2000;
  /// Box samples for membership_mc.
  Eigen::Index mc_samples = 200000;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxVolumeDim = 6;

/// volrad(K) = (Vol K / Vol B_2^k)^{1/k} for a body in R^k, k <= 6.
Estimate volume_radius_lowdim(const ConvexBody& k, const VolumeOptions& options = {});

struct VolradBracket {
  double inner = 0.0;
  double outer = 0.0;
};

/// Inner and outer hull bounds from the same direction sample. Needs a
/// support-point oracle.
VolradBracket volume_radius_bracket(const ConvexBody& k, Eigen::Index directions, std::uint64_t seed);

/// max over `trials` Haar subspaces F in G_{n,k} of volrad(P_F K); a lower
/// estimate of v_k(K). k = n evaluates volrad(K) directly.
Estimate vk_estimate(const ConvexBody& body, int k, int trials, std::uint64_t seed,
                     const VolumeOptions& options = {});

/// min over `trials` Haar subspaces F in G_{n,m} of M*(P_F K); an upper
/// estimate of M*_m(K). m = n evaluates M*(K) directly.
Estimate mstar_projected(const ConvexBody& body, int m, int trials, std::uint64_t seed,
                         Eigen::Index sphere_samples = 10000);

}  // namespace isoconv
