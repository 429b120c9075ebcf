#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "isoconv/body.hpp"
#include "isoconv/random.hpp"
#include "isoconv/subspace.hpp"

namespace isoconv {

enum class MeasureFamily { uniform_body, gaussian, exponential_product, pushforward, product };

std::string to_string(MeasureFamily f);

/// N points in R^dim (one per row) plus the seed that produced them.
struct SampleSet {
  Mat points;
  std::uint64_t seed = 0;
  std::string provenance;
  /// True when drawn by MCMC rather than an exact sampler.
  bool approximate = false;

  int dim() const { return static_cast<int>(points.cols()); }
  Eigen::Index count() const { return points.rows(); }
};

/// A log-concave probability measure represented by a seeded sampler.
class LogConcaveMeasure {
 public:
  /// Fills every row of `rows` with an independent draw.
  using ChunkSampler = std::function<void(Rng&, Eigen::Ref<Mat> rows)>;

  struct Analytic {
    std::optional<double> density_sup;
    std::optional<Vec> mean;
    std::optional<Mat> covariance;
  };

  LogConcaveMeasure(int dim, MeasureFamily family, ChunkSampler sampler, Analytic analytic,
                    std::string label, bool approximate = false);

  int dim() const { return dim_; }
  MeasureFamily family() const { return family_; }
  const std::string& label() const { return label_; }
  bool approximate() const { return approximate_; }
  const std::optional<double>& density_sup() const { return analytic_.density_sup; }
  const std::optional<Vec>& analytic_mean() const { return analytic_.mean; }
  const std::optional<Mat>& analytic_cov() const { return analytic_.covariance; }
  const ChunkSampler& sampler() const { return sampler_; }

 private:
  int dim_;
  MeasureFamily family_;
  ChunkSampler sampler_;
  Analytic analytic_;
  std::string label_;
  bool approximate_;
};

struct HitAndRunOptions {
  /// Defaults (0) resolve to burn_in = 10 dim^2 and thin = dim.
  int burn_in = 0;
  int thin = 0;
  /// Interior starting point; defaults to the analytic barycenter or origin.
  std::optional<Vec> start;
};

/// Standard Gaussian, or N(0, diag(variances)) when variances are given.
LogConcaveMeasure make_gaussian(int dim, const Vec& variances = Vec());
/// Independent symmetric exponential (Laplace) coordinates, density 2^{-n} e^{-|x|_1}.
LogConcaveMeasure make_exponential_product(int dim);
/// Uniform measure on K. Exact samplers exist for balls, cubes, lp-balls,
/// cross-polytopes, ellipsoids and their scalings, linear images and products.
/// Other bodies need `allow_mcmc`, which selects hit-and-run.
LogConcaveMeasure make_uniform(const ConvexBody& k, bool allow_mcmc = false,
                               const HitAndRunOptions& mcmc = {});
/// Law of T x + shift for x ~ mu.
LogConcaveMeasure affine_image(const LogConcaveMeasure& mu, const LinearMap& t, const Vec& shift = Vec());
/// Law of (x, y) for independent x ~ mu, y ~ nu.
LogConcaveMeasure product_measure(const LogConcaveMeasure& mu, const LogConcaveMeasure& nu);
/// pi_F mu: law of the coordinates of P_F x.
LogConcaveMeasure project_measure(const LogConcaveMeasure& mu, const Subspace& f);
/// Affine image with barycenter 0 and covariance I, from the analytic moments.
LogConcaveMeasure isotropic_normalization(const LogConcaveMeasure& mu);

/// Deterministic in (mu, count, seed): chunk i of kChunkRows rows is drawn
/// from a generator seeded with hash64(seed, i).
SampleSet draw_samples(const LogConcaveMeasure& mu, Eigen::Index count, std::uint64_t seed);

/// Approximately uniform samples on a body with a membership oracle. One
/// chain per chunk; results are marked approximate.
SampleSet hit_and_run(const ConvexBody& k, Eigen::Index count, std::uint64_t seed,
                      const HitAndRunOptions& options = {});

/// Coordinates of P_F x for each sample: an empirical sample of pi_F mu.
SampleSet project_samples(const SampleSet& s, const Subspace& f);

/// Applies x -> T x + shift to every sample.
SampleSet transform_samples(const SampleSet& s, const LinearMap& t, const Vec& shift = Vec());

}  // namespace isoconv
