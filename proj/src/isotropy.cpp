#include "isoconv/isotropy.hpp"

#include <cmath>

#include "isoconv/error.hpp"

namespace isoconv {

namespace {

constexpr double kDegenerateRatio = 1e-10;

}  // namespace

SampleSet Whitening::apply(const SampleSet& s) const {
  SampleSet out = s;
  out.points = (s.points.rowwise() + shift.transpose()) * map.matrix.transpose();
  out.provenance = "whitened(" + s.provenance + ")";
  return out;
}

MomentSummary estimate_moments(const SampleSet& s) {
  const int n = s.dim();
  const Eigen::Index count = s.count();
  if (count < n + 1)
    throw ConstructionError("samples", "estimate_moments needs at least dim+1 = " + std::to_string(n + 1) +
                                           " samples, got " + std::to_string(count));
  if (!s.points.allFinite()) throw DegenerateError("estimate_moments: non-finite sample coordinates");

  MomentSummary m;
  m.n_used = count;
  m.seed = s.seed;
  m.barycenter = s.points.colwise().mean().transpose();
  const Mat centered = s.points.rowwise() - m.barycenter.transpose();
  m.covariance = (centered.transpose() * centered) / static_cast<double>(count);
  m.covariance = 0.5 * (m.covariance + m.covariance.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Mat> eig(m.covariance);
  if (eig.info() != Eigen::Success) throw DegenerateError("estimate_moments: eigensolver failed");
  // Eigen returns ascending order.
  m.eigenvalues = eig.eigenvalues().reverse();
  m.eigenvectors = eig.eigenvectors().rowwise().reverse();

  const double top = m.eigenvalues(0);
  double log_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double lam = m.eigenvalues(i);
    if (lam < -kDegenerateRatio * std::abs(top))
      throw DegenerateError("estimate_moments: covariance has a negative eigenvalue " + std::to_string(lam));
    if (lam <= kDegenerateRatio * top) {
      m.degenerate = true;
      lam = std::max(lam, 0.0);
    }
    log_sum += std::log(lam);
  }
  m.det_root = std::exp(log_sum / (2.0 * n));
  return m;
}

Whitening whitening_map(const MomentSummary& m) {
  const int n = m.dim();
  const double smallest = m.eigenvalues(n - 1);
  if (!(smallest > kDegenerateRatio * m.eigenvalues(0)))
    throw DegenerateError("whitening_map: covariance is degenerate (smallest eigenvalue " +
                          std::to_string(smallest) + ")");
  const Vec inv_sqrt = m.eigenvalues.cwiseSqrt().cwiseInverse();
  Mat t = m.eigenvectors * inv_sqrt.asDiagonal() * m.eigenvectors.transpose();
  t = 0.5 * (t + t.transpose()).eval();
  return Whitening{LinearMap(std::move(t)), -m.barycenter};
}

IsotropicConstant isotropic_constant(const MomentSummary& m, double density_sup) {
  if (!(density_sup > 0.0) || !std::isfinite(density_sup))
    throw ConstructionError("density_sup", "must be finite and > 0");
  const double n = m.dim();
  return IsotropicConstant{std::pow(density_sup, 1.0 / n) * m.det_root, density_sup, m.det_root};
}

IsotropicConstant isotropic_constant(const MomentSummary& m, const LogConcaveMeasure& mu) {
  if (!mu.density_sup())
    throw UnsupportedError("isotropic_constant: '" + mu.label() + "' has no analytic density bound");
  return isotropic_constant(m, *mu.density_sup());
}

Estimate isotropic_constant_estimate(const SampleSet& s, double density_sup, int batches) {
  const MomentSummary full = estimate_moments(s);
  Estimate e;
  e.value = isotropic_constant(full, density_sup).value;
  e.n_samples = s.count();
  e.seed = s.seed;
  e.bound = Bound::mc;
  const Eigen::Index per = s.count() / std::max(batches, 1);
  if (batches < 2 || per < s.dim() + 1) return e;
  double sum = 0.0, sum_sq = 0.0;
  for (int b = 0; b < batches; ++b) {
    SampleSet part;
    part.points = s.points.middleRows(b * per, per);
    const double v = isotropic_constant(estimate_moments(part), density_sup).value;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / batches;
  const double var = std::max(0.0, (sum_sq - batches * mean * mean) / (batches - 1));
  e.std_error = std::sqrt(var / batches);
  return e;
}

double affine_invariance_check(const ConvexBody& k, const LinearMap& t, Eigen::Index count, std::uint64_t seed) {
  if (t.rows() != k.dim() || t.cols() != k.dim())
    throw DimensionError("affine_invariance_check: map must be square of the body's dimension");
  const double det = t.matrix.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-10)
    throw ConstructionError("T", "map must preserve volume (|det T| = 1), got det " + std::to_string(det));
  const LogConcaveMeasure mu = make_uniform(k);
  if (!mu.density_sup()) throw UnsupportedError("affine_invariance_check: body has no analytic volume");
  const SampleSet s = draw_samples(mu, count, seed);
  const SampleSet image = transform_samples(s, t);
  // Density sup is unchanged by a volume-preserving map.
  const double l_k = isotropic_constant(estimate_moments(s), *mu.density_sup()).value;
  const double l_tk = isotropic_constant(estimate_moments(image), *mu.density_sup()).value;
  return l_tk / l_k;
}

}  // namespace isoconv
