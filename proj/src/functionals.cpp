#include "isoconv/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isoconv/error.hpp"
#include "isoconv/random.hpp"

namespace isoconv {

namespace {

constexpr Eigen::Index kDirectionBlock = 16384;

// Minimum enclosing ball center of the given cloud columns (Badoiu-Clarkson).
Vec enclosing_center(const Mat& cloud, const std::vector<Eigen::Index>& members, const Vec& start) {
  Vec c = start;
  for (int t = 1; t <= 64; ++t) {
    Eigen::Index far = members.front();
    double best = -1.0;
    for (Eigen::Index i : members) {
      const double d = (cloud.col(i) - c).squaredNorm();
      if (d > best) {
        best = d;
        far = i;
      }
    }
    c += (cloud.col(far) - c) / (t + 1.0);
  }
  return c;
}

// Covering radius of the cloud by `centers`, with the nearest-center assignment.
double assign(const Mat& cloud, const Mat& centers, std::vector<int>& owner) {
  double radius = 0.0;
  owner.assign(static_cast<std::size_t>(cloud.cols()), 0);
  for (Eigen::Index i = 0; i < cloud.cols(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centers.cols(); ++c) {
      const double d = (cloud.col(i) - centers.col(c)).squaredNorm();
      if (d < best) {
        best = d;
        owner[static_cast<std::size_t>(i)] = static_cast<int>(c);
      }
    }
    radius = std::max(radius, best);
  }
  return std::sqrt(radius);
}

double refine(const Mat& cloud, Mat centers, int passes) {
  std::vector<int> owner;
  double best = assign(cloud, centers, owner);
  for (int pass = 0; pass < passes; ++pass) {
    std::vector<std::vector<Eigen::Index>> clusters(static_cast<std::size_t>(centers.cols()));
    for (Eigen::Index i = 0; i < cloud.cols(); ++i) clusters[static_cast<std::size_t>(owner[i])].push_back(i);
    for (Eigen::Index c = 0; c < centers.cols(); ++c) {
      const auto& members = clusters[static_cast<std::size_t>(c)];
      if (!members.empty()) centers.col(c) = enclosing_center(cloud, members, centers.col(c));
    }
    const double r = assign(cloud, centers, owner);
    if (!(r < best * (1.0 - 1e-6))) {
      best = std::min(best, r);
      break;
    }
    best = r;
  }
  return best;
}

}  // namespace

Estimate mean_width(const ConvexBody& k, Eigen::Index sphere_samples, std::uint64_t seed) {
  if (sphere_samples < 100) throw ConstructionError("sphere_samples", "must be >= 100");
  Estimate e;
  e.seed = seed;
  if (k.analytic().mean_width && (k.family() == Family::ball || k.family() == Family::scaled)) {
    e.value = *k.analytic().mean_width;
    e.bound = Bound::exact;
    return e;
  }
  // Blocks of directions come from independent sub-seeds so memory stays
  // bounded; sums are accumulated in block order.
  double sum = 0.0, sum_sq = 0.0;
  const Eigen::Index blocks = (sphere_samples + kDirectionBlock - 1) / kDirectionBlock;
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index count = std::min(kDirectionBlock, sphere_samples - b * kDirectionBlock);
    const Mat dirs = random_directions(k.dim(), count, blocks == 1 ? seed : hash64(seed, b));
    const Vec h = k.support(dirs);
    sum += h.sum();
    sum_sq += h.squaredNorm();
  }
  const double n = static_cast<double>(sphere_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  e.value = mean;
  e.std_error = std::sqrt(var / n);
  e.n_samples = sphere_samples;
  e.bound = Bound::mc;
  return e;
}

UrysohnResult urysohn_check(const ConvexBody& k, Eigen::Index sphere_samples, std::uint64_t seed,
                            const VolumeOptions& volume) {
  UrysohnResult r;
  r.mstar = mean_width(k, sphere_samples, seed);
  VolumeOptions vo = volume;
  if (vo.seed == 0) vo.seed = hash64(seed, 1);
  r.volrad = volume_radius_lowdim(k, vo);
  const double slack = 3.0 * std::hypot(r.mstar.std_error, r.volrad.std_error);
  r.pass = r.mstar.value + slack >= r.volrad.value;
  return r;
}

double CoveringProfile::log_count(double r) const {
  for (std::size_t m = 0; m < radius.size(); ++m)
    if (radius[m] <= r) return std::log(static_cast<double>(m + 1));
  return std::numeric_limits<double>::infinity();
}

CoveringProfile greedy_covering(const ConvexBody& k, int max_centers, const CoveringOptions& options) {
  const int d = k.dim();
  if (d > kMaxCoveringDim)
    throw DimensionError("greedy_covering: dimension " + std::to_string(d) + " exceeds " +
                         std::to_string(kMaxCoveringDim));
  if (max_centers < 1) throw ConstructionError("max_centers", "must be >= 1");
  CoveringProfile profile;
  profile.radius.resize(static_cast<std::size_t>(max_centers));

  if (d == 1) {
    const double len = k.support(Vec(Vec::Ones(1))) + k.support(Vec(-Vec::Ones(1)));
    for (int m = 1; m <= max_centers; ++m) profile.radius[m - 1] = len / (2.0 * m);
    return profile;
  }
  if (!k.has_membership())
    throw UnsupportedError("greedy_covering: '" + k.label() + "' has no membership oracle");
  const auto& a = k.analytic();
  if (!a.inradius || !a.circumradius)
    throw UnsupportedError("greedy_covering: '" + k.label() + "' needs analytic in- and circumradius");
  const double r_in = *a.inradius;
  const double r_out = *a.circumradius;

  Vec lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    hi(i) = k.support(Vec(Vec::Unit(d, i)));
    lo(i) = -k.support(Vec(-Vec::Unit(d, i)));
  }
  const double step = std::pow((hi - lo).prod() / static_cast<double>(options.grid_points), 1.0 / d);
  Eigen::VectorXi counts(d);
  for (int i = 0; i < d; ++i) counts(i) = std::max(1, static_cast<int>(std::ceil((hi(i) - lo(i)) / step)));
  std::vector<Vec> inside;
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(d);
  for (;;) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x(i) = lo(i) + (idx(i) + 0.5) * (hi(i) - lo(i)) / counts(i);
    if (k.contains(x)) inside.push_back(x);
    int i = 0;
    while (i < d && ++idx(i) == counts(i)) idx(i++) = 0;
    if (i == d) break;
  }
  if (inside.empty()) throw DegenerateError("greedy_covering: empty grid cloud");
  Mat cloud(d, static_cast<Eigen::Index>(inside.size()));
  for (std::size_t i = 0; i < inside.size(); ++i) cloud.col(static_cast<Eigen::Index>(i)) = inside[i];

  // Every x in K has a point of (1 - s) K with an inscribed ball of radius
  // s r_in >= half the cell diagonal within s r_out, and that ball holds a
  // grid point of the cloud.
  double half_diag = 0.0;
  for (int i = 0; i < d; ++i) half_diag += std::pow(0.5 * (hi(i) - lo(i)) / counts(i), 2);
  half_diag = std::sqrt(half_diag);
  profile.grid_slack = half_diag * (1.0 + r_out / r_in);

  // Farthest-point ordering, seeded at the cloud point nearest the origin.
  const Eigen::Index pts = cloud.cols();
  Eigen::Index first = 0;
  cloud.colwise().squaredNorm().minCoeff(&first);
  Vec dist = (cloud.colwise() - cloud.col(first)).colwise().norm().transpose();
  Mat centers(d, max_centers);
  centers.col(0) = cloud.col(first);
  std::vector<double> cloud_radius(static_cast<std::size_t>(max_centers));
  for (int m = 1; m <= max_centers; ++m) {
    Eigen::Index far = 0;
    cloud_radius[m - 1] = dist.maxCoeff(&far);
    if (m == max_centers) break;
    centers.col(m) = cloud.col(far);
    for (Eigen::Index i = 0; i < pts; ++i) dist(i) = std::min(dist(i), (cloud.col(i) - cloud.col(far)).norm());
  }
  for (int m = 1; m <= max_centers; m *= 2) {
    if (options.refine_passes > 0)
      cloud_radius[m - 1] =
          std::min(cloud_radius[m - 1], refine(cloud, centers.leftCols(m), options.refine_passes));
    if (m > max_centers / 2) break;
  }
  double running = r_out;
  for (int m = 1; m <= max_centers; ++m) {
    running = std::min(running, cloud_radius[m - 1] + profile.grid_slack);
    profile.radius[m - 1] = running;
  }
  return profile;
}

std::vector<EntropyBound> entropy_numbers(const ConvexBody& k, int max_index, const CoveringOptions& options) {
  const int d = k.dim();
  if (d > kMaxCoveringDim)
    throw DimensionError("entropy_numbers: dimension " + std::to_string(d) + " exceeds " +
                         std::to_string(kMaxCoveringDim));
  if (max_index < 0 || max_index > 12) throw ConstructionError("max_index", "must be in [0, 12]");
  const CoveringProfile profile = greedy_covering(k, 1 << max_index, options);

  // A volume lower bound keeps the volumetric estimate rigorous.
  VolumeOptions vo;
  if (!k.analytic().volume && d > 1) vo.method = VolumeMethod::inner_hull;
  const double volrad = volume_radius_lowdim(k, vo).value;

  std::vector<EntropyBound> out;
  for (int j = 0; j <= max_index; ++j) {
    EntropyBound b;
    b.index = j;
    b.upper = profile.radius[static_cast<std::size_t>((1 << j) - 1)];
    if (d == 1) {
      b.lower = b.upper;
      b.exact = true;
    } else {
      b.lower = std::min(b.upper, volrad * std::pow(2.0, -static_cast<double>(j) / d));
    }
    out.push_back(b);
  }
  return out;
}

MpComparison mp_comparison(const ConvexBody& k, double p, const RadModel& rad, int k_max, int trials,
                           Eigen::Index sphere_samples, std::uint64_t seed, const Eigen::VectorXd& spectrum) {
  const int n = k.dim();
  if (k_max < 0 || k_max > kMaxVolumeDim)
    throw ConstructionError("k_max", "measured v_k needs k_max <= " + std::to_string(kMaxVolumeDim));
  MpComparison r;
  r.lhs = mean_width(k, sphere_samples, hash64(seed, 0));
  r.lhs.value *= std::sqrt(static_cast<double>(n));
  r.lhs.std_error *= std::sqrt(static_cast<double>(n));
  const auto& vk_table = k.analytic().vk;
  for (int j = 1; j <= n; ++j) {
    Estimate v;
    VkSource src;
    if (vk_table) {
      v = Estimate{vk_table(j), 0.0, 0, 0, Bound::exact};
      src = VkSource::analytic;
    } else if (j <= k_max) {
      v = vk_estimate(k, j, trials, hash64(seed, static_cast<std::uint64_t>(j)));
      src = VkSource::measured;
    } else {
      if (spectrum.size() == 0)
        throw ConstructionError("spectrum", "v_" + std::to_string(j) + " is neither analytic nor measured");
      BoundParams bp;
      bp.p = p;
      bp.k = j;
      bp.spectrum = spectrum;
      v = Estimate{bound_rhs(BoundKind::prop31, bp).value, 0.0, 0, 0, Bound::upper};
      src = VkSource::prop31;
    }
    const double term = rad(j, p) * v.value / std::sqrt(static_cast<double>(j));
    r.rhs += term;
    (src == VkSource::measured ? r.rhs_measured : r.rhs_analytic) += term;
    r.vk.push_back(v);
    r.source.push_back(src);
  }
  r.ratio = r.rhs / r.lhs.value;
  return r;
}

}  // namespace isoconv
