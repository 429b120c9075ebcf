#include "isoconv/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "isoconv/error.hpp"
#include "isoconv/functionals.hpp"
#include "isoconv/hull.hpp"
#include "isoconv/parallel.hpp"
#include "isoconv/random.hpp"

namespace isoconv {

namespace {

Mat orthonormalize(const Mat& a) {
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.cols());
  const Mat r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (std::abs(r(j, j)) <= 1e-12 * std::max(1.0, a.col(j).norm()))
      throw DegenerateError("subspace: spanning columns are linearly dependent");
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// Sphere directions augmented with +-e_i so the outer polytope is bounded.
Mat hull_directions(int k, Eigen::Index count, std::uint64_t seed) {
  Mat dirs(k, count + 2 * k);
  dirs.leftCols(count) = random_directions(k, count, seed);
  for (int i = 0; i < k; ++i) {
    dirs.col(count + 2 * i) = Vec::Unit(k, i);
    dirs.col(count + 2 * i + 1) = -Vec::Unit(k, i);
  }
  return dirs;
}

// Center used to shift the body so the origin is interior.
Vec box_center(const ConvexBody& k) {
  Vec c(k.dim());
  for (int i = 0; i < k.dim(); ++i)
    c(i) = 0.5 * (k.support(Vec(Vec::Unit(k.dim(), i))) - k.support(Vec(-Vec::Unit(k.dim(), i))));
  return c;
}

double volrad_from_volume(double volume, int k) {
  return std::exp((std::log(volume) - log_unit_ball_volume(k)) / k);
}

double outer_volume(const ConvexBody& k, const Mat& dirs) {
  const Vec c = box_center(k);
  Vec offsets = k.support(dirs) - dirs.transpose() * c;
  if ((offsets.array() <= 0.0).any())
    throw DegenerateError("volume_radius: body '" + k.label() + "' has empty interior");
  return halfspace_intersection_volume(dirs, offsets);
}

double inner_volume(const ConvexBody& k, const Mat& dirs) {
  if (!k.has_support_point())
    throw UnsupportedError("volume_radius: inner hull needs a support-point oracle on '" + k.label() + "'");
  Mat pts(k.dim(), dirs.cols());
  for (Eigen::Index j = 0; j < dirs.cols(); ++j) pts.col(j) = k.support_point(Vec(dirs.col(j)));
  return ConvexHull(pts).volume();
}

Estimate membership_mc(const ConvexBody& k, const VolumeOptions& o) {
  if (!k.has_membership())
    throw UnsupportedError("volume_radius: membership-mc needs a membership oracle on '" + k.label() + "'");
  if (o.mc_samples < 1) throw ConstructionError("mc_samples", "must be >= 1");
  const int d = k.dim();
  Vec lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    hi(i) = k.support(Vec(Vec::Unit(d, i)));
    lo(i) = -k.support(Vec(-Vec::Unit(d, i)));
  }
  const double box = (hi - lo).prod();
  const Eigen::Index chunks = (o.mc_samples + kChunkRows - 1) / kChunkRows;
  std::vector<Eigen::Index> hits(static_cast<std::size_t>(chunks), 0);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    Rng rng = make_rng(o.seed, c);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Eigen::Index begin = static_cast<Eigen::Index>(c) * kChunkRows;
    const Eigen::Index end = std::min(o.mc_samples, begin + kChunkRows);
    Vec x(d);
    Eigen::Index count = 0;
    for (Eigen::Index r = begin; r < end; ++r) {
      for (int i = 0; i < d; ++i) x(i) = lo(i) + (hi(i) - lo(i)) * unif(rng);
      if (k.contains(x)) ++count;
    }
    hits[c] = count;
  });
  Eigen::Index total = 0;
  for (auto h : hits) total += h;
  const double n = static_cast<double>(o.mc_samples);
  const double frac = static_cast<double>(total) / n;
  if (total == 0) throw DegenerateError("volume_radius: no Monte Carlo point fell inside '" + k.label() + "'");
  const double vol = box * frac;
  const double vol_se = box * std::sqrt(frac * (1.0 - frac) / n);
  Estimate e;
  e.value = volrad_from_volume(vol, d);
  e.std_error = e.value * vol_se / (d * vol);
  e.n_samples = o.mc_samples;
  e.seed = o.seed;
  e.bound = Bound::mc;
  return e;
}

}  // namespace

Subspace subspace_from_columns(const Mat& spanning) {
  if (spanning.cols() < 1 || spanning.cols() > spanning.rows())
    throw DimensionError("subspace_from_columns: need 1 <= k <= n columns");
  return Subspace{orthonormalize(spanning), 0};
}

Subspace random_subspace(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 1 || k > n)
    throw DimensionError("random_subspace: need 1 <= k <= n, got n=" + std::to_string(n) +
                         " k=" + std::to_string(k));
  Rng rng = make_rng(seed, 0);
  std::normal_distribution<double> normal;
  Mat g(n, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  return Subspace{orthonormalize(g), seed};
}

ConvexBody project_body(const ConvexBody& k, const Subspace& f) {
  if (f.ambient() != k.dim())
    throw DimensionError("project_body: subspace lives in R^" + std::to_string(f.ambient()) + ", body in R^" +
                         std::to_string(k.dim()));
  const Mat b = f.basis;
  const std::string label = "P_F(" + k.label() + ")";
  const bool full = f.k() == f.ambient();

  if (k.family() == Family::ball) {
    ConvexBody ball = make_ball(f.k());
    return ball.with_metadata(ball.analytic(), label);
  }
  if (k.family() == Family::ellipsoid) {
    // P_F (A B_2^n) is the ellipsoid (B^T A A^T B)^{1/2} B_2^k.
    const Mat m = b.transpose() * k.structure().transform;
    Eigen::SelfAdjointEigenSolver<Mat> es(m * m.transpose());
    const Mat root = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                     es.eigenvectors().transpose();
    ConvexBody e = make_ellipsoid(root);
    return e.with_metadata(e.analytic(), label);
  }

  ConvexBody::Oracles o;
  o.support = [k, b](const Vec& u) { return k.support(Vec(b * u)); };
  o.batch_support = [k, b](const Mat& dirs) { return k.support(Mat(b * dirs)); };
  if (k.has_support_point())
    o.support_point = [k, b](const Vec& u) -> Vec { return b.transpose() * k.support_point(Vec(b * u)); };
  if (full && k.has_membership()) o.membership = [k, b](const Vec& u) { return k.contains(Vec(b * u)); };

  AnalyticTable a;
  const AnalyticTable& src = k.analytic();
  a.mean_width = full ? src.mean_width : std::nullopt;
  a.circumradius = src.circumradius;
  if (full) {
    // A rotation preserves every metric quantity.
    a.volume = src.volume;
    a.isotropic_constant = src.isotropic_constant;
    a.inradius = src.inradius;
    a.vk = src.vk;
  }
  ConvexBody::Structure st;
  st.transform = b;
  return ConvexBody(f.k(), std::move(o), Family::projection, k.symmetric(), std::move(a), std::move(st), label);
}

VolumeMethod volume_method_from_string(const std::string& s) {
  if (s == "auto" || s == "automatic") return VolumeMethod::automatic;
  if (s == "analytic") return VolumeMethod::analytic;
  if (s == "support-hull") return VolumeMethod::support_hull;
  if (s == "inner-hull") return VolumeMethod::inner_hull;
  if (s == "membership-mc") return VolumeMethod::membership_mc;
  throw ConstructionError("method", "unknown volume method '" + s + "'");
}

Estimate volume_radius_lowdim(const ConvexBody& k, const VolumeOptions& o) {
  const int d = k.dim();
  if (d > kMaxVolumeDim)
    throw DimensionError("volume_radius_lowdim: dimension " + std::to_string(d) + " exceeds " +
                         std::to_string(kMaxVolumeDim));
  Estimate e;
  e.seed = o.seed;
  VolumeMethod method = o.method;
  if (method == VolumeMethod::automatic) {
    if (k.analytic().volume || d == 1)
      method = VolumeMethod::analytic;
    else
      method = VolumeMethod::support_hull;
  }
  switch (method) {
    case VolumeMethod::analytic: {
      double vol;
      if (k.analytic().volume) {
        vol = *k.analytic().volume;
      } else if (d == 1) {
        vol = k.support(Vec(Vec::Ones(1))) + k.support(Vec(-Vec::Ones(1)));
      } else {
        throw UnsupportedError("volume_radius_lowdim: no analytic volume for '" + k.label() + "'");
      }
      e.value = volrad_from_volume(vol, d);
      e.bound = Bound::exact;
      return e;
    }
    case VolumeMethod::support_hull: {
      if (d == 1) return volume_radius_lowdim(k, VolumeOptions{VolumeMethod::analytic, 0, 0, o.seed});
      e.value = volrad_from_volume(outer_volume(k, hull_directions(d, o.directions, o.seed)), d);
      e.n_samples = o.directions;
      e.bound = Bound::upper;
      return e;
    }
    case VolumeMethod::inner_hull: {
      if (d == 1) return volume_radius_lowdim(k, VolumeOptions{VolumeMethod::analytic, 0, 0, o.seed});
      e.value = volrad_from_volume(inner_volume(k, hull_directions(d, o.directions, o.seed)), d);
      e.n_samples = o.directions;
      e.bound = Bound::lower;
      return e;
    }
    case VolumeMethod::membership_mc:
      return membership_mc(k, o);
    case VolumeMethod::automatic:
      break;
  }
  throw UnsupportedError("volume_radius_lowdim: unhandled method");
}

VolradBracket volume_radius_bracket(const ConvexBody& k, Eigen::Index directions, std::uint64_t seed) {
  const int d = k.dim();
  if (d > kMaxVolumeDim) throw DimensionError("volume_radius_bracket: dimension exceeds 6");
  if (d == 1) {
    const double r = volume_radius_lowdim(k, VolumeOptions{VolumeMethod::analytic, 0, 0, seed}).value;
    return {r, r};
  }
  const Mat dirs = hull_directions(d, directions, seed);
  return {volrad_from_volume(inner_volume(k, dirs), d), volrad_from_volume(outer_volume(k, dirs), d)};
}

Estimate vk_estimate(const ConvexBody& body, int k, int trials, std::uint64_t seed, const VolumeOptions& options) {
  const int n = body.dim();
  if (k < 1 || k > n) throw DimensionError("vk_estimate: need 1 <= k <= n");
  if (k > kMaxVolumeDim) throw DimensionError("vk_estimate: k exceeds 6");
  if (trials < 1) throw ConstructionError("trials", "must be >= 1");
  // Default to exact values, then inner hulls, so every trial is a lower
  // bound on the volume radius of its projection.
  auto resolve = [&](const ConvexBody& b, std::uint64_t s) {
    VolumeOptions vo = options;
    vo.seed = s;
    if (vo.method == VolumeMethod::automatic && !b.analytic().volume && b.dim() > 1 && b.has_support_point())
      vo.method = VolumeMethod::inner_hull;
    return vo;
  };
  if (k == n) {
    Estimate e = volume_radius_lowdim(body, resolve(body, hash64(seed, 0)));
    e.seed = seed;
    return e;
  }
  std::vector<double> values(static_cast<std::size_t>(trials));
  parallel_for(values.size(), [&](std::size_t t) {
    const Subspace f = random_subspace(n, k, hash64(seed, 2 * t));
    const ConvexBody projected = project_body(body, f);
    values[t] = volume_radius_lowdim(projected, resolve(projected, hash64(seed, 2 * t + 1))).value;
  });
  Estimate e;
  e.value = *std::max_element(values.begin(), values.end());
  e.n_samples = trials;
  e.seed = seed;
  e.bound = Bound::lower;
  return e;
}

Estimate mstar_projected(const ConvexBody& body, int m, int trials, std::uint64_t seed,
                         Eigen::Index sphere_samples) {
  const int n = body.dim();
  if (m < 1 || m > n) throw DimensionError("mstar_projected: need 1 <= m <= n");
  if (trials < 1) throw ConstructionError("trials", "must be >= 1");
  if (m == n) {
    Estimate e = mean_width(body, sphere_samples, hash64(seed, 0));
    e.seed = seed;
    return e;
  }
  std::vector<Estimate> values(static_cast<std::size_t>(trials));
  parallel_for(values.size(), [&](std::size_t t) {
    const Subspace f = random_subspace(n, m, hash64(seed, 2 * t));
    values[t] = mean_width(project_body(body, f), sphere_samples, hash64(seed, 2 * t + 1));
  });
  auto best = std::min_element(values.begin(), values.end(),
                               [](const Estimate& a, const Estimate& b) { return a.value < b.value; });
  Estimate e = *best;
  e.n_samples = static_cast<std::int64_t>(trials) * sphere_samples;
  e.seed = seed;
  e.bound = Bound::upper;
  return e;
}

}  // namespace isoconv
