#include "isoconv/measure.hpp"

#include <cmath>
#include <random>

#include "isoconv/error.hpp"
#include "isoconv/parallel.hpp"

namespace isoconv {

namespace {

using PointSampler = std::function<void(Rng&, Eigen::Ref<Vec>)>;

PointSampler lp_point_sampler(int dim, double p) {
  if (std::isinf(p)) {
    return [](Rng& rng, Eigen::Ref<Vec> out) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = u(rng);
    };
  }
  // Coordinates with density proportional to exp(-|t|^p), normalized in l_p,
  // then pushed inside by the radial factor U^{1/n}.
  return [dim, p](Rng& rng, Eigen::Ref<Vec> out) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double norm_p = 0.0;
    if (p == 2.0) {
      std::normal_distribution<double> normal;
      for (int i = 0; i < dim; ++i) out(i) = normal(rng);
      norm_p = out.norm();
    } else {
      std::gamma_distribution<double> gamma(1.0 / p, 1.0);
      double sum = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double g = gamma(rng);
        const double sign = unif(rng) < 0.5 ? -1.0 : 1.0;
        out(i) = sign * std::pow(g, 1.0 / p);
        sum += g;
      }
      norm_p = std::pow(sum, 1.0 / p);
    }
    if (norm_p == 0.0) {
      out.setZero();
      return;
    }
    const double radius = std::pow(unif(rng), 1.0 / dim);
    out *= radius / norm_p;
  };
}

// Exact sampler for the uniform measure on k, or empty when none exists.
PointSampler exact_uniform_sampler(const ConvexBody& k) {
  const auto& s = k.structure();
  switch (k.family()) {
    case Family::ball:
    case Family::cube:
    case Family::cross_polytope:
    case Family::lp_ball:
      return lp_point_sampler(k.dim(), s.lp_exponent);
    case Family::ellipsoid: {
      auto ball = lp_point_sampler(k.dim(), 2.0);
      Mat a = s.transform;
      return [ball, a](Rng& rng, Eigen::Ref<Vec> out) {
        Vec tmp(out.size());
        ball(rng, tmp);
        out = a * tmp;
      };
    }
    case Family::scaled: {
      auto inner = exact_uniform_sampler(s.parts.front());
      if (!inner) return {};
      const double t = s.scale;
      return [inner, t](Rng& rng, Eigen::Ref<Vec> out) {
        inner(rng, out);
        out *= t;
      };
    }
    case Family::linear_image: {
      auto inner = exact_uniform_sampler(s.parts.front());
      if (!inner) return {};
      Mat t = s.transform;
      return [inner, t](Rng& rng, Eigen::Ref<Vec> out) {
        Vec tmp(out.size());
        inner(rng, tmp);
        out = t * tmp;
      };
    }
    case Family::product: {
      auto first = exact_uniform_sampler(s.parts[0]);
      auto second = exact_uniform_sampler(s.parts[1]);
      if (!first || !second) return {};
      const int a = s.parts[0].dim();
      const int b = s.parts[1].dim();
      return [first, second, a, b](Rng& rng, Eigen::Ref<Vec> out) {
        first(rng, out.head(a));
        second(rng, out.tail(b));
      };
    }
    default:
      return {};
  }
}

LogConcaveMeasure::ChunkSampler rows_from_points(int dim, PointSampler point) {
  return [dim, point](Rng& rng, Eigen::Ref<Mat> rows) {
    Vec tmp(dim);
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      point(rng, tmp);
      rows.row(r) = tmp.transpose();
    }
  };
}

// Largest t in [0, bound] with x + t d in K, by bisection on membership.
double chord_end(const ConvexBody& k, const Vec& x, const Vec& d, double bound) {
  if (bound <= 0.0) return 0.0;
  if (k.contains(Vec(x + bound * d))) return bound;
  double lo = 0.0, hi = bound;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * bound; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (k.contains(Vec(x + mid * d)))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

struct ResolvedHitAndRun {
  int burn_in;
  int thin;
  Vec start;
};

ResolvedHitAndRun resolve(const ConvexBody& k, const HitAndRunOptions& o) {
  if (!k.has_membership())
    throw UnsupportedError("hit_and_run: body '" + k.label() + "' has no membership oracle");
  const int n = k.dim();
  ResolvedHitAndRun r;
  r.burn_in = o.burn_in > 0 ? o.burn_in : 10 * n * n;
  r.thin = o.thin > 0 ? o.thin : n;
  if (o.burn_in < 0) throw ConstructionError("burn_in", "must be >= 1");
  if (o.thin < 0) throw ConstructionError("thin", "must be >= 1");
  if (o.start)
    r.start = *o.start;
  else if (k.analytic().barycenter)
    r.start = *k.analytic().barycenter;
  else
    r.start = Vec::Zero(n);
  if (r.start.size() != n) throw DimensionError("hit_and_run: start point dimension mismatch");
  if (!k.contains(r.start)) throw ConstructionError("start", "starting point is not in the body");
  return r;
}

LogConcaveMeasure::ChunkSampler hit_and_run_sampler(const ConvexBody& k, const ResolvedHitAndRun& cfg) {
  return [k, cfg](Rng& rng, Eigen::Ref<Mat> rows) {
    const int n = k.dim();
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec x = cfg.start;
    Vec d(n);
    auto step = [&] {
      double len = 0.0;
      do {
        for (int i = 0; i < n; ++i) d(i) = normal(rng);
        len = d.norm();
      } while (len == 0.0);
      d /= len;
      const double xd = x.dot(d);
      const double up = chord_end(k, x, d, k.support(d) - xd);
      const Vec neg = -d;
      const double down = chord_end(k, x, neg, k.support(neg) + xd);
      x += (-down + unif(rng) * (up + down)) * d;
    };
    for (int b = 0; b < cfg.burn_in; ++b) step();
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      for (int t = 0; t < cfg.thin; ++t) step();
      rows.row(r) = x.transpose();
    }
  };
}

}  // namespace

std::string to_string(MeasureFamily f) {
  switch (f) {
    case MeasureFamily::uniform_body: return "uniform-body";
    case MeasureFamily::gaussian: return "gaussian";
    case MeasureFamily::exponential_product: return "exponential-product";
    case MeasureFamily::pushforward: return "pushforward";
    case MeasureFamily::product: return "product";
  }
  return "unknown";
}

LogConcaveMeasure::LogConcaveMeasure(int dim, MeasureFamily family, ChunkSampler sampler, Analytic analytic,
                                     std::string label, bool approximate)
    : dim_(dim),
      family_(family),
      sampler_(std::move(sampler)),
      analytic_(std::move(analytic)),
      label_(std::move(label)),
      approximate_(approximate) {
  if (dim_ < 1) throw ConstructionError("dim", "measure dimension must be >= 1");
  if (!sampler_) throw ConstructionError("sampler", "a sampler is required");
}

LogConcaveMeasure make_gaussian(int dim, const Vec& variances) {
  if (dim < 1) throw ConstructionError("dim", "must be >= 1");
  Vec var = variances.size() == 0 ? Vec::Ones(dim) : variances;
  if (var.size() != dim)
    throw ConstructionError("variances", "expected " + std::to_string(dim) + " entries, got " +
                                             std::to_string(var.size()));
  if (!var.allFinite() || (var.array() <= 0.0).any())
    throw ConstructionError("variances", "variances must be finite and positive");
  const Vec sd = var.cwiseSqrt();
  LogConcaveMeasure::Analytic a;
  a.density_sup = std::exp(-0.5 * dim * std::log(2.0 * M_PI) - sd.array().log().sum());
  a.mean = Vec::Zero(dim);
  a.covariance = Mat(var.asDiagonal());
  const bool standard = variances.size() == 0;
  return LogConcaveMeasure(
      dim, MeasureFamily::gaussian,
      [sd](Rng& rng, Eigen::Ref<Mat> rows) {
        std::normal_distribution<double> normal;
        for (Eigen::Index r = 0; r < rows.rows(); ++r)
          for (Eigen::Index i = 0; i < sd.size(); ++i) rows(r, i) = sd(i) * normal(rng);
      },
      std::move(a), standard ? "gaussian:" + std::to_string(dim) : "gaussian:" + std::to_string(dim) + ":diag");
}

LogConcaveMeasure make_exponential_product(int dim) {
  if (dim < 1) throw ConstructionError("dim", "must be >= 1");
  LogConcaveMeasure::Analytic a;
  a.density_sup = std::pow(0.5, dim);
  a.mean = Vec::Zero(dim);
  a.covariance = Mat(Mat::Identity(dim, dim) * 2.0);
  return LogConcaveMeasure(
      dim, MeasureFamily::exponential_product,
      [](Rng& rng, Eigen::Ref<Mat> rows) {
        std::exponential_distribution<double> expo(1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (Eigen::Index r = 0; r < rows.rows(); ++r)
          for (Eigen::Index i = 0; i < rows.cols(); ++i) {
            const double e = expo(rng);
            rows(r, i) = unif(rng) < 0.5 ? -e : e;
          }
      },
      std::move(a), "exponential:" + std::to_string(dim));
}

LogConcaveMeasure make_uniform(const ConvexBody& k, bool allow_mcmc, const HitAndRunOptions& mcmc) {
  LogConcaveMeasure::Analytic a;
  const auto& t = k.analytic();
  if (t.volume) a.density_sup = 1.0 / *t.volume;
  a.mean = t.barycenter;
  a.covariance = t.covariance;
  if (auto exact = exact_uniform_sampler(k)) {
    return LogConcaveMeasure(k.dim(), MeasureFamily::uniform_body, rows_from_points(k.dim(), exact), std::move(a),
                             "uniform:" + k.label());
  }
  if (!allow_mcmc)
    throw UnsupportedError("no exact sampler for uniform measure on '" + k.label() +
                           "'; enable MCMC (hit-and-run) explicitly");
  // Chain output is approximate, so L is never reported from it.
  a.density_sup.reset();
  auto cfg = resolve(k, mcmc);
  return LogConcaveMeasure(k.dim(), MeasureFamily::uniform_body, hit_and_run_sampler(k, cfg), std::move(a),
                           "uniform-mcmc:" + k.label(), true);
}

LogConcaveMeasure affine_image(const LogConcaveMeasure& mu, const LinearMap& t, const Vec& shift) {
  const int n = mu.dim();
  if (t.rows() != n || t.cols() != n) throw DimensionError("affine_image: map must be square of size dim");
  const Vec b = shift.size() == 0 ? Vec::Zero(n) : shift;
  if (b.size() != n) throw DimensionError("affine_image: shift dimension mismatch");
  const double det = t.matrix.determinant();
  if (std::abs(det) == 0.0) throw DegenerateError("affine_image: singular map");
  LogConcaveMeasure::Analytic a;
  if (mu.density_sup()) a.density_sup = *mu.density_sup() / std::abs(det);
  if (mu.analytic_mean()) a.mean = Vec(t.matrix * *mu.analytic_mean() + b);
  if (mu.analytic_cov()) a.covariance = Mat(t.matrix * *mu.analytic_cov() * t.matrix.transpose());
  auto inner = mu.sampler();
  const Mat tt = t.matrix.transpose();
  const Eigen::RowVectorXd shift_row = b.transpose();
  return LogConcaveMeasure(
      n, MeasureFamily::pushforward,
      [inner, tt, shift_row](Rng& rng, Eigen::Ref<Mat> rows) {
        Mat tmp(rows.rows(), rows.cols());
        inner(rng, tmp);
        rows = (tmp * tt).rowwise() + shift_row;
      },
      std::move(a), "affine(" + mu.label() + ")", mu.approximate());
}

LogConcaveMeasure product_measure(const LogConcaveMeasure& mu, const LogConcaveMeasure& nu) {
  const int a = mu.dim(), b = nu.dim();
  LogConcaveMeasure::Analytic an;
  if (mu.density_sup() && nu.density_sup()) an.density_sup = *mu.density_sup() * *nu.density_sup();
  if (mu.analytic_mean() && nu.analytic_mean()) {
    Vec m(a + b);
    m << *mu.analytic_mean(), *nu.analytic_mean();
    an.mean = m;
  }
  if (mu.analytic_cov() && nu.analytic_cov()) {
    Mat c = Mat::Zero(a + b, a + b);
    c.topLeftCorner(a, a) = *mu.analytic_cov();
    c.bottomRightCorner(b, b) = *nu.analytic_cov();
    an.covariance = c;
  }
  auto first = mu.sampler();
  auto second = nu.sampler();
  return LogConcaveMeasure(
      a + b, MeasureFamily::product,
      [first, second, a, b](Rng& rng, Eigen::Ref<Mat> rows) {
        Mat x(rows.rows(), a), y(rows.rows(), b);
        first(rng, x);
        second(rng, y);
        rows.leftCols(a) = x;
        rows.rightCols(b) = y;
      },
      std::move(an), "product(" + mu.label() + "," + nu.label() + ")", mu.approximate() || nu.approximate());
}

LogConcaveMeasure project_measure(const LogConcaveMeasure& mu, const Subspace& f) {
  if (f.ambient() != mu.dim()) throw DimensionError("project_measure: subspace ambient dimension mismatch");
  LogConcaveMeasure::Analytic a;
  if (mu.analytic_mean()) a.mean = Vec(f.basis.transpose() * *mu.analytic_mean());
  if (mu.analytic_cov()) a.covariance = Mat(f.basis.transpose() * *mu.analytic_cov() * f.basis);
  auto inner = mu.sampler();
  const Mat basis = f.basis;
  const int n = mu.dim();
  return LogConcaveMeasure(
      f.k(), MeasureFamily::pushforward,
      [inner, basis, n](Rng& rng, Eigen::Ref<Mat> rows) {
        Mat tmp(rows.rows(), n);
        inner(rng, tmp);
        rows = tmp * basis;
      },
      std::move(a), "projection(" + mu.label() + ")", mu.approximate());
}

LogConcaveMeasure isotropic_normalization(const LogConcaveMeasure& mu) {
  if (!mu.analytic_cov() || !mu.analytic_mean())
    throw UnsupportedError("isotropic_normalization: '" + mu.label() + "' has no analytic moments");
  Eigen::SelfAdjointEigenSolver<Mat> eig(*mu.analytic_cov());
  if (eig.eigenvalues().minCoeff() <= 0.0) throw DegenerateError("isotropic_normalization: singular covariance");
  const Mat inv_sqrt = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                       eig.eigenvectors().transpose();
  LogConcaveMeasure out = affine_image(mu, LinearMap(inv_sqrt), Vec(-inv_sqrt * *mu.analytic_mean()));
  return LogConcaveMeasure(out.dim(), mu.family(), out.sampler(),
                           LogConcaveMeasure::Analytic{out.density_sup(), out.analytic_mean(), out.analytic_cov()},
                           mu.label() + ":iso", mu.approximate());
}

SampleSet draw_samples(const LogConcaveMeasure& mu, Eigen::Index count, std::uint64_t seed) {
  if (count < 1) throw ConstructionError("count", "sample count must be >= 1");
  SampleSet s;
  s.points.resize(count, mu.dim());
  s.seed = seed;
  s.provenance = mu.label();
  s.approximate = mu.approximate();
  const Eigen::Index chunks = (count + kChunkRows - 1) / kChunkRows;
  const auto& sampler = mu.sampler();
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    Rng rng = make_rng(seed, c);
    const Eigen::Index begin = static_cast<Eigen::Index>(c) * kChunkRows;
    const Eigen::Index rows = std::min(kChunkRows, count - begin);
    Mat block(rows, mu.dim());
    sampler(rng, block);
    s.points.middleRows(begin, rows) = block;
  });
  if (!s.points.allFinite()) throw DegenerateError("draw_samples: sampler produced non-finite coordinates");
  return s;
}

SampleSet hit_and_run(const ConvexBody& k, Eigen::Index count, std::uint64_t seed, const HitAndRunOptions& options) {
  auto cfg = resolve(k, options);
  LogConcaveMeasure mu(k.dim(), MeasureFamily::uniform_body, hit_and_run_sampler(k, cfg), {},
                       "uniform-mcmc:" + k.label(), true);
  return draw_samples(mu, count, seed);
}

SampleSet project_samples(const SampleSet& s, const Subspace& f) {
  if (f.ambient() != s.dim())
    throw DimensionError("project_samples: subspace lives in R^" + std::to_string(f.ambient()) +
                         ", samples in R^" + std::to_string(s.dim()));
  SampleSet out;
  out.points = s.points * f.basis;
  out.seed = s.seed;
  out.provenance = "projection(" + s.provenance + ")";
  out.approximate = s.approximate;
  return out;
}

SampleSet transform_samples(const SampleSet& s, const LinearMap& t, const Vec& shift) {
  if (t.cols() != s.dim()) throw DimensionError("transform_samples: map/sample dimension mismatch");
  SampleSet out = s;
  out.points = s.points * t.matrix.transpose();
  if (shift.size() != 0) {
    if (shift.size() != t.rows()) throw DimensionError("transform_samples: shift dimension mismatch");
    out.points.rowwise() += shift.transpose();
  }
  return out;
}

}  // namespace isoconv
