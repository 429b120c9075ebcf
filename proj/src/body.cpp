#include "isoconv/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isoconv/error.hpp"
#include "isoconv/hull.hpp"

namespace isoconv {

namespace {

constexpr double kMembershipSlack = 1e-12;
constexpr Eigen::Index kMaxVertices = 1'000'000;
constexpr int kMaxHullMembershipDim = 6;

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// ||theta||_q for q in [1, inf], scaled against overflow.
double lq_norm(const Vec& theta, double q) {
  const double m = theta.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  if (std::isinf(q)) return m;
  if (q == 1.0) return theta.cwiseAbs().sum();
  if (q == 2.0) return theta.norm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) s += std::pow(std::abs(theta(i)) / m, q);
  return m * std::pow(s, 1.0 / q);
}

void require_dim(int dim) {
  if (dim < 1) throw ConstructionError("dim", "must be >= 1, got " + std::to_string(dim));
}

ConvexBody make_lp_family(int dim, double p, Family family, std::string label) {
  require_dim(dim);
  const double n = dim;
  const double q = std::isinf(p) ? 1.0 : (p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0));

  ConvexBody::Oracles o;
  o.support = [q](const Vec& theta) { return lq_norm(theta, q); };
  o.batch_support = [q](const Mat& dirs) {
    Vec out(dirs.cols());
    if (q == 1.0) {
      out = dirs.cwiseAbs().colwise().sum().transpose();
    } else if (q == 2.0) {
      out = dirs.colwise().norm().transpose();
    } else if (std::isinf(q)) {
      out = dirs.cwiseAbs().colwise().maxCoeff().transpose();
    } else {
      for (Eigen::Index j = 0; j < dirs.cols(); ++j) out(j) = lq_norm(dirs.col(j), q);
    }
    return out;
  };
  o.membership = [p](const Vec& x) {
    return lq_norm(x, p) <= 1.0 + kMembershipSlack;
  };
  o.support_point = [q](const Vec& theta) -> Vec {
    Vec x = Vec::Zero(theta.size());
    const double h = lq_norm(theta, q);
    if (h == 0.0) return x;
    if (std::isinf(q)) {
      Eigen::Index i;
      theta.cwiseAbs().maxCoeff(&i);
      x(i) = theta(i) > 0 ? 1.0 : -1.0;
      return x;
    }
    if (q == 1.0) {
      for (Eigen::Index i = 0; i < theta.size(); ++i)
        x(i) = theta(i) > 0 ? 1.0 : (theta(i) < 0 ? -1.0 : 0.0);
      return x;
    }
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      const double a = std::abs(theta(i)) / h;
      x(i) = std::copysign(std::pow(a, q - 1.0), theta(i));
    }
    return x;
  };

  AnalyticTable t;
  const double log_vol = std::isinf(p) ? n * std::log(2.0) : log_lp_ball_volume(dim, p);
  const double m2 = std::isinf(p) ? 1.0 / 3.0 : lp_ball_second_moment(dim, p);
  t.volume = std::exp(log_vol);
  t.isotropic_constant = std::exp(-log_vol / n) * std::sqrt(m2);
  t.covariance = Mat::Identity(dim, dim) * m2;
  t.barycenter = Vec::Zero(dim);
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  t.dbm_to_ball = std::pow(n, std::abs(0.5 - inv_p));
  if (inv_p <= 0.5) {
    t.inradius = 1.0;
    t.circumradius = std::pow(n, 0.5 - inv_p);
  } else {
    t.inradius = std::pow(n, 0.5 - inv_p);
    t.circumradius = 1.0;
  }
  if (p == 2.0) {
    t.mean_width = 1.0;
    t.vk = [](int) { return 1.0; };
  }

  ConvexBody::Structure s;
  s.lp_exponent = p;
  return ConvexBody(dim, std::move(o), family, true, std::move(t), std::move(s), std::move(label));
}

double det_tolerance(const Mat& m) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  return 1e-12 * std::pow(scale, static_cast<double>(m.rows()));
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::ball: return "ball";
    case Family::cube: return "cube";
    case Family::cross_polytope: return "cross-polytope";
    case Family::lp_ball: return "lp-ball";
    case Family::ellipsoid: return "ellipsoid";
    case Family::v_polytope: return "v-polytope";
    case Family::product: return "product";
    case Family::linear_image: return "linear-image";
    case Family::scaled: return "scaled";
    case Family::sym_hull: return "sym-hull";
    case Family::projection: return "projection";
    case Family::centroid: return "centroid";
  }
  return "unknown";
}

LinearMap::LinearMap(Mat m) : matrix(std::move(m)) {
  if (!matrix.allFinite()) throw ConstructionError("entries", "linear map has non-finite entries");
}

ConvexBody::ConvexBody(int dim, Oracles oracles, Family family, bool symmetric,
                       AnalyticTable analytic, Structure structure, std::string label)
    : dim_(dim),
      oracles_(std::make_shared<const Oracles>(std::move(oracles))),
      family_(family),
      symmetric_(symmetric),
      analytic_(std::make_shared<const AnalyticTable>(std::move(analytic))),
      structure_(std::make_shared<const Structure>(std::move(structure))),
      label_(std::move(label)) {
  if (!oracles_->support) throw ConstructionError("support", "a support oracle is required");
}

ConvexBody ConvexBody::with_metadata(AnalyticTable analytic, std::string label) const {
  ConvexBody copy = *this;
  copy.analytic_ = std::make_shared<const AnalyticTable>(std::move(analytic));
  copy.label_ = std::move(label);
  return copy;
}

double ConvexBody::support(const Vec& theta) const {
  if (theta.size() != dim_)
    throw DimensionError("support: direction has dimension " + std::to_string(theta.size()) +
                         ", body has " + std::to_string(dim_));
  return oracles_->support(theta);
}

Vec ConvexBody::support(const Mat& directions) const {
  if (directions.rows() != dim_)
    throw DimensionError("support: directions have dimension " + std::to_string(directions.rows()) +
                         ", body has " + std::to_string(dim_));
  if (oracles_->batch_support) return oracles_->batch_support(directions);
  Vec out(directions.cols());
  for (Eigen::Index j = 0; j < directions.cols(); ++j) out(j) = oracles_->support(directions.col(j));
  return out;
}

bool ConvexBody::contains(const Vec& x) const {
  if (!oracles_->membership)
    throw UnsupportedError("body '" + label_ + "' has no membership oracle");
  if (x.size() != dim_) throw DimensionError("contains: point dimension mismatch");
  return oracles_->membership(x);
}

Vec ConvexBody::support_point(const Vec& theta) const {
  if (!oracles_->support_point)
    throw UnsupportedError("body '" + label_ + "' has no support-point oracle");
  if (theta.size() != dim_) throw DimensionError("support_point: direction dimension mismatch");
  return oracles_->support_point(theta);
}

double log_unit_ball_volume(int k) {
  return 0.5 * k * std::log(M_PI) - std::lgamma(0.5 * k + 1.0);
}

double unit_ball_volume(int k) { return std::exp(log_unit_ball_volume(k)); }

double log_lp_ball_volume(int n, double p) {
  return n * std::log(2.0 * std::tgamma(1.0 + 1.0 / p)) - std::lgamma(1.0 + n / p);
}

double lp_ball_second_moment(int n, double p) {
  return std::exp(std::lgamma(3.0 / p) + std::lgamma(1.0 + n / p) - std::lgamma(1.0 / p) -
                  std::lgamma(1.0 + (n + 2.0) / p));
}

ConvexBody make_ball(int dim) { return make_lp_family(dim, 2.0, Family::ball, "ball:" + std::to_string(dim)); }

ConvexBody make_cube(int dim) {
  return make_lp_family(dim, std::numeric_limits<double>::infinity(), Family::cube,
                        "cube:" + std::to_string(dim));
}

ConvexBody make_cross_polytope(int dim) {
  return make_lp_family(dim, 1.0, Family::cross_polytope, "cross:" + std::to_string(dim));
}

ConvexBody make_lp_ball(int dim, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ConstructionError("p", "lp-ball exponent must be finite and >= 1, got " + fmt_double(p));
  return make_lp_family(dim, p, Family::lp_ball, "lpball:" + std::to_string(dim) + ":" + fmt_double(p));
}

ConvexBody make_ellipsoid(const Mat& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw ConstructionError("matrix", "ellipsoid matrix must be square and non-empty");
  if (!a.allFinite()) throw ConstructionError("matrix", "ellipsoid matrix has non-finite entries");
  const int dim = static_cast<int>(a.rows());
  Eigen::PartialPivLU<Mat> lu(a);
  const double det = lu.determinant();
  if (std::abs(det) <= det_tolerance(a))
    throw ConstructionError("matrix", "ellipsoid matrix is singular");
  auto a_ptr = std::make_shared<const Mat>(a);
  auto at_ptr = std::make_shared<const Mat>(a.transpose());
  auto inv_ptr = std::make_shared<const Mat>(lu.inverse());

  ConvexBody::Oracles o;
  o.support = [at_ptr](const Vec& theta) { return (*at_ptr * theta).norm(); };
  o.batch_support = [at_ptr](const Mat& dirs) -> Vec { return (*at_ptr * dirs).colwise().norm().transpose(); };
  o.membership = [inv_ptr](const Vec& x) { return (*inv_ptr * x).norm() <= 1.0 + kMembershipSlack; };
  o.support_point = [a_ptr, at_ptr](const Vec& theta) -> Vec {
    Vec u = *at_ptr * theta;
    const double len = u.norm();
    if (len == 0.0) return Vec::Zero(theta.size());
    return *a_ptr * (u / len);
  };

  Eigen::JacobiSVD<Mat> svd(a);
  const Vec sv = svd.singularValues();  // descending
  AnalyticTable t;
  t.volume = std::abs(det) * unit_ball_volume(dim);
  t.isotropic_constant = std::exp(-log_unit_ball_volume(dim) / dim) / std::sqrt(dim + 2.0);
  t.covariance = a * a.transpose() / (dim + 2.0);
  t.barycenter = Vec::Zero(dim);
  t.dbm_to_ball = 1.0;
  t.inradius = sv(dim - 1);
  t.circumradius = sv(0);
  t.vk = [sv](int k) {
    double log_sum = 0.0;
    for (int i = 0; i < k; ++i) log_sum += std::log(sv(i));
    return std::exp(log_sum / k);
  };
  ConvexBody::Structure s;
  s.transform = a;
  return ConvexBody(dim, std::move(o), Family::ellipsoid, true, std::move(t), std::move(s),
                    "ellipsoid:" + std::to_string(dim));
}

ConvexBody make_v_polytope(const Mat& vertices) {
  if (vertices.rows() < 1 || vertices.cols() < 1)
    throw ConstructionError("vertices", "v-polytope needs at least one vertex of dimension >= 1");
  if (vertices.cols() > kMaxVertices)
    throw ConstructionError("vertices", "v-polytope is capped at 1e6 vertices");
  if (!vertices.allFinite()) throw ConstructionError("vertices", "non-finite vertex coordinates");
  const int dim = static_cast<int>(vertices.rows());
  auto v = std::make_shared<const Mat>(vertices);

  ConvexBody::Oracles o;
  o.support = [v](const Vec& theta) { return (v->transpose() * theta).maxCoeff(); };
  o.batch_support = [v](const Mat& dirs) -> Vec {
    return (v->transpose() * dirs).colwise().maxCoeff().transpose();
  };
  o.support_point = [v](const Vec& theta) -> Vec {
    Eigen::Index i;
    (v->transpose() * theta).maxCoeff(&i);
    return v->col(i);
  };

  AnalyticTable t;
  t.circumradius = vertices.colwise().norm().maxCoeff();
  if (dim <= kMaxHullMembershipDim && vertices.cols() >= dim + 1) {
    try {
      auto hull = std::make_shared<const ConvexHull>(vertices);
      const double tol = 1e-10 * std::max(1.0, *t.circumradius);
      o.membership = [hull, tol](const Vec& x) { return hull->contains(x, tol); };
      t.volume = hull->volume();
      const double r = hull->inradius_about_origin();
      if (r > 0.0) t.inradius = r;
    } catch (const DegenerateError&) {
      // lower-dimensional vertex set: support oracle only
    }
  }
  ConvexBody::Structure s;
  s.vertices = v;
  return ConvexBody(dim, std::move(o), Family::v_polytope, false, std::move(t), std::move(s),
                    "vpolytope:" + std::to_string(dim));
}

ConvexBody make_standard_body(Family family, int dim, const BodyParams& params) {
  require_dim(dim);
  ConvexBody body = [&] {
    switch (family) {
      case Family::ball: return make_ball(dim);
      case Family::cube: return make_cube(dim);
      case Family::cross_polytope: return make_cross_polytope(dim);
      case Family::lp_ball: return make_lp_ball(dim, params.p);
      case Family::ellipsoid:
        if (params.matrix.rows() != dim)
          throw ConstructionError("matrix", "ellipsoid matrix must be " + std::to_string(dim) + "x" +
                                                std::to_string(dim));
        return make_ellipsoid(params.matrix);
      case Family::v_polytope:
        if (params.vertices.rows() != dim)
          throw ConstructionError("vertices", "vertex dimension must equal " + std::to_string(dim));
        return make_v_polytope(params.vertices);
      default:
        throw ConstructionError("family", "'" + to_string(family) + "' is not a standard family");
    }
  }();
  return params.unit_volume ? unit_volume(body) : body;
}

ConvexBody unit_volume(const ConvexBody& k) {
  if (!k.analytic().volume)
    throw UnsupportedError("unit_volume: body '" + k.label() + "' has no analytic volume");
  const double t = std::pow(*k.analytic().volume, -1.0 / k.dim());
  ConvexBody out = scale_body(k, t);
  AnalyticTable a = out.analytic();
  a.volume = 1.0;
  return out.with_metadata(std::move(a), k.label() + ":unit");
}

ConvexBody scale_body(const ConvexBody& k, double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw ConstructionError("t", "scale factor must be finite and > 0, got " + fmt_double(t));
  ConvexBody::Oracles o;
  o.support = [k, t](const Vec& theta) { return t * k.support(theta); };
  o.batch_support = [k, t](const Mat& dirs) -> Vec { return t * k.support(dirs); };
  if (k.has_membership()) o.membership = [k, t](const Vec& x) { return k.contains(x / t); };
  if (k.has_support_point())
    o.support_point = [k, t](const Vec& theta) -> Vec { return t * k.support_point(theta); };

  const AnalyticTable& src = k.analytic();
  AnalyticTable a;
  const double n = k.dim();
  if (src.volume) a.volume = std::pow(t, n) * *src.volume;
  a.isotropic_constant = src.isotropic_constant;
  a.dbm_to_ball = src.dbm_to_ball;
  if (src.mean_width) a.mean_width = t * *src.mean_width;
  if (src.inradius) a.inradius = t * *src.inradius;
  if (src.circumradius) a.circumradius = t * *src.circumradius;
  if (src.barycenter) a.barycenter = t * *src.barycenter;
  if (src.covariance) a.covariance = t * t * *src.covariance;
  if (src.vk) a.vk = [f = src.vk, t](int j) { return t * f(j); };

  ConvexBody::Structure s;
  s.scale = t;
  s.parts = {k};
  return ConvexBody(k.dim(), std::move(o), Family::scaled, k.symmetric(), std::move(a), std::move(s),
                    "scaled(" + fmt_double(t) + "," + k.label() + ")");
}

ConvexBody linear_image_body(const ConvexBody& k, const LinearMap& map) {
  const Mat& tm = map.matrix;
  if (tm.rows() != tm.cols() || tm.rows() != k.dim())
    throw ConstructionError("T", "linear map must be square of size " + std::to_string(k.dim()));
  Eigen::PartialPivLU<Mat> lu(tm);
  const double det = lu.determinant();
  if (std::abs(det) <= det_tolerance(tm)) throw ConstructionError("T", "linear map is singular");
  auto t_ptr = std::make_shared<const Mat>(tm);
  auto tt_ptr = std::make_shared<const Mat>(tm.transpose());
  auto inv_ptr = std::make_shared<const Mat>(lu.inverse());

  ConvexBody::Oracles o;
  o.support = [k, tt_ptr](const Vec& theta) { return k.support(Vec(*tt_ptr * theta)); };
  o.batch_support = [k, tt_ptr](const Mat& dirs) -> Vec { return k.support(Mat(*tt_ptr * dirs)); };
  if (k.has_membership())
    o.membership = [k, inv_ptr](const Vec& x) { return k.contains(Vec(*inv_ptr * x)); };
  if (k.has_support_point())
    o.support_point = [k, t_ptr, tt_ptr](const Vec& theta) -> Vec {
      return *t_ptr * k.support_point(Vec(*tt_ptr * theta));
    };

  const AnalyticTable& src = k.analytic();
  AnalyticTable a;
  Eigen::JacobiSVD<Mat> svd(tm);
  const Vec sv = svd.singularValues();
  if (src.volume) a.volume = std::abs(det) * *src.volume;
  a.isotropic_constant = src.isotropic_constant;
  a.dbm_to_ball = src.dbm_to_ball;
  if (src.inradius) a.inradius = sv(sv.size() - 1) * *src.inradius;
  if (src.circumradius) a.circumradius = sv(0) * *src.circumradius;
  if (src.barycenter) a.barycenter = tm * *src.barycenter;
  if (src.covariance) a.covariance = tm * *src.covariance * tm.transpose();

  ConvexBody::Structure s;
  s.transform = tm;
  s.parts = {k};
  return ConvexBody(k.dim(), std::move(o), Family::linear_image, k.symmetric(), std::move(a), std::move(s),
                    "linear(" + k.label() + ")");
}

ConvexBody product_body(const ConvexBody& k, const ConvexBody& l) {
  if (!k.has_membership() || !l.has_membership())
    throw ConstructionError("parts", "product_body needs membership oracles on both factors");
  const int a = k.dim(), b = l.dim();
  ConvexBody::Oracles o;
  // h_{K x L}(theta, phi) = h_K(theta) + h_L(phi).
  o.support = [k, l, a, b](const Vec& th) { return k.support(Vec(th.head(a))) + l.support(Vec(th.tail(b))); };
  o.batch_support = [k, l, a, b](const Mat& dirs) -> Vec {
    return k.support(Mat(dirs.topRows(a))) + l.support(Mat(dirs.bottomRows(b)));
  };
  o.membership = [k, l, a, b](const Vec& x) { return k.contains(Vec(x.head(a))) && l.contains(Vec(x.tail(b))); };
  if (k.has_support_point() && l.has_support_point())
    o.support_point = [k, l, a, b](const Vec& th) -> Vec {
      Vec x(a + b);
      x << k.support_point(Vec(th.head(a))), l.support_point(Vec(th.tail(b)));
      return x;
    };

  const AnalyticTable& ka = k.analytic();
  const AnalyticTable& la = l.analytic();
  AnalyticTable t;
  if (ka.volume && la.volume) t.volume = *ka.volume * *la.volume;
  if (ka.isotropic_constant && la.isotropic_constant)
    t.isotropic_constant = std::exp((a * std::log(*ka.isotropic_constant) + b * std::log(*la.isotropic_constant)) /
                                    (a + b));
  if (ka.inradius && la.inradius) t.inradius = std::min(*ka.inradius, *la.inradius);
  if (ka.circumradius && la.circumradius)
    t.circumradius = std::hypot(*ka.circumradius, *la.circumradius);
  if (ka.barycenter && la.barycenter) {
    Vec c(a + b);
    c << *ka.barycenter, *la.barycenter;
    t.barycenter = c;
  }
  if (ka.covariance && la.covariance) {
    Mat c = Mat::Zero(a + b, a + b);
    c.topLeftCorner(a, a) = *ka.covariance;
    c.bottomRightCorner(b, b) = *la.covariance;
    t.covariance = c;
  }
  ConvexBody::Structure s;
  s.parts = {k, l};
  return ConvexBody(a + b, std::move(o), Family::product, k.symmetric() && l.symmetric(), std::move(t),
                    std::move(s), "product(" + k.label() + "," + l.label() + ")");
}

ConvexBody sym_hull(const ConvexBody& k) {
  ConvexBody::Oracles o;
  o.support = [k](const Vec& th) { return std::max(k.support(th), k.support(Vec(-th))); };
  o.batch_support = [k](const Mat& dirs) -> Vec {
    return k.support(dirs).cwiseMax(k.support(Mat(-dirs)));
  };
  if (k.symmetric() && k.has_membership()) o.membership = [k](const Vec& x) { return k.contains(x); };
  if (k.has_support_point())
    o.support_point = [k](const Vec& th) -> Vec {
      const Vec neg = -th;
      return k.support(th) >= k.support(neg) ? k.support_point(th) : Vec(-k.support_point(neg));
    };
  AnalyticTable t;
  if (k.symmetric()) {
    t = k.analytic();
  } else {
    t.circumradius = k.analytic().circumradius;
  }
  ConvexBody::Structure s;
  s.parts = {k};
  return ConvexBody(k.dim(), std::move(o), Family::sym_hull, true, std::move(t), std::move(s),
                    "symhull(" + k.label() + ")");
}

double gauge(const ConvexBody& k, const Vec& x, double r0, double tol) {
  if (!k.has_membership())
    throw UnsupportedError("gauge: body '" + k.label() + "' has no membership oracle");
  if (!(r0 > 0.0)) throw ConstructionError("r0", "inner radius must be > 0");
  if (!(tol > 0.0)) throw ConstructionError("tol", "tolerance must be > 0");
  const double len = x.norm();
  if (len == 0.0) return 0.0;
  // x in hi*K since r0*B is inside K.
  double hi = len / r0;
  double lo = 0.5 * hi;
  const double floor = len / (1e6 * r0);
  while (k.contains(Vec(x / lo))) {
    hi = lo;
    lo *= 0.5;
    if (lo < floor)
      throw UnboundedError("gauge: no bracket within 1e6 * r0 along the ray; body is unbounded");
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (k.contains(Vec(x / mid)))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace isoconv
