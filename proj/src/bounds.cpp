#include "isoconv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isoconv/error.hpp"

namespace isoconv {

namespace {

struct KindName {
  BoundKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {BoundKind::thm_main_product, "thm-main-product"},
    {BoundKind::thm_main_arith, "thm-main-arith"},
    {BoundKind::mp_sum, "mp-sum"},
    {BoundKind::dudley_sum, "dudley-sum"},
    {BoundKind::summary_piecewise, "summary-piecewise"},
    {BoundKind::prop31, "prop31"},
    {BoundKind::sudakov, "sudakov"},
    {BoundKind::hartzoulaki, "hartzoulaki"},
    {BoundKind::gpv, "gpv"},
    {BoundKind::gpv_piecewise, "gpv-piecewise"},
    {BoundKind::thm14, "thm14"},
};

template <typename T>
T require(const std::optional<T>& v, const char* field, BoundKind kind) {
  if (!v) throw ConstructionError(field, "bound '" + to_string(kind) + "' needs --" + field);
  return *v;
}

double check_p(double p) {
  if (!(p >= 1.0)) throw ConstructionError("p", "p must be >= 1");
  return p;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// lambda_i = sqrt of the sorted covariance eigenvalues; flat when empty.
Eigen::VectorXd root_spectrum(const BoundParams& bp, int& n) {
  if (bp.spectrum.size() == 0) {
    if (!bp.n) throw ConstructionError("n", "need --n or a spectrum");
    n = *bp.n;
    if (n < 1) throw ConstructionError("n", "n must be >= 1");
    return Eigen::VectorXd::Ones(n);
  }
  n = static_cast<int>(bp.spectrum.size());
  if (bp.n && *bp.n != n)
    throw ConstructionError("n", "n=" + std::to_string(*bp.n) + " disagrees with spectrum length " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (!(bp.spectrum(i) > 0.0) || !std::isfinite(bp.spectrum(i)))
      throw ConstructionError("spectrum", "eigenvalues must be positive and finite");
    if (i > 0 && bp.spectrum(i) > bp.spectrum(i - 1))
      throw ConstructionError("spectrum", "eigenvalues must be sorted in descending order (index " +
                                              std::to_string(i) + ")");
  }
  return bp.spectrum.cwiseSqrt();
}

double weight(double p, double k) { return std::max(std::sqrt(p / k), p / k); }

double log2n(int n) { return std::pow(std::log1p(static_cast<double>(n)), 2); }

}  // namespace

double RadModel::operator()(double k, double p) const {
  switch (kind) {
    case Kind::unit:
      return 1.0;
    case Kind::log_min:
      return std::log1p(std::min(k, p));
    case Kind::sqrt_log:
      return std::sqrt(std::log1p(k));
    case Kind::constant:
      return c;
  }
  return 1.0;
}

std::string RadModel::name() const {
  switch (kind) {
    case Kind::unit:
      return "unit";
    case Kind::log_min:
      return "log-min";
    case Kind::sqrt_log:
      return "sqrt-log";
    case Kind::constant:
      return "constant:" + fmt(c);
  }
  return "unit";
}

RadModel rad_model_from_string(const std::string& s) {
  RadModel r;
  if (s == "unit") return r;
  if (s == "log-min") {
    r.kind = RadModel::Kind::log_min;
    return r;
  }
  if (s == "sqrt-log") {
    r.kind = RadModel::Kind::sqrt_log;
    return r;
  }
  std::string num = s.rfind("constant:", 0) == 0 ? s.substr(9) : s;
  try {
    std::size_t used = 0;
    r.c = std::stod(num, &used);
    if (used != num.size() || !(r.c >= 0.0)) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw ConstructionError("rad", "unknown Rad model '" + s + "' (unit | log-min | sqrt-log | constant:<c>)");
  }
  r.kind = RadModel::Kind::constant;
  return r;
}

std::string to_string(BoundKind k) {
  for (const auto& e : kKindNames)
    if (e.kind == k) return e.name;
  return "?";
}

BoundKind bound_kind_from_string(const std::string& s) {
  for (const auto& e : kKindNames)
    if (s == e.name) return e.kind;
  throw ConstructionError("kind", "unknown bound kind '" + s + "'");
}

const std::vector<BoundKind>& all_bound_kinds() {
  static const std::vector<BoundKind> kinds = [] {
    std::vector<BoundKind> v;
    for (const auto& e : kKindNames) v.push_back(e.kind);
    return v;
  }();
  return kinds;
}

BoundValue bound_rhs(BoundKind kind, const BoundParams& bp) {
  BoundValue out;
  auto warn = [&](const std::string& w) { out.warnings.push_back(w); };
  switch (kind) {
    case BoundKind::thm_main_product:
    case BoundKind::thm_main_arith: {
      const double p = check_p(require(bp.p, "p", kind));
      int n = 0;
      const Eigen::VectorXd lambda = root_spectrum(bp, n);
      double sum = 0.0, log_prod = 0.0, run = 0.0;
      for (int k = 1; k <= n; ++k) {
        log_prod += std::log(lambda(k - 1));
        run += lambda(k - 1);
        const double mean = kind == BoundKind::thm_main_product ? std::exp(log_prod / k) : run / k;
        sum += weight(p, k) * mean;
      }
      out.value = bp.rad(n, p) * sum / std::sqrt(static_cast<double>(n));
      return out;
    }
    case BoundKind::mp_sum:
    case BoundKind::dudley_sum: {
      if (bp.values.size() == 0) throw ConstructionError("values", "bound '" + to_string(kind) + "' needs values");
      const double p = bp.p ? check_p(*bp.p) : std::numeric_limits<double>::infinity();
      double sum = 0.0;
      for (Eigen::Index k = 1; k <= bp.values.size(); ++k) {
        const double rad = kind == BoundKind::mp_sum ? bp.rad(static_cast<double>(k), p) : 1.0;
        sum += rad * bp.values(k - 1) / std::sqrt(static_cast<double>(k));
      }
      out.value = sum;
      return out;
    }
    case BoundKind::summary_piecewise: {
      const int n = require(bp.n, "n", kind);
      const double p = check_p(require(bp.p, "p", kind));
      if (n < 1) throw ConstructionError("n", "n must be >= 1");
      const double rn = std::sqrt(static_cast<double>(n));
      const double l2 = log2n(n);
      if (p > n) warn("p=" + fmt(p) + " exceeds n; using the last regime");
      // Regimes overlap for small n; the smallest applicable estimate wins.
      double best = std::numeric_limits<double>::infinity();
      if (p <= rn) best = std::min(best, std::sqrt(p));
      if (p >= rn && p <= rn * l2) best = std::min(best, p / std::sqrt(rn));
      if (p >= rn * l2 && p <= n / l2) best = std::min(best, std::sqrt(p) * std::log1p(static_cast<double>(n)));
      if (p >= n / l2) best = std::min(best, p / rn * l2);
      out.value = best;
      return out;
    }
    case BoundKind::prop31: {
      const double p = check_p(require(bp.p, "p", kind));
      const int k = require(bp.k, "k", kind);
      int n = 0;
      BoundParams flat = bp;
      if (flat.spectrum.size() == 0 && !flat.n) flat.n = k;
      const Eigen::VectorXd lambda = root_spectrum(flat, n);
      if (k < 1 || k > n) throw ConstructionError("k", "k must be in [1, n]");
      const double gm = std::exp(lambda.head(k).array().log().sum() / k);
      out.value = std::sqrt(p / k) * std::max(std::sqrt(p), std::sqrt(static_cast<double>(k))) * gm;
      return out;
    }
    case BoundKind::sudakov: {
      const int n = require(bp.n, "n", kind);
      const double m = require(bp.mstar, "mstar", kind);
      const double t = require(bp.t, "t", kind);
      if (!(t > 0.0)) throw ConstructionError("t", "t must be positive");
      out.value = n * m * m / (t * t);
      return out;
    }
    case BoundKind::hartzoulaki: {
      const int n = require(bp.n, "n", kind);
      const double l = require(bp.isotropic_constant, "lk", kind);
      const double t = require(bp.t, "t", kind);
      if (!(t > 0.0)) throw ConstructionError("t", "t must be positive");
      out.value = n * l / t;
      return out;
    }
    case BoundKind::gpv:
    case BoundKind::gpv_piecewise: {
      const int n = require(bp.n, "n", kind);
      const double p = check_p(require(bp.p, "p", kind));
      const double t = require(bp.t, "t", kind);
      if (!(t > 0.0)) throw ConstructionError("t", "t must be positive");
      if (p > n) warn("p=" + fmt(p) + " is outside [1, n]");
      if (t < 1.0 || t > std::sqrt(p)) warn("t=" + fmt(t) + " is outside [1, sqrt(p)]");
      const double nn = static_cast<double>(n);
      if (kind == BoundKind::gpv) {
        out.value = nn / (t * t) + std::sqrt(nn * p) / t;
        return out;
      }
      const double l2 = log2n(n);
      if (p > nn / l2) warn("p=" + fmt(p) + " exceeds n/log^2(1+n)");
      const double t1 = std::sqrt(nn / p);
      if (t <= t1)
        out.value = nn / (t * t);
      else if (t <= t1 * l2)
        out.value = std::sqrt(nn * p) / t;
      else
        out.value = nn * l2 / (t * t);
      return out;
    }
    case BoundKind::thm14: {
      const int n = require(bp.n, "n", kind);
      const double l = require(bp.isotropic_constant, "lk", kind);
      const double t = require(bp.t, "t", kind);
      if (!(t > 0.0)) throw ConstructionError("t", "t must be positive");
      const double nn = static_cast<double>(n);
      const double rl = bp.rad(nn, bp.p ? *bp.p : nn) * l;
      if (t < rl || t > std::sqrt(nn) * l)
        warn("t=" + fmt(t) + " is outside [Rad L_K, sqrt(n) L_K]");
      const double s = rl * rl / (t * t);
      out.value = nn * s * std::pow(std::log1p(1.0 / s), 2);
      return out;
    }
  }
  throw ConstructionError("kind", "unhandled bound kind");
}

}  // namespace isoconv
