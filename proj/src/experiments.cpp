#include "isoconv/experiments.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <map>

#include "isoconv/error.hpp"

namespace isoconv {

namespace {

using SuiteFn = Report (*)(const SuiteConfig&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r = {
      {"theorem1", &suites::theorem1},
      {"paouris", &suites::paouris},
      {"thm-main-aniso", &suites::thm_main_aniso},
      {"b1-scaling", &suites::b1_scaling},
      {"qm-isotropy", &suites::qm_isotropy},
      {"kubota", &suites::kubota},
      {"zn-volrad", &suites::zn_volrad},
      {"covering-regularity", &suites::covering_regularity},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"theorem1",    "paouris", "thm-main-aniso", "b1-scaling",
                                                 "qm-isotropy", "kubota",  "zn-volrad",      "covering-regularity"};
  return names;
}

Report run_suite(const std::string& name, const SuiteConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConstructionError("suite", "unknown suite '" + name + "'");
  return it->second(config);
}

SlopeFit fit_scaling_slope(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 4) throw ConstructionError("rows", "slope fit needs at least 4 rows");
  const double m = static_cast<double>(rows.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, v] : rows) {
    if (!(n > 0.0) || !(v > 0.0)) throw ConstructionError("rows", "slope fit needs positive n and values");
    sx += std::log(n);
    sy += std::log(v);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, v] : rows) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  if (!(sxx > 1e-300)) throw DegenerateError("slope fit: all n are equal");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (const auto& [n, v] : rows) {
    const double r = std::log(v) - f.intercept - f.slope * std::log(n);
    rss += r * r;
  }
  f.half_width = 2.0 * std::sqrt(rss / (m - 2.0) / sxx);
  return f;
}

void emit_report(const Report& report, const std::string& format, const std::string& path) {
  if (format != "csv" && format != "json") throw ConstructionError("format", "format must be csv or json");
  if (path == "-") {
    if (format == "csv")
      std::cout << to_csv(report.rows);
    else
      std::cout << to_json(report).dump(2) << "\n";
    return;
  }
  if (format == "csv")
    write_csv(report, path);
  else
    write_json(report, path);
}

double unit_ball_isotropic_constant(int d) {
  const double radius = std::exp(-log_unit_ball_volume(d) / d);
  return radius / std::sqrt(d + 2.0);
}

ConvexBody make_qm_body(const ConvexBody& k, int extra_dims) {
  if (extra_dims < 1) throw ConstructionError("extra_dims", "m - n must be >= 1");
  const auto& a = k.analytic();
  if (!a.volume || std::abs(*a.volume - 1.0) > 1e-9)
    throw ConstructionError("K", "Q_m needs a unit-volume body, got '" + k.label() + "'");
  if (!a.isotropic_constant)
    throw UnsupportedError("Q_m needs an analytic isotropic constant for '" + k.label() + "'");
  const int n = k.dim();
  const int m = n + extra_dims;
  const double lk = *a.isotropic_constant;
  const double ld = unit_ball_isotropic_constant(extra_dims);
  const double sa = std::pow(ld / lk, static_cast<double>(extra_dims) / m);
  const double sb = std::pow(lk / ld, static_cast<double>(n) / m);
  return product_body(scale_body(k, sa), scale_body(unit_volume(make_ball(extra_dims)), sb));
}

}  // namespace isoconv
