#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isoconv/body.hpp"
#include "isoconv/bounds.hpp"
#include "isoconv/report.hpp"

namespace isoconv {

/// Inputs shared by the verification suites. Empty lists and zero counts
/// select each suite's own defaults, which are echoed into the report.
struct SuiteConfig {
  std::vector<int> dims;
  std::vector<double> ps;
  /// Measures for the suites that take them (paouris, thm-main-aniso, kubota).
  std::vector<std::string> measures;
  Eigen::Index samples = 0;
  Eigen::Index sphere_samples = 0;
  int trials = 0;
  Eigen::Index hull_directions = 0;
  std::uint64_t seed = 0;
  RadModel rad;
};

const std::vector<std::string>& suite_names();

/// Runs a named suite; throws ConstructionError for an unknown name or a
/// dimension outside the suite's limits.
Report run_suite(const std::string& name, const SuiteConfig& config);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Two standard errors of the slope.
  double half_width = 0.0;
};

/// Least squares on (log n, log value). Needs >= 4 rows with positive values
/// and at least two distinct n.
SlopeFit fit_scaling_slope(const std::vector<std::pair<double, double>>& rows);

/// Writes the report as csv or json to `path`, or to stdout when path is "-".
void emit_report(const Report& report, const std::string& format, const std::string& path);

namespace suites {
Report theorem1(const SuiteConfig& c);
Report paouris(const SuiteConfig& c);
Report thm_main_aniso(const SuiteConfig& c);
Report b1_scaling(const SuiteConfig& c);
Report qm_isotropy(const SuiteConfig& c);
Report kubota(const SuiteConfig& c);
Report zn_volrad(const SuiteConfig& c);
Report covering_regularity(const SuiteConfig& c);
}  // namespace suites

/// Q_m = (a K) x (b D_{m-n}) for an isotropic unit-volume K in R^n and the
/// unit-volume Euclidean ball D in R^{m-n}, with a = (L_D/L_K)^{(m-n)/m} and
/// b = (L_K/L_D)^{n/m}. Needs K's analytic isotropic constant.
ConvexBody make_qm_body(const ConvexBody& k, int extra_dims);

/// Isotropic constant of the unit-volume Euclidean ball in R^d.
double unit_ball_isotropic_constant(int d);

}  // namespace isoconv
