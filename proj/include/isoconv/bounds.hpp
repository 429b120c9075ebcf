#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace isoconv {

/// Surrogate for the Rademacher projection norm of the k-dimensional
/// projections of a body. All kinds are nonnegative and nondecreasing in k.
struct RadModel {
  enum class Kind { unit, log_min, sqrt_log, constant };
  Kind kind = Kind::unit;
  double c = 1.0;  // value for Kind::constant

  /// unit -> 1; log-min -> log(1 + min(k, p)); sqrt-log -> sqrt(log(1 + k)); constant -> c.
  double operator()(double k, double p) const;
  std::string name() const;
};

/// Parses "unit", "log-min", "sqrt-log", or "constant:<c>" / a bare number.
RadModel rad_model_from_string(const std::string& s);

enum class BoundKind {
  thm_main_product,
  thm_main_arith,
  mp_sum,
  dudley_sum,
  summary_piecewise,
  prop31,
  sudakov,
  hartzoulaki,
  gpv,
  gpv_piecewise,
  thm14,
};

std::string to_string(BoundKind k);
BoundKind bound_kind_from_string(const std::string& s);
const std::vector<BoundKind>& all_bound_kinds();

/// Inputs of bound_rhs. Which fields are read depends on the kind.
struct BoundParams {
  std::optional<int> n;
  std::optional<double> p;
  std::optional<int> k;
  /// Covariance eigenvalues lambda_1^2 >= ... >= lambda_n^2 (not their roots).
  Eigen::VectorXd spectrum;
  /// v_k (mp-sum) or e_k (dudley-sum) for k = 1, 2, ...
  Eigen::VectorXd values;
  std::optional<double> t;
  std::optional<double> mstar;
  std::optional<double> isotropic_constant;
  RadModel rad;
};

struct BoundValue {
  double value = 0.0;
  /// Non-fatal notes, e.g. t outside the range where the estimate is stated.
  std::vector<std::string> warnings;
};

/// The displayed expression of `kind` with every unnamed constant equal to 1.
/// Covering kinds return the log of the covering-number bound.
BoundValue bound_rhs(BoundKind kind, const BoundParams& params);

}  // namespace isoconv
