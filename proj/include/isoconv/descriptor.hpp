#pragma once

#include <string>

#include "isoconv/body.hpp"
#include "isoconv/measure.hpp"

namespace isoconv {

/// Body descriptors: `family:dim[:params][:unit]`.
///   ball:8   cube:16   cross:4   lpball:32:1   lpball:8:inf
///   ellipsoid:4:@axes.csv   ellipsoid:3:1,2,3   vpolytope:3:@vertices.csv
/// `cube` is [-1,1]^n. Ellipsoid parameters are semi-axes, or n*n matrix
/// entries in row-major order. A trailing `:unit` rescales to volume one.
ConvexBody parse_body(const std::string& descriptor);

/// Measure descriptors:
///   gaussian:64   gaussian:4:@variances.csv   gaussian:3:1,0.5,0.25
///   exponential:8   uniform:<body descriptor>
/// A trailing `:iso` applies the analytic isotropic normalization.
LogConcaveMeasure parse_measure(const std::string& descriptor, bool allow_mcmc = false);

/// Reals separated by commas, whitespace or newlines; `#` starts a comment.
Eigen::VectorXd read_numbers(const std::string& path);
/// Inline list `a,b,c` or `@path`.
Eigen::VectorXd parse_number_list(const std::string& text);

}  // namespace isoconv
