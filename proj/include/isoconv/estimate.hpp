#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace isoconv {

/// How an estimate relates to the quantity it approximates.
enum class Bound { exact, upper, lower, mc };

std::string_view to_string(Bound b);
Bound bound_from_string(std::string_view s);

/// Uniform return type of the Monte Carlo functionals.
/// Deterministic results carry std_error == 0.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  Bound bound = Bound::exact;
};

}  // namespace isoconv
