#include "isoconv/random.hpp"

#include <chrono>

#include "isoconv/estimate.hpp"
#include "isoconv/error.hpp"
#include "isoconv/parallel.hpp"

namespace isoconv {

std::string_view to_string(Bound b) {
  switch (b) {
    case Bound::exact: return "exact";
    case Bound::upper: return "upper";
    case Bound::lower: return "lower";
    case Bound::mc: return "mc";
  }
  return "mc";
}

Bound bound_from_string(std::string_view s) {
  if (s == "exact") return Bound::exact;
  if (s == "upper") return Bound::upper;
  if (s == "lower") return Bound::lower;
  if (s == "mc") return Bound::mc;
  throw Error("unknown bound tag '" + std::string(s) + "'");
}

Eigen::MatrixXd random_directions(int dim, Eigen::Index count, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("random_directions: dim must be >= 1");
  Eigen::MatrixXd dirs(dim, count);
  const Eigen::Index chunks = (count + kChunkRows - 1) / kChunkRows;
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    Rng rng = make_rng(seed, c);
    std::normal_distribution<double> normal;
    const Eigen::Index begin = static_cast<Eigen::Index>(c) * kChunkRows;
    const Eigen::Index end = std::min(count, begin + kChunkRows);
    for (Eigen::Index j = begin; j < end; ++j) {
      double norm = 0.0;
      do {
        for (int i = 0; i < dim; ++i) dirs(i, j) = normal(rng);
        norm = dirs.col(j).norm();
      } while (norm == 0.0);
      dirs.col(j) /= norm;
    }
  });
  return dirs;
}

std::uint64_t generate_seed() {
  std::random_device rd;
  std::uint64_t hi = rd(), lo = rd();
  auto t = static_cast<std::uint64_t>(
      std::chrono::high_resolution_clock::now().time_since_epoch().count());
  return splitmix64((hi << 32) ^ lo ^ t);
}

}  // namespace isoconv
