#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace isoconv {

using Rng = std::mt19937_64;

/// Rows drawn per chunk. Chunk i of a draw with master seed s uses an
/// independent generator seeded by hash64(s, i), so a draw is reproducible
/// from (s, N) regardless of how many worker threads ran it.
inline constexpr Eigen::Index kChunkRows = 4096;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed-splitting rule: hash64(master, i) = splitmix64(master ^ splitmix64(i)).
constexpr std::uint64_t hash64(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
  return Rng(hash64(master, stream));
}

/// `count` directions uniform on S^{dim-1} as the columns of a dim x count
/// matrix (normalized Gaussians, chunked under the seed-splitting rule).
Eigen::MatrixXd random_directions(int dim, Eigen::Index count, std::uint64_t seed);

/// Fresh nondeterministic seed, used when the caller did not supply one.
std::uint64_t generate_seed();

}  // namespace isoconv
