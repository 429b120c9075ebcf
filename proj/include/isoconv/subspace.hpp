#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace isoconv {

/// A k-dimensional linear subspace F of R^n given by an orthonormal basis
/// (the n x k matrix B with B^T B = I_k).
struct Subspace {
  Eigen::MatrixXd basis;
  std::uint64_t seed = 0;

  int ambient() const { return static_cast<int>(basis.rows()); }
  int k() const { return static_cast<int>(basis.cols()); }

  /// Coordinates of P_F x in the basis of F.
  Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const { return basis.transpose() * x; }
  /// Ambient vector B u for coordinates u.
  Eigen::VectorXd embed(const Eigen::VectorXd& u) const { return basis * u; }
};

/// Orthonormalizes the columns of `spanning` (n x k, full column rank).
Subspace subspace_from_columns(const Eigen::MatrixXd& spanning);

}  // namespace isoconv
