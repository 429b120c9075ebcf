#pragma once

#include <vector>

#include <Eigen/Dense>

namespace isoconv {

/// Convex hull of a point cloud in R^d (d >= 1, intended for d <= 7) by
/// incremental beneath-beyond insertion with conflict lists. Facets are
/// simplices; coplanar points within `eps` of a facet are treated as inside.
class ConvexHull {
 public:
  struct Facet {
    std::vector<int> vertices;  // indices into points(), size d
    Eigen::VectorXd normal;     // unit outward normal
    double offset = 0.0;        // <normal, x> = offset on the facet
  };

  /// `points` is d x m. `rel_eps` is scaled by the cloud's extent.
  explicit ConvexHull(const Eigen::MatrixXd& points, double rel_eps = 1e-10);

  int dim() const { return static_cast<int>(points_.rows()); }
  const Eigen::MatrixXd& points() const { return points_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const Eigen::VectorXd& interior_point() const { return interior_; }
  double eps() const { return eps_; }

  double volume() const;
  /// Indices of points that are vertices of some facet.
  std::vector<int> vertex_indices() const;
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  /// Largest r with B(0, r) inside the hull (negative if 0 is outside).
  double inradius_about_origin() const;

 private:
  Eigen::MatrixXd points_;
  std::vector<Facet> facets_;
  Eigen::VectorXd interior_;
  double eps_ = 0.0;
};

/// Volume of the H-polytope { x : <u_i, x> <= b_i } with 0 in its interior,
/// computed exactly (up to round-off) by dualizing and taking two hulls.
/// `normals` is d x m, `offsets` has m positive entries.
double halfspace_intersection_volume(const Eigen::MatrixXd& normals,
                                     const Eigen::VectorXd& offsets);

}  // namespace isoconv
