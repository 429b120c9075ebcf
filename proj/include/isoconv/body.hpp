#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace isoconv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Family {
  ball,
  cube,
  cross_polytope,
  lp_ball,
  ellipsoid,
  v_polytope,
  product,
  linear_image,
  scaled,
  sym_hull,
  projection,
  centroid,
};

std::string to_string(Family f);

/// Known closed-form quantities of a body. Everything is optional; an empty
/// field means "not known analytically", never "zero".
struct AnalyticTable {
  std::optional<double> volume;
  std::optional<double> isotropic_constant;
  std::optional<double> dbm_to_ball;
  std::optional<double> mean_width;
  /// Radius of a Euclidean ball about the origin contained in K.
  std::optional<double> inradius;
  /// Radius of a Euclidean ball about the origin containing K.
  std::optional<double> circumradius;
  /// Barycenter and covariance of the uniform probability measure on K.
  std::optional<Vec> barycenter;
  std::optional<Mat> covariance;
  /// sup over k-dim projections of volrad, known for balls and ellipsoids.
  std::function<double(int)> vk;
};

/// Square real matrix used for whitening and body images.
struct LinearMap {
  Mat matrix;

  LinearMap() = default;
  explicit LinearMap(Mat m);
  static LinearMap identity(int n) { return LinearMap(Mat::Identity(n, n)); }

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
  Vec operator()(const Vec& x) const { return matrix * x; }
  LinearMap operator*(const LinearMap& o) const { return LinearMap(matrix * o.matrix); }
};

/// A convex body given by oracles. Immutable after construction; copies share
/// the underlying oracle state and are safe to evaluate concurrently.
class ConvexBody {
 public:
  using SupportFn = std::function<double(const Vec&)>;
  using BatchSupportFn = std::function<Vec(const Mat&)>;
  using MembershipFn = std::function<bool(const Vec&)>;
  using SupportPointFn = std::function<Vec(const Vec&)>;

  struct Oracles {
    SupportFn support;
    /// Optional: support values for every column of a direction matrix.
    BatchSupportFn batch_support;
    MembershipFn membership;
    /// Optional: a point x of K with <x, theta> = h_K(theta).
    SupportPointFn support_point;
  };

  /// Structural description consumed by exact samplers and constructions.
  struct Structure {
    double lp_exponent = 2.0;
    double scale = 1.0;
    Mat transform;
    std::shared_ptr<const Mat> vertices;  // dim x count, v-polytopes only
    std::vector<ConvexBody> parts;
  };

  ConvexBody(int dim, Oracles oracles, Family family, bool symmetric,
             AnalyticTable analytic, Structure structure, std::string label);

  int dim() const { return dim_; }
  Family family() const { return family_; }
  bool symmetric() const { return symmetric_; }
  const AnalyticTable& analytic() const { return *analytic_; }
  const Structure& structure() const { return *structure_; }
  const std::string& label() const { return label_; }

  /// Same oracles with a replaced analytic table and label.
  ConvexBody with_metadata(AnalyticTable analytic, std::string label) const;

  double support(const Vec& theta) const;
  /// Support values at every column of `directions`.
  Vec support(const Mat& directions) const;

  bool has_membership() const { return static_cast<bool>(oracles_->membership); }
  /// Throws UnsupportedError when no membership oracle exists.
  bool contains(const Vec& x) const;

  bool has_support_point() const { return static_cast<bool>(oracles_->support_point); }
  Vec support_point(const Vec& theta) const;

 private:
  int dim_;
  std::shared_ptr<const Oracles> oracles_;
  Family family_;
  bool symmetric_;
  std::shared_ptr<const AnalyticTable> analytic_;
  std::shared_ptr<const Structure> structure_;
  std::string label_;
};

/// Family selector and parameters for make_standard_body.
struct BodyParams {
  double p = 2.0;              // lp-ball exponent
  Mat matrix;                  // ellipsoid: K = matrix * B_2^n
  Mat vertices;                // v-polytope: dim x count
  bool unit_volume = false;    // rescale to the homothetic copy of volume one
};

/// ball -> B_2^n; cube -> [-1,1]^n; cross-polytope -> B_1^n; lp-ball -> B_p^n;
/// ellipsoid -> A B_2^n; v-polytope -> conv(vertices).
ConvexBody make_standard_body(Family family, int dim, const BodyParams& params = {});

ConvexBody make_ball(int dim);
ConvexBody make_cube(int dim);
ConvexBody make_cross_polytope(int dim);
ConvexBody make_lp_ball(int dim, double p);
ConvexBody make_ellipsoid(const Mat& a);
ConvexBody make_v_polytope(const Mat& vertices);

/// Homothetic copy of volume one; requires an analytic volume.
ConvexBody unit_volume(const ConvexBody& k);

ConvexBody scale_body(const ConvexBody& k, double t);
ConvexBody linear_image_body(const ConvexBody& k, const LinearMap& t);
ConvexBody product_body(const ConvexBody& k, const ConvexBody& l);
/// conv(K u -K).
ConvexBody sym_hull(const ConvexBody& k);

/// Minkowski functional ||x||_K by bisection on the ray through x.
/// r0 is the radius of a ball about the origin contained in K.
double gauge(const ConvexBody& k, const Vec& x, double r0, double tol = 1e-10);

/// Volume of the Euclidean unit ball in R^k.
double unit_ball_volume(int k);
double log_unit_ball_volume(int k);
/// log Vol(B_p^n) = n log(2 Gamma(1 + 1/p)) - log Gamma(1 + n/p).
double log_lp_ball_volume(int n, double p);
/// E x_1^2 for the uniform measure on B_p^n.
double lp_ball_second_moment(int n, double p);

}  // namespace isoconv
