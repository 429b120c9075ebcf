#include "isoconv/hull.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <map>
#include <numeric>

#include "isoconv/error.hpp"

namespace isoconv {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Work {
  std::vector<int> v;
  std::vector<int> nb;  // nb[t]: facet across the ridge that omits v[t]
  VectorXd n;
  double off = 0.0;
  std::vector<int> outside;
  bool alive = true;
  int mark = -1;
};

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Unit normal of the hyperplane through the columns of `pts`, oriented so
// the reference point lies on the negative side.
bool hyperplane(const MatrixXd& pts, const VectorXd& reference, VectorXd& n, double& off) {
  const int d = static_cast<int>(pts.rows());
  n.resize(d);
  if (d == 1) {
    n(0) = 1.0;
  } else {
    MatrixXd diff(d - 1, d);
    for (int r = 1; r < d; ++r) diff.row(r - 1) = (pts.col(r) - pts.col(0)).transpose();
    MatrixXd minor(d - 1, d - 1);
    for (int j = 0; j < d; ++j) {
      for (int c = 0, cc = 0; c < d; ++c) {
        if (c == j) continue;
        minor.col(cc++) = diff.col(c);
      }
      n(j) = ((j % 2) ? -1.0 : 1.0) * minor.determinant();
    }
  }
  const double len = n.norm();
  if (!(len > 0.0) || !std::isfinite(len)) return false;
  n /= len;
  off = n.dot(pts.col(0));
  if (n.dot(reference) - off > 0.0) {
    n = -n;
    off = -off;
  }
  return true;
}

}  // namespace

ConvexHull::ConvexHull(const MatrixXd& points, double rel_eps) : points_(points) {
  const int d = static_cast<int>(points_.rows());
  const int m = static_cast<int>(points_.cols());
  if (d < 1) throw DimensionError("ConvexHull: dimension must be >= 1");
  if (m < d + 1) throw DegenerateError("ConvexHull: need at least d+1 points");
  if (!points_.allFinite()) throw DegenerateError("ConvexHull: non-finite coordinates");

  const double extent = (points_.rowwise().maxCoeff() - points_.rowwise().minCoeff()).maxCoeff();
  const double scale = std::max(extent, points_.cwiseAbs().maxCoeff());
  eps_ = rel_eps * std::max(scale, 1e-300);

  // Initial simplex: greedily maximize distance to the current affine hull.
  std::vector<int> simplex;
  {
    int i0 = 0;
    for (int i = 1; i < m; ++i)
      if (points_(0, i) < points_(0, i0)) i0 = i;
    simplex.push_back(i0);
    std::vector<VectorXd> basis;
    while (static_cast<int>(simplex.size()) < d + 1) {
      double best = -1.0;
      int best_i = -1;
      for (int i = 0; i < m; ++i) {
        VectorXd r = points_.col(i) - points_.col(i0);
        for (const auto& b : basis) r -= r.dot(b) * b;
        double dist = r.norm();
        if (dist > best) {
          best = dist;
          best_i = i;
        }
      }
      if (best <= eps_) throw DegenerateError("ConvexHull: points are not full-dimensional");
      VectorXd r = points_.col(best_i) - points_.col(i0);
      for (const auto& b : basis) r -= r.dot(b) * b;
      for (const auto& b : basis) r -= r.dot(b) * b;
      basis.push_back(r.normalized());
      simplex.push_back(best_i);
    }
  }
  interior_ = VectorXd::Zero(d);
  for (int s : simplex) interior_ += points_.col(s);
  interior_ /= static_cast<double>(d + 1);

  std::vector<Work> work;
  auto make_plane = [&](Work& f) {
    MatrixXd pts(d, d);
    for (int t = 0; t < d; ++t) pts.col(t) = points_.col(f.v[t]);
    if (!hyperplane(pts, interior_, f.n, f.off))
      throw DegenerateError("ConvexHull: degenerate facet");
  };

  for (int j = 0; j <= d; ++j) {
    Work f;
    for (int i = 0; i <= d; ++i)
      if (i != j) f.v.push_back(simplex[i]);
    f.nb.assign(d, -1);
    make_plane(f);
    work.push_back(std::move(f));
  }
  // Facet j omits simplex vertex j; its ridge omitting simplex vertex i is
  // shared with facet i.
  for (int j = 0; j <= d; ++j) {
    for (int t = 0; t < d; ++t) {
      int i = static_cast<int>(std::find(simplex.begin(), simplex.end(), work[j].v[t]) - simplex.begin());
      work[j].nb[t] = i;
    }
  }

  std::vector<char> in_simplex(m, 0);
  for (int s : simplex) in_simplex[s] = 1;
  for (int i = 0; i < m; ++i) {
    if (in_simplex[i]) continue;
    for (auto& f : work) {
      if (f.n.dot(points_.col(i)) - f.off > eps_) {
        f.outside.push_back(i);
        break;
      }
    }
  }

  std::vector<int> pending;
  for (int j = 0; j <= d; ++j)
    if (!work[j].outside.empty()) pending.push_back(j);

  int iteration = 0;
  while (!pending.empty()) {
    const int fid = pending.back();
    pending.pop_back();
    if (!work[fid].alive || work[fid].outside.empty()) continue;
    ++iteration;

    int apex = -1;
    double far = -1.0;
    for (int i : work[fid].outside) {
      double dist = work[fid].n.dot(points_.col(i)) - work[fid].off;
      if (dist > far) {
        far = dist;
        apex = i;
      }
    }
    const VectorXd p = points_.col(apex);

    std::vector<int> visible{fid};
    work[fid].mark = iteration;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      for (int g : work[visible[q]].nb) {
        if (work[g].mark == iteration) continue;
        if (work[g].n.dot(p) - work[g].off > eps_) {
          work[g].mark = iteration;
          visible.push_back(g);
        }
      }
    }
    auto is_visible = [&](int g) { return work[g].mark == iteration; };

    std::vector<int> created;
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    for (int vf : visible) {
      for (int t = 0; t < d; ++t) {
        const int g = work[vf].nb[t];
        if (is_visible(g)) continue;
        Work nf;
        for (int s = 0; s < d; ++s)
          if (s != t) nf.v.push_back(work[vf].v[s]);
        nf.v.push_back(apex);
        nf.nb.assign(d, -1);
        nf.nb[d - 1] = g;
        make_plane(nf);
        const int nid = static_cast<int>(work.size());
        for (int& back : work[g].nb)
          if (back == vf) back = nid;
        work.push_back(std::move(nf));
        created.push_back(nid);
      }
    }
    for (int nid : created) {
      for (int t = 0; t < d - 1; ++t) {
        std::vector<int> key;
        for (int s = 0; s < d; ++s)
          if (s != t) key.push_back(work[nid].v[s]);
        std::sort(key.begin(), key.end());
        auto it = open_ridges.find(key);
        if (it == open_ridges.end()) {
          open_ridges.emplace(std::move(key), std::make_pair(nid, t));
        } else {
          work[nid].nb[t] = it->second.first;
          work[it->second.first].nb[it->second.second] = nid;
          open_ridges.erase(it);
        }
      }
    }
    if (!open_ridges.empty())
      throw DegenerateError("ConvexHull: horizon is not a closed ridge cycle (numerical degeneracy)");

    for (int vf : visible) {
      work[vf].alive = false;
      for (int i : work[vf].outside) {
        if (i == apex) continue;
        for (int nid : created) {
          if (work[nid].n.dot(points_.col(i)) - work[nid].off > eps_) {
            work[nid].outside.push_back(i);
            break;
          }
        }
      }
      work[vf].outside.clear();
      work[vf].outside.shrink_to_fit();
    }
    for (int nid : created)
      if (!work[nid].outside.empty()) pending.push_back(nid);
  }

  for (auto& f : work) {
    if (!f.alive) continue;
    facets_.push_back(Facet{std::move(f.v), std::move(f.n), f.off});
  }
}

double ConvexHull::volume() const {
  const int d = dim();
  double total = 0.0;
  MatrixXd simplex(d, d);
  for (const auto& f : facets_) {
    for (int t = 0; t < d; ++t) simplex.col(t) = points_.col(f.vertices[t]) - interior_;
    total += std::abs(simplex.determinant());
  }
  return total / factorial(d);
}

std::vector<int> ConvexHull::vertex_indices() const {
  std::vector<int> out;
  for (const auto& f : facets_) out.insert(out.end(), f.vertices.begin(), f.vertices.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ConvexHull::contains(const VectorXd& x, double tol) const {
  for (const auto& f : facets_)
    if (f.normal.dot(x) - f.offset > tol) return false;
  return true;
}

double ConvexHull::inradius_about_origin() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : facets_) r = std::min(r, f.offset);
  return r;
}

double halfspace_intersection_volume(const MatrixXd& normals, const VectorXd& offsets) {
  const int d = static_cast<int>(normals.rows());
  if (offsets.size() != normals.cols())
    throw DimensionError("halfspace_intersection_volume: normals/offsets size mismatch");
  if ((offsets.array() <= 0.0).any())
    throw DegenerateError("halfspace_intersection_volume: origin must be interior (offsets > 0)");
  if (d == 1) {
    double hi = std::numeric_limits<double>::infinity();
    double lo = -hi;
    for (Eigen::Index i = 0; i < normals.cols(); ++i) {
      const double u = normals(0, i);
      if (u > 0) hi = std::min(hi, offsets(i) / u);
      if (u < 0) lo = std::max(lo, offsets(i) / u);
    }
    if (!std::isfinite(hi) || !std::isfinite(lo))
      throw UnboundedError("halfspace_intersection_volume: unbounded polytope");
    return hi - lo;
  }
  // Polar points y_i = u_i / b_i; each facet <a, y> = 1 of their hull is a
  // vertex a of the primal polytope.
  MatrixXd dual(d, normals.cols());
  for (Eigen::Index i = 0; i < normals.cols(); ++i) dual.col(i) = normals.col(i) / offsets(i);
  ConvexHull dual_hull(dual);
  const auto& facets = dual_hull.facets();
  MatrixXd primal(d, static_cast<Eigen::Index>(facets.size()));
  for (std::size_t j = 0; j < facets.size(); ++j) {
    if (facets[j].offset <= dual_hull.eps())
      throw UnboundedError(
          "halfspace_intersection_volume: directions do not surround the origin; polytope is unbounded");
    primal.col(static_cast<Eigen::Index>(j)) = facets[j].normal / facets[j].offset;
  }
  return ConvexHull(primal).volume();
}

}  // namespace isoconv
