#include <algorithm>
#include <cmath>
#include <sstream>

#include "isoconv/centroid.hpp"
#include "isoconv/descriptor.hpp"
#include "isoconv/error.hpp"
#include "isoconv/experiments.hpp"
#include "isoconv/functionals.hpp"
#include "isoconv/grassmann.hpp"
#include "isoconv/isotropy.hpp"
#include "isoconv/random.hpp"

namespace isoconv::suites {

namespace {

using nlohmann::ordered_json;

template <typename T>
T pick(T value, T fallback) {
  return value ? value : fallback;
}

std::vector<int> pick_dims(const SuiteConfig& c, std::vector<int> fallback) {
  return c.dims.empty() ? fallback : c.dims;
}

std::uint64_t sub(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  return hash64(hash64(hash64(seed, a), b), c);
}

Estimate exact(double v) {
  Estimate e;
  e.value = v;
  return e;
}

Estimate derived(double v, double se, std::int64_t samples, std::uint64_t seed, Bound b = Bound::mc) {
  return Estimate{v, se, samples, seed, b};
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void check_dims(const std::vector<int>& dims, int lo, int hi, const std::string& suite) {
  for (int n : dims)
    if (n < lo || n > hi)
      throw ConstructionError("dims", suite + " supports dimensions " + std::to_string(lo) + ".." +
                                          std::to_string(hi) + ", got " + std::to_string(n));
}

ordered_json base_config(const std::string& suite, const SuiteConfig& c, const std::vector<int>& dims) {
  ordered_json j;
  j["suite"] = suite;
  j["dims"] = dims;
  j["seed"] = c.seed;
  return j;
}

ConvexBody unit_body(const std::string& family, int n) {
  if (family == "cube") return unit_volume(make_cube(n));
  if (family == "cross") return unit_volume(make_cross_polytope(n));
  if (family == "ball") return unit_volume(make_ball(n));
  throw ConstructionError("body", "unknown body family '" + family + "'");
}

// Shorthands name isotropic measures; anything else is a descriptor in
// which "{n}" is replaced by the dimension.
LogConcaveMeasure isotropic_measure(const std::string& name, int n) {
  if (name == "gaussian") return make_gaussian(n);
  if (name == "cube" || name == "cross" || name == "ball")
    return isotropic_normalization(make_uniform(unit_body(name, n)));
  std::string d = name;
  for (auto pos = d.find("{n}"); pos != std::string::npos; pos = d.find("{n}"))
    d.replace(pos, 3, std::to_string(n));
  return parse_measure(d);
}

std::vector<double> p_grid_to_sqrt_n(const SuiteConfig& c, int n) {
  const double top = std::sqrt(static_cast<double>(n));
  std::vector<double> ps;
  if (!c.ps.empty()) {
    for (double p : c.ps)
      if (p >= 1.0 && p <= top + 1e-12) ps.push_back(p);
    return ps;
  }
  for (double p = 1.0; p <= top + 1e-12; p *= 2.0) ps.push_back(p);
  if (ps.back() < top - 1e-12) ps.push_back(top);
  return ps;
}

}  // namespace

Report theorem1(const SuiteConfig& c) {
  const std::string suite = "theorem1";
  const auto dims = pick_dims(c, {4, 8, 16, 32});
  check_dims(dims, 1, 128, suite);
  const Eigen::Index samples = pick<Eigen::Index>(c.samples, 100000);
  const Eigen::Index sphere = pick<Eigen::Index>(c.sphere_samples, 10000);
  Report rep;
  rep.config = base_config(suite, c, dims);
  rep.config["bodies"] = {"cube:unit", "cross:unit"};
  rep.config["samples"] = samples;
  rep.config["sphere_samples"] = sphere;
  rep.config["ratio"] = "M*/(sqrt(n) log(1+n)^2 L_K)";

  const std::vector<std::string> families = {"cube", "cross"};
  for (std::size_t f = 0; f < families.size(); ++f) {
    std::vector<double> ratios;
    for (int n : dims) {
      const ConvexBody k = unit_body(families[f], n);
      const std::string tag = families[f] + ":";
      const Estimate m = mean_width(k, sphere, sub(c.seed, f, n, 0));
      const std::uint64_t sample_seed = sub(c.seed, f, n, 1);
      const SampleSet s = draw_samples(make_uniform(k), samples, sample_seed);
      const Estimate l = isotropic_constant_estimate(s, 1.0);
      const double scale = std::sqrt(static_cast<double>(n)) * std::pow(std::log1p(static_cast<double>(n)), 2);
      const double ratio = m.value / (scale * l.value);
      const double rel = std::hypot(m.std_error / m.value, l.std_error / l.value);
      const double plain = m.value / (std::sqrt(static_cast<double>(n)) * l.value);
      rep.rows.push_back(make_row(suite, n, std::nullopt, tag + "mstar", m));
      rep.rows.push_back(make_row(suite, n, std::nullopt, tag + "L_K", l));
      rep.rows.push_back(make_row(suite, n, std::nullopt, tag + "ratio_plain",
                                  derived(plain, plain * rel, samples, sample_seed)));
      rep.rows.push_back(
          make_row(suite, n, std::nullopt, tag + "ratio", derived(ratio, ratio * rel, samples, sample_seed)));
      ratios.push_back(ratio);
    }
    const double cap = 2.0 * ratios.front();
    const double worst = *std::max_element(ratios.begin(), ratios.end());
    rep.assertions.push_back({families[f] + ": ratio <= 2 x ratio(n_min)", worst <= cap,
                              "max ratio " + num(worst) + ", cap " + num(cap)});
  }
  return rep;
}

Report paouris(const SuiteConfig& c) {
  const std::string suite = "paouris";
  const auto dims = pick_dims(c, {16, 64});
  check_dims(dims, 1, 128, suite);
  const Eigen::Index samples = pick<Eigen::Index>(c.samples, 50000);
  const Eigen::Index sphere = pick<Eigen::Index>(c.sphere_samples, 2000);
  const std::vector<std::string> measures =
      c.measures.empty() ? std::vector<std::string>{"gaussian", "cube"} : c.measures;
  Report rep;
  rep.config = base_config(suite, c, dims);
  rep.config["measures"] = measures;
  rep.config["samples"] = samples;
  rep.config["sphere_samples"] = sphere;
  rep.config["p_grid"] = c.ps.empty() ? ordered_json("powers of 2 up to sqrt(n), plus sqrt(n)") : ordered_json(c.ps);
  rep.config["band"] = "max/min of M*(Z_p)/sqrt(p) <= 2";

  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    for (int n : dims) {
      const auto ps = p_grid_to_sqrt_n(c, n);
      if (ps.empty()) continue;
      const std::uint64_t sample_seed = sub(c.seed, mi, n, 0);
      const SampleSet s = draw_samples(isotropic_measure(measures[mi], n), samples, sample_seed);
      double lo = INFINITY, hi = 0.0;
      for (double p : ps) {
        Estimate m = mean_width(make_centroid_body(s, p), sphere, sub(c.seed, mi, n, 1));
        m.n_samples = samples;
        rep.rows.push_back(make_row(suite, n, p, measures[mi] + ":mstar_Zp", m));
        const double r = m.value / std::sqrt(p);
        rep.rows.push_back(make_row(suite, n, p, measures[mi] + ":mstar_Zp/sqrt(p)",
                                    derived(r, m.std_error / std::sqrt(p), samples, m.seed)));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      rep.rows.push_back(make_row(suite, n, std::nullopt, measures[mi] + ":flatness", exact(hi / lo)));
      rep.assertions.push_back({measures[mi] + " n=" + std::to_string(n) + ": flatness <= 2", hi / lo <= 2.0,
                                "max/min = " + num(hi / lo)});
    }
  }
  return rep;
}

Report thm_main_aniso(const SuiteConfig& c) {
  const std::string suite = "thm-main-aniso";
  const auto dims = pick_dims(c, {32});
  check_dims(dims, 2, 128, suite);
  const std::vector<double> ps = c.ps.empty() ? std::vector<double>{2, 8, 32} : c.ps;
  const Eigen::Index samples = pick<Eigen::Index>(c.samples, 50000);
  const Eigen::Index sphere = pick<Eigen::Index>(c.sphere_samples, 1000);
  const std::vector<std::string> measures = c.measures.empty() ? std::vector<std::string>{"gaussian"} : c.measures;
  Report rep;
  rep.config = base_config(suite, c, dims);
  rep.config["ps"] = ps;
  rep.config["measures"] = measures;
  rep.config["spectra"] = {"flat: 1", "geometric: 0.8^(i-1)", "spike: 100, 1, ..., 1"};
  rep.config["samples"] = samples;
  rep.config["sphere_samples"] = sphere;
  rep.config["rad"] = c.rad.name();
  rep.config["band"] = "sqrt(n) M*(Z_p) <= 1.5 C_p thm-main-arith, C_p fitted on the flat spectrum";

  const std::vector<std::string> spectra = {"flat", "geometric", "spike"};
  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    for (int n : dims) {
      std::vector<std::vector<double>> ratio(spectra.size(), std::vector<double>(ps.size()));
      for (std::size_t si = 0; si < spectra.size(); ++si) {
        Vec var = Vec::Ones(n);
        if (spectra[si] == "geometric")
          for (int i = 0; i < n; ++i) var(i) = std::pow(0.8, i);
        if (spectra[si] == "spike") var(0) = 100.0;
        LogConcaveMeasure mu = [&] {
          if (measures[mi] == "gaussian") return make_gaussian(n, var);
          if (measures[mi] == "cube")
            return affine_image(isotropic_measure("cube", n), LinearMap(Mat(var.cwiseSqrt().asDiagonal())));
          throw ConstructionError("measures", "thm-main-aniso supports gaussian and cube, got '" + measures[mi] + "'");
        }();
        const std::uint64_t sample_seed = sub(c.seed, mi, n, si);
        const SampleSet s = draw_samples(mu, samples, sample_seed);
        const MomentSummary mom = estimate_moments(s);
        const std::string tag = measures[mi] + ":" + spectra[si] + ":";
        for (std::size_t pi = 0; pi < ps.size(); ++pi) {
          // Directions are matched across spectra.
          Estimate m = mean_width(make_centroid_body(s, ps[pi]), sphere, sub(c.seed, mi, n, 100 + pi));
          const double rn = std::sqrt(static_cast<double>(n));
          Estimate lhs = derived(rn * m.value, rn * m.std_error, samples, sample_seed);
          BoundParams bp;
          bp.p = ps[pi];
          bp.spectrum = mom.eigenvalues;
          bp.rad = c.rad;
          const double arith = bound_rhs(BoundKind::thm_main_arith, bp).value;
          const double product = bound_rhs(BoundKind::thm_main_product, bp).value;
          rep.rows.push_back(make_row(suite, n, ps[pi], tag + "sqrt(n)mstar_Zp", lhs));
          rep.rows.push_back(make_row(suite, n, ps[pi], tag + "thm-main-arith", exact(arith)));
          rep.rows.push_back(make_row(suite, n, ps[pi], tag + "thm-main-product", exact(product)));
          ratio[si][pi] = lhs.value / arith;
          rep.rows.push_back(make_row(suite, n, ps[pi], tag + "ratio",
                                      derived(ratio[si][pi], lhs.std_error / arith, samples, sample_seed)));
        }
      }
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        const double cfit = ratio[0][pi];
        rep.fits.push_back({measures[mi] + " n=" + std::to_string(n) + " p=" + num(ps[pi]) + " C", 0.0, cfit, 0.0,
                            "constant fitted on the flat spectrum (stored in intercept)"});
        for (std::size_t si = 1; si < spectra.size(); ++si) {
          const double rel = ratio[si][pi] / cfit;
          rep.assertions.push_back({measures[mi] + " n=" + std::to_string(n) + " p=" + num(ps[pi]) + " " +
                                        spectra[si] + ": ratio <= 1.5 C",
                                    rel <= 1.5, "ratio/C = " + num(rel)});
        }
      }
    }
  }
  return rep;
}

Report b1_scaling(const SuiteConfig& c) {
  const std::string suite = "b1-scaling";
  const auto dims = pick_dims(c, {8, 16, 32, 64, 128});
  check_dims(dims, 1, 128, suite);
  const Eigen::Index sphere = pick<Eigen::Index>(c.sphere_samples, pick<Eigen::Index>(c.samples, 200000));
  Report rep;
  rep.config = base_config(suite, c, dims);
  rep.config["body"] = "cross:unit";
  rep.config["sphere_samples"] = sphere;
  rep.config["band"] = "[0.50, 0.65]: slope 1/2 plus the sqrt(log(1+n)) correction over n <= 128";
  std::vector<std::pair<double, double>> pts;
  for (int n : dims) {
    const Estimate m = mean_width(unit_body("cross", n), sphere, sub(c.seed, n));
    rep.rows.push_back(make_row(suite, n, std::nullopt, "mstar", m));
    pts.emplace_back(n, m.value);
  }
  const SlopeFit fit = fit_scaling_slope(pts);
  rep.fits.push_back({"log M* vs log n", fit.slope, fit.intercept, fit.half_width, "band [0.50, 0.65]"});
  rep.assertions.push_back({"slope in [0.50, 0.65]", fit.slope >= 0.50 && fit.slope <= 0.65,
                            "slope " + num(fit.slope) + " +- " + num(fit.half_width)});
  return rep;
}

Report qm_isotropy(const SuiteConfig& c) {
  const std::string suite = "qm-isotropy";
  const auto extras = pick_dims(c, {1, 4});
  check_dims(extras, 1, 64, suite);
  const Eigen::Index samples = pick<Eigen::Index>(c.samples, 100000);
  Report rep;
  rep.config = base_config(suite, c, extras);
  rep.config["dims_meaning"] = "m - n";
  rep.config["bodies"] = {"cube:4:unit", "cross:2:unit"};
  rep.config["samples"] = samples;
  rep.config["band"] = "off-diagonal max and diagonal spread <= 5/sqrt(N)";
  const double tol = 5.0 / std::sqrt(static_cast<double>(samples));
  const std::vector<std::pair<std::string, int>> bodies = {{"cube", 4}, {"cross", 2}};
  for (std::size_t bi = 0; bi < bodies.size(); ++bi) {
    for (int extra : extras) {
      const ConvexBody q = make_qm_body(unit_body(bodies[bi].first, bodies[bi].second), extra);
      const int m = q.dim();
      const std::uint64_t seed = sub(c.seed, bi, extra);
      const SampleSet s = draw_samples(make_uniform(q), samples, seed);
      const MomentSummary mom = estimate_moments(s);
      const Mat& cov = mom.covariance;
      double off = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (i != j) off = std::max(off, std::abs(cov(i, j)));
      const double spread = cov.diagonal().maxCoeff() - cov.diagonal().minCoeff();
      const std::string tag = bodies[bi].first + std::to_string(bodies[bi].second) + "+D" + std::to_string(extra) + ":";
      rep.rows.push_back(make_row(suite, m, std::nullopt, tag + "volume", exact(*q.analytic().volume)));
      rep.rows.push_back(make_row(suite, m, std::nullopt, tag + "L_Q", exact(*q.analytic().isotropic_constant)));
      rep.rows.push_back(make_row(suite, m, std::nullopt, tag + "offdiag_max", derived(off, 0.0, samples, seed)));
      rep.rows.push_back(make_row(suite, m, std::nullopt, tag + "diag_spread", derived(spread, 0.0, samples, seed)));
      rep.rows.push_back(
          make_row(suite, m, std::nullopt, tag + "diag_mean", derived(cov.diagonal().mean(), 0.0, samples, seed)));
      rep.assertions.push_back({tag + " off-diagonal <= 5/sqrt(N)", off <= tol, num(off) + " vs " + num(tol)});
      rep.assertions.push_back({tag + " diagonal spread <= 5/sqrt(N)", spread <= tol, num(spread) + " vs " + num(tol)});
    }
  }
  return rep;
}

Report kubota(const SuiteConfig& c) {
  const std::string suite = "kubota";
  const auto dims = pick_dims(c, {4});
  check_dims(dims, 2, kMaxVolumeDim, suite);
  const std::vector<double> ps = c.ps.empty() ? std::vector<double>{2, 3} : c.ps;
  const Eigen::Index samples = pick<Eigen::Index>(c.samples, 20000);
  const int trials = pick(c.trials, 24);
  const Eigen::Index dirs = pick<Eigen::Index>(c.hull_directions, 600);
  const std::vector<std::string> measures = c.measures.empty() ? std::vector<std::string>{"cube"} : c.measures;
  Report rep;
  rep.config = base_config(suite, c, dims);
  rep.config["ps"] = ps;
  rep.config["measures"] = measures;
  rep.config["samples"] = samples;
  rep.config["trials"] = trials;
  rep.config["check"] = "inner volrad(Z_p) <= (mean_F outer volrad(P_F Z_p)^p)^(1/p) + 3 SE";
  rep.config["hull_directions"] = dirs;
  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    for (int n : dims) {
      const std::uint64_t sample_seed = sub(c.seed, mi, n, 0);
      const SampleSet s = draw_samples(isotropic_measure(measures[mi], n), samples, sample_seed);
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        const double p = ps[pi];
        const int k = static_cast<int>(p);
        if (k != p || k < 1 || k > n)
          throw ConstructionError("ps", "kubota needs integer p = k in [1, n], got " + num(p));
        const ConvexBody z = make_centroid_body(s, p);
        const std::uint64_t hs = sub(c.seed, mi, n, 10 + pi);
        const VolradBracket whole = volume_radius_bracket(z, dirs, hs);
        std::vector<double> pw(static_cast<std::size_t>(trials));
        for (int t = 0; t < trials; ++t) {
          const Subspace f = random_subspace(n, k, sub(hs, t, 1));
          const Estimate r = volume_radius_lowdim(project_body(z, f),
                                                  VolumeOptions{VolumeMethod::support_hull, dirs, 0, sub(hs, t, 2)});
          pw[static_cast<std::size_t>(t)] = std::pow(r.value, p);
        }
        double mean = 0.0;
        for (double v : pw) mean += v;
        mean /= trials;
        double var = 0.0;
        for (double v : pw) var += (v - mean) * (v - mean);
        var /= std::max(1, trials - 1);
        const double rhs = std::pow(mean, 1.0 / p);
        const double rhs_se = rhs / (p * mean) * std::sqrt(var / trials);
        const std::string tag = measures[mi] + ":";
        rep.rows.push_back(make_row(suite, n, p, tag + "volrad_Zp_inner", derived(whole.inner, 0.0, dirs, hs, Bound::lower)));
        rep.rows.push_back(make_row(suite, n, p, tag + "volrad_Zp_outer", derived(whole.outer, 0.0, dirs, hs, Bound::upper)));
        rep.rows.push_back(
            make_row(suite, n, p, tag + "kubota_rhs", derived(rhs, rhs_se, trials, hs, Bound::upper)));
        rep.assertions.push_back({tag + " n=" + std::to_string(n) + " p=" + num(p) + ": volrad <= Kubota mean",
                                  whole.inner <= rhs + 3.0 * rhs_se,
                                  num(whole.inner) + " <= " + num(rhs) + " + 3 x " + num(rhs_se)});
      }
    }
  }
  return rep;
}

Report zn_volrad(const SuiteConfig& c) {
  const std::string suite = "zn-volrad";
  const auto dims = pick_dims(c, {2, 3, 4});
  check_dims(dims, 1, kMaxVolumeDim, suite);
  const Eigen::Index samples = pick<Eigen::Index>(c.samples, 50000);
  const Eigen::Index dirs = pick<Eigen::Index>(c.hull_directions, 1000);
  Report rep;
  rep.config = base_config(suite, c, dims);
  rep.config["bodies"] = {"cube:unit", "cross:unit"};
  rep.config["samples"] = samples;
  rep.config["hull_directions"] = dirs;
  rep.config["ratio"] = "volrad(Z_n) L_K / (sqrt(n) det_root), outer hull";
  rep.config["check"] = "two independent seeds agree within 10%";
  const std::vector<std::string> families = {"cube", "cross"};
  for (std::size_t f = 0; f < families.size(); ++f) {
    for (int n : dims) {
      const ConvexBody k = unit_body(families[f], n);
      const double lk = *k.analytic().isotropic_constant;
      double r[2];
      for (int rep_i = 0; rep_i < 2; ++rep_i) {
        const std::uint64_t seed = sub(c.seed, f, n, rep_i);
        const SampleSet s = draw_samples(make_uniform(k), samples, seed);
        const MomentSummary mom = estimate_moments(s);
        const Estimate v = volume_radius_lowdim(make_centroid_body(s, n),
                                                VolumeOptions{VolumeMethod::support_hull, dirs, 0, hash64(seed, 7)});
        r[rep_i] = v.value * lk / (std::sqrt(static_cast<double>(n)) * mom.det_root);
        const std::string tag = families[f] + ":run" + std::to_string(rep_i) + ":";
        rep.rows.push_back(make_row(suite, n, n, tag + "volrad_Zn", derived(v.value, 0.0, samples, seed, Bound::upper)));
        rep.rows.push_back(make_row(suite, n, n, tag + "det_root", derived(mom.det_root, 0.0, samples, seed)));
        rep.rows.push_back(make_row(suite, n, n, tag + "ratio", derived(r[rep_i], 0.0, samples, seed)));
      }
      const double dev = std::abs(r[0] - r[1]) / std::max(r[0], r[1]);
      rep.assertions.push_back({families[f] + " n=" + std::to_string(n) + ": seeds agree within 10%", dev <= 0.10,
                                "relative difference " + num(dev)});
    }
  }
  return rep;
}

Report covering_regularity(const SuiteConfig& c) {
  const std::string suite = "covering-regularity";
  const auto dims = pick_dims(c, {2, 3});
  check_dims(dims, 1, 3, suite);
  const Eigen::Index sphere = pick<Eigen::Index>(c.sphere_samples, 10000);
  constexpr int kCenters = 256;
  constexpr int kGrid = 10;
  Report rep;
  rep.config = base_config(suite, c, dims);
  rep.config["bodies"] = {"cube:unit", "cross:unit"};
  rep.config["sphere_samples"] = sphere;
  rep.config["max_centers"] = kCenters;
  rep.config["radius_grid"] = "10 geometric radii from the 256-ball greedy radius to 0.95 circumradius";
  rep.config["rad"] = c.rad.name();
  rep.config["check"] = "per bound and n: C fitted on one body over all radii; the other body's log N <= 2 C profile";
  const std::vector<std::string> families = {"cube", "cross"};
  const std::vector<BoundKind> kinds = {BoundKind::hartzoulaki, BoundKind::sudakov, BoundKind::thm14};
  for (int n : dims) {
    // logn[f][i] and prof[f][kind][i]
    std::vector<std::vector<double>> logn(families.size());
    std::vector<std::vector<std::vector<double>>> prof(families.size());
    for (std::size_t f = 0; f < families.size(); ++f) {
      const ConvexBody k = unit_body(families[f], n);
      const double lk = *k.analytic().isotropic_constant;
      const double big = *k.analytic().circumradius;
      const Estimate m = mean_width(k, sphere, sub(c.seed, f, n));
      const CoveringProfile cover = greedy_covering(k, kCenters);
      const double r_lo = std::min(cover.radius.back() * 1.02, 0.5 * big);
      const double r_hi = 0.95 * big;
      const std::string tag = families[f] + ":";
      rep.rows.push_back(make_row(suite, n, std::nullopt, tag + "mstar", m));
      std::vector<double> radii(kGrid);
      logn[f].resize(kGrid);
      for (int i = 0; i < kGrid; ++i) {
        radii[i] = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (kGrid - 1));
        logn[f][i] = cover.log_count(radii[i]);
        rep.rows.push_back(make_row(suite, n, std::nullopt, tag + "radius[" + std::to_string(i) + "]", exact(radii[i])));
        rep.rows.push_back(make_row(suite, n, std::nullopt, tag + "greedy_logN[" + std::to_string(i) + "]",
                                    derived(logn[f][i], 0.0, 0, 0, Bound::upper)));
      }
      for (BoundKind kind : kinds) {
        std::vector<double> vals(kGrid);
        for (int i = 0; i < kGrid; ++i) {
          BoundParams bp;
          bp.n = n;
          bp.isotropic_constant = lk;
          bp.mstar = m.value;
          bp.rad = c.rad;
          // Sudakov covers by t B_2^n; the others by t sqrt(n) B_2^n.
          bp.t = kind == BoundKind::sudakov ? radii[i] : radii[i] / std::sqrt(static_cast<double>(n));
          vals[i] = bound_rhs(kind, bp).value;
          rep.rows.push_back(make_row(suite, n, std::nullopt,
                                      tag + to_string(kind) + "[" + std::to_string(i) + "]", exact(vals[i])));
        }
        prof[f].push_back(std::move(vals));
      }
    }
    for (std::size_t b = 0; b < kinds.size(); ++b) {
      for (std::size_t f = 0; f < families.size(); ++f) {
        const std::size_t g = 1 - f;
        double cfit = 0.0;
        for (int i = 0; i < kGrid; ++i) cfit = std::max(cfit, logn[f][i] / prof[f][b][i]);
        double worst = 0.0;
        for (int i = 0; i < kGrid && cfit > 0.0; ++i)
          worst = std::max(worst, logn[g][i] / (2.0 * cfit * prof[g][b][i]));
        const std::string what = "n=" + std::to_string(n) + " " + to_string(kinds[b]);
        rep.fits.push_back({families[f] + ": " + what + " C", 0.0, cfit, 0.0,
                            "max log N / profile over the radius grid (stored in intercept)"});
        rep.assertions.push_back({families[g] + ": " + what + ": log N <= 2 C(" + families[f] + ") profile",
                                  worst <= 1.0, "max (log N)/(2 C profile) = " + num(worst)});
      }
    }
  }
  return rep;
}

}  // namespace isoconv::suites
