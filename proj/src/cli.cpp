#include "isoconv/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "isoconv/bounds.hpp"
#include "isoconv/centroid.hpp"
#include "isoconv/descriptor.hpp"
#include "isoconv/error.hpp"
#include "isoconv/experiments.hpp"
#include "isoconv/functionals.hpp"
#include "isoconv/grassmann.hpp"
#include "isoconv/isotropy.hpp"
#include "isoconv/random.hpp"
#include "isoconv/report.hpp"

namespace isoconv {

namespace {

using nlohmann::ordered_json;

constexpr const char* kGrammar = R"(Bodies:
  ball:N  cube:N  cross:N  lpball:N:P (P >= 1 or inf)  ellipsoid:N:A1,...,AN  ellipsoid:N:@file
  vpolytope:N:@file   (append :unit for the volume-one homothetic copy)
  cube:N is [-1,1]^N; ellipsoid files hold N semi-axes or N*N row-major entries;
  vpolytope files hold one vertex per line.
Measures:
  gaussian:N  gaussian:N:V1,...,VN  gaussian:N:@variances  exponential:N
  uniform:BODY   (append :iso for the isotropic normalization; --mcmc allows
  hit-and-run for bodies without an exact sampler)
Output:
  --out csv | json | PATH.csv | PATH.json; without --out a plain summary is printed.
  CSV columns: suite,n,p,quantity,value,std_error,direction,seed,samples
Config:
  --config FILE.json with option names as keys, e.g. {"dims": [4, 8], "seed": 42}
Seeds:
  without --seed a seed is generated, printed to stderr and embedded in the output.
Environment:
  ISOCONV_THREADS caps the number of worker threads.
Exit codes:
  0 success, 1 failed suite assertion, 2 usage or input error, 3 runtime or I/O error.)";

std::string json_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Appends the options of a --config JSON file that are not already on the
// command line, so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConstructionError("config", path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConstructionError("config", path + " must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(kept.begin(), kept.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) kept.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + json_text(v);
      kept.push_back(flag);
      kept.push_back(joined);
    } else {
      kept.push_back(flag);
      kept.push_back(json_text(value));
    }
  }
  return kept;
}

std::string g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Options every command shares.
struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* cmd) {
    seed_opt = cmd->add_option("--seed", seed, "Master seed (generated and printed when omitted)");
    cmd->add_option("--out", out, "csv | json | PATH.csv | PATH.json");
    cmd->add_option("--config", config, "JSON file of option values");
  }

  std::uint64_t resolve_seed(std::ostream& err) {
    if (seed_opt->count() == 0) {
      seed = generate_seed();
      err << "seed: " << seed << "\n";
    }
    return seed;
  }
};

std::string plain_estimate(const Estimate& e) {
  std::string s = g12(e.value);
  if (e.std_error > 0.0) s += " +- " + g12(e.std_error);
  if (e.bound == Bound::upper || e.bound == Bound::lower) s += " (" + std::string(to_string(e.bound)) + " bound)";
  return s;
}

// Writes a report per --out; returns false when --out was empty.
bool emit(const Report& report, const std::string& target, std::ostream& out) {
  if (target.empty()) return false;
  const std::string fmt = output_format(target);
  if (fmt.empty()) throw ConstructionError("out", "--out must be csv, json, or a path ending in .csv or .json");
  if (target == "csv") {
    out << to_csv(report.rows);
  } else if (target == "json") {
    out << to_json(report).dump(2) << "\n";
  } else {
    emit_report(report, fmt, target);
  }
  return true;
}

ordered_json config_of(const std::string& command, const CLI::App* cmd, std::uint64_t seed) {
  ordered_json j;
  j["command"] = command;
  for (const CLI::Option* opt : cmd->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config" || name == "seed" || name == "out") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      j[name] = res.size() == 1 ? ordered_json(res.front()) : ordered_json(res);
    } else if (!opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  j["seed"] = seed;
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"isoconv: convex-geometry functionals of log-concave measures and a verification harness",
               "isoconv"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // meanwidth
  Common mw_common;
  std::string mw_body;
  Eigen::Index mw_sphere = kDefaultSphereSamples;
  CLI::App* mw = app.add_subcommand("meanwidth", "Mean width M*(K) by sphere sampling");
  mw->add_option("--body", mw_body, "Body descriptor")->required();
  mw->add_option("--sphere-samples", mw_sphere, "Sphere directions")->capture_default_str();
  mw_common.attach(mw);

  // zp
  Common zp_common;
  std::string zp_measure;
  double zp_p = 2.0;
  Eigen::Index zp_samples = 100000, zp_dirs = 1000;
  bool zp_mcmc = false;
  CLI::App* zp = app.add_subcommand("zp", "Support function of the empirical L_p-centroid body");
  zp->add_option("--measure", zp_measure, "Measure descriptor")->required();
  zp->add_option("--p", zp_p, "Exponent p >= 1")->capture_default_str();
  zp->add_option("--samples", zp_samples, "Sample count N")->capture_default_str();
  zp->add_option("--directions", zp_dirs, "Random sphere directions")->capture_default_str();
  zp->add_flag("--mcmc", zp_mcmc, "Allow hit-and-run sampling");
  zp_common.attach(zp);

  // isotropy
  Common iso_common;
  std::string iso_measure;
  Eigen::Index iso_samples = 100000;
  bool iso_mcmc = false;
  CLI::App* iso = app.add_subcommand("isotropy", "Barycenter, covariance spectrum and isotropic constant");
  iso->add_option("--measure", iso_measure, "Measure descriptor")->required();
  iso->add_option("--samples", iso_samples, "Sample count N")->capture_default_str();
  iso->add_flag("--mcmc", iso_mcmc, "Allow hit-and-run sampling");
  iso_common.attach(iso);

  // vk
  Common vk_common;
  std::string vk_body, vk_method = "auto";
  int vk_k = 1, vk_trials = 100;
  Eigen::Index vk_dirs = 2000;
  CLI::App* vk = app.add_subcommand("vk", "Lower estimate of v_k(K), the largest k-dim projection volume radius");
  vk->add_option("--body", vk_body, "Body descriptor")->required();
  vk->add_option("--k", vk_k, "Projection dimension (<= 6)")->capture_default_str();
  vk->add_option("--trials", vk_trials, "Random subspaces")->capture_default_str();
  vk->add_option("--method", vk_method, "auto | analytic | support-hull | inner-hull | membership-mc")
      ->capture_default_str();
  vk->add_option("--hull-directions", vk_dirs, "Support directions for hull methods")->capture_default_str();
  vk_common.attach(vk);

  // bound
  Common b_common;
  std::string b_kind, b_spectrum, b_values, b_rad = "unit";
  int b_n = 0, b_k = 0;
  double b_p = 0, b_t = 0, b_mstar = 0, b_lk = 0;
  CLI::App* bound = app.add_subcommand("bound", "Evaluate a displayed bound with unit constants");
  std::string kinds;
  for (BoundKind k : all_bound_kinds()) kinds += (kinds.empty() ? "" : " | ") + to_string(k);
  bound->add_option("--kind", b_kind, kinds)->required();
  auto* o_n = bound->add_option("--n", b_n, "Dimension");
  auto* o_p = bound->add_option("--p", b_p, "Exponent p");
  auto* o_k = bound->add_option("--k", b_k, "Projection dimension (prop31)");
  bound->add_option("--spectrum", b_spectrum, "Covariance eigenvalues, descending: list or @file");
  bound->add_option("--values", b_values, "v_k or e_k values: list or @file");
  auto* o_t = bound->add_option("--t", b_t, "Covering scale t");
  auto* o_m = bound->add_option("--mstar", b_mstar, "Mean width M*(K)");
  auto* o_l = bound->add_option("--lk", b_lk, "Isotropic constant L_K");
  bound->add_option("--rad", b_rad, "unit | log-min | sqrt-log | constant:C")->capture_default_str();
  b_common.attach(bound);

  // verify
  Common v_common;
  std::string v_suite, v_rad = "unit";
  std::vector<int> v_dims;
  std::vector<double> v_ps;
  std::vector<std::string> v_measures;
  Eigen::Index v_samples = 0, v_sphere = 0, v_hull = 0;
  int v_trials = 0;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suites;
  for (const auto& s : suite_names()) suites += (suites.empty() ? "" : " | ") + s;
  verify->add_option("--suite", v_suite, suites)->required();
  verify->add_option("--dims", v_dims, "Dimensions (suite default when omitted)")->delimiter(',');
  verify->add_option("--ps", v_ps, "Exponents p (suite default when omitted)")->delimiter(',');
  verify->add_option("--measures", v_measures, "gaussian | cube | cross | descriptor with {n}")->delimiter(',');
  verify->add_option("--samples", v_samples, "Samples N (0: suite default)");
  verify->add_option("--sphere-samples", v_sphere, "Sphere directions (0: suite default)");
  verify->add_option("--trials", v_trials, "Subspace trials (0: suite default)");
  verify->add_option("--hull-directions", v_hull, "Hull directions (0: suite default)");
  verify->add_option("--rad", v_rad, "unit | log-min | sqrt-log | constant:C")->capture_default_str();
  v_common.attach(verify);

  // scaling
  Common s_common;
  std::string s_family = "cross", s_input, s_quantity = "mstar";
  std::vector<int> s_dims = {8, 16, 32, 64, 128};
  Eigen::Index s_sphere = kDefaultSphereSamples;
  bool s_raw = false;
  CLI::App* scaling = app.add_subcommand("scaling", "Fit the slope of log M*(K_n) against log n");
  scaling->add_option("--family", s_family, "ball | cube | cross | lpball:P")->capture_default_str();
  scaling->add_option("--dims", s_dims, "Dimensions")->delimiter(',')->capture_default_str();
  scaling->add_option("--sphere-samples", s_sphere, "Sphere directions per dimension")->capture_default_str();
  scaling->add_flag("--raw", s_raw, "Use the unscaled body instead of its unit-volume copy");
  scaling->add_option("--input", s_input, "Fit rows of an existing CSV report instead");
  scaling->add_option("--quantity", s_quantity, "Quantity to fit with --input")->capture_default_str();
  s_common.attach(scaling);

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<const char*> argv{"isoconv"};
  for (const auto& a : expanded) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Report report;
    if (mw->parsed()) {
      const std::uint64_t seed = mw_common.resolve_seed(err);
      const ConvexBody k = parse_body(mw_body);
      const Estimate e = mean_width(k, mw_sphere, seed);
      report.config = config_of("meanwidth", mw, seed);
      report.rows.push_back(make_row("meanwidth", k.dim(), std::nullopt, "mstar", e));
      if (!emit(report, mw_common.out, out)) out << plain_estimate(e) << "\n";
      return kExitOk;
    }
    if (zp->parsed()) {
      const std::uint64_t seed = zp_common.resolve_seed(err);
      const LogConcaveMeasure mu = parse_measure(zp_measure, zp_mcmc);
      const SampleSet s = draw_samples(mu, zp_samples, hash64(seed, 0));
      const Mat dirs = random_directions(mu.dim(), zp_dirs, hash64(seed, 1));
      report.config = config_of("zp", zp, seed);
      for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
        Estimate e = zp_support_estimate(s, zp_p, Vec(dirs.col(j)));
        e.seed = seed;
        if (s.approximate) e.bound = Bound::mc;
        report.rows.push_back(make_row("zp", mu.dim(), zp_p, "h_Zp[" + std::to_string(j) + "]", e));
      }
      if (!emit(report, zp_common.out, out))
        for (const auto& r : report.rows) out << g12(r.value) << "\n";
      return kExitOk;
    }
    if (iso->parsed()) {
      const std::uint64_t seed = iso_common.resolve_seed(err);
      const LogConcaveMeasure mu = parse_measure(iso_measure, iso_mcmc);
      const SampleSet s = draw_samples(mu, iso_samples, seed);
      const MomentSummary m = estimate_moments(s);
      report.config = config_of("isotropy", iso, seed);
      const int n = mu.dim();
      auto row = [&](const std::string& q, double v) {
        report.rows.push_back(make_row("isotropy", n, std::nullopt, q, Estimate{v, 0.0, s.count(), seed, Bound::mc}));
      };
      for (int i = 0; i < n; ++i) row("barycenter[" + std::to_string(i) + "]", m.barycenter(i));
      for (int i = 0; i < n; ++i) row("eigenvalue[" + std::to_string(i) + "]", m.eigenvalues(i));
      row("det_root", m.det_root);
      ordered_json summary;
      summary["barycenter"] = std::vector<double>(m.barycenter.data(), m.barycenter.data() + n);
      summary["eigenvalues"] = std::vector<double>(m.eigenvalues.data(), m.eigenvalues.data() + n);
      summary["det_root"] = m.det_root;
      summary["L"] = nullptr;
      if (mu.density_sup() && !s.approximate) {
        Estimate l = isotropic_constant_estimate(s, *mu.density_sup());
        l.seed = seed;
        report.rows.push_back(make_row("isotropy", n, std::nullopt, "L", l));
        summary["L"] = l.value;
        summary["L_std_error"] = l.std_error;
      } else {
        err << "note: no analytic density bound for '" << mu.label() << "'; L is not reported\n";
      }
      report.summary = summary;
      if (!emit(report, iso_common.out, out)) out << summary.dump(2) << "\n";
      return kExitOk;
    }
    if (vk->parsed()) {
      const std::uint64_t seed = vk_common.resolve_seed(err);
      const ConvexBody k = parse_body(vk_body);
      VolumeOptions vo;
      vo.method = volume_method_from_string(vk_method);
      vo.directions = vk_dirs;
      const Estimate e = vk_estimate(k, vk_k, vk_trials, seed, vo);
      report.config = config_of("vk", vk, seed);
      report.rows.push_back(make_row("vk", k.dim(), std::nullopt, "v_" + std::to_string(vk_k), e));
      if (!emit(report, vk_common.out, out)) out << plain_estimate(e) << "\n";
      return kExitOk;
    }
    if (bound->parsed()) {
      BoundParams bp;
      if (o_n->count()) bp.n = b_n;
      if (o_p->count()) bp.p = b_p;
      if (o_k->count()) bp.k = b_k;
      if (o_t->count()) bp.t = b_t;
      if (o_m->count()) bp.mstar = b_mstar;
      if (o_l->count()) bp.isotropic_constant = b_lk;
      if (!b_spectrum.empty()) bp.spectrum = parse_number_list(b_spectrum);
      if (!b_values.empty()) bp.values = parse_number_list(b_values);
      bp.rad = rad_model_from_string(b_rad);
      const BoundKind kind = bound_kind_from_string(b_kind);
      const BoundValue v = bound_rhs(kind, bp);
      for (const auto& w : v.warnings) err << "warning: " << w << "\n";
      const int n = bp.n ? *bp.n : static_cast<int>(std::max(bp.spectrum.size(), bp.values.size()));
      report.config = config_of("bound", bound, 0);
      report.config.erase("seed");
      report.rows.push_back(make_row("bound", n, bp.p, to_string(kind), Estimate{v.value, 0.0, 0, 0, Bound::exact}));
      for (const auto& w : v.warnings) report.assertions.push_back({"warning", true, w});
      if (!emit(report, b_common.out, out)) out << g12(v.value) << "\n";
      return kExitOk;
    }
    if (verify->parsed()) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), v_suite) == names.end()) {
        err << "error: unknown suite '" << v_suite << "' (expected " << suites << ")\n";
        return kExitUsage;
      }
      SuiteConfig c;
      c.dims = v_dims;
      c.ps = v_ps;
      c.measures = v_measures;
      c.samples = v_samples;
      c.sphere_samples = v_sphere;
      c.trials = v_trials;
      c.hull_directions = v_hull;
      c.rad = rad_model_from_string(v_rad);
      c.seed = v_common.resolve_seed(err);
      report = run_suite(v_suite, c);
      report.config["command"] = "verify";
      report.config["rad"] = c.rad.name();
      if (!emit(report, v_common.out, out)) {
        for (const auto& f : report.fits)
          out << "fit " << f.name << ": slope " << g12(f.slope) << " +- " << g12(f.half_width) << ", intercept "
              << g12(f.intercept) << "\n";
      }
      for (const auto& a : report.assertions)
        (v_common.out == "csv" || v_common.out == "json" ? err : out)
            << (a.pass ? "PASS " : "FAIL ") << a.name << " (" << a.detail << ")\n";
      return report.passed() ? kExitOk : kExitAssertion;
    }
    if (scaling->parsed()) {
      std::vector<std::pair<double, double>> pts;
      std::uint64_t seed = 0;
      if (!s_input.empty()) {
        for (const auto& r : read_csv(s_input))
          if (r.quantity == s_quantity) pts.emplace_back(r.n, r.value);
        report.config = config_of("scaling", scaling, 0);
        report.config.erase("seed");
      } else {
        seed = s_common.resolve_seed(err);
        for (int n : s_dims) {
          std::string desc = s_family.rfind("lpball:", 0) == 0 ? "lpball:" + std::to_string(n) + s_family.substr(6)
                                                               : s_family + ":" + std::to_string(n);
          if (!s_raw) desc += ":unit";
          const Estimate e = mean_width(parse_body(desc), s_sphere, hash64(seed, static_cast<std::uint64_t>(n)));
          report.rows.push_back(make_row("scaling", n, std::nullopt, "mstar", e));
          pts.emplace_back(n, e.value);
        }
        report.config = config_of("scaling", scaling, seed);
      }
      const SlopeFit f = fit_scaling_slope(pts);
      report.fits.push_back({"log " + s_quantity + " vs log n", f.slope, f.intercept, f.half_width, ""});
      if (!emit(report, s_common.out, out))
        out << "slope " << g12(f.slope) << " +- " << g12(f.half_width) << "\nintercept " << g12(f.intercept) << "\n";
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace isoconv
