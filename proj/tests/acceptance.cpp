// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "isoconv/body.hpp"
#include "isoconv/bounds.hpp"
#include "isoconv/centroid.hpp"
#include "isoconv/experiments.hpp"
#include "isoconv/functionals.hpp"
#include "isoconv/grassmann.hpp"
#include "isoconv/isotropy.hpp"
#include "isoconv/measure.hpp"
#include "isoconv/report.hpp"
#include "oracles.hpp"

using namespace isoconv;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string g6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool within_3se(double value, double se, double truth) { return std::abs(value - truth) <= 3.0 * se; }

void summarize_suite(Outcome& o, const Report& r) {
  int failed = 0;
  for (const auto& a : r.assertions)
    if (!a.pass) {
      ++failed;
      o.require(false, a.name + ": " + a.detail);
    }
  o.detail << " " << r.assertions.size() - failed << "/" << r.assertions.size() << " assertions";
}

// 1. Exact empirical identities.
void identities(Outcome& o) {
  oracle::Gen g(101);
  const std::vector<LogConcaveMeasure> mus = {make_gaussian(8), make_uniform(make_cube(5)),
                                              make_exponential_product(6)};
  int violations = 0;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const SampleSet s = draw_samples(mus[i], 5000, 10 + i);
    const Mat d = g.directions(mus[i].dim(), 1000);
    for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 8.0}, {3.0, 64.0}})
      violations += zp_monotonicity_check(s, p, q, d, 1e-12).violations;
  }
  o.require(violations == 0, "monotonicity violations " + std::to_string(violations));

  double worst = 0.0;
  const SampleSet base = draw_samples(make_exponential_product(8), 2000, 20);
  for (int t = 0; t < 100; ++t) {
    const int k = g.integer(1, 8);
    const Subspace f = random_subspace(8, k, 500 + t);
    const Mat theta = f.embed(g.direction(k));
    worst = std::max(worst, projection_identity_check(base, g.uniform(1.0, 64.0), f, theta));
  }
  o.require(worst <= 1e-12, "projection identity deviation " + g6(worst));

  double z2 = 0.0;
  for (const auto& mu : mus) {
    const SampleSet s = draw_samples(mu, 20000, 30);
    const SampleSet w = whitening_map(estimate_moments(s)).apply(s);
    z2 = std::max(z2, (zp_support(w, 2.0, g.directions(mu.dim(), 1000)).array() - 1.0).abs().maxCoeff());
  }
  o.require(z2 <= 1e-8, "Z_2 deviation " + g6(z2));

  int amgm = 0;
  for (int t = 0; t < 1000; ++t) {
    BoundParams bp;
    bp.n = g.integer(1, 64);
    bp.p = g.uniform(1.0, 2.0 * *bp.n);
    bp.spectrum = g.spectrum(*bp.n);
    const double a = bound_rhs(BoundKind::thm_main_arith, bp).value;
    const double b = bound_rhs(BoundKind::thm_main_product, bp).value;
    if (a < b * (1 - 1e-12)) ++amgm;
  }
  o.require(amgm == 0, "AM-GM failures " + std::to_string(amgm));
  o.detail << " monotonicity 0/9000 violations, projection dev " << g6(worst) << ", Z_2 dev " << g6(z2)
           << ", AM-GM 1000/1000";
}

// 2. Oracle values at N = 2e5.
void oracles(Outcome& o) {
  constexpr Eigen::Index kN = 200000;
  oracle::Gen g(102);
  const SampleSet gs = draw_samples(make_gaussian(4), kN, 1);
  for (double p : {1.0, 2.0, 4.0}) {
    const Estimate e = zp_support_estimate(gs, p, g.direction(4));
    const double truth = oracle::gauss_cp(p);
    o.require(within_3se(e.value, e.std_error, truth), "c_" + g6(p) + " = " + g6(e.value) + " vs " + g6(truth));
    o.detail << " c_" << p << "=" << g6(e.value);
  }
  const double sq = oracle::circle_mean([](double c, double s) { return std::abs(c) + std::abs(s); });
  const Estimate m = mean_width(make_cube(2), kN, 2);
  o.require(within_3se(m.value, m.std_error, sq), "M*(square) " + g6(m.value));
  o.detail << " M*(square)=" << g6(m.value);

  const Estimate lc = isotropic_constant_estimate(draw_samples(make_uniform(unit_volume(make_cube(3))), kN, 3), 1.0);
  const Estimate lx =
      isotropic_constant_estimate(draw_samples(make_uniform(unit_volume(make_cross_polytope(2))), kN, 4), 1.0);
  o.require(within_3se(lc.value, lc.std_error, oracle::kCubeL), "L(cube) " + g6(lc.value));
  o.require(within_3se(lx.value, lx.std_error, oracle::kCubeL), "L(cross) " + g6(lx.value));
  o.detail << " L(cube)=" << g6(lc.value) << " L(cross)=" << g6(lx.value);

  VolumeOptions mc;
  mc.method = VolumeMethod::membership_mc;
  mc.mc_samples = kN;
  mc.seed = 5;
  const Estimate vs = volume_radius_lowdim(make_cube(2), mc);
  const Estimate vc = volume_radius_lowdim(make_cross_polytope(3), mc);
  o.require(within_3se(vs.value, vs.std_error, oracle::volrad(4.0, 2)), "volrad(square) " + g6(vs.value));
  o.require(within_3se(vc.value, vc.std_error, oracle::volrad(4.0 / 3.0, 3)), "volrad(B_1^3) " + g6(vc.value));
  o.detail << " volrad=" << g6(vs.value) << "," << g6(vc.value);
}

// 3. Urysohn in dims 2-6.
void urysohn(Outcome& o) {
  int checked = 0;
  for (int n = 2; n <= 6; ++n) {
    for (const ConvexBody& k : {make_ball(n), make_cube(n), make_cross_polytope(n)}) {
      const UrysohnResult r = urysohn_check(k, 50000, 40 + n);
      o.require(r.pass, k.label() + " M*=" + g6(r.mstar.value) + " volrad=" + g6(r.volrad.value));
      if (k.family() == Family::ball)
        o.require(std::abs(r.mstar.value - r.volrad.value) <= 1e-8, "ball equality in dim " + std::to_string(n));
      ++checked;
    }
  }
  // Hull-based volume radius for the polytopes as an independent path.
  VolumeOptions hull;
  hull.method = VolumeMethod::inner_hull;
  hull.directions = 1500;
  for (int n = 2; n <= 4; ++n) {
    const UrysohnResult r = urysohn_check(make_cross_polytope(n), 50000, 60 + n, hull);
    o.require(r.pass, "cross hull dim " + std::to_string(n));
    ++checked;
  }
  o.detail << " " << checked << " bodies pass";
}

Report suite(const std::string& name) {
  SuiteConfig c;
  c.seed = 20240601;
  return run_suite(name, c);
}

void paouris(Outcome& o) { summarize_suite(o, suite("paouris")); }
void aniso(Outcome& o) { summarize_suite(o, suite("thm-main-aniso")); }

void b1(Outcome& o) {
  const Report r = suite("b1-scaling");
  summarize_suite(o, r);
  if (!r.fits.empty()) o.detail << ", slope " << g6(r.fits.front().slope) << " +- " << g6(r.fits.front().half_width);
}

void qm(Outcome& o) { summarize_suite(o, suite("qm-isotropy")); }

// 8. Covering chain.
void covering(Outcome& o) {
  const std::vector<EntropyBound> e1 = entropy_numbers(make_cube(1), 1);
  const double v1 = vk_estimate(make_cube(1), 1, 1, 1).value;
  o.require(v1 == 1.0 && 2.0 * e1[1].upper == 1.0 && e1[1].exact, "v_1([-1,1]) = 1 = 2 e_1");
  int pairs = 0;
  for (int n : {2, 3}) {
    for (const ConvexBody& k : {make_cube(n), make_ball(n)}) {
      const std::vector<EntropyBound> e = entropy_numbers(k, 8);
      for (int j = 1; j <= std::min(8, n); ++j) {
        const Estimate v = vk_estimate(k, j, 200, 70 + j);
        o.require(v.value <= 2.0 * e[j].upper, k.label() + " k=" + std::to_string(j) + ": " + g6(v.value) +
                                                   " > 2 x " + g6(e[j].upper));
        ++pairs;
      }
    }
  }
  o.detail << " v_1=2e_1=1 exact; " << pairs << " (body, k) pairs with v_k <= 2 e_k;";
  summarize_suite(o, suite("kubota"));
}

// 9. Bit-identical reruns.
void reproducible(Outcome& o) {
  SuiteConfig c;
  c.seed = 77;
  c.samples = 5000;
  c.sphere_samples = 1000;
  c.trials = 4;
  c.hull_directions = 200;
  std::optional<std::string> saved;
  if (const char* env = std::getenv("ISOCONV_THREADS")) saved = env;
  int same = 0;
  for (const std::string& name : suite_names()) {
    SuiteConfig cc = c;
    if (name == "b1-scaling") cc.dims = {8, 16, 32, 64};
    if (name == "paouris") cc.dims = {16};
    const std::string a = to_csv(run_suite(name, cc).rows);
    // The rerun is single-threaded; chunk seeding makes rows independent of the worker count.
    setenv("ISOCONV_THREADS", "1", 1);
    const std::string b = to_csv(run_suite(name, cc).rows);
    if (saved)
      setenv("ISOCONV_THREADS", saved->c_str(), 1);
    else
      unsetenv("ISOCONV_THREADS");
    o.require(a == b, name + " rows differ");
    same += a == b;
  }
  SuiteConfig full;
  full.seed = 78;
  const std::string a = to_csv(run_suite("qm-isotropy", full).rows);
  o.require(a == to_csv(run_suite("qm-isotropy", full).rows), "qm-isotropy at full size");
  o.detail << " " << same << "/" << suite_names().size() << " suites reproduce their CSV byte for byte";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> all = {
      {1, "exact empirical identities", 10, identities},
      {2, "oracle values", 120, oracles},
      {3, "urysohn", 60, urysohn},
      {4, "Z_p mean-width flatness", 180, paouris},
      {5, "spectral-shape transfer", 300, aniso},
      {6, "B_1^n scaling", 300, b1},
      {7, "Q_m isotropy", 60, qm},
      {8, "covering chain", 120, covering},
      {9, "reproducibility", 600, reproducible},
  };
  int failures = 0;
  for (const Criterion& c : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= c.budget_s, "took " + g6(secs) + " s, budget " + g6(c.budget_s) + " s");
    std::printf("%s criterion %d (%s): %.1fs;%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
