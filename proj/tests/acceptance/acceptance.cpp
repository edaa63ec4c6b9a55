// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "lattice_w1.hpp"
#include "skewstab/arithmetic/diophantine.hpp"
#include "skewstab/cli/run.hpp"
#include "skewstab/dynamics/invariant.hpp"
#include "skewstab/dynamics/lasota_yorke.hpp"
#include "skewstab/lab/budget.hpp"
#include "skewstab/lab/counterexamples.hpp"
#include "skewstab/lab/decay.hpp"
#include "skewstab/measures/norms.hpp"
#include "skewstab/measures/random.hpp"
#include "skewstab/measures/w1.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace skewstab;
using namespace skewstab::measures;
namespace fs = std::filesystem;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

FiberMeasure signed_fiber(Rng& rng, int max_atoms) {
  const int n = rng.range(1, max_atoms);
  std::vector<double> c, w;
  for (int i = 0; i < n; ++i) {
    c.push_back(rng.uniform());
    w.push_back(rng.uniform(-1.0, 1.0));
  }
  return FiberMeasure(1, c, w);
}

Outcome w1_oracle() {
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const FiberMeasure mu = signed_fiber(rng, 6);
    worst = std::max(worst, std::fabs(w1_norm(mu) - oracle::lattice_w1(mu.coords(), mu.weights(), 10000)));
  }
  return {worst <= 1e-3, fmt("200 measures, max |fast - lattice oracle| = %.3g (tol 1e-3)", worst)};
}

Outcome transfer_conservation() {
  const dynamics::SkewSystem te = dynamics::rotation_extension(kGolden);
  const dynamics::SkewSystem pre{dynamics::BaseMap::linear_precomposed(2, dynamics::Sigma{0.05}),
                                 dynamics::FiberMap::composite(kGolden, {{0.5, 1.0}}, 0.002, 8),
                                 {}};
  Rng rng(102);
  double mass_err = 0.0, marg_err = 0.0;
  int negative = 0;
  const std::size_t N = 128;
  for (int t = 0; t < 500; ++t) {
    const dynamics::SkewSystem& sys = t % 2 == 0 ? te : pre;
    const Disintegration mu = random_block_measure(rng, N);
    const Disintegration L = dynamics::transfer_step(sys, mu);
    mass_err = std::max(mass_err, std::fabs(L.total_mass() - mu.total_mass()));
    if (!L.is_positive()) ++negative;
    std::vector<double> m(N);
    for (std::size_t i = 0; i < N; ++i) m[i] = mu.fiber(i).mass();
    const std::vector<double> b = dynamics::base_transfer(sys, m);
    for (std::size_t i = 0; i < N; ++i) marg_err = std::max(marg_err, std::fabs(L.fiber(i).mass() - b[i]));
  }
  return {mass_err <= 1e-12 && negative == 0 && marg_err <= 1e-12,
          fmt("500 measures, mass err %.2g, marginal err %.2g (tol 1e-12), %d lost positivity", mass_err, marg_err,
              negative)};
}

Outcome fiber_contraction() {
  Rng rng(103);
  std::vector<dynamics::SkewSystem> family;
  family.push_back({dynamics::BaseMap::linear(2), dynamics::FiberMap::translation(kGolden), {}});
  for (auto [d, k] : {std::pair{0.001, 4}, std::pair{-0.002, 8}, std::pair{0.0005, 16}})
    family.push_back({dynamics::BaseMap::linear(2), dynamics::FiberMap::deformation(d, k), {}});
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    RandomMeasureOptions opt;
    opt.positive = t % 2 == 0;
    const Disintegration mu = random_block_measure(rng, 32, opt);
    const double n0 = l1_norm(mu);
    for (const dynamics::SkewSystem& s : family) {
      const double r = l1_norm(dynamics::transfer_step(s, mu, 0.0)) / (s.alpha() * n0);
      worst = std::max(worst, r);
    }
  }
  return {worst <= 1.0 + 1e-9,
          fmt("200 measures x 4 fiber maps, max ||L_F mu|| / (alpha ||mu||) = %.12f", worst)};
}

Outcome lebesgue_invariance() {
  const dynamics::SkewSystem sys = dynamics::rotation_extension(kGolden);
  const std::size_t N = 1024;
  const Disintegration leb = Disintegration::lebesgue(N, 4 * static_cast<long>(N));
  const double d = l1_norm(dynamics::transfer_step(sys, leb) - leb);
  return {d <= 2.0 / N, fmt("N = 1024, ||L f0 - f0|| = %.3g (bound 2/N = %.3g)", d, 2.0 / N)};
}

Outcome lasota_yorke() {
  const dynamics::SkewSystem sys = dynamics::rotation_extension(kGolden);
  bool ok = true;
  std::string detail;
  for (std::size_t N : {256u, 1024u}) {
    Rng rng(104);
    double worst = 1e300;
    for (int t = 0; t < 50; ++t) {
      const dynamics::LyRecord rec = dynamics::ly_check(sys, random_block_measure(rng, N), 1.0);
      worst = std::min(worst, rec.margin);
    }
    const double slack = 2.0 / static_cast<double>(N);
    const dynamics::InvariantResult inv = dynamics::invariant_measure(sys, N, 1e-6, 1000);
    const dynamics::RegularityRecord reg = dynamics::regularity_check(sys, inv.measure, 1.0);
    ok = ok && worst >= -slack && reg.holds() && reg.slack <= slack + 1e-15;
    detail += fmt("N=%zu: min margin %.3g (>= -%.3g), regularity var %.3g <= %.3g; ", N, worst, slack, reg.var,
                  reg.bound);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome stability_bound_check() {
  const double b = lab::stability_bound({lab::Phi::power_law(1.0, 1.0), 1.0, 1.0, 0.01});
  const double closed = 0.02 * (std::sqrt(200.0) + 1.0);
  bool ok = std::fabs(b - 0.302843) <= 1e-6 && std::fabs(b - closed) <= 1e-9;
  std::string detail = fmt("bound %.9f (closed form %.9f); slopes", b, closed);
  for (double a : {0.5, 1.0, 2.0}) {
    const LineFit f = lab::bound_scaling_fit({lab::Phi::power_law(1.0, a), 1.0, 1.0, 0.0});
    ok = ok && std::fabs(f.slope - a / (a + 1.0)) <= 0.02;
    detail += fmt(" %.4f/%.4f", f.slope, a / (a + 1.0));
  }
  return {ok, detail + " (tol 0.02)"};
}

Outcome periodic_orbit() {
  const arithmetic::AngleSpec th = arithmetic::lacunary_theta(4);
  Rational partial(0);
  for (int i = 1; i <= 4; ++i) partial += pow2(-(1L << (2 * i)));
  bool ok = true;
  std::string detail;
  for (int j : {1, 2}) {
    const lab::PropBahh pb = lab::prop_bahh_system(th, j, 0.5, 2.5);
    const Rational expected = Rational(pb.approximant.p, pb.approximant.k) - partial;
    const bool exact = pb.approximant.delta == expected;
    const double closed = 1.0 / (4.0 * static_cast<double>(pb.k));
    const bool bounds = pb.distance >= pb.lower_bound_delta && pb.distance >= pb.lower_bound_k &&
                        std::fabs(pb.distance - closed) <= 1e-15;
    ok = ok && exact && bounds;
    detail += fmt("j=%d k=%ld delta=%.4g exact=%d dist=%.4g >= (%.3g, %.3g); ", j, pb.k,
                  to_double(pb.approximant.delta), exact, pb.distance, pb.lower_bound_delta, pb.lower_bound_k);
    if (j == 1) {
      const FiberMeasure diff =
          combine(pb.orbit_measure(1).fiber(0), 1.0, Disintegration::lebesgue(1, 256).fiber(0), -1.0);
      const double oracle_w1 = oracle::lattice_w1(diff.coords(), diff.weights());
      const double lib_w1 = l1_norm(pb.orbit_measure(4) - Disintegration::lebesgue(4, 4096));
      const bool agree = std::fabs(oracle_w1 - closed) <= 1e-3 && std::fabs(lib_w1 - closed) <= 1e-9;
      const lab::PipelineResult pr = lab::prop_bahh_pipeline(pb, 1024, 1e-5, 3000);
      const bool near = pr.invariant.converged && pr.distance_to_orbit <= 4.0 / 1024.0;
      ok = ok && agree && near;
      detail += fmt("oracle %.5f lib %.5f; pipeline N=1024 %s after %d, dist %.3g (<= %.3g); ", oracle_w1, lib_w1,
                    pr.invariant.converged ? "converged" : "NOT converged", pr.invariant.iterations,
                    pr.distance_to_orbit, 4.0 / 1024.0);
    }
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome cosine_observable() {
  const arithmetic::AngleSpec th = arithmetic::lacunary_theta(4);
  const double expected[3] = {0.0, std::ldexp(1.0, -8) + std::ldexp(1.0, -32), std::ldexp(1.0, -32)};
  bool ok = true;
  std::string detail;
  for (int j : {1, 2}) {
    const lab::PropBahh pb = lab::prop_bahh_system(th, j, 0.5);
    const lab::Prop30Value v = lab::prop30_observable_average(4, pb.orbit_measure(1));
    bool cancel = true;
    for (const lab::Prop30Term& t : v.terms)
      if (t.index < j && !t.exactly_zero) cancel = false;
    const double delta = std::fabs(to_double(pb.approximant.delta));
    const double sq = 0.5 * std::pow(std::ldexp(1.0, -(1 << (2 * j))), 2.0);
    const double sd = 0.9 * std::sqrt(delta);
    const bool match = std::fabs(v.value - expected[j]) <= 1e-30;
    ok = ok && cancel && match && v.value >= sq && v.value >= sd;
    detail += fmt("v%d=%.17g (lower terms zero=%d) >= %.3g, >= %.3g; ", j, v.value, cancel, sq, sd);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome equilibrium_decay() {
  const dynamics::SkewSystem sys = dynamics::rotation_extension(kGolden);
  const Disintegration g = Disintegration::product(1024, FiberMeasure(1, {0.0, 0.5}, {1.0, -1.0}));
  const lab::DecaySeries s = lab::equilibrium_decay(sys, g, 100);
  const dynamics::SkewSystem still{dynamics::BaseMap::linear(2), dynamics::FiberMap::identity(), {}};
  const lab::DecaySeries c = lab::equilibrium_decay(still, g, 100);
  double drift = 0.0;
  for (double v : c.norm) drift = std::max(drift, std::fabs(v - c.norm[0]));
  const bool ok = s.nonincreasing_after(5) && s.fitted && s.fit.slope < 0.0 && drift <= 1e-12;
  return {ok, fmt("N=1024, n<=100: norm %.4g -> %.4g, nonincreasing after 5 = %d, slope %.4f; control drift %.2g "
                  "(shape check only, the rate constant is not reproduced)",
                  s.norm[0], s.norm.back(), s.nonincreasing_after(5), s.fit.slope, drift)};
}

Outcome diophantine() {
  const arithmetic::TypeEstimate t = arithmetic::linear_type_estimate(arithmetic::golden_angle(), BigInt(1000000));
  const arithmetic::AngleSpec lac = arithmetic::lacunary_theta(4);
  const Rational e1 = arithmetic::dyadic_local_exponent(lac, 1), e2 = arithmetic::dyadic_local_exponent(lac, 2);
  const bool ok = t.gamma_hat >= 0.95 && t.gamma_hat <= 1.05 && e1 == 3 && e2 == 3;
  return {ok, fmt("golden gamma_hat %.6f at K = 1e6 (in [0.95, 1.05]); lacunary exponents %s, %s",
                  t.gamma_hat, to_string(e1).c_str(), to_string(e2).c_str())};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "skewstab_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  std::ofstream(root / "sys.json")
      << R"({"base":{"kind":"linear","l":2},"fiber":{"kind":"translation","theta":"golden","indicator":[[0.5,1.0]]}})";
  std::ofstream(root / "family.json") << R"({"members":[{"kind":"prop_bahh","j":1},{"kind":"prop_bahh","j":2}]})";
  const std::vector<std::vector<std::string>> commands = {
      {"decay", "--config", (root / "sys.json").string(), "--N", "1024", "--nmax", "100"},
      {"sweep", "--config", (root / "family.json").string(), "--gamma", "3"},
      {"example", "prop-30", "--j", "2", "--out", "prop30.json"},
      {"example", "prop-bahh", "--j", "1", "--pipeline", "--out", "bahh.json"},
      {"diophantine", "--theta", "golden", "--depth", "1e6", "--out", "golden.json"},
      {"bound", "--phi", "power:1,1", "--M", "1", "--C", "1", "--eps", "0.01", "--out", "bound.json"}};
  std::size_t compared = 0;
  for (const char* run : {"a", "b"}) {
    for (const auto& c : commands) {
      std::vector<std::string> args = {"skewstab", "--seed", "11", "--out-dir", (root / run).string()};
      args.insert(args.end(), c.begin(), c.end());
      std::vector<const char*> argv;
      for (const std::string& a : args) argv.push_back(a.c_str());
      std::ostringstream out, err;
      if (cli::run(static_cast<int>(argv.size()), argv.data(), out, err) != 0)
        return {false, "command " + c[0] + " failed: " + err.str()};
    }
  }
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const fs::path other = root / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other))
      return {false, entry.path().filename().string() + " differs between runs"};
    ++compared;
  }
  return {compared >= 12, fmt("%zu CSV/JSON artifacts byte-identical across two seeded runs", compared)};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> check;
    double budget_s;  // 0: no runtime limit
  };
  const std::vector<Criterion> criteria = {
      {"W1 oracle equivalence", w1_oracle, 60},
      {"transfer conservation and positivity", transfer_conservation, 0},
      {"fiber map contraction", fiber_contraction, 0},
      {"Lebesgue invariance", lebesgue_invariance, 60},
      {"Lasota-Yorke and regularity", lasota_yorke, 0},
      {"stability bound arithmetic", stability_bound_check, 0},
      {"periodic orbit perturbation", periodic_orbit, 300},
      {"cosine observable cancellation", cosine_observable, 120},
      {"equilibrium decay", equilibrium_decay, 0},
      {"Diophantine type", diophantine, 0},
      {"determinism", determinism, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].budget_s > 0 && secs > criteria[i].budget_s) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s budget)", criteria[i].budget_s);
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
