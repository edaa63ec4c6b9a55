#include "skewstab/cli/run.hpp"

#include "skewstab/arithmetic/diophantine.hpp"
#include "skewstab/dynamics/config.hpp"
#include "skewstab/dynamics/invariant.hpp"
#include "skewstab/lab/budget.hpp"
#include "skewstab/lab/counterexamples.hpp"
#include "skewstab/lab/decay.hpp"
#include "skewstab/lab/sweep.hpp"
#include "skewstab/measures/norms.hpp"
#include "skewstab/measures/serialize.hpp"
#include "skewstab/measures/w1.hpp"
#include "skewstab/util/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef SKEWSTAB_VERSION
#define SKEWSTAB_VERSION "0.0.0"
#endif

namespace skewstab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using dynamics::Numerics;
using dynamics::SkewSystem;
using measures::Disintegration;
using measures::format_double;

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir = ".";
  bool allow_partial = false;
  bool exact = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

fs::path output_path(const Globals& g, const std::string& name) {
  fs::path p(name);
  if (p.is_relative()) p = fs::path(g.out_dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Resolved config, version and partial flag next to an artifact.
void write_meta(const fs::path& artifact, const std::string& command, const Globals& g, const json& config,
                bool partial, const json& summary) {
  json meta;
  meta["artifact"] = artifact.filename().string();
  meta["command"] = command;
  meta["version"] = SKEWSTAB_VERSION;
  meta["seed"] = g.seed;
  meta["config"] = config;
  meta["partial"] = partial;
  meta["summary"] = summary;
  write_text(fs::path(artifact.string() + ".meta.json"), dump(meta));
}

struct Experiment {
  SkewSystem system;
  Numerics numerics;
  std::optional<json> observable;
  std::uint64_t seed = 0;
};

// Either a bare system or {"system", "numerics", "observable", "seed"}.
Experiment load_experiment(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  if (doc.contains("base")) return {dynamics::parse_system(doc), Numerics{}, std::nullopt, 0};
  dynamics::require_keys(doc, {"system", "numerics", "observable", "seed"}, "experiment");
  if (!doc.contains("system")) throw ValidationError("experiment: missing key \"system\"");
  Experiment e{dynamics::parse_system(doc.at("system")), Numerics{}, std::nullopt, 0};
  if (doc.contains("numerics")) e.numerics = dynamics::parse_numerics(doc.at("numerics"));
  if (doc.contains("observable")) e.observable = doc.at("observable");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) throw ValidationError("seed must be a nonnegative integer");
    e.seed = doc.at("seed").get<std::uint64_t>();
  }
  return e;
}

struct NumericFlags {
  std::optional<std::size_t> n_cells;
  std::optional<double> tol;
  std::optional<int> n_max;
  std::optional<double> eps_f;

  void add_to(CLI::App* app, bool with_nmax = true) {
    app->add_option("--N", n_cells, "Base grid cells");
    app->add_option("--tol", tol, "Convergence tolerance");
    if (with_nmax) app->add_option("--nmax", n_max, "Iteration cap");
    app->add_option("--eps-f", eps_f, "Fiber coarsening resolution (0 disables, -1 default)");
  }
  void apply(Numerics& n) const {
    if (n_cells) n.n_cells = *n_cells;
    if (tol) n.tol = *tol;
    if (n_max) n.n_max = *n_max;
    if (eps_f) n.eps_f = *eps_f;
  }
};

json norm_json(const measures::NormReport& r) {
  return {{"l1", r.l1}, {"var_p", r.var_p}, {"pbv", r.pbv}, {"p", r.p}, {"A", r.A}};
}

json fit_json(const LineFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual_rms", f.residual_rms}};
}

std::string rational_text(const Rational& r) { return to_string(r); }

BigInt parse_count(const std::string& text, const char* what) {
  // Plain digits or a power of ten written 1eK.
  const auto e = text.find_first_of("eE");
  try {
    if (e == std::string::npos) {
      if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("");
      return BigInt(text);
    }
    const std::string mant = text.substr(0, e), ex = text.substr(e + 1);
    if (mant.empty() || ex.empty() || mant.find_first_not_of("0123456789") != std::string::npos ||
        ex.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("");
    return BigInt(mant) * boost::multiprecision::pow(BigInt(10), std::stoi(ex));
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + ": expected a positive integer, got \"" + text + "\"");
  }
}

// ---- subcommands ----

int cmd_norm(const Globals& g, const std::string* config, const std::string& measure_path, double p,
             std::optional<double> A, const std::string& out_name, std::ostream& out) {
  json resolved;
  double a = measures::kDefaultRadiusCap;
  if (config && !config->empty()) {
    const Experiment e = load_experiment(read_json(*config));
    a = e.system.A();
    resolved["system"] = dynamics::system_to_json(e.system);
  }
  if (A) a = *A;
  const json mdoc = read_json(measure_path);
  const Disintegration mu = measures::from_json(mdoc);
  const measures::NormReport r = measures::pbv_norm(mu, p, a);
  json report = norm_json(r);
  if (g.exact) {
    const measures::FiberClasses cls = mu.classes();
    Rational total(0);
    for (std::size_t c = 0; c < cls.reps.size(); ++c) {
      if (cls.reps[c]->size() > 16) throw ValidationError("--exact supports fibers of at most 16 atoms");
      total += Rational(static_cast<long long>(cls.count[c])) * measures::w1_norm_exact(*cls.reps[c], 16);
    }
    report["l1_exact"] = rational_text(total);
  }
  out << dump(report);
  if (!out_name.empty()) {
    resolved["measure"] = mdoc;
    resolved["p"] = p;
    resolved["A"] = a;
    resolved["exact"] = g.exact;
    const fs::path path = output_path(g, out_name);
    write_text(path, dump(report));
    write_meta(path, "norm", g, resolved, false, report);
  }
  return kExitOk;
}

int cmd_invariant(const Globals& g, const std::string& config, const NumericFlags& flags,
                  const std::string& out_name, std::ostream& out, std::ostream& err) {
  Experiment e = load_experiment(read_json(config));
  flags.apply(e.numerics);
  const Numerics& n = e.numerics;
  const dynamics::InvariantResult r =
      dynamics::invariant_measure(e.system, n.n_cells, n.tol, n.n_max, n.eps_f, n.atoms_per_fiber);
  json summary = {{"converged", r.converged},
                  {"iterations", r.iterations},
                  {"last_increment", r.last_increment},
                  {"mass_drift", r.mass_drift},
                  {"renormalized", r.renormalized},
                  {"norm", norm_json(measures::pbv_norm(r.measure, 1.0, e.system.A()))}};
  out << dump(summary);
  if (!r.converged && !g.allow_partial) {
    err << "invariant measure did not converge within " << n.n_max << " iterations\n";
    return kExitNumeric;
  }
  const json resolved = {{"system", dynamics::system_to_json(e.system)},
                         {"numerics", dynamics::numerics_to_json(n)},
                         {"seed", g.seed_given ? g.seed : e.seed}};
  const fs::path path = output_path(g, out_name);
  write_text(path, dump(measures::to_json(r.measure)));
  write_meta(path, "invariant", g, resolved, !r.converged, summary);
  return kExitOk;
}

int cmd_decay(const Globals& g, const std::string& config, const NumericFlags& flags, int n_max,
              const std::string& out_name, std::ostream& out) {
  Experiment e = load_experiment(read_json(config));
  flags.apply(e.numerics);
  const std::size_t N = e.numerics.n_cells;
  json observable;
  Disintegration obs = Disintegration::zero(1);
  std::string description;
  if (e.observable) {
    observable = *e.observable;
    obs = measures::from_json(observable);
    description = "configured observable";
  } else {
    observable = "m x (delta_0 - delta_1/2)";
    obs = Disintegration::product(N, measures::FiberMeasure(1, {0.0, 0.5}, {1.0, -1.0}));
    description = observable.get<std::string>();
  }
  if (obs.n_cells() != N) throw ValidationError("observable grid does not match N");
  const lab::DecaySeries s = lab::equilibrium_decay(e.system, obs, n_max, e.numerics.eps_f, description);

  std::ostringstream csv;
  csv << "n,norm\n";
  for (std::size_t i = 0; i < s.n.size(); ++i) csv << s.n[i] << ',' << format_double(s.norm[i]) << '\n';
  if (s.n.size() != static_cast<std::size_t>(n_max) + 1) throw NumericError("decay series lost rows");

  json summary = {{"rows", s.n.size()}, {"fitted", s.fitted}, {"nonincreasing_after_5", s.nonincreasing_after(5)}};
  if (s.fitted) summary["fit"] = fit_json(s.fit);
  const json resolved = {{"system", dynamics::system_to_json(e.system)},
                         {"numerics", dynamics::numerics_to_json(e.numerics)},
                         {"observable", observable},
                         {"n_max", n_max},
                         {"seed", g.seed_given ? g.seed : e.seed}};
  const fs::path path = output_path(g, out_name);
  write_text(path, csv.str());
  write_meta(path, "decay", g, resolved, false, summary);
  out << dump(summary);
  return kExitOk;
}

lab::SweepMember parse_member(const json& m, const SkewSystem* reference) {
  if (!m.is_object()) throw ValidationError("sweep member must be an object");
  if (m.contains("kind")) {
    dynamics::require_keys(m, {"kind", "theta", "j", "scale", "gamma_prime"}, "sweep member");
    if (m.at("kind") != "prop_bahh") throw ValidationError("unknown sweep member kind");
    const std::string theta = m.value("theta", std::string("lacunary:4"));
    const lab::PropBahh pb = lab::prop_bahh_system(arithmetic::parse_angle(theta), m.at("j").get<int>(),
                                                   m.value("scale", 0.5), m.value("gamma_prime", 2.5));
    return pb.sweep_member();
  }
  if (!reference) throw ValidationError("sweep: explicit members need a \"reference\" system");
  json spec = m;
  lab::SweepMember member{dynamics::PerturbationSpec{}, std::nullopt, std::nullopt};
  if (spec.contains("closed_form_distance")) {
    member.closed_form_distance = measures::parse_number(spec.at("closed_form_distance"));
    spec.erase("closed_form_distance");
  }
  if (spec.contains("lower_bound")) {
    member.lower_bound = measures::parse_number(spec.at("lower_bound"));
    spec.erase("lower_bound");
  }
  member.spec = dynamics::parse_perturbation(spec, *reference);
  return member;
}

int cmd_sweep(const Globals& g, const std::string& config, double gamma, const NumericFlags& flags,
              const std::string& out_name, std::ostream& out, std::ostream& err) {
  const json doc = read_json(config);
  if (!doc.is_object()) throw ValidationError("family config must be a JSON object");
  dynamics::require_keys(doc, {"reference", "numerics", "members", "seed"}, "family");
  if (!doc.contains("members") || !doc.at("members").is_array() || doc.at("members").empty())
    throw ValidationError("family: \"members\" must be a nonempty array");
  std::optional<SkewSystem> reference;
  if (doc.contains("reference")) reference = dynamics::parse_system(doc.at("reference"));
  Numerics num;
  if (doc.contains("numerics")) num = dynamics::parse_numerics(doc.at("numerics"));
  flags.apply(num);
  std::vector<lab::SweepMember> family;
  for (const json& m : doc.at("members")) family.push_back(parse_member(m, reference ? &*reference : nullptr));

  const lab::SweepTable t = lab::stability_sweep(family, gamma, num);
  if (t.rows.size() != family.size()) throw NumericError("sweep table lost rows");

  std::ostringstream csv;
  csv << "delta,distance,lower_bound,upper_bound_fit\n";
  for (const lab::SweepRow& r : t.rows)
    csv << format_double(r.delta) << ',' << format_double(r.distance) << ','
        << (r.lower_bound ? format_double(*r.lower_bound) : std::string()) << ',' << format_double(r.upper_bound_fit)
        << '\n';
  json summary = {{"rows", t.rows.size()},
                  {"gamma", t.gamma},
                  {"exponent", t.exponent},
                  {"K", t.K},
                  {"beta", t.beta},
                  {"fitted", t.fitted},
                  {"beta_at_least_exponent", t.beta_at_least_exponent},
                  {"all_converged", t.all_converged}};
  if (t.fitted) summary["fit"] = fit_json(t.fit);
  out << dump(summary);
  if (!t.all_converged && !g.allow_partial) {
    err << "some sweep rows did not converge\n";
    return kExitNumeric;
  }
  json resolved = doc;
  resolved["numerics"] = dynamics::numerics_to_json(num);
  resolved["gamma"] = gamma;
  if (g.seed_given || !resolved.contains("seed")) resolved["seed"] = g.seed;
  const fs::path path = output_path(g, out_name);
  write_text(path, csv.str());
  write_meta(path, "sweep", g, resolved, !t.all_converged, summary);
  return kExitOk;
}

lab::Phi parse_phi(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("phi: expected power:C,alpha or table:<csv>");
  const std::string kind = text.substr(0, colon), rest = text.substr(colon + 1);
  if (kind == "power") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw ValidationError("phi: expected power:C,alpha");
    try {
      std::size_t u = 0, v = 0;
      const std::string cs = rest.substr(0, comma), as = rest.substr(comma + 1);
      const double C = std::stod(cs, &u), alpha = std::stod(as, &v);
      if (u != cs.size() || v != as.size()) throw std::invalid_argument("");
      return lab::Phi::power_law(C, alpha);
    } catch (const std::logic_error&) {
      throw ValidationError("phi: malformed number in \"" + text + "\"");
    }
  }
  if (kind == "table") {
    std::ifstream in(rest);
    if (!in) throw ValidationError("cannot open " + rest);
    std::vector<std::pair<double, double>> table;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
      std::istringstream ls(line);
      double x = 0, y = 0;
      char comma = 0;
      if (!(ls >> x >> comma >> y) || comma != ',') throw ValidationError("phi table: bad line \"" + line + "\"");
      table.emplace_back(x, y);
    }
    return lab::Phi::tabulated(std::move(table));
  }
  throw ValidationError("phi: unknown kind \"" + kind + "\"");
}

int cmd_bound(const Globals& g, const std::string& phi_text, double M, double C, double eps,
              const std::string& out_name, std::ostream& out) {
  const lab::StabilityBudget b{parse_phi(phi_text), M, C, eps};
  const double v = lab::stability_bound(b);
  std::ostringstream line;
  line << std::setprecision(6) << v;
  out << line.str() << '\n';
  if (!out_name.empty()) {
    const json report = {{"bound", v}};
    const fs::path path = output_path(g, out_name);
    write_text(path, dump(report));
    write_meta(path, "bound", g, {{"phi", phi_text}, {"M", M}, {"C", C}, {"eps", eps}}, false, report);
  }
  return kExitOk;
}

int cmd_diophantine(const Globals& g, const std::string& theta_text, const std::string& depth_text,
                    const std::string& qmin_text, const std::vector<int>& dyadic, const std::string& out_name,
                    std::ostream& out) {
  const arithmetic::AngleSpec theta = arithmetic::parse_angle(theta_text);
  const BigInt K = parse_count(depth_text, "depth");
  const BigInt q_min = parse_count(qmin_text, "qmin");
  const arithmetic::TypeEstimate t = arithmetic::linear_type_estimate(theta, K, q_min);
  json report;
  report["theta"] = theta.label;
  report["is_rational"] = t.is_rational;
  if (t.is_rational)
    report["gamma_hat"] = nullptr;
  else
    report["gamma_hat"] = t.gamma_hat;
  report["c0"] = t.c0;
  report["K"] = t.K.str();
  report["q_min"] = t.q_min.str();
  json samples = json::array();
  for (const arithmetic::TypeSample& s : t.samples)
    samples.push_back({{"k", s.k.str()}, {"distance", s.distance}, {"local_exponent", s.local_exponent}});
  report["samples"] = samples;
  if (!dyadic.empty()) {
    json local = json::array();
    for (int n : dyadic) {
      const Rational e = arithmetic::dyadic_local_exponent(theta, n);
      local.push_back({{"n", n}, {"exponent", rational_text(e)}});
    }
    report["dyadic_local_exponents"] = local;
  }
  out << dump(report);
  if (!out_name.empty()) {
    const fs::path path = output_path(g, out_name);
    write_text(path, dump(report));
    write_meta(path, "diophantine", g, {{"theta", theta_text}, {"depth", depth_text}, {"q_min", qmin_text}}, false,
               {{"gamma_hat", report["gamma_hat"]}});
  }
  return kExitOk;
}

json approximant_json(const arithmetic::Approximant& a) {
  return {{"p", a.p.str()},
          {"k", a.k.str()},
          {"delta", a.delta.convert_to<double>()},
          {"delta_exact", rational_text(a.delta)},
          {"delta_error", a.delta_error.convert_to<double>()},
          {"gamma_prime", a.gamma_prime},
          {"within_bound", a.within_bound}};
}

struct ExampleArgs {
  int j = 1;
  std::string theta = "lacunary:4";
  double scale = 0.5;
  double gamma_prime = 2.5;
  std::size_t n_cells = 1024;
  double tol = 1e-5;
  int n_max = 3000;
  bool pipeline = false;
  int terms = 4;
};

int cmd_prop_bahh(const Globals& g, const ExampleArgs& a, const std::string& out_name, std::ostream& out,
                  std::ostream& err) {
  const lab::PropBahh pb =
      lab::prop_bahh_system(arithmetic::parse_angle(a.theta), a.j, a.scale, a.gamma_prime);
  json report = {{"j", a.j},
                 {"theta", a.theta},
                 {"approximant", approximant_json(pb.approximant)},
                 {"k", pb.k},
                 {"deformation_scale", pb.deformation_scale},
                 {"distance", pb.distance},
                 {"lower_bound_delta", pb.lower_bound_delta},
                 {"lower_bound_k", pb.lower_bound_k},
                 {"distance_at_least_lower_bound_delta", pb.distance >= pb.lower_bound_delta},
                 {"distance_at_least_lower_bound_k", pb.distance >= pb.lower_bound_k}};
  if (pb.k <= 16) {
    const std::size_t n = 4;
    const double w1 = measures::l1_norm(pb.orbit_measure(n) - Disintegration::lebesgue(n, 4096));
    report["w1_oracle_distance"] = w1;
    report["w1_oracle_agrees"] = std::fabs(w1 - pb.distance) <= 1e-9;
  }
  bool partial = false;
  if (a.pipeline) {
    const lab::PipelineResult r = lab::prop_bahh_pipeline(pb, a.n_cells, a.tol, a.n_max);
    report["pipeline"] = {{"N", a.n_cells},
                          {"converged", r.invariant.converged},
                          {"iterations", r.invariant.iterations},
                          {"distance_to_orbit", r.distance_to_orbit},
                          {"distance_to_repeller", r.distance_to_repeller},
                          {"within_4_over_N", r.distance_to_orbit <= 4.0 / static_cast<double>(a.n_cells)}};
    partial = !r.invariant.converged;
  }
  out << dump(report);
  if (partial && !g.allow_partial) {
    err << "pipeline did not converge\n";
    return kExitNumeric;
  }
  if (!out_name.empty()) {
    const json resolved = {{"example", "prop-bahh"}, {"j", a.j},       {"theta", a.theta},
                           {"scale", a.scale},       {"gamma_prime", a.gamma_prime}, {"pipeline", a.pipeline},
                           {"N", a.n_cells},         {"tol", a.tol},   {"n_max", a.n_max}};
    const fs::path path = output_path(g, out_name);
    write_text(path, dump(report));
    write_meta(path, "example", g, resolved, partial, json::object());
  }
  return kExitOk;
}

int cmd_prop30(const Globals& g, const ExampleArgs& a, const std::string& out_name, std::ostream& out) {
  if (a.j >= 3) throw ValidationError("j >= 3 needs period 2^64 orbits; only j = 1, 2 are evaluated");
  if (a.j < 1) throw ValidationError("j must be 1 or 2");
  if (a.terms < a.j) throw ValidationError("terms must be at least j");
  const lab::PropBahh pb = lab::prop_bahh_system(arithmetic::parse_angle(a.theta), a.j, a.scale, a.gamma_prime);
  const lab::Prop30Value v = lab::prop30_observable_average(a.terms, pb.orbit_measure(1));
  json terms = json::array();
  bool cancel = true;
  for (const lab::Prop30Term& t : v.terms) {
    terms.push_back({{"index", t.index}, {"value", t.value}, {"exactly_zero", t.exactly_zero}});
    if (t.index < a.j && !t.exactly_zero) cancel = false;
  }
  const double delta = std::fabs(pb.approximant.delta.convert_to<double>());
  const double square_bound = 0.5 * std::pow(std::ldexp(1.0, -(1 << (2 * a.j))), 2.0);
  const double magnitude_bound =
      std::ldexp(1.0, -(1 << (2 * a.j + 1))) - std::ldexp(1.0, -(1 << (2 * (a.j + 1))) + 1);
  const json report = {{"j", a.j},
                       {"k", pb.k},
                       {"terms", terms},
                       {"value", v.value},
                       {"tail_bound", v.tail_bound},
                       {"lower_terms_cancel", cancel},
                       {"square_bound", square_bound},
                       {"at_least_square_bound", v.value >= square_bound},
                       {"sqrt_delta_bound", 0.9 * std::sqrt(delta)},
                       {"at_least_sqrt_delta_bound", v.value >= 0.9 * std::sqrt(delta)},
                       {"magnitude_bound", magnitude_bound},
                       {"at_least_magnitude_bound", v.value >= magnitude_bound}};
  out << dump(report);
  if (!out_name.empty()) {
    const json resolved = {{"example", "prop-30"}, {"j", a.j},     {"theta", a.theta},
                           {"scale", a.scale},     {"terms", a.terms}};
    const fs::path path = output_path(g, out_name);
    write_text(path, dump(report));
    write_meta(path, "example", g, resolved, false, json::object());
  }
  return kExitOk;
}

int cmd_validate(const std::string& config, std::optional<std::size_t> n_cells, bool require_domination,
                 std::ostream& out) {
  json report;
  json diags = json::array();
  try {
    Experiment e = load_experiment(read_json(config));
    if (n_cells) e.numerics.n_cells = *n_cells;
    for (const std::string& d : dynamics::diagnose(e.system, e.numerics.n_cells, require_domination))
      diags.push_back(d);
  } catch (const Error& ex) {
    diags.push_back(std::string("config rejected: ") + ex.what());
  }
  report["diagnostics"] = diags;
  out << dump(report);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability experiments for skew products over expanding maps", "skewstab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", SKEWSTAB_VERSION);

  Globals g;
  app.add_option("--seed", g.seed, "Random seed (default 0)")->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--out-dir", g.out_dir, "Directory for output files");
  app.add_flag("--allow-partial", g.allow_partial, "Write flagged partial results instead of failing");
  app.add_flag("--exact", g.exact, "Use rational arithmetic where supported");

  std::string config, measure, phi, theta, depth, qmin = "10000";
  std::string norm_out, inv_out = "invariant.json", decay_out = "decay.csv", sweep_out = "sweep.csv", bound_out,
              dio_out, example_out;
  double p = 1.0, M = 1.0, C = 1.0, eps = 0.0, gamma = 1.0;
  std::optional<double> A;
  int n_max_decay = 200;
  std::vector<int> dyadic;
  NumericFlags flags;
  std::optional<std::size_t> validate_n;
  bool no_domination = false;
  ExampleArgs ex;

  CLI::App* norm = app.add_subcommand("norm", "Norm report of a measure");
  norm->add_option("--config", config, "System config (supplies A)");
  norm->add_option("--measure", measure, "Measure JSON")->required();
  norm->add_option("--p", p, "Hoelder exponent p in (0, 1]");
  norm->add_option("--A", A, "Radius cap");
  norm->add_option("--out", norm_out, "Also write the report here");

  CLI::App* inv = app.add_subcommand("invariant", "Approximate invariant measure");
  inv->add_option("--config", config, "System or experiment config")->required();
  flags.add_to(inv);
  inv->add_option("--out", inv_out, "Measure output");

  CLI::App* decay = app.add_subcommand("decay", "Convergence to equilibrium of a zero-mass observable");
  decay->add_option("--config", config, "System or experiment config")->required();
  decay->add_option("--nmax", n_max_decay, "Number of transfer steps");
  flags.add_to(decay, false);
  decay->add_option("--out", decay_out, "CSV output");

  CLI::App* sweep = app.add_subcommand("sweep", "Stability sweep over a perturbation family");
  sweep->add_option("--config", config, "Family config")->required();
  sweep->add_option("--gamma", gamma, "Diophantine type used for the exponent")->required();
  flags.add_to(sweep);
  sweep->add_option("--out", sweep_out, "CSV output");

  CLI::App* bound = app.add_subcommand("bound", "Abstract stability bound");
  bound->add_option("--phi", phi, "power:C,alpha or table:<csv>")->required();
  bound->add_option("--M", M, "M tilde")->required();
  bound->add_option("--C", C, "C tilde")->required();
  bound->add_option("--eps", eps, "Perturbation size")->required();
  bound->add_option("--out", bound_out, "Also write a JSON report");

  CLI::App* dio = app.add_subcommand("diophantine", "Linear Diophantine type estimate");
  dio->add_option("--theta", theta, "Angle spec")->required();
  dio->add_option("--depth", depth, "Largest denominator K")->required();
  dio->add_option("--qmin", qmin, "Anchor floor for c0");
  dio->add_option("--dyadic", dyadic, "Exact local exponents along k = 2^{2^{2n}} for these n");
  dio->add_option("--out", dio_out, "Also write the report here");

  CLI::App* example = app.add_subcommand("example", "Counterexample constructions");
  example->require_subcommand(1);
  CLI::App* bahh = example->add_subcommand("prop-bahh", "Rotation perturbed to a periodic orbit");
  CLI::App* p30 = example->add_subcommand("prop-30", "Exact observable average on the periodic orbit");
  for (CLI::App* s : {bahh, p30}) {
    s->add_option("--j", ex.j, "Approximant index")->required();
    s->add_option("--theta", ex.theta, "Angle spec");
    s->add_option("--scale", ex.scale, "Deformation scale");
    s->add_option("--gamma-prime", ex.gamma_prime, "Approximation exponent");
    s->add_option("--out", example_out, "Also write the report here");
  }
  bahh->add_flag("--pipeline", ex.pipeline, "Run the invariant-measure pipeline");
  bahh->add_option("--N", ex.n_cells, "Pipeline grid");
  bahh->add_option("--tol", ex.tol, "Pipeline tolerance");
  bahh->add_option("--nmax", ex.n_max, "Pipeline iteration cap");
  p30->add_option("--terms", ex.terms, "Observable terms");

  CLI::App* val = app.add_subcommand("validate", "Diagnostics for a config");
  val->add_option("--config", config, "System or experiment config")->required();
  val->add_option("--N", validate_n, "Base grid cells");
  val->add_flag("--no-domination", no_domination, "Skip the domination check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*norm) return cmd_norm(g, &config, measure, p, A, norm_out, out);
    if (*inv) return cmd_invariant(g, config, flags, inv_out, out, err);
    if (*decay) return cmd_decay(g, config, flags, n_max_decay, decay_out, out);
    if (*sweep) return cmd_sweep(g, config, gamma, flags, sweep_out, out, err);
    if (*bound) return cmd_bound(g, phi, M, C, eps, bound_out, out);
    if (*dio) return cmd_diophantine(g, theta, depth, qmin, dyadic, dio_out, out);
    if (*bahh) return cmd_prop_bahh(g, ex, example_out, out, err);
    if (*p30) return cmd_prop30(g, ex, example_out, out);
    if (*val) return cmd_validate(config, validate_n, !no_domination, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace skewstab::cli
