#include "skewstab/dynamics/config.hpp"

#include "skewstab/arithmetic/angle.hpp"
#include "skewstab/measures/serialize.hpp"
#include "skewstab/util/error.hpp"

namespace skewstab::dynamics {

using nlohmann::json;
using measures::format_double;
using measures::parse_number;

namespace {

std::string kind_of(const json& obj, const std::string& where) {
  if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string())
    throw ValidationError(where + " needs a string 'kind'");
  return obj.at("kind").get<std::string>();
}

int parse_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ValidationError(what + " must be an integer");
  return v.get<int>();
}

std::vector<Interval> parse_intervals(const json& v, const std::string& what) {
  if (!v.is_array()) throw ValidationError(what + " must be a list of [a, b] pairs");
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!iv.is_array() || iv.size() != 2) throw ValidationError(what + " entries must be [a, b]");
    out.emplace_back(parse_number(iv[0]), parse_number(iv[1]));
  }
  return out;
}

json intervals_to_json(const std::vector<Interval>& ivs) {
  json out = json::array();
  for (const auto& [a, b] : ivs) out.push_back(json::array({format_double(a), format_double(b)}));
  return out;
}

Sigma parse_sigma(const json& doc) {
  const std::string kind = kind_of(doc, "sigma");
  if (kind == "identity") {
    require_keys(doc, {"kind"}, "sigma");
    return Sigma{};
  }
  if (kind == "sine") {
    require_keys(doc, {"kind", "delta"}, "sigma");
    return Sigma{parse_number(doc.at("delta"))};
  }
  throw ValidationError("unknown sigma kind '" + kind + "'");
}

json sigma_to_json(const Sigma& s) {
  if (s.is_identity()) return json{{"kind", "identity"}};
  return json{{"kind", "sine"}, {"delta", format_double(s.delta)}};
}

}  // namespace

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw ValidationError("unknown key '" + it.key() + "' in " + where);
}

double parse_theta(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return arithmetic::parse_angle(v.get<std::string>()).to_double();
  throw ValidationError("theta must be a number or an angle spec string");
}

SkewSystem parse_system(const json& doc) {
  require_keys(doc, {"base", "fiber", "constants"}, "system");
  SkewSystem sys;
  if (!doc.contains("base")) throw ValidationError("system needs a 'base'");
  const json& base = doc.at("base");
  const std::string bkind = kind_of(base, "base");
  if (bkind == "linear") {
    require_keys(base, {"kind", "l"}, "base");
    sys.base = BaseMap::linear(parse_int(base.at("l"), "base.l"));
  } else if (bkind == "linear_precomposed") {
    require_keys(base, {"kind", "l", "sigma"}, "base");
    sys.base = BaseMap::linear_precomposed(parse_int(base.at("l"), "base.l"), parse_sigma(base.at("sigma")));
  } else {
    throw ValidationError("unknown base kind '" + bkind + "'");
  }

  if (!doc.contains("fiber")) throw ValidationError("system needs a 'fiber'");
  const json& fiber = doc.at("fiber");
  const std::string fkind = kind_of(fiber, "fiber");
  auto indicator = [&] {
    return fiber.contains("indicator") ? parse_intervals(fiber.at("indicator"), "fiber.indicator")
                                       : std::vector<Interval>{{0.5, 1.0}};
  };
  if (fkind == "identity") {
    require_keys(fiber, {"kind"}, "fiber");
    sys.fiber = FiberMap::identity();
  } else if (fkind == "translation") {
    require_keys(fiber, {"kind", "theta", "indicator"}, "fiber");
    sys.fiber = FiberMap::translation(parse_theta(fiber.at("theta")), indicator());
  } else if (fkind == "deformation") {
    require_keys(fiber, {"kind", "delta", "orbit_k"}, "fiber");
    sys.fiber = FiberMap::deformation(parse_number(fiber.at("delta")), parse_int(fiber.at("orbit_k"), "orbit_k"));
  } else if (fkind == "composite") {
    require_keys(fiber, {"kind", "theta", "indicator", "delta", "orbit_k"}, "fiber");
    sys.fiber = FiberMap::composite(parse_theta(fiber.at("theta")), indicator(), parse_number(fiber.at("delta")),
                                    parse_int(fiber.at("orbit_k"), "orbit_k"));
  } else {
    throw ValidationError("unknown fiber kind '" + fkind + "'");
  }

  if (doc.contains("constants")) {
    const json& c = doc.at("constants");
    require_keys(c, {"alpha", "H_hat", "A", "xi", "ly_base"}, "constants");
    if (c.contains("alpha")) sys.declared.alpha = parse_number(c.at("alpha"));
    if (c.contains("H_hat")) sys.declared.h_hat = parse_number(c.at("H_hat"));
    if (c.contains("A")) sys.declared.A = parse_number(c.at("A"));
    if (c.contains("xi")) sys.declared.xi = parse_number(c.at("xi"));
    if (c.contains("ly_base")) {
      const json& lb = c.at("ly_base");
      if (!lb.is_array() || lb.size() != 2) throw ValidationError("ly_base must be [A_T, B_T]");
      sys.declared.ly_base = std::make_pair(parse_number(lb[0]), parse_number(lb[1]));
    }
  }
  return sys;
}

json system_to_json(const SkewSystem& sys) {
  json base{{"kind", sys.base.kind()}, {"l", sys.base.branch_count()}};
  if (!sys.base.is_linear()) base["sigma"] = sigma_to_json(sys.base.sigma());
  json fiber;
  switch (sys.fiber.kind()) {
    case FiberMap::Kind::identity:
      fiber = {{"kind", "identity"}};
      break;
    case FiberMap::Kind::translation:
      fiber = {{"kind", "translation"},
               {"theta", format_double(sys.fiber.theta())},
               {"indicator", intervals_to_json(sys.fiber.indicator())}};
      break;
    case FiberMap::Kind::deformation:
      fiber = {{"kind", "deformation"}, {"delta", format_double(sys.fiber.delta())}, {"orbit_k", sys.fiber.orbit_k()}};
      break;
    case FiberMap::Kind::composite:
      fiber = {{"kind", "composite"},
               {"theta", format_double(sys.fiber.theta())},
               {"indicator", intervals_to_json(sys.fiber.indicator())},
               {"delta", format_double(sys.fiber.delta())},
               {"orbit_k", sys.fiber.orbit_k()}};
      break;
  }
  json constants{{"A", format_double(sys.declared.A)}};
  if (sys.declared.alpha) constants["alpha"] = format_double(*sys.declared.alpha);
  if (sys.declared.h_hat) constants["H_hat"] = format_double(*sys.declared.h_hat);
  if (sys.declared.xi) constants["xi"] = format_double(*sys.declared.xi);
  if (sys.declared.ly_base)
    constants["ly_base"] = json::array({format_double(sys.declared.ly_base->first), format_double(sys.declared.ly_base->second)});
  return json{{"base", base}, {"fiber", fiber}, {"constants", constants}};
}

Numerics parse_numerics(const json& doc) {
  require_keys(doc, {"N", "eps_f", "atoms_per_fiber", "tol", "n_max"}, "numerics");
  Numerics n;
  if (doc.contains("N")) {
    const int v = parse_int(doc.at("N"), "numerics.N");
    if (v < 1) throw ValidationError("numerics.N must be positive");
    n.n_cells = static_cast<std::size_t>(v);
  }
  if (doc.contains("eps_f")) {
    n.eps_f = parse_number(doc.at("eps_f"));
    if (n.eps_f < 0.0 || n.eps_f >= 1.0) throw ValidationError("numerics.eps_f must lie in [0, 1)");
  }
  if (doc.contains("atoms_per_fiber")) n.atoms_per_fiber = parse_int(doc.at("atoms_per_fiber"), "atoms_per_fiber");
  if (doc.contains("tol")) n.tol = parse_number(doc.at("tol"));
  if (doc.contains("n_max")) n.n_max = parse_int(doc.at("n_max"), "numerics.n_max");
  if (!(n.tol > 0.0)) throw ValidationError("numerics.tol must be positive");
  if (n.n_max < 1) throw ValidationError("numerics.n_max must be positive");
  return n;
}

json numerics_to_json(const Numerics& n) {
  return json{{"N", n.n_cells},
              {"eps_f", format_double(resolve_resolution(n.eps_f, n.n_cells))},
              {"atoms_per_fiber", n.atoms_per_fiber > 0 ? n.atoms_per_fiber : 4 * static_cast<long>(n.n_cells)},
              {"tol", format_double(n.tol)},
              {"n_max", n.n_max}};
}

PerturbationSpec parse_perturbation(const json& doc, const SkewSystem& reference) {
  require_keys(doc, {"delta", "perturbed", "sigma", "base_exception", "fiber_displacement", "fiber_exception"},
               "family member");
  PerturbationSpec p;
  p.reference = reference;
  if (!doc.contains("delta")) throw ValidationError("family member needs 'delta'");
  p.declared_delta = parse_number(doc.at("delta"));
  p.perturbed = doc.contains("perturbed") ? parse_system(doc.at("perturbed")) : reference;
  if (doc.contains("sigma")) p.sigma = parse_sigma(doc.at("sigma"));
  else p.sigma = p.perturbed.base.sigma();
  if (doc.contains("base_exception")) p.base_exception = parse_intervals(doc.at("base_exception"), "base_exception");
  if (doc.contains("fiber_displacement")) p.fiber_displacement = parse_number(doc.at("fiber_displacement"));
  if (doc.contains("fiber_exception")) p.fiber_exception = parse_intervals(doc.at("fiber_exception"), "fiber_exception");
  return p;
}

}  // namespace skewstab::dynamics
