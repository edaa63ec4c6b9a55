#include "skewstab/measures/serialize.hpp"

#include "skewstab/util/error.hpp"
#include "skewstab/util/rational.hpp"

#include <cstdio>
#include <set>

namespace skewstab::measures {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed, const char* what) {
  if (!obj.is_object()) throw ValidationError(std::string(what) + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ValidationError(std::string("unknown key '") + it.key() + "' in " + what);
}

std::size_t positive_count(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ValidationError(std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw ValidationError("expected a number or numeric string");
}

json fiber_to_json(const FiberMeasure& mu) {
  json atoms = json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    json pos = json::array();
    for (double c : mu.position(i)) pos.push_back(format_double(c));
    atoms.push_back(json::array({pos, format_double(mu.weight(i))}));
  }
  return atoms;
}

FiberMeasure fiber_from_json(const json& atoms, int dimension) {
  if (!atoms.is_array()) throw ValidationError("fiber must be an array of atoms");
  std::vector<double> coords, weights;
  for (const auto& atom : atoms) {
    if (!atom.is_array() || atom.size() != 2) throw ValidationError("atom must be [position, weight]");
    const json& pos = atom[0];
    if (pos.is_array()) {
      if (static_cast<int>(pos.size()) != dimension) throw ValidationError("atom position has wrong dimension");
      for (const auto& c : pos) coords.push_back(parse_number(c));
    } else {
      if (dimension != 1) throw ValidationError("scalar position needs dimension 1");
      coords.push_back(parse_number(pos));
    }
    weights.push_back(parse_number(atom[1]));
  }
  return FiberMeasure(dimension, std::move(coords), std::move(weights));
}

json to_json(const Disintegration& mu) {
  json fibers = json::array();
  for (std::size_t i = 0; i < mu.n_cells(); ++i) fibers.push_back(fiber_to_json(mu.fiber(i)));
  return json{{"n_cells", mu.n_cells()}, {"dimension", mu.dimension()}, {"fibers", fibers}};
}

Disintegration from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("measure document must be an object");
  if (doc.contains("kind")) {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "lebesgue") {
      require_keys(doc, {"kind", "n_cells", "atoms"}, "lebesgue measure");
      const std::size_t n = positive_count(doc.at("n_cells"), "n_cells");
      const std::size_t m = doc.contains("atoms") ? positive_count(doc.at("atoms"), "atoms") : 4 * n;
      return Disintegration::lebesgue(n, static_cast<long>(m));
    }
    if (kind == "product") {
      require_keys(doc, {"kind", "n_cells", "dimension", "fiber"}, "product measure");
      const std::size_t n = positive_count(doc.at("n_cells"), "n_cells");
      const int d = doc.contains("dimension") ? static_cast<int>(positive_count(doc.at("dimension"), "dimension")) : 1;
      return Disintegration::product(n, fiber_from_json(doc.at("fiber"), d));
    }
    throw ValidationError("unknown measure kind '" + kind + "'");
  }
  require_keys(doc, {"n_cells", "dimension", "fibers"}, "measure");
  const std::size_t n = positive_count(doc.at("n_cells"), "n_cells");
  const int d = doc.contains("dimension") ? static_cast<int>(positive_count(doc.at("dimension"), "dimension")) : 1;
  const json& fibers = doc.at("fibers");
  if (!fibers.is_array() || fibers.size() != n) throw ValidationError("fibers must list exactly n_cells entries");
  std::vector<FiberMeasure> out;
  out.reserve(n);
  for (const auto& f : fibers) out.push_back(fiber_from_json(f, d));
  return Disintegration::from_fibers(std::move(out));
}

}  // namespace skewstab::measures
