#pragma once

#include "skewstab/dynamics/perturbation.hpp"

#include <json.hpp>

#include <set>
#include <string>

namespace skewstab::dynamics {

/// Throws ValidationError naming the first key of `obj` outside `allowed`.
void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where);

/// Angle given as a JSON number or an angle spec string; returns its double value.
double parse_theta(const nlohmann::json& v);

SkewSystem parse_system(const nlohmann::json& doc);
nlohmann::json system_to_json(const SkewSystem& sys);

struct Numerics {
  std::size_t n_cells = 256;
  double eps_f = kDefaultResolution;
  long atoms_per_fiber = 0;  // 0: 4N
  double tol = 1e-6;
  int n_max = 1000;
};

Numerics parse_numerics(const nlohmann::json& doc);
nlohmann::json numerics_to_json(const Numerics& n);

/// {"delta": d, "perturbed": system, "sigma": {...}, "base_exception": [[a,b]...],
///  "fiber_displacement": x, "fiber_exception": [[a,b]...]}
PerturbationSpec parse_perturbation(const nlohmann::json& doc, const SkewSystem& reference);

}  // namespace skewstab::dynamics
