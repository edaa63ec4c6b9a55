#include "skewstab/dynamics/perturbation.hpp"

#include "skewstab/measures/norms.hpp"
#include "skewstab/measures/random.hpp"
#include "skewstab/util/error.hpp"
#include "skewstab/util/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace skewstab::dynamics {

using measures::Disintegration;
using measures::FiberMeasure;

double interval_measure(std::vector<Interval> set) {
  for (auto& [a, b] : set) {
    a = std::clamp(a, 0.0, 1.0);
    b = std::clamp(b, 0.0, 1.0);
  }
  std::sort(set.begin(), set.end());
  double total = 0.0, reach = 0.0;
  for (const auto& [a, b] : set) {
    const double lo = std::max(a, reach);
    if (b > lo) {
      total += b - lo;
      reach = b;
    }
  }
  return total;
}

std::vector<std::string> diagnose(const PerturbationSpec& spec) {
  std::vector<std::string> out;
  const double d = spec.declared_delta;
  if (interval_measure(spec.base_exception) > d + 1e-15) out.push_back("m(A_1^c) exceeds the declared delta");
  if (interval_measure(spec.fiber_exception) > d + 1e-15) out.push_back("m(A_2^c) exceeds the declared delta");
  if (spec.fiber_displacement > d + 1e-15) out.push_back("fiber displacement exceeds the declared delta");
  if (spec.reference.q() != spec.perturbed.q()) out.push_back("reference and perturbed branch counts differ");
  return out;
}

OperatorDistance operator_distance(const PerturbationSpec& spec, std::size_t n_cells, std::size_t battery_size,
                                   std::uint64_t seed, double eps_f) {
  if (battery_size < 1) throw ValidationError("battery needs at least one member");
  const TransferOperator ref(spec.reference, n_cells, eps_f);
  const TransferOperator pert(spec.perturbed, n_cells, eps_f);
  const double A = spec.reference.A();

  std::vector<Disintegration> battery;
  battery.push_back(Disintegration::product(n_cells, FiberMeasure(1, {0.0, 0.5}, {1.0, -1.0})));
  Rng rng(seed);
  while (battery.size() < battery_size) battery.push_back(measures::random_block_measure(rng, n_cells));
  for (auto& f : battery) f = f.scaled(1.0 / measures::pbv_norm(f, 1.0, A).pbv);

  std::vector<double> dist(battery.size());
  parallel_for(battery.size(), [&](std::size_t i) {
    dist[i] = measures::l1_norm(ref.apply(battery[i]) - pert.apply(battery[i]));
  });
  OperatorDistance out;
  out.battery_size = battery.size();
  out.seed = seed;
  out.max_pbv = 1.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] > out.value) {
      out.value = dist[i];
      out.argmax = i;
    }
  }
  return out;
}

double skorokhod_bound(const PerturbationSpec& spec, std::size_t grid) {
  if (grid < 2) throw ValidationError("grid must have at least two points");
  double disp = 0.0, dens = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    const double ds = spec.sigma.derivative(x);
    if (!(ds > 0.0)) throw ValidationError("sigma is not a diffeomorphism: sigma' <= 0 on the grid");
    disp = std::max(disp, std::fabs(spec.sigma(x) - x));
    dens = std::max(dens, std::fabs(1.0 / ds - 1.0));
  }
  return std::max({disp, dens, interval_measure(spec.base_exception)});
}

}  // namespace skewstab::dynamics
