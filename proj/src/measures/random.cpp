#include "skewstab/measures/random.hpp"

#include "skewstab/util/error.hpp"

#include <algorithm>

namespace skewstab::measures {

FiberMeasure random_fiber(Rng& rng, int max_atoms, bool positive) {
  const int n = rng.range(1, max_atoms);
  std::vector<double> c(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    c[static_cast<std::size_t>(i)] = rng.uniform();
    w[static_cast<std::size_t>(i)] = positive ? rng.uniform(0.1, 1.0) : rng.uniform(-1.0, 1.0);
  }
  return FiberMeasure(1, std::move(c), std::move(w));
}

Disintegration random_block_measure(Rng& rng, std::size_t n_cells, const RandomMeasureOptions& opt) {
  if (n_cells == 0) throw ValidationError("n_cells must be positive");
  const int blocks = std::min<int>(rng.range(1, std::max(1, opt.max_blocks)), static_cast<int>(n_cells));
  std::vector<std::size_t> cuts{0, n_cells};
  while (static_cast<int>(cuts.size()) < blocks + 1) {
    const std::size_t c = 1 + static_cast<std::size_t>(rng.below(n_cells - 1 == 0 ? 1 : n_cells - 1));
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<FiberPtr> fibers(n_cells);
  double total = 0.0;
  std::vector<FiberMeasure> raw;
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    FiberMeasure f = random_fiber(rng, opt.max_atoms, opt.positive);
    raw.push_back(f.scaled(1.0 / static_cast<double>(n_cells)));
    total += raw.back().mass() * static_cast<double>(cuts[b + 1] - cuts[b]);
  }
  const double scale = opt.positive && total > 0.0 ? opt.mass / total : 1.0;
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    auto f = std::make_shared<const FiberMeasure>(raw[b].scaled(scale));
    for (std::size_t i = cuts[b]; i < cuts[b + 1]; ++i) fibers[i] = f;
  }
  return Disintegration(std::move(fibers));
}

}  // namespace skewstab::measures
