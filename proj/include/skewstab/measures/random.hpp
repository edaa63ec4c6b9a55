#pragma once

#include "skewstab/measures/disintegration.hpp"
#include "skewstab/util/rng.hpp"

namespace skewstab::measures {

/// 1..max_atoms atoms on T^1 at uniform positions; weights in (0.1, 1] or [-1, 1].
FiberMeasure random_fiber(Rng& rng, int max_atoms, bool positive);

struct RandomMeasureOptions {
  bool positive = true;
  int max_blocks = 4;  // constant-fiber runs of cells
  int max_atoms = 4;
  double mass = 1.0;  // total mass (positive measures)
};

/// Piecewise-constant-in-x measure: the base is cut into a few runs of cells and
/// each run carries one random fiber with a random density level.
Disintegration random_block_measure(Rng& rng, std::size_t n_cells, const RandomMeasureOptions& opt = {});

}  // namespace skewstab::measures
