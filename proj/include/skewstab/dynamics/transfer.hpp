#pragma once

#include "skewstab/dynamics/skew_system.hpp"
#include "skewstab/measures/disintegration.hpp"

#include <cstddef>
#include <vector>

namespace skewstab::dynamics {

/// Sentinel for the default fiber resolution 1 / (4N). Zero disables coarsening.
inline constexpr double kDefaultResolution = -1.0;

double resolve_resolution(double eps_f, std::size_t n_cells);

/// The transfer operator L_F on an N-cell grid.
///
/// Cell c of the image collects, for every branch b and every piece of
/// T_b^{-1}(cell c) lying in one source cell and on one side of the indicator,
/// the pushforward of that fraction of the source fiber. Fibers are then
/// coarsened at eps_f.
class TransferOperator {
 public:
  TransferOperator(const SkewSystem& sys, std::size_t n_cells, double eps_f = kDefaultResolution);

  std::size_t n_cells() const { return plan_.size(); }
  double resolution() const { return eps_f_; }

  measures::Disintegration apply(const measures::Disintegration& mu) const;
  /// The same operator on base masses only.
  std::vector<double> apply_base(const std::vector<double>& masses) const;

 private:
  struct Piece {
    std::size_t source;
    double fraction;
    int key;
  };
  FiberMap fiber_;
  double eps_f_;
  std::vector<std::vector<Piece>> plan_;
};

measures::Disintegration transfer_step(const SkewSystem& sys, const measures::Disintegration& mu,
                                       double eps_f = kDefaultResolution);

/// n applications of the transfer operator; n = 0 returns mu.
measures::Disintegration iterate(const SkewSystem& sys, const measures::Disintegration& mu, int n,
                                 double eps_f = kDefaultResolution);

/// Base transfer L_T on cell masses.
std::vector<double> base_transfer(const SkewSystem& sys, const std::vector<double>& masses);

}  // namespace skewstab::dynamics
