#pragma once

// Dense tableau simplex for   max c^T u   s.t.   A u <= b,  u >= 0,  b >= 0.
// The origin is feasible, so no phase one is needed. Bland's rule throughout,
// which terminates in exact arithmetic; with doubles a small pivot tolerance is used.

#include "skewstab/util/error.hpp"

#include <cstddef>
#include <vector>

namespace skewstab::measures::detail {

template <class Scalar>
struct DenseLp {
  std::size_t vars = 0;
  std::vector<std::vector<Scalar>> rows;  // coefficient rows of A
  std::vector<Scalar> rhs;                // b
  std::vector<Scalar> objective;          // c
};

template <class Scalar>
Scalar solve_max(const DenseLp<Scalar>& lp, const Scalar& tol) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.vars;
  const std::size_t width = n + m + 1;
  std::vector<std::vector<Scalar>> t(m + 1, std::vector<Scalar>(width, Scalar(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.rhs[r] < Scalar(0)) throw NumericError("simplex requires nonnegative right-hand side");
    for (std::size_t j = 0; j < n; ++j) t[r][j] = lp.rows[r][j];
    t[r][n + r] = Scalar(1);
    t[r][width - 1] = lp.rhs[r];
    basis[r] = n + r;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -lp.objective[j];

  for (std::size_t iter = 0;; ++iter) {
    if (iter > 100000) throw NumericError("simplex iteration limit reached");
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (t[m][j] < -tol) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Scalar best(0);
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] > tol) {
        Scalar ratio = t[r][width - 1] / t[r][enter];
        if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave == m) throw NumericError("linear program is unbounded");
    const Scalar piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const Scalar f = t[r][enter];
      if (f == Scalar(0)) continue;
      for (std::size_t j = 0; j < width; ++j) t[r][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return t[m][width - 1];
}

}  // namespace skewstab::measures::detail
