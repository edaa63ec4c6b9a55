#pragma once

// Reference bounded-Lipschitz norm on the circle, independent of the library code.
// Atoms are snapped to a ring of M nodes and the test function takes values
// s/M, s in [-M, M], with |s_a - s_b| bounded by the node distance. The
// constraint matrix is a network matrix, so the integer optimum equals the LP
// optimum of the snapped problem; snapping moves the value by at most
// sum|w| / (2M).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <vector>

namespace oracle {

inline double lattice_w1(const std::vector<double>& x, const std::vector<double>& w, long M = 10000) {
  std::map<long, double> merged;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double y = x[i] - std::floor(x[i]);
    long node = std::lround(y * static_cast<double>(M)) % M;
    merged[node] += w[i];
  }
  std::vector<long> node;
  std::vector<double> weight;
  for (const auto& [k, v] : merged) {
    if (v == 0.0) continue;
    node.push_back(k);
    weight.push_back(v);
  }
  const std::size_t n = node.size();
  if (n == 0) return 0.0;

  const long L = 2 * M + 1;  // levels s + M
  const double ninf = -std::numeric_limits<double>::infinity();
  const double unit = 1.0 / static_cast<double>(M);

  // max over windows of half-width t, linear time with a monotone deque
  auto window_max = [&](const std::vector<double>& v, long t) {
    std::vector<double> out(static_cast<std::size_t>(L), ninf);
    if (t >= L) {
      const double m = *std::max_element(v.begin(), v.end());
      std::fill(out.begin(), out.end(), m);
      return out;
    }
    std::deque<long> dq;
    long next = 0;
    for (long s = 0; s < L; ++s) {
      while (next < L && next <= s + t) {
        while (!dq.empty() && v[static_cast<std::size_t>(dq.back())] <= v[static_cast<std::size_t>(next)]) dq.pop_back();
        dq.push_back(next);
        ++next;
      }
      while (dq.front() < s - t) dq.pop_front();
      out[static_cast<std::size_t>(s)] = v[static_cast<std::size_t>(dq.front())];
    }
    return out;
  };

  auto ring_gap = [&](long a, long b) {
    long d = std::labs(b - a);
    return std::min(d, M - d);
  };

  // best total with the first atom's level fixed at s0
  auto value = [&](long s0) {
    std::vector<double> v(static_cast<std::size_t>(L), ninf);
    v[static_cast<std::size_t>(s0)] = weight[0] * static_cast<double>(s0 - M) * unit;
    for (std::size_t i = 1; i < n; ++i) {
      v = window_max(v, ring_gap(node[i - 1], node[i]));
      for (long s = 0; s < L; ++s)
        if (v[static_cast<std::size_t>(s)] != ninf)
          v[static_cast<std::size_t>(s)] += weight[i] * static_cast<double>(s - M) * unit;
    }
    // closing arc; constraints between non-adjacent atoms follow from the arcs
    const long t = ring_gap(node[n - 1], node[0]);
    double best = ninf;
    for (long s = std::max(0L, s0 - t); s <= std::min(L - 1, s0 + t); ++s)
      best = std::max(best, v[static_cast<std::size_t>(s)]);
    return best;
  };

  long lo = 0, hi = L - 1;
  while (hi - lo > 2) {
    const long m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (value(m1) < value(m2))
      lo = m1 + 1;
    else
      hi = m2;
  }
  double best = ninf;
  for (long s = lo; s <= hi; ++s) best = std::max(best, value(s));
  return best;
}

}  // namespace oracle
