#pragma once

#include <numeric>
#include <vector>

#include "gridknot/grid_diagram.hpp"
#include "gridknot/rng.hpp"

namespace testutil {

// Random valid diagram: random permutation x plus o = x composed with a
// random n-cycle, so the composed permutation is a single cycle and no row
// degenerates.
inline gridknot::GridDiagram random_diagram(int n, gridknot::Rng& rng) {
  std::vector<int> x(n);
  std::iota(x.begin(), x.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<uint64_t>(i + 1)));
    std::swap(x[i], x[j]);
  }
  // random n-cycle over row indices (Sattolo's algorithm)
  std::vector<int> cyc(n);
  std::iota(cyc.begin(), cyc.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<uint64_t>(i)));
    std::swap(cyc[i], cyc[j]);
  }
  std::vector<int> tau(n);  // successor map of the cycle
  for (int i = 0; i < n; ++i) tau[cyc[i]] = cyc[(i + 1) % n];
  std::vector<int> o(n);
  for (int i = 0; i < n; ++i) o[i] = x[tau[i]];
  return gridknot::GridDiagram::validate(std::move(x), std::move(o));
}

inline gridknot::GridDiagram fig1_diagram() {
  return gridknot::GridDiagram::validate({3, 8, 9, 1, 6, 2, 4, 5, 7},
                                         {1, 2, 6, 5, 3, 4, 7, 8, 9});
}

inline gridknot::GridDiagram trivial_diagram() {
  return gridknot::GridDiagram::validate({1, 2}, {2, 1});
}

}  // namespace testutil
