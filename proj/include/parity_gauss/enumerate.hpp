#pragma once

// Exhaustive generation of Gauss diagrams with a given number of arrows.
// Line diagrams are emitted once each (their code is already canonical);
// loop diagrams are emitted once per rotation class, namely for the
// representative whose own code equals its canonical key.

#include <utility>
#include <vector>

#include "parity_gauss/core.hpp"

namespace parity_gauss {

namespace detail {

template <typename Fn>
void enumerate_rec(GaussDiagram& d, std::vector<bool>& used, bool all_signs, Fn& fn) {
  const int pts = static_cast<int>(used.size());
  int p = 0;
  while (p < pts && used[p]) ++p;
  if (p == pts) {
    // keep only the rotation-class representative
    if (d.ambient == Ambient::loop && to_gauss_code(d) != canonical_key(d)) return;
    fn(const_cast<const GaussDiagram&>(d));
    return;
  }
  used[p] = true;
  for (int q = p + 1; q < pts; ++q) {
    if (used[q]) continue;
    used[q] = true;
    for (int dir = 0; dir < 2; ++dir) {
      for (int sign = 1; sign >= (all_signs ? -1 : 1); sign -= 2) {
        d.arrows.push_back(dir == 0 ? Arrow{p, q, sign} : Arrow{q, p, sign});
        enumerate_rec(d, used, all_signs, fn);
        d.arrows.pop_back();
      }
    }
    used[q] = false;
  }
  used[p] = false;
}

}  // namespace detail

// Calls fn(const GaussDiagram&) for every diagram with exactly m arrows,
// each rotation class once on the loop. With all_signs=false only all-plus
// diagrams are generated (directions still vary).
template <typename Fn>
void enumerate_diagrams(Ambient ambient, int m, bool all_signs, Fn&& fn) {
  GaussDiagram d;
  d.ambient = ambient;
  if (m == 0) {
    fn(const_cast<const GaussDiagram&>(d));
    return;
  }
  std::vector<bool> used(2 * m, false);
  detail::enumerate_rec(d, used, all_signs, fn);
}

// All diagrams with size <= m (including the empty one).
template <typename Fn>
void enumerate_diagrams_up_to(Ambient ambient, int m, bool all_signs, Fn&& fn) {
  for (int k = 0; k <= m; ++k) enumerate_diagrams(ambient, k, all_signs, fn);
}

}  // namespace parity_gauss
