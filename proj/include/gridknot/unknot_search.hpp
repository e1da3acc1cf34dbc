#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_set>
#include <vector>

#include "gridknot/grid_diagram.hpp"
#include "gridknot/moves.hpp"

namespace gridknot {

struct SearchBudget {
  uint64_t max_states = 2'000'000;
  int max_complexity = 0;  // 0: monotonic mode, capped at the input's n
};

enum class VerdictKind { Unknot, Knotted, Inconclusive };

struct Verdict {
  VerdictKind kind;
  std::vector<Move> certificate;  // replays from the input to the 2x2 diagram
  uint64_t states_explored = 0;
};

/// Lexicographically minimal representative over all cyclic row and column
/// rotations. Reflections are not included; they are not Dynnikov moves.
inline GridDiagram canonical_form(const GridDiagram& d) {
  const int n = d.n();
  GridDiagram best = d;
  bool first = true;
  for (int a = 0; a < n; ++a) {
    GridDiagram row_rot = rotate_rows_up(d, a);
    for (int b = 0; b < n; ++b) {
      GridDiagram cand = rotate_cols_left(row_rot, b);
      if (first || cand.xs() < best.xs() ||
          (cand.xs() == best.xs() && cand.os() < best.os())) {
        best = cand;
        first = false;
      }
    }
  }
  return best;
}

inline std::string canonical_key(const GridDiagram& d) {
  GridDiagram c = canonical_form(d);
  std::string key;
  key.reserve(static_cast<size_t>(2 * c.n()));
  for (int v : c.xs()) key += static_cast<char>(v);
  for (int v : c.os()) key += static_cast<char>(v);
  return key;
}

/// Breadth-first search over switches and destabilizations (never
/// increasing complexity). Reaching the 2x2 diagram certifies the unknot;
/// exhausting the monotone reachable set certifies knottedness, since any
/// unknot diagram admits a monotonic simplification.
inline Verdict decide(const GridDiagram& input, const SearchBudget& budget = {}) {
  const int cap = budget.max_complexity > 0 ? budget.max_complexity : input.n();

  struct Node {
    GridDiagram d;
    int parent;
    Move via;
  };

  std::vector<Node> nodes;
  std::unordered_set<std::string> visited;
  std::deque<int> frontier;

  auto make_verdict = [&](VerdictKind kind, int goal) {
    Verdict v{kind, {}, nodes.size()};
    if (kind == VerdictKind::Unknot) {
      for (int i = goal; nodes[i].parent >= 0; i = nodes[i].parent)
        v.certificate.push_back(nodes[i].via);
      std::reverse(v.certificate.begin(), v.certificate.end());
      GridDiagram check = input;
      for (const Move& m : v.certificate) check = apply(check, m);
      if (check.n() != 2) throw std::logic_error("certificate replay failed");
    }
    return v;
  };

  nodes.push_back({input, -1, Move{}});
  visited.insert(canonical_key(input));
  frontier.push_back(0);
  if (input.n() == 2) return make_verdict(VerdictKind::Unknot, 0);

  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop_front();
    const GridDiagram d = nodes[cur].d;  // copy: nodes may reallocate
    for (const Move& m : legal_moves(d, MoveSet::WithExternal, false, true)) {
      GridDiagram next = apply(d, m);
      if (next.n() > cap) continue;
      if (!visited.insert(canonical_key(next)).second) continue;
      nodes.push_back({next, cur, m});
      const int id = static_cast<int>(nodes.size()) - 1;
      if (next.n() == 2) return make_verdict(VerdictKind::Unknot, id);
      if (nodes.size() >= budget.max_states)
        return make_verdict(VerdictKind::Inconclusive, -1);
      frontier.push_back(id);
    }
  }
  return make_verdict(VerdictKind::Knotted, -1);
}

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Unknot: return "unknot";
    case VerdictKind::Knotted: return "knotted";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace gridknot
