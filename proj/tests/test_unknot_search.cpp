#include <catch2/catch_amalgamated.hpp>

#include "gridknot/unknot_search.hpp"
#include "helpers.hpp"

using namespace gridknot;
using testutil::random_diagram;
using testutil::trivial_diagram;

namespace {

GridDiagram random_unknot(int target_n, int switch_moves, Rng& rng) {
  GridDiagram d = trivial_diagram();
  while (d.n() < target_n) {
    const int idx = static_cast<int>(rng.below(static_cast<uint64_t>(8 * d.n())));
    const int row = idx / 8 + 1;
    const Marker mk = (idx % 8) / 4 == 0 ? Marker::X : Marker::O;
    const Corner cn = static_cast<Corner>(idx % 4);
    d = stabilize(d, row, mk, cn);
  }
  return scramble(d, rng, switch_moves, MoveSet::WithExternal);
}

}  // namespace

TEST_CASE("trivial diagram is the unknot with an empty certificate") {
  Verdict v = decide(trivial_diagram());
  CHECK(v.kind == VerdictKind::Unknot);
  CHECK(v.certificate.empty());
}

TEST_CASE("one stabilization is undone") {
  GridDiagram d = stabilize(trivial_diagram(), 1, Marker::X, Corner::NE);
  Verdict v = decide(d);
  REQUIRE(v.kind == VerdictKind::Unknot);
  CHECK(!v.certificate.empty());
  GridDiagram replay = d;
  for (const Move& m : v.certificate) replay = apply(replay, m);
  CHECK(replay.n() == 2);
}

TEST_CASE("certificates replay and never increase complexity") {
  Rng rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    GridDiagram d = random_unknot(rng.uniform_int(3, 6), 120, rng);
    Verdict v = decide(d);
    REQUIRE(v.kind == VerdictKind::Unknot);
    GridDiagram replay = d;
    int complexity = d.n();
    for (const Move& m : v.certificate) {
      replay = apply(replay, m);
      CHECK(replay.n() <= complexity);
      complexity = replay.n();
    }
    CHECK(replay.n() == 2);
  }
}

TEST_CASE("trefoil seed is knotted by exhaustion") {
  GridDiagram trefoil = GridDiagram::validate({3, 4, 5, 1, 2}, {1, 2, 3, 4, 5});
  Verdict v = decide(trefoil);
  CHECK(v.kind == VerdictKind::Knotted);
  // frozen regression constant: the minimal torus grid is rigid under
  // monotone moves (every adjacent span pair interleaves), so the reachable
  // set is the start state alone
  CHECK(v.states_explored == 1);

  // a scrambled representative has a non-trivial reachable set
  Rng rng(4);
  GridDiagram moved = scramble(stabilize(trefoil, 2, Marker::X, Corner::NE), rng, 50,
                               MoveSet::WithExternal);
  Verdict v2 = decide(moved);
  CHECK(v2.kind == VerdictKind::Knotted);
  CHECK(v2.states_explored > 1);
}

TEST_CASE("budget exhaustion is reported honestly") {
  Rng rng(5);
  GridDiagram d = random_unknot(7, 200, rng);
  Verdict v = decide(d, SearchBudget{2, 0});
  CHECK(v.kind == VerdictKind::Inconclusive);
}

TEST_CASE("canonical form is idempotent and rotation-invariant") {
  Rng rng(1111);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(2, 10);
    GridDiagram d = random_diagram(n, rng);
    GridDiagram c = canonical_form(d);
    CHECK(canonical_form(c) == c);
    CHECK(canonical_form(rotate_rows_up(d, rng.uniform_int(0, n - 1))) == c);
    CHECK(canonical_form(rotate_cols_left(d, rng.uniform_int(0, n - 1))) == c);
  }
}

TEST_CASE("size-2 diagrams share one canonical form") {
  GridDiagram a = GridDiagram::validate({2, 1}, {1, 2});
  GridDiagram b = GridDiagram::validate({1, 2}, {2, 1});
  CHECK(canonical_form(a) == canonical_form(b));
}

TEST_CASE("external switches that are pure rotations keep the canonical form") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(2, 5);
    GridDiagram d = random_diagram(n, rng);
    Move ext{MoveKind::ExternalSwitchRows, n};
    if (!is_legal(d, ext)) continue;
    GridDiagram moved = apply(d, ext);
    bool pure_rotation = false;
    for (int k = 0; k < n && !pure_rotation; ++k)
      if (rotate_rows_up(d, k) == moved) pure_rotation = true;
    if (pure_rotation) CHECK(canonical_form(moved) == canonical_form(d));
  }
}

TEST_CASE("verdict is stable under scrambling") {
  Rng rng(31415);
  GridDiagram trefoil = GridDiagram::validate({3, 4, 5, 1, 2}, {1, 2, 3, 4, 5});
  for (int trial = 0; trial < 10; ++trial) {
    GridDiagram scrambled = scramble(trefoil, rng, 150, MoveSet::WithExternal);
    CHECK(decide(scrambled).kind == VerdictKind::Knotted);
  }
  for (int trial = 0; trial < 10; ++trial) {
    GridDiagram u = random_unknot(rng.uniform_int(4, 7), 200, rng);
    CHECK(decide(u).kind == VerdictKind::Unknot);
  }
}
