#pragma once

#include <cassert>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gridknot/grid_diagram.hpp"
#include "gridknot/rng.hpp"

namespace gridknot {

struct IllegalMove : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MoveKind {
  InternalSwitchRows,
  InternalSwitchCols,
  ExternalSwitchRows,
  ExternalSwitchCols,
  Stabilize,
  Destabilize,
};

enum class Marker { X, O };
enum class Corner { NW, NE, SW, SE };

enum class MoveSet { InternalOnly, WithExternal };

/// One Dynnikov move. `pos` is the row (switches/stabilize) or the block's
/// top row (destabilize); `col` is the block's left column (destabilize
/// only). External switches act on the boundary pair (n,1) and carry pos=n.
/// Destabilize blocks may wrap around the boundary (pos=n or col=n).
struct Move {
  MoveKind kind;
  int pos = 0;
  int col = 0;
  Marker marker = Marker::X;
  Corner corner = Corner::NW;
};

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::InternalSwitchRows: return "InternalSwitchRows";
    case MoveKind::InternalSwitchCols: return "InternalSwitchCols";
    case MoveKind::ExternalSwitchRows: return "ExternalSwitchRows";
    case MoveKind::ExternalSwitchCols: return "ExternalSwitchCols";
    case MoveKind::Stabilize: return "Stabilize";
    case MoveKind::Destabilize: return "Destabilize";
  }
  return "?";
}

inline const char* to_string(Marker m) { return m == Marker::X ? "X" : "O"; }

inline const char* to_string(Corner c) {
  switch (c) {
    case Corner::NW: return "NW";
    case Corner::NE: return "NE";
    case Corner::SW: return "SW";
    case Corner::SE: return "SE";
  }
  return "?";
}

/// Move log line: `KIND pos [col | marker corner]`.
inline std::string format_move(const Move& m) {
  std::ostringstream out;
  out << to_string(m.kind) << ' ' << m.pos;
  if (m.kind == MoveKind::Destabilize) out << ' ' << m.col;
  if (m.kind == MoveKind::Stabilize) out << ' ' << to_string(m.marker) << ' ' << to_string(m.corner);
  return out.str();
}

inline Move parse_move(const std::string& line) {
  std::istringstream in(line);
  std::string kind, marker, corner;
  Move m;
  if (!(in >> kind)) throw IllegalMove("empty move line");
  in >> m.pos;
  if (kind == "InternalSwitchRows") m.kind = MoveKind::InternalSwitchRows;
  else if (kind == "InternalSwitchCols") m.kind = MoveKind::InternalSwitchCols;
  else if (kind == "ExternalSwitchRows") m.kind = MoveKind::ExternalSwitchRows;
  else if (kind == "ExternalSwitchCols") m.kind = MoveKind::ExternalSwitchCols;
  else if (kind == "Stabilize") {
    m.kind = MoveKind::Stabilize;
    if (!(in >> marker >> corner)) throw IllegalMove("stabilize needs marker and corner: " + line);
    if (marker == "X") m.marker = Marker::X;
    else if (marker == "O") m.marker = Marker::O;
    else throw IllegalMove("bad marker: " + marker);
    if (corner == "NW") m.corner = Corner::NW;
    else if (corner == "NE") m.corner = Corner::NE;
    else if (corner == "SW") m.corner = Corner::SW;
    else if (corner == "SE") m.corner = Corner::SE;
    else throw IllegalMove("bad corner: " + corner);
  } else if (kind == "Destabilize") {
    m.kind = MoveKind::Destabilize;
    if (!(in >> m.col)) throw IllegalMove("destabilize needs row and column: " + line);
  } else {
    throw IllegalMove("unknown move kind: " + kind);
  }
  return m;
}

/// Two adjacent parallel edges interleave iff exactly one endpoint of one
/// span lies strictly inside the other. Shared endpoints, nesting and
/// disjointness are all non-interleaving (and hence switchable).
inline bool interleaving(Span a, Span b) {
  return (a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) ||
         (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi);
}

namespace detail {

inline Span col_span(const GridDiagram& d, int c) {
  int xr = 0, orow = 0;
  for (int i = 1; i <= d.n(); ++i) {
    if (d.x_at(i) == c) xr = i;
    if (d.o_at(i) == c) orow = i;
  }
  return {std::min(xr, orow), std::max(xr, orow)};
}

inline bool row_switch_legal(const GridDiagram& d, int i, int j) {
  return !interleaving(d.row_span(i), d.row_span(j));
}

inline bool col_switch_legal(const GridDiagram& d, int c, int c2) {
  return !interleaving(col_span(d, c), col_span(d, c2));
}

// Markers found inside a 2x2 block; rows/cols may wrap around.
struct BlockMarker {
  int row, col;
  Marker type;
};

inline std::vector<BlockMarker> block_markers(const GridDiagram& d, int i, int c) {
  const int n = d.n();
  const int i2 = i % n + 1, c2 = c % n + 1;
  std::vector<BlockMarker> out;
  for (int r : {i, i2}) {
    if (d.x_at(r) == c || d.x_at(r) == c2) out.push_back({r, d.x_at(r), Marker::X});
    if (d.o_at(r) == c || d.o_at(r) == c2) out.push_back({r, d.o_at(r), Marker::O});
  }
  return out;
}

inline GridDiagram destabilize_linear(const GridDiagram& d, int i, int c) {
  const int n = d.n();
  auto markers = block_markers(d, i, c);
  if (markers.size() != 3)
    throw IllegalMove("destabilize block must contain exactly three markers");
  int x_count = 0;
  for (const auto& m : markers)
    if (m.type == Marker::X) ++x_count;
  const Marker pair_type = x_count == 2 ? Marker::X : Marker::O;

  // The row with a single block marker keeps its other marker outside.
  int lone_row = 0;
  for (int r : {i, i + 1}) {
    int in_block = 0;
    for (const auto& m : markers)
      if (m.row == r) ++in_block;
    if (in_block == 1) lone_row = r;
  }
  assert(lone_row != 0);
  const int j_out = pair_type == Marker::X ? d.o_at(lone_row) : d.x_at(lone_row);

  auto colmap = [&](int v) {
    if (v <= c) return v;
    if (v == c + 1) return c;
    return v - 1;
  };
  std::vector<int> x(n - 1), o(n - 1);
  for (int r = 1; r <= n; ++r) {
    if (r == i || r == i + 1) continue;
    const int rn = r < i ? r : r - 1;
    x[rn - 1] = colmap(d.x_at(r));
    o[rn - 1] = colmap(d.o_at(r));
  }
  if (pair_type == Marker::X) {
    x[i - 1] = c;
    o[i - 1] = colmap(j_out);
  } else {
    o[i - 1] = c;
    x[i - 1] = colmap(j_out);
  }
  return GridDiagram::validate(std::move(x), std::move(o));
}

}  // namespace detail

/// Splits row i and the column of its chosen marker; the 2x2 block gets two
/// markers of that type on one diagonal and one opposite-type marker in the
/// corner named by `corner`. Always legal; grows n by one.
inline GridDiagram stabilize(const GridDiagram& d, int i, Marker marker, Corner corner) {
  const int n = d.n();
  if (i < 1 || i > n) throw IllegalMove("stabilize row out of range");
  const int c = marker == Marker::X ? d.x_at(i) : d.o_at(i);
  const int j = marker == Marker::X ? d.o_at(i) : d.x_at(i);

  const bool row_other_south = corner == Corner::NW || corner == Corner::NE;
  const bool col_other_east = corner == Corner::NW || corner == Corner::SW;
  auto colmap = [&](int v) {
    if (v < c) return v;
    if (v == c) return col_other_east ? c + 1 : c;
    return v + 1;
  };

  std::vector<int> x(n + 1), o(n + 1);
  for (int r = 1; r <= n; ++r) {
    if (r == i) continue;
    const int rn = r < i ? r : r + 1;
    x[rn - 1] = colmap(d.x_at(r));
    o[rn - 1] = colmap(d.o_at(r));
  }

  // Diagonal pair of `marker`, opposite type at `corner`.
  int pair_top, pair_bottom, opp_row, opp_col;
  switch (corner) {
    case Corner::NW: pair_top = c + 1; pair_bottom = c; opp_row = i; opp_col = c; break;
    case Corner::NE: pair_top = c; pair_bottom = c + 1; opp_row = i; opp_col = c + 1; break;
    case Corner::SW: pair_top = c; pair_bottom = c + 1; opp_row = i + 1; opp_col = c; break;
    case Corner::SE: pair_top = c + 1; pair_bottom = c; opp_row = i + 1; opp_col = c + 1; break;
    default: throw IllegalMove("bad corner");
  }
  const int other_row = row_other_south ? i + 1 : i;
  auto& pair_seq = marker == Marker::X ? x : o;
  auto& opp_seq = marker == Marker::X ? o : x;
  pair_seq[i - 1] = pair_top;
  pair_seq[i] = pair_bottom;
  opp_seq[opp_row - 1] = opp_col;
  opp_seq[other_row - 1] = colmap(j);

  GridDiagram out = GridDiagram::validate(std::move(x), std::move(o));
  assert(out.n() == n + 1);
  return out;
}

/// Merges the 2x2 block with top-left corner (i, c) back into a single
/// marker; exact inverse of some stabilization. The block must hold exactly
/// three markers. i=n or c=n wraps around the boundary.
inline GridDiagram destabilize(const GridDiagram& d, int i, int c) {
  const int n = d.n();
  if (n < 3) throw IllegalMove("destabilize would shrink the grid below 2");
  if (i < 1 || i > n || c < 1 || c > n) throw IllegalMove("destabilize block out of range");
  GridDiagram work = d;
  int ii = i, cc = c;
  if (i == n) {  // shift rows up so the seam block becomes interior
    work = rotate_rows_up(work, 1);
    ii = n - 1;
  }
  if (c == n) {
    work = rotate_cols_left(work, 1);
    cc = n - 1;
  }
  GridDiagram out = detail::destabilize_linear(work, ii, cc);
  assert(out.n() == n - 1);
  return out;
}

inline bool is_legal(const GridDiagram& d, const Move& m) {
  const int n = d.n();
  switch (m.kind) {
    case MoveKind::InternalSwitchRows:
      return m.pos >= 1 && m.pos < n && detail::row_switch_legal(d, m.pos, m.pos + 1);
    case MoveKind::InternalSwitchCols:
      return m.pos >= 1 && m.pos < n && detail::col_switch_legal(d, m.pos, m.pos + 1);
    case MoveKind::ExternalSwitchRows:
      return detail::row_switch_legal(d, 1, n);
    case MoveKind::ExternalSwitchCols:
      return detail::col_switch_legal(d, 1, n);
    case MoveKind::Stabilize:
      return m.pos >= 1 && m.pos <= n;
    case MoveKind::Destabilize:
      return n >= 3 && m.pos >= 1 && m.pos <= n && m.col >= 1 && m.col <= n &&
             detail::block_markers(d, m.pos, m.col).size() == 3;
  }
  return false;
}

/// Applies one move. Switches keep n, stabilize is +1, destabilize is -1.
/// Row switches swap the two rows' entries; the external switch exchanges
/// the boundary pair (n,1). Column moves are dual-conjugated row moves.
inline GridDiagram apply(const GridDiagram& d, const Move& m) {
  if (!is_legal(d, m))
    throw IllegalMove(std::string("illegal move: ") + format_move(m));
  const int n = d.n();
  switch (m.kind) {
    case MoveKind::InternalSwitchRows: {
      std::vector<int> x = d.xs(), o = d.os();
      std::swap(x[m.pos - 1], x[m.pos]);
      std::swap(o[m.pos - 1], o[m.pos]);
      GridDiagram out = GridDiagram::validate(std::move(x), std::move(o));
      assert(out.n() == n);
      return out;
    }
    case MoveKind::ExternalSwitchRows: {
      std::vector<int> x = d.xs(), o = d.os();
      std::swap(x[0], x[n - 1]);
      std::swap(o[0], o[n - 1]);
      GridDiagram out = GridDiagram::validate(std::move(x), std::move(o));
      assert(out.n() == n);
      return out;
    }
    case MoveKind::InternalSwitchCols: {
      Move rows = m;
      rows.kind = MoveKind::InternalSwitchRows;
      return dual(apply(dual(d), rows));
    }
    case MoveKind::ExternalSwitchCols: {
      Move rows = m;
      rows.kind = MoveKind::ExternalSwitchRows;
      return dual(apply(dual(d), rows));
    }
    case MoveKind::Stabilize:
      return stabilize(d, m.pos, m.marker, m.corner);
    case MoveKind::Destabilize:
      return destabilize(d, m.pos, m.col);
  }
  throw IllegalMove("unknown move kind");
}

/// Every applicable move, ordered by kind, then position, then orientation.
/// At n=2 the internal and external switches coincide; the external variants
/// are listed. Stabilizations are always legal; destabilize positions cover
/// wrap-around blocks.
inline std::vector<Move> legal_moves(const GridDiagram& d, MoveSet move_set,
                                     bool include_stab = false, bool include_destab = false) {
  const int n = d.n();
  std::vector<Move> out;
  if (n > 2) {
    for (int i = 1; i < n; ++i) {
      Move m{MoveKind::InternalSwitchRows, i};
      if (is_legal(d, m)) out.push_back(m);
    }
    for (int c = 1; c < n; ++c) {
      Move m{MoveKind::InternalSwitchCols, c};
      if (is_legal(d, m)) out.push_back(m);
    }
  }
  if (move_set == MoveSet::WithExternal || n == 2) {
    Move er{MoveKind::ExternalSwitchRows, n};
    if (is_legal(d, er)) out.push_back(er);
    Move ec{MoveKind::ExternalSwitchCols, n};
    if (is_legal(d, ec)) out.push_back(ec);
  }
  if (include_stab) {
    for (int i = 1; i <= n; ++i)
      for (Marker mk : {Marker::X, Marker::O})
        for (Corner cn : {Corner::NW, Corner::NE, Corner::SW, Corner::SE})
          out.push_back(Move{MoveKind::Stabilize, i, 0, mk, cn});
  }
  if (include_destab && n >= 3) {
    for (int i = 1; i <= n; ++i)
      for (int c = 1; c <= n; ++c) {
        Move m{MoveKind::Destabilize, i, c};
        if (is_legal(d, m)) out.push_back(m);
      }
  }
  return out;
}

/// k class-preserving switch moves drawn uniformly from the candidate
/// positions of `move_set`. An illegal draw is retried up to n^2 times, then
/// the step counts as a no-op, so the move budget stays well-defined.
inline GridDiagram scramble(const GridDiagram& d, Rng& rng, int k, MoveSet move_set) {
  GridDiagram cur = d;
  for (int step = 0; step < k; ++step) {
    const int n = cur.n();
    const int internals = 2 * (n - 1);
    const int externals = (move_set == MoveSet::WithExternal && n > 2) ? 2 : 0;
    const int total = internals + externals;
    if (total == 0) continue;
    const int max_tries = n * n;
    for (int attempt = 0; attempt < max_tries; ++attempt) {
      const int idx = static_cast<int>(rng.below(static_cast<uint64_t>(total)));
      Move m;
      if (idx < n - 1) {
        m = Move{MoveKind::InternalSwitchRows, idx + 1};
      } else if (idx < internals) {
        m = Move{MoveKind::InternalSwitchCols, idx - (n - 1) + 1};
      } else if (idx == internals) {
        m = Move{MoveKind::ExternalSwitchRows, n};
      } else {
        m = Move{MoveKind::ExternalSwitchCols, n};
      }
      if (is_legal(cur, m)) {
        cur = apply(cur, m);
        break;
      }
    }
  }
  return cur;
}

}  // namespace gridknot
