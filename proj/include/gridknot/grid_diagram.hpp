#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gridknot {

/// Errors raised when a pair of sequences fails to form a grid diagram.
/// The code identifies the first violated invariant, in check order.
struct DiagramError : std::runtime_error {
  enum class Code { TooSmall, NotAPermutation, DegenerateEdge, MultiComponent, Malformed };
  Code code;
  DiagramError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
};

/// Closed integer interval [lo, hi] of columns (or rows) spanned by an edge.
struct Span {
  int lo, hi;
};

inline int cycle_count(const std::vector<int>& x, const std::vector<int>& o) {
  const int n = static_cast<int>(x.size());
  std::vector<int> x_inv(n + 1, 0);
  for (int i = 0; i < n; ++i) x_inv[x[i]] = i;
  std::vector<char> seen(n, 0);
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = x_inv[o[j]];
    }
  }
  return cycles;
}

/// Rectangular knot diagram encoded by two permutations of {1..n}:
/// row i (top to bottom) carries a horizontal edge with its X endpoint in
/// column x[i] and its O endpoint in column o[i]. Vertical edges connect the
/// X and O within each column and always overcross. Immutable value type.
class GridDiagram {
 public:
  static GridDiagram validate(std::vector<int> x, std::vector<int> o) {
    if (x.size() != o.size())
      throw DiagramError(DiagramError::Code::Malformed, "x and o must have equal length");
    const int n = static_cast<int>(x.size());
    if (n < 2)
      throw DiagramError(DiagramError::Code::TooSmall, "grid size must be at least 2");
    check_permutation(x, n, "x");
    check_permutation(o, n, "o");
    for (int i = 0; i < n; ++i) {
      if (x[i] == o[i])
        throw DiagramError(DiagramError::Code::DegenerateEdge,
                           "zero-length edge in row " + std::to_string(i + 1));
    }
    if (cycle_count(x, o) != 1)
      throw DiagramError(DiagramError::Code::MultiComponent,
                         "diagram has more than one component");
    return GridDiagram(std::move(x), std::move(o));
  }

  int n() const { return static_cast<int>(x_.size()); }
  const std::vector<int>& xs() const { return x_; }
  const std::vector<int>& os() const { return o_; }

  /// Column of the X (resp. O) marker in row i, rows 1-based top to bottom.
  int x_at(int row) const { return x_[row - 1]; }
  int o_at(int row) const { return o_[row - 1]; }

  Span row_span(int row) const {
    return {std::min(x_at(row), o_at(row)), std::max(x_at(row), o_at(row))};
  }

  bool operator==(const GridDiagram& other) const {
    return x_ == other.x_ && o_ == other.o_;
  }
  bool operator!=(const GridDiagram& other) const { return !(*this == other); }

 private:
  GridDiagram(std::vector<int> x, std::vector<int> o) : x_(std::move(x)), o_(std::move(o)) {}

  static void check_permutation(const std::vector<int>& v, int n, const char* name) {
    std::vector<char> seen(n + 1, 0);
    for (int value : v) {
      if (value < 1 || value > n || seen[value])
        throw DiagramError(DiagramError::Code::NotAPermutation,
                           std::string(name) + " is not a permutation of 1.." + std::to_string(n));
      seen[value] = 1;
    }
  }

  std::vector<int> x_, o_;
};

/// Number of cycles of the composed permutation i -> x^-1(o[i]); a knot
/// diagram has exactly one.
inline int component_count(const GridDiagram& d) { return cycle_count(d.xs(), d.os()); }

/// Re-encodes the diagram by vertical edges: dual.x[c] = row of the X marker
/// in column c, dual.o[c] = row of the O marker in column c. Involution.
inline GridDiagram dual(const GridDiagram& d) {
  const int n = d.n();
  std::vector<int> dx(n), dov(n);
  for (int i = 0; i < n; ++i) {
    dx[d.xs()[i] - 1] = i + 1;
    dov[d.os()[i] - 1] = i + 1;
  }
  return GridDiagram::validate(std::move(dx), std::move(dov));
}

/// Count of proper transversal intersections: cells (row i, column c) where
/// column c's vertical edge strictly spans row i and row i's horizontal edge
/// strictly spans column c.
inline int crossing_count(const GridDiagram& d) {
  const int n = d.n();
  std::vector<int> x_row(n + 1), o_row(n + 1);
  for (int i = 1; i <= n; ++i) {
    x_row[d.x_at(i)] = i;
    o_row[d.o_at(i)] = i;
  }
  int count = 0;
  for (int c = 1; c <= n; ++c) {
    const int rlo = std::min(x_row[c], o_row[c]);
    const int rhi = std::max(x_row[c], o_row[c]);
    for (int i = rlo + 1; i < rhi; ++i) {
      const Span s = d.row_span(i);
      if (s.lo < c && c < s.hi) ++count;
    }
  }
  return count;
}

/// Cyclic translations of the grid (torus moves). Not Dynnikov moves on
/// their own; used for canonical forms and seam-block handling.
inline GridDiagram rotate_rows_up(const GridDiagram& d, int k) {
  const int n = d.n();
  k = ((k % n) + n) % n;
  std::vector<int> x(n), o(n);
  for (int i = 0; i < n; ++i) {
    x[i] = d.xs()[(i + k) % n];
    o[i] = d.os()[(i + k) % n];
  }
  return GridDiagram::validate(std::move(x), std::move(o));
}

inline GridDiagram rotate_cols_left(const GridDiagram& d, int k) {
  const int n = d.n();
  k = ((k % n) + n) % n;
  std::vector<int> x(n), o(n);
  auto remap = [&](int v) { return (v - 1 - k + n) % n + 1; };
  for (int i = 0; i < n; ++i) {
    x[i] = remap(d.xs()[i]);
    o[i] = remap(d.os()[i]);
  }
  return GridDiagram::validate(std::move(x), std::move(o));
}

inline nlohmann::json to_json(const GridDiagram& d) {
  return nlohmann::json{{"n", d.n()}, {"x", d.xs()}, {"o", d.os()}};
}

inline GridDiagram diagram_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("o"))
    throw DiagramError(DiagramError::Code::Malformed, "diagram JSON needs \"x\" and \"o\" arrays");
  std::vector<int> x, o;
  try {
    x = j.at("x").get<std::vector<int>>();
    o = j.at("o").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw DiagramError(DiagramError::Code::Malformed, std::string("bad diagram JSON: ") + e.what());
  }
  if (j.contains("n") && j.at("n").is_number_integer() &&
      j.at("n").get<int>() != static_cast<int>(x.size()))
    throw DiagramError(DiagramError::Code::Malformed, "\"n\" does not match array length");
  return GridDiagram::validate(std::move(x), std::move(o));
}

/// JSON text form {"n": int, "x": [...], "o": [...]}; round-trips exactly.
inline std::string serialize(const GridDiagram& d) { return to_json(d).dump(); }

inline GridDiagram parse(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DiagramError(DiagramError::Code::Malformed, std::string("malformed JSON: ") + e.what());
  }
  return diagram_from_json(j);
}

/// n-line picture, one char per cell: X/O markers, '-' horizontal, '|'
/// vertical. Vertical edges are drawn over horizontal at crossings.
inline std::string render_ascii(const GridDiagram& d) {
  const int n = d.n();
  std::vector<int> x_row(n + 1), o_row(n + 1);
  for (int i = 1; i <= n; ++i) {
    x_row[d.x_at(i)] = i;
    o_row[d.o_at(i)] = i;
  }
  std::string out;
  out.reserve(static_cast<size_t>(n) * (n + 1));
  for (int i = 1; i <= n; ++i) {
    const Span s = d.row_span(i);
    for (int c = 1; c <= n; ++c) {
      char glyph = ' ';
      if (d.x_at(i) == c) {
        glyph = 'X';
      } else if (d.o_at(i) == c) {
        glyph = 'O';
      } else {
        const int rlo = std::min(x_row[c], o_row[c]);
        const int rhi = std::max(x_row[c], o_row[c]);
        if (rlo < i && i < rhi)
          glyph = '|';
        else if (s.lo < c && c < s.hi)
          glyph = '-';
      }
      out += glyph;
    }
    out += '\n';
  }
  return out;
}

}  // namespace gridknot
