#pragma once

#include <cassert>
#include <cmath>
#include <vector>

namespace gridknot {

using Vec = std::vector<double>;

/// Dense row-major matrix, just large enough for the recurrent layers here.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  double* row(int r) { return a.data() + static_cast<size_t>(r) * cols; }
  const double* row(int r) const { return a.data() + static_cast<size_t>(r) * cols; }
};

/// y += M x
inline void matvec_add(const Mat& m, const Vec& x, Vec& y) {
  assert(static_cast<int>(x.size()) == m.cols && static_cast<int>(y.size()) == m.rows);
  for (int r = 0; r < m.rows; ++r) {
    const double* row = m.row(r);
    double acc = 0.0;
    for (int c = 0; c < m.cols; ++c) acc += row[c] * x[c];
    y[static_cast<size_t>(r)] += acc;
  }
}

/// y += M^T x
inline void matvec_transpose_add(const Mat& m, const Vec& x, Vec& y) {
  assert(static_cast<int>(x.size()) == m.rows && static_cast<int>(y.size()) == m.cols);
  for (int r = 0; r < m.rows; ++r) {
    const double* row = m.row(r);
    const double xv = x[static_cast<size_t>(r)];
    for (int c = 0; c < m.cols; ++c) y[static_cast<size_t>(c)] += row[c] * xv;
  }
}

/// M += u v^T
inline void outer_add(Mat& m, const Vec& u, const Vec& v) {
  assert(static_cast<int>(u.size()) == m.rows && static_cast<int>(v.size()) == m.cols);
  for (int r = 0; r < m.rows; ++r) {
    double* row = m.row(r);
    const double uv = u[static_cast<size_t>(r)];
    for (int c = 0; c < m.cols; ++c) row[c] += uv * v[static_cast<size_t>(c)];
  }
}

inline void add_scaled(Vec& y, const Vec& x, double s) {
  assert(x.size() == y.size());
  for (size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace gridknot
