#include "adl/intlin.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

#include "adl/errors.hpp"

namespace adl {

IMat imat_identity(int n) {
  IMat m(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  IMat r(n, Vec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      Int ail = a[i][l];
      if (!ail) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += ail * b[l][j];
    }
  return r;
}

Vec imat_apply(const IMat& a, const Vec& v) {
  Vec r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

IMat imat_sub(const IMat& a, const IMat& b) {
  IMat r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

IMat imat_transpose(const IMat& a) {
  size_t n = a.size(), m = n ? a[0].size() : 0;
  IMat r(m, Vec(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

bool imat_equal(const IMat& a, const IMat& b) { return a == b; }

namespace {

struct SmithWork {
  IMat a;
  IMat u, u_inv, v, v_inv;
  int rows, cols;

  void row_swap(int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
    for (int r = 0; r < rows; ++r) std::swap(u_inv[r][i], u_inv[r][j]);
  }
  void col_swap(int i, int j) {
    for (int r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    for (int r = 0; r < cols; ++r) std::swap(v[r][i], v[r][j]);
    std::swap(v_inv[i], v_inv[j]);
  }
  // row j += c * row i
  void row_add(int j, int i, Int c) {
    for (int k = 0; k < cols; ++k) a[j][k] += c * a[i][k];
    for (int k = 0; k < rows; ++k) u[j][k] += c * u[i][k];
    for (int r = 0; r < rows; ++r) u_inv[r][i] -= c * u_inv[r][j];
  }
  // col j += c * col i
  void col_add(int j, int i, Int c) {
    for (int r = 0; r < rows; ++r) a[r][j] += c * a[r][i];
    for (int r = 0; r < cols; ++r) v[r][j] += c * v[r][i];
    for (int k = 0; k < cols; ++k) v_inv[i][k] -= c * v_inv[j][k];
  }
  void row_negate(int i) {
    for (int k = 0; k < cols; ++k) a[i][k] = -a[i][k];
    for (int k = 0; k < rows; ++k) u[i][k] = -u[i][k];
    for (int r = 0; r < rows; ++r) u_inv[r][i] = -u_inv[r][i];
  }
};

}  // namespace

SmithForm smith_form(const IMat& a_in) {
  int rows = static_cast<int>(a_in.size());
  int cols = rows ? static_cast<int>(a_in[0].size()) : 0;
  SmithWork w;
  w.a = a_in;
  w.rows = rows;
  w.cols = cols;
  w.u = imat_identity(rows);
  w.u_inv = imat_identity(rows);
  w.v = imat_identity(cols);
  w.v_inv = imat_identity(cols);

  int t = 0;
  int limit = std::min(rows, cols);
  while (t < limit) {
    // find a pivot of minimal absolute value in the trailing block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        Int x = std::llabs(w.a[i][j]);
        if (x != 0 && (best == 0 || x < best)) {
          best = x;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (w.a[i][t] == 0) continue;
      Int q = w.a[i][t] / w.a[t][t];
      w.row_add(i, t, -q);
      if (w.a[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (w.a[t][j] == 0) continue;
      Int q = w.a[t][j] / w.a[t][t];
      w.col_add(j, t, -q);
      if (w.a[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // remainders left: pick a smaller pivot next pass

    // enforce the divisibility chain: fold any non-multiple into column t
    bool chain_ok = true;
    for (int i = t + 1; i < rows && chain_ok; ++i)
      for (int j = t + 1; j < cols && chain_ok; ++j)
        if (w.a[i][j] % w.a[t][t] != 0) {
          w.col_add(t, j, 1);
          chain_ok = false;
        }
    if (!chain_ok) continue;

    if (w.a[t][t] < 0) w.row_negate(t);
    ++t;
  }

  SmithForm sf;
  sf.u = w.u;
  sf.u_inv = w.u_inv;
  sf.v = w.v;
  sf.v_inv = w.v_inv;
  sf.rank = t;
  for (int i = 0; i < t; ++i) sf.diag.push_back(w.a[i][i]);
  return sf;
}

std::optional<Vec> solve_integer(const IMat& a, const Vec& b) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SmithForm sf = smith_form(a);
  Vec c = imat_apply(sf.u, b);
  Vec y(cols, 0);
  for (int i = 0; i < rows; ++i) {
    if (i < sf.rank) {
      if (c[i] % sf.diag[i] != 0) return std::nullopt;
      y[i] = c[i] / sf.diag[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return imat_apply(sf.v, y);
}

std::optional<QVec> solve_rational(const IMat& a, const QVec& b) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  // fraction-free Gaussian elimination on the augmented rational system
  std::vector<QVec> m(rows, QVec(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m[i][j] = a[i][j];
    m[i][cols] = b[i];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int j = 0; j < cols && r < rows; ++j) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][j] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    Rat inv = m[r][j];
    for (int k = j; k <= cols; ++k) m[r][k] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][j] == 0) continue;
      Rat f = m[i][j];
      for (int k = j; k <= cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (m[i][cols] != 0) return std::nullopt;
  QVec x(cols, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = m[i][cols];
  return x;
}

std::vector<QVec> rational_kernel(const IMat& a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<QVec> m(rows, QVec(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[i][j] = a[i][j];
  std::vector<int> pivot_of_col(cols, -1);
  int r = 0;
  for (int j = 0; j < cols && r < rows; ++j) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][j] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    Rat inv = m[r][j];
    for (int k = j; k < cols; ++k) m[r][k] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][j] == 0) continue;
      Rat f = m[i][j];
      for (int k = j; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_of_col[j] = r;
    ++r;
  }
  std::vector<QVec> basis;
  for (int j = 0; j < cols; ++j) {
    if (pivot_of_col[j] >= 0) continue;
    QVec x(cols, Rat(0));
    x[j] = 1;
    for (int jj = 0; jj < cols; ++jj)
      if (pivot_of_col[jj] >= 0) x[jj] = -m[pivot_of_col[jj]][j];
    basis.push_back(std::move(x));
  }
  return basis;
}

LatticeQuotient::LatticeQuotient(int n, const IMat& columns) : n_(n) {
  IMat a(n, Vec());
  size_t ncols = columns.size();
  for (int i = 0; i < n; ++i) {
    a[i].resize(ncols, 0);
    for (size_t c = 0; c < ncols; ++c) a[i][c] = columns[c][i];
  }
  if (ncols == 0) {
    u_ = imat_identity(n);
    u_inv_ = imat_identity(n);
    return;
  }
  SmithForm sf = smith_form(a);
  u_ = sf.u;
  u_inv_ = sf.u_inv;
  diag_ = sf.diag;
}

Vec LatticeQuotient::reduce(Vec w) const {
  for (size_t i = 0; i < diag_.size(); ++i) {
    Int d = diag_[i];
    w[i] %= d;
    if (w[i] < 0) w[i] += d;
  }
  return w;
}

Vec LatticeQuotient::normal_form(const Vec& v) const {
  assert(static_cast<int>(v.size()) == n_);
  return reduce(imat_apply(u_, v));
}

Vec LatticeQuotient::add(const Vec& a, const Vec& b) const {
  Vec r(n_);
  for (int i = 0; i < n_; ++i) r[i] = a[i] + b[i];
  return reduce(std::move(r));
}

Vec LatticeQuotient::neg(const Vec& a) const {
  Vec r(n_);
  for (int i = 0; i < n_; ++i) r[i] = -a[i];
  return reduce(std::move(r));
}

Vec LatticeQuotient::scale(Int c, const Vec& a) const {
  Vec r(n_);
  for (int i = 0; i < n_; ++i) r[i] = c * a[i];
  return reduce(std::move(r));
}

bool LatticeQuotient::is_zero(const Vec& nf) const {
  for (Int x : nf)
    if (x != 0) return false;
  return true;
}

bool LatticeQuotient::is_torsion(const Vec& nf) const {
  for (size_t i = diag_.size(); i < static_cast<size_t>(n_); ++i)
    if (nf[i] != 0) return false;
  return true;
}

std::vector<Int> LatticeQuotient::torsion_orders() const {
  std::vector<Int> out;
  for (Int d : diag_)
    if (d > 1) out.push_back(d);
  return out;
}

bool LatticeQuotient::has_torsion() const { return !torsion_orders().empty(); }

Vec LatticeQuotient::lift(const Vec& nf) const {
  return imat_apply(u_inv_, nf);
}

}  // namespace adl
