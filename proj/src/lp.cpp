#include "adl/lp.hpp"

#include <cassert>

namespace adl {

/* Phase-1 simplex with Bland's rule: minimize the sum of artificial
   variables.  Exact rational pivots, so optimality and infeasibility are
   decided without tolerances. */
LpResult lp_equality_feasible(const std::vector<QVec>& a_rows, const QVec& b) {
  int d = static_cast<int>(a_rows.size());
  int k = d ? static_cast<int>(a_rows[0].size()) : 0;
  int cols = k + d + 1;  // original | artificial | rhs

  std::vector<QVec> t(d + 1, QVec(cols, Rat(0)));
  for (int i = 0; i < d; ++i) {
    Rat sign = (b[i] < 0) ? Rat(-1) : Rat(1);
    for (int j = 0; j < k; ++j) t[i + 1][j] = sign * a_rows[i][j];
    t[i + 1][k + i] = 1;
    t[i + 1][cols - 1] = sign * b[i];
  }
  // reduced costs for the artificial basis: c_j - sum of constraint rows
  for (int j = 0; j < cols; ++j) {
    Rat s = 0;
    for (int i = 1; i <= d; ++i) s += t[i][j];
    Rat c = (j >= k && j < k + d) ? Rat(1) : Rat(0);
    t[0][j] = c - s;
  }
  t[0][cols - 1] = 0;
  for (int i = 1; i <= d; ++i) t[0][cols - 1] -= t[i][cols - 1];

  std::vector<int> basis(d);
  for (int i = 0; i < d; ++i) basis[i] = k + i;

  for (;;) {
    int enter = -1;
    for (int j = 0; j < k + d; ++j)
      if (t[0][j] < 0) {
        enter = j;
        break;  // Bland: smallest eligible index
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best_ratio = 0;
    for (int i = 1; i <= d; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i - 1] < basis[leave - 1])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    assert(leave > 0);  // phase-1 objective is bounded below by zero
    Rat piv = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i <= d; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave - 1] = enter;
  }

  LpResult res;
  Rat objective = -t[0][cols - 1];
  if (objective == 0) {
    res.feasible = true;
    res.point.assign(k, Rat(0));
    for (int i = 0; i < d; ++i)
      if (basis[i] < k) res.point[basis[i]] = t[i + 1][cols - 1];
  } else {
    res.feasible = false;
    // y_i = 1 - (reduced cost of artificial i), undoing the row sign flip
    res.farkas.assign(d, Rat(0));
    for (int i = 0; i < d; ++i) {
      Rat y = Rat(1) - t[0][k + i];
      res.farkas[i] = (b[i] < 0) ? -y : y;
    }
  }
  return res;
}

}  // namespace adl
