#ifndef ADL_LP_HPP
#define ADL_LP_HPP

#include <vector>

#include "adl/rational.hpp"

namespace adl {

/* Exact feasibility of { A x = b, x >= 0 } over the rationals.
   Feasible: `point` is one solution.  Infeasible: `farkas` is a vector y
   with  y^T A <= 0  componentwise and  y^T b > 0. */
struct LpResult {
  bool feasible = false;
  QVec point;
  QVec farkas;
};

LpResult lp_equality_feasible(const std::vector<QVec>& a_rows, const QVec& b);

}  // namespace adl

#endif
