#ifndef ADL_INTLIN_HPP
#define ADL_INTLIN_HPP

#include <optional>
#include <vector>

#include "adl/rational.hpp"

namespace adl {

/* Dense integer matrices, row-major.  All sizes here are tiny (rank <= 9,
   at most ~20 columns), so the algorithms are the plain textbook ones. */
using IMat = std::vector<Vec>;

IMat imat_identity(int n);
IMat imat_mul(const IMat& a, const IMat& b);
Vec imat_apply(const IMat& a, const Vec& v);
IMat imat_sub(const IMat& a, const IMat& b);  // same shape
IMat imat_transpose(const IMat& a);
bool imat_equal(const IMat& a, const IMat& b);

/* Smith normal form  U * A * V = D  with U, V unimodular and
   D diagonal, d_1 | d_2 | ... | d_k > 0, k = rank(A). */
struct SmithForm {
  IMat u, u_inv;  // rows x rows
  IMat v, v_inv;  // cols x cols
  std::vector<Int> diag;  // the k positive invariant factors
  int rank = 0;
};

SmithForm smith_form(const IMat& a);

/* One integer solution of A x = b, or nullopt when none exists. */
std::optional<Vec> solve_integer(const IMat& a, const Vec& b);

/* One rational solution of A x = b, or nullopt when none exists. */
std::optional<QVec> solve_rational(const IMat& a, const QVec& b);

/* Basis of the rational kernel of A (vectors x with A x = 0). */
std::vector<QVec> rational_kernel(const IMat& a);

/* The quotient of Z^n by the column span of A, in Smith coordinates.
   normal_form() is a canonical label: coordinate i is reduced mod diag[i]
   for i < rank and free beyond; two vectors are congruent iff their
   normal forms agree. */
class LatticeQuotient {
public:
  LatticeQuotient() = default;
  LatticeQuotient(int n, const IMat& columns);

  int ambient_rank() const { return n_; }
  int free_rank() const { return n_ - static_cast<int>(diag_.size()); }
  std::vector<Int> torsion_orders() const;  // invariant factors > 1
  bool has_torsion() const;

  Vec normal_form(const Vec& v) const;
  Vec reduce(Vec smith_coords) const;  // canonicalize coordinates in place
  Vec add(const Vec& nf_a, const Vec& nf_b) const;
  Vec neg(const Vec& nf) const;
  Vec scale(Int c, const Vec& nf) const;
  bool is_zero(const Vec& nf) const;
  bool is_torsion(const Vec& nf) const;  // finite order (free part zero)

  /* A representative in Z^n of the class with the given normal form. */
  Vec lift(const Vec& nf) const;

private:
  int n_ = 0;
  IMat u_, u_inv_;
  std::vector<Int> diag_;  // invariant factors > 1 kept as-is; 1s kept too
};

}  // namespace adl

#endif
