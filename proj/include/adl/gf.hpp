#ifndef ADL_GF_HPP
#define ADL_GF_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace adl {

/* Table-backed arithmetic for F_{q^s}, q = p^k a prime power.  Elements are
   indices in [0, q^s): the base-p digits of an element are its coefficients
   over the fixed irreducible polynomial (the lexicographically first monic
   irreducible of the right degree, so fields are reproducible).

   frobenius() is x -> x^q, the arithmetic automorphism with fixed field
   F_q.  Total size is capped (desk scale); larger fields raise
   FIELD_TOO_LARGE. */
class GaloisField {
public:
  using Elt = uint16_t;
  static constexpr long long max_size = 1024;

  GaloisField(long long q, int s);

  long long q() const { return q_; }
  int s() const { return s_; }
  int p() const { return p_; }
  long long size() const { return size_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt add(Elt a, Elt b) const { return add_[idx(a, b)]; }
  Elt sub(Elt a, Elt b) const { return add_[idx(a, neg_[b])]; }
  Elt mul(Elt a, Elt b) const { return mul_[idx(a, b)]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt inv(Elt a) const;  // throws on zero
  Elt frobenius(Elt a) const { return frob_[a]; }

  /* integer literal, reduced into the prime subfield */
  Elt from_int(long long v) const;

  bool fixed_by_frobenius(Elt a) const { return frob_[a] == a; }

  const std::vector<int>& modulus() const { return irreducible_; }

private:
  size_t idx(Elt a, Elt b) const { return static_cast<size_t>(a) * size_ + b; }

  long long q_;
  int s_;
  int p_;
  int degree_;  // over F_p
  long long size_;
  std::vector<int> irreducible_;  // monic, degree_ + 1 coefficients
  std::vector<Elt> add_, mul_, neg_, inv_, frob_;
};

/* Shared, memoized field instances. */
std::shared_ptr<const GaloisField> get_field(long long q, int s);

}  // namespace adl

#endif
