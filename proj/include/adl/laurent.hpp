#ifndef ADL_LAURENT_HPP
#define ADL_LAURENT_HPP

#include <climits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adl/gf.hpp"

namespace adl {

/* Truncated Laurent series over F_{q^s}.

   A series stores its coefficients on the window [lo, lo + size) and a
   certification bound `known`: every coefficient at an exponent < known is
   exact (coefficients outside the stored window but below `known` are
   zero).  known == INT_MAX means the series is exact — the inputs of the
   oracle (matrix literals, monomials, units of K) are polynomials in t and
   t^{-1}, and sums/products of exact series stay exact.  Truncation enters
   only through inverse(), which caps the certified width.

   Decisions about pivot valuations follow the margin policy: a valuation
   read off a truncated series must sit at least `val_margin` digits below
   the certification bound, otherwise PRECISION_EXHAUSTED is raised. */
class Laurent {
public:
  using Elt = GaloisField::Elt;
  static constexpr int val_margin = 2;

  Laurent() = default;
  static Laurent zero(std::shared_ptr<const GaloisField> f);
  static Laurent one(std::shared_ptr<const GaloisField> f);
  static Laurent monomial(std::shared_ptr<const GaloisField> f, Elt c, int exp);
  static Laurent from_coeffs(std::shared_ptr<const GaloisField> f, int lo,
                             std::vector<Elt> coeffs);  // exact

  const std::shared_ptr<const GaloisField>& field() const { return f_; }
  bool exact() const { return known_ == INT_MAX; }
  int known_upto() const { return known_; }
  bool is_exact_zero() const { return exact() && c_.empty(); }

  /* coefficient at an exponent (must be certified: exp < known) */
  Elt coeff(int exp) const;

  /* smallest stored nonzero exponent; nullopt when the stored window is
     all zero (exact -> the series is zero) */
  std::optional<int> stored_val() const;

  /* exact valuation under the margin policy; INT_MAX for the exact zero
     series; PRECISION_EXHAUSTED when the window cannot certify it */
  int certified_val() const;

  /* certified "no nonzero coefficient below `bound`"; PRECISION_EXHAUSTED
     when the window is too short to decide */
  bool vanishes_below(int bound) const;

  Laurent truncated(int known) const;  // forget everything at and beyond
  Laurent shifted(int delta) const;    // multiply by t^delta
  Laurent frobenius_map() const;       // coefficient q-power map
  Laurent scaled(Elt c) const;

  /* multiplicative inverse, certified to `width` coefficients past the
     leading term (exact for unit monomials) */
  Laurent inverse(int width) const;

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  bool operator==(const Laurent& o) const;  // exact series only

  std::string str() const;

private:
  void normalize();

  std::shared_ptr<const GaloisField> f_;
  int lo_ = 0;
  std::vector<Elt> c_;
  int known_ = INT_MAX;
};

/* "t^-1 + 2*t^3"-style literals: integer coefficients (reduced into the
   prime field), +/- separated terms, each `c`, `t`, `t^e`, or `c*t^e`. */
Laurent parse_laurent(std::shared_ptr<const GaloisField> f, const std::string& text);

}  // namespace adl

#endif
