#include "adl/laurent.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

#include "adl/errors.hpp"

namespace adl {

namespace {
int sadd(int a, int b) {
  if (a == INT_MAX || b == INT_MAX) return INT_MAX;
  return a + b;
}
}  // namespace

void Laurent::normalize() {
  if (known_ != INT_MAX) {
    int hi = lo_ + static_cast<int>(c_.size());
    if (hi > known_) c_.resize(std::max(0, known_ - lo_));
  }
  size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + lead);
    lo_ += static_cast<int>(lead);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (c_.empty()) lo_ = 0;
}

Laurent Laurent::zero(std::shared_ptr<const GaloisField> f) {
  Laurent x;
  x.f_ = std::move(f);
  return x;
}

Laurent Laurent::one(std::shared_ptr<const GaloisField> f) {
  return monomial(std::move(f), 1, 0);
}

Laurent Laurent::monomial(std::shared_ptr<const GaloisField> f, Elt c, int exp) {
  Laurent x;
  x.f_ = std::move(f);
  if (c != 0) {
    x.lo_ = exp;
    x.c_ = {c};
  }
  return x;
}

Laurent Laurent::from_coeffs(std::shared_ptr<const GaloisField> f, int lo,
                             std::vector<Elt> coeffs) {
  Laurent x;
  x.f_ = std::move(f);
  x.lo_ = lo;
  x.c_ = std::move(coeffs);
  x.normalize();
  return x;
}

Laurent::Elt Laurent::coeff(int exp) const {
  assert(exp < known_);
  if (exp < lo_ || exp >= lo_ + static_cast<int>(c_.size())) return 0;
  return c_[exp - lo_];
}

std::optional<int> Laurent::stored_val() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return lo_ + static_cast<int>(i);
  return std::nullopt;
}

int Laurent::certified_val() const {
  auto v = stored_val();
  if (!v) {
    if (exact()) return INT_MAX;
    throw Error(errc::precision_exhausted,
                "valuation not certified within known precision " + std::to_string(known_));
  }
  if (!exact() && *v > known_ - val_margin)
    throw Error(errc::precision_exhausted,
                "pivot valuation " + std::to_string(*v) + " within margin of precision bound " +
                    std::to_string(known_));
  return *v;
}

bool Laurent::vanishes_below(int bound) const {
  auto v = stored_val();
  if (v && *v < bound) return false;
  if (exact() || known_ >= bound) return true;
  throw Error(errc::precision_exhausted,
              "cannot certify vanishing below " + std::to_string(bound));
}

Laurent Laurent::truncated(int known) const {
  Laurent x = *this;
  x.known_ = std::min(known_, known);
  x.normalize();
  return x;
}

Laurent Laurent::shifted(int delta) const {
  Laurent x = *this;
  x.lo_ += delta;
  x.known_ = sadd(x.known_, delta);
  return x;
}

Laurent Laurent::frobenius_map() const {
  Laurent x = *this;
  for (auto& c : x.c_) c = f_->frobenius(c);
  return x;
}

Laurent Laurent::scaled(Elt s) const {
  if (s == 0) return zero(f_);  // exact: 0 * anything = 0
  Laurent x = *this;
  for (auto& c : x.c_) c = f_->mul(c, s);
  return x;
}

Laurent Laurent::operator+(const Laurent& o) const {
  assert(f_ == o.f_);
  if (is_exact_zero()) return o;
  if (o.is_exact_zero()) return *this;
  Laurent x;
  x.f_ = f_;
  x.known_ = std::min(known_, o.known_);
  int lo = std::min(lo_, o.lo_);
  int hi = std::max(lo_ + static_cast<int>(c_.size()), o.lo_ + static_cast<int>(o.c_.size()));
  hi = std::max(hi, lo);
  x.lo_ = lo;
  x.c_.assign(hi - lo, 0);
  for (size_t i = 0; i < c_.size(); ++i) x.c_[lo_ - lo + i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) {
    size_t k = o.lo_ - lo + i;
    x.c_[k] = f_->add(x.c_[k], o.c_[i]);
  }
  x.normalize();
  return x;
}

Laurent Laurent::operator-() const {
  Laurent x = *this;
  for (auto& c : x.c_) c = f_->neg(c);
  return x;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  assert(f_ == o.f_);
  if (is_exact_zero() || o.is_exact_zero()) return zero(f_);
  Laurent x;
  x.f_ = f_;
  x.known_ = std::min(sadd(known_, o.lo_), sadd(o.known_, lo_));
  if (c_.empty() || o.c_.empty()) {
    // no certified support; the product is zero up to the certified bound
    x.lo_ = 0;
    x.normalize();
    return x;
  }
  x.lo_ = lo_ + o.lo_;
  x.c_.assign(c_.size() + o.c_.size() - 1, 0);
  const GaloisField& F = *f_;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      x.c_[i + j] = F.add(x.c_[i + j], F.mul(c_[i], o.c_[j]));
    }
  }
  x.normalize();
  return x;
}

bool Laurent::operator==(const Laurent& o) const {
  assert(exact() && o.exact());
  return lo_ == o.lo_ && c_ == o.c_;
}

Laurent Laurent::inverse(int width) const {
  int v = certified_val();
  if (v == INT_MAX)
    throw Error(errc::singular_matrix, "inverse of the zero series");
  const GaloisField& F = *f_;
  // unit monomial: exact inverse
  if (exact() && c_.size() == 1) {
    return monomial(f_, F.inv(c_[0]), -lo_);
  }
  int w = width;
  if (!exact()) w = std::min(w, known_ - v);
  if (w < 1)
    throw Error(errc::precision_exhausted, "no certified width available for inverse");
  // power series inversion of u = x / t^v to w terms
  std::vector<Elt> u(w, 0);
  for (int i = 0; i < w; ++i) {
    int exp = v + i;
    if (exp >= lo_ && exp < lo_ + static_cast<int>(c_.size())) u[i] = c_[exp - lo_];
  }
  std::vector<Elt> r(w, 0);
  Elt u0i = F.inv(u[0]);
  r[0] = u0i;
  for (int k = 1; k < w; ++k) {
    Elt s = 0;
    for (int i = 1; i <= k; ++i) s = F.add(s, F.mul(u[i], r[k - i]));
    r[k] = F.neg(F.mul(u0i, s));
  }
  Laurent x;
  x.f_ = f_;
  x.lo_ = -v;
  x.c_ = std::move(r);
  x.known_ = -v + w;
  x.normalize();
  return x;
}

std::string Laurent::str() const {
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    int exp = lo_ + static_cast<int>(i);
    if (!s.empty()) s += " + ";
    std::string coef = std::to_string(c_[i]);
    if (exp == 0) {
      s += coef;
    } else {
      if (c_[i] != 1) s += coef + "*";
      s += (exp == 1) ? "t" : "t^" + std::to_string(exp);
    }
  }
  if (s.empty()) s = "0";
  if (!exact()) s += " (mod t^" + std::to_string(known_) + ")";
  return s;
}

Laurent parse_laurent(std::shared_ptr<const GaloisField> f, const std::string& text) {
  Laurent acc = Laurent::zero(f);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_int = [&]() -> long long {
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      neg = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error(errc::parse_error, "expected integer at position " + std::to_string(i) +
                                         " in '" + text + "'");
    long long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      v = v * 10 + (text[i++] - '0');
    return neg ? -v : v;
  };
  skip_ws();
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip_ws();
    if (!first || text[i] == '+' || text[i] == '-') {
      if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
        throw Error(errc::parse_error, "expected '+' or '-' in '" + text + "'");
      sign = (text[i] == '-') ? -1 : 1;
      ++i;
      skip_ws();
    }
    first = false;
    long long coef = 1;
    bool saw_coef = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coef = parse_int();
      saw_coef = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    long long exp = 0;
    if (i < text.size() && text[i] == 't') {
      ++i;
      exp = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        exp = parse_int();
      }
    } else if (!saw_coef) {
      throw Error(errc::parse_error, "expected term at position " + std::to_string(i) +
                                         " in '" + text + "'");
    }
    GaloisField::Elt c = f->from_int(sign * coef);
    acc = acc + Laurent::monomial(f, c, static_cast<int>(exp));
    skip_ws();
  }
  return acc;
}

}  // namespace adl
