#include "adl/gf.hpp"

#include <map>
#include <mutex>

#include "adl/errors.hpp"

namespace adl {

namespace {

/* dense polynomials over F_p, least significant coefficient first */
using Poly = std::vector<int>;

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_trim(r);
}

/* remainder of a modulo the monic polynomial m */
Poly poly_mod(Poly a, const Poly& m, int p) {
  int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int da = static_cast<int>(a.size()) - 1;
    int c = a.back();
    for (int i = 0; i <= dm; ++i) {
      int& t = a[da - dm + i];
      t = ((t - c * m[i]) % p + p) % p;
    }
    a = poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

bool divides(const Poly& d, const Poly& a, int p) { return poly_mod(a, d, p).empty(); }

/* brute-force irreducibility at desk scale: no monic factor of degree
   <= deg/2 */
bool is_irreducible(const Poly& f, int p) {
  int d = static_cast<int>(f.size()) - 1;
  for (int dd = 1; dd <= d / 2; ++dd) {
    long long count = 1;
    for (int i = 0; i < dd; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      Poly g(dd + 1, 0);
      g[dd] = 1;
      long long c = code;
      for (int i = 0; i < dd; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

Poly first_irreducible(int p, int d) {
  if (d == 1) return {0, 1};  // x
  long long count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    Poly f(d + 1, 0);
    f[d] = 1;
    long long c = code;
    for (int i = 0; i < d; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw Error(errc::field_too_large, "no irreducible polynomial found");
}

int smallest_prime_factor(long long q) {
  for (long long d = 2; d * d <= q; ++d)
    if (q % d == 0) return static_cast<int>(d);
  return static_cast<int>(q);
}

}  // namespace

GaloisField::GaloisField(long long q, int s) : q_(q), s_(s) {
  if (q < 2 || s < 1) throw Error(errc::field_too_large, "need q >= 2, s >= 1");
  p_ = smallest_prime_factor(q);
  int k = 0;
  long long t = q;
  while (t > 1) {
    if (t % p_ != 0) throw Error(errc::field_too_large, "q must be a prime power");
    t /= p_;
    ++k;
  }
  degree_ = k * s;
  size_ = 1;
  for (int i = 0; i < degree_; ++i) {
    size_ *= p_;
    if (size_ > max_size)
      throw Error(errc::field_too_large,
                  "field size q^s exceeds the supported table size " +
                      std::to_string(max_size));
  }
  irreducible_ = first_irreducible(p_, degree_);

  auto decode = [&](long long code) {
    Poly a;
    while (code > 0) {
      a.push_back(static_cast<int>(code % p_));
      code /= p_;
    }
    return a;
  };
  auto encode = [&](const Poly& a) {
    long long code = 0;
    for (size_t i = a.size(); i-- > 0;) code = code * p_ + a[i];
    return static_cast<Elt>(code);
  };

  size_t n = static_cast<size_t>(size_);
  add_.resize(n * n);
  mul_.resize(n * n);
  neg_.resize(n);
  inv_.assign(n, 0);
  frob_.resize(n);
  for (long long a = 0; a < size_; ++a) {
    Poly pa = decode(a);
    Poly na(pa.size());
    for (size_t i = 0; i < pa.size(); ++i) na[i] = (p_ - pa[i]) % p_;
    neg_[a] = encode(poly_trim(na));
    for (long long b = 0; b < size_; ++b) {
      Poly pb = decode(b);
      Poly sum(std::max(pa.size(), pb.size()), 0);
      for (size_t i = 0; i < sum.size(); ++i) {
        int x = (i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0);
        sum[i] = x % p_;
      }
      add_[idx(static_cast<Elt>(a), static_cast<Elt>(b))] = encode(poly_trim(sum));
      mul_[idx(static_cast<Elt>(a), static_cast<Elt>(b))] =
          encode(poly_mod(poly_mul(pa, pb, p_), irreducible_, p_));
    }
  }
  for (long long a = 1; a < size_; ++a) {
    if (inv_[a]) continue;
    for (long long b = 1; b < size_; ++b)
      if (mul_[idx(static_cast<Elt>(a), static_cast<Elt>(b))] == 1) {
        inv_[a] = static_cast<Elt>(b);
        inv_[b] = static_cast<Elt>(a);
        break;
      }
  }
  // x -> x^q by square-and-multiply over the tables
  auto pow_q = [&](Elt a) {
    Elt result = 1;
    Elt base = a;
    long long e = q_;
    while (e > 0) {
      if (e & 1) result = mul_[idx(result, base)];
      base = mul_[idx(base, base)];
      e >>= 1;
    }
    return result;
  };
  for (long long a = 0; a < size_; ++a) frob_[a] = pow_q(static_cast<Elt>(a));
}

GaloisField::Elt GaloisField::inv(Elt a) const {
  if (a == 0) throw Error(errc::singular_matrix, "inverse of zero field element");
  return inv_[a];
}

GaloisField::Elt GaloisField::from_int(long long v) const {
  long long r = ((v % p_) + p_) % p_;
  return static_cast<Elt>(r);
}

std::shared_ptr<const GaloisField> get_field(long long q, int s) {
  static std::mutex m;
  static std::map<std::pair<long long, int>, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(q, s);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const GaloisField>(q, s);
  cache[key] = f;
  return f;
}

}  // namespace adl
