#ifndef ADL_RATIONAL_HPP
#define ADL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace adl {

/* Every inequality in this library is exact; all "real" vector space
   computations run over arbitrary-precision rationals. */
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using Int = long long;
using Vec = std::vector<Int>;    // lattice vector
using QVec = std::vector<Rat>;   // rational vector

inline QVec to_qvec(const Vec& v) {
  QVec q(v.size());
  for (size_t i = 0; i < v.size(); ++i) q[i] = v[i];
  return q;
}

inline QVec qadd(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVec qsub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline QVec qscale(const Rat& c, const QVec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Rat qdot(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat qdot(const Vec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool qis_zero(const QVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

inline std::string rat_str(const Rat& r) {
  return r.str();
}

}  // namespace adl

#endif
