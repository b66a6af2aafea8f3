#include "adl/dvr_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <exception>
#include <numeric>
#include <set>

#include "adl/errors.hpp"

namespace adl {

LaurentMatrix LaurentMatrix::zero(std::shared_ptr<const GaloisField> f, int n) {
  LaurentMatrix m;
  m.f = f;
  m.n = n;
  m.e.assign(static_cast<size_t>(n) * n, Laurent::zero(f));
  return m;
}

LaurentMatrix LaurentMatrix::identity(std::shared_ptr<const GaloisField> f, int n) {
  LaurentMatrix m = zero(f, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Laurent::one(f);
  return m;
}

LaurentMatrix LaurentMatrix::coweight(std::shared_ptr<const GaloisField> f, const Vec& mu) {
  int n = static_cast<int>(mu.size());
  LaurentMatrix m = zero(f, n);
  for (int i = 0; i < n; ++i)
    m.at(i, i) = Laurent::monomial(f, 1, static_cast<int>(mu[i]));
  return m;
}

LaurentMatrix LaurentMatrix::mul(const LaurentMatrix& o) const {
  assert(n == o.n && f == o.f);
  LaurentMatrix r = zero(f, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Laurent& a = at(i, k);
      if (a.is_exact_zero()) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) = r.at(i, j) + a * o.at(k, j);
    }
  return r;
}

LaurentMatrix LaurentMatrix::frobenius_map() const {
  LaurentMatrix r = *this;
  for (auto& x : r.e) x = x.frobenius_map();
  return r;
}

bool LaurentMatrix::is_block_diagonal(const std::vector<int>& blocks) const {
  std::vector<int> block_of(n, -1);
  int pos = 0, bi = 0;
  for (int sz : blocks) {
    for (int i = 0; i < sz; ++i) block_of[pos++] = bi;
    ++bi;
  }
  assert(pos == n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (block_of[i] != block_of[j] && !at(i, j).is_exact_zero()) return false;
  return true;
}

std::string LaurentMatrix::key() const {
  std::string k;
  for (const auto& x : e) {
    assert(x.exact());
    k += x.str() + ";";
  }
  return k;
}

std::string LaurentMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < n; ++i) {
    s += (i ? ", [" : "[");
    for (int j = 0; j < n; ++j) s += (j ? ", " : "") + at(i, j).str();
    s += "]";
  }
  return s + "]";
}

BorelChoice BorelChoice::upper(int n) {
  BorelChoice b;
  b.order.resize(n);
  std::iota(b.order.begin(), b.order.end(), 0);
  return b;
}

BorelChoice BorelChoice::lower(int n) {
  BorelChoice b = upper(n);
  std::reverse(b.order.begin(), b.order.end());
  return b;
}

std::vector<BorelChoice> all_borels(int n) {
  if (n > 4)
    throw Error(errc::budget_exceeded, "all-Borel sweeps are capped at n = 4");
  std::vector<BorelChoice> out;
  BorelChoice b = BorelChoice::upper(n);
  std::sort(b.order.begin(), b.order.end());
  do {
    out.push_back(b);
  } while (std::next_permutation(b.order.begin(), b.order.end()));
  return out;
}

std::optional<int> adjacent_position(const BorelChoice& b1, const BorelChoice& b2) {
  int n = static_cast<int>(b1.order.size());
  for (int k = 0; k + 1 < n; ++k) {
    bool match = true;
    for (int a = 0; a < n; ++a) {
      int expect = (a == k) ? b1.order[k + 1] : (a == k + 1) ? b1.order[k] : b1.order[a];
      if (b2.order[a] != expect) {
        match = false;
        break;
      }
    }
    if (match) return k;
  }
  return std::nullopt;
}

std::vector<BorelChoice> gallery_to_opposite(const BorelChoice& b) {
  int n = static_cast<int>(b.order.size());
  std::vector<int> target(b.order.rbegin(), b.order.rend());
  std::vector<int> rank(n);
  for (int a = 0; a < n; ++a) rank[target[a]] = a;
  std::vector<BorelChoice> gallery{b};
  BorelChoice cur = b;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int k = 0; k + 1 < n; ++k)
      if (rank[cur.order[k]] > rank[cur.order[k + 1]]) {
        std::swap(cur.order[k], cur.order[k + 1]);
        gallery.push_back(cur);
        moved = true;
        break;
      }
  }
  return gallery;
}

namespace {

/* index and valuation of a minimal-valuation entry, certified under the
   margin policy; nullopt when every entry is exactly zero */
std::optional<std::pair<int, int>> min_val_pivot(const std::vector<const Laurent*>& entries) {
  int best = -1;
  int best_val = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    const Laurent& x = *entries[i];
    auto v = x.stored_val();
    if (!v) continue;
    if (!x.exact() && *v > x.known_upto() - Laurent::val_margin)
      throw Error(errc::precision_exhausted, "pivot valuation within precision margin");
    if (best < 0 || *v < best_val) {
      best = static_cast<int>(i);
      best_val = *v;
    }
  }
  if (best < 0) {
    for (const Laurent* x : entries)
      if (!x->exact())
        throw Error(errc::precision_exhausted, "cannot certify a zero pivot block");
    return std::nullopt;
  }
  for (const Laurent* x : entries)
    if (!x->stored_val() && !x->exact() && x->known_upto() < best_val + Laurent::val_margin)
      throw Error(errc::precision_exhausted, "pivot valuation within margin of unknown entry");
  return std::make_pair(best, best_val);
}

/* upper-triangularize by integral row operations; returns diagonal
   valuations */
Vec triangularize(LaurentMatrix& h, int prec) {
  int n = h.n;
  Vec vals(n, 0);
  for (int col = 0; col < n; ++col) {
    std::vector<const Laurent*> column;
    for (int i = col; i < n; ++i) column.push_back(&h.at(i, col));
    auto pivot = min_val_pivot(column);
    if (!pivot) throw Error(errc::singular_matrix, "matrix is singular at working precision");
    int prow = col + pivot->first;
    if (prow != col)
      for (int j = 0; j < n; ++j) std::swap(h.at(col, j), h.at(prow, j));
    Laurent pinv = h.at(col, col).inverse(prec);
    for (int i = col + 1; i < n; ++i) {
      if (h.at(i, col).is_exact_zero()) continue;
      Laurent q = h.at(i, col) * pinv;
      for (int j = col; j < n; ++j) h.at(i, j) = h.at(i, j) - q * h.at(col, j);
      assert(!h.at(i, col).stored_val());
      h.at(i, col) = Laurent::zero(h.f);
    }
    vals[col] = pivot->second;
  }
  return vals;
}

struct SmithDvr {
  Vec exponents;  // increasing
  LaurentMatrix u_inv;
  int rank = 0;
};

/* Smith form over the valuation ring for a rows x cols block held in a
   square working matrix; tracks U^{-1} so that the column span of the
   input equals U^{-1} . (span of the diagonal). */
SmithDvr smith_dvr(std::vector<Laurent> a, int rows, int cols,
                   std::shared_ptr<const GaloisField> f, int prec, bool track) {
  auto at = [&](int i, int j) -> Laurent& { return a[static_cast<size_t>(i) * cols + j]; };
  SmithDvr s;
  if (track) s.u_inv = LaurentMatrix::identity(f, rows);
  int limit = std::min(rows, cols);
  for (int t = 0; t < limit; ++t) {
    std::vector<const Laurent*> block;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) block.push_back(&at(i, j));
    auto pivot = min_val_pivot(block);
    if (!pivot) break;
    int pi = t + pivot->first / (cols - t);
    int pj = t + pivot->first % (cols - t);
    if (pi != t) {
      for (int j = 0; j < cols; ++j) std::swap(at(t, j), at(pi, j));
      if (track)
        for (int r = 0; r < rows; ++r) std::swap(s.u_inv.at(r, t), s.u_inv.at(r, pi));
    }
    if (pj != t)
      for (int i = 0; i < rows; ++i) std::swap(at(i, t), at(i, pj));
    Laurent pinv = at(t, t).inverse(prec);
    for (int i = t + 1; i < rows; ++i) {
      if (at(i, t).is_exact_zero()) continue;
      Laurent q = at(i, t) * pinv;
      for (int j = t; j < cols; ++j) at(i, j) = at(i, j) - q * at(t, j);
      assert(!at(i, t).stored_val());
      at(i, t) = Laurent::zero(f);
      if (track)
        for (int r = 0; r < rows; ++r)
          s.u_inv.at(r, t) = s.u_inv.at(r, t) + q * s.u_inv.at(r, i);
    }
    for (int j = t + 1; j < cols; ++j) {
      if (at(t, j).is_exact_zero()) continue;
      Laurent q = at(t, j) * pinv;
      for (int i = t; i < rows; ++i) at(i, j) = at(i, j) - q * at(i, t);
      assert(!at(t, j).stored_val());
      at(t, j) = Laurent::zero(f);
    }
    s.exponents.push_back(pivot->second);
    ++s.rank;
  }
  return s;
}

std::vector<Laurent> relabeled(const LaurentMatrix& g, const BorelChoice& b) {
  int n = g.n;
  std::vector<Laurent> h(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h[static_cast<size_t>(i) * n + j] = g.at(b.order[i], b.order[j]);
  return h;
}

}  // namespace

Vec iwasawa_retraction(const LaurentMatrix& g, const BorelChoice& borel, int prec) {
  int n = g.n;
  LaurentMatrix h;
  h.f = g.f;
  h.n = n;
  h.e = relabeled(g, borel);
  Vec vals = triangularize(h, prec);
  Vec mu(n, 0);
  for (int a = 0; a < n; ++a) mu[borel.order[a]] = vals[a];
  return mu;
}

Vec cartan_invariants(const LaurentMatrix& g, int prec) {
  SmithDvr s = smith_dvr(g.e, g.n, g.n, g.f, prec, false);
  if (s.rank != g.n)
    throw Error(errc::singular_matrix, "matrix is singular at working precision");
  Vec out = s.exponents;
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool in_K(const LaurentMatrix& g, int prec) {
  Vec inv = cartan_invariants(g, prec);
  for (Int e : inv)
    if (e != 0) return false;
  return true;
}

long long adjacency_jump(const LaurentMatrix& g, const BorelChoice& b1,
                         const BorelChoice& b2, int prec) {
  auto kpos = adjacent_position(b1, b2);
  if (!kpos)
    throw Error(errc::not_adjacent, "Borel orderings do not differ by one adjacent swap");
  int k = *kpos;
  int n = g.n;
  LaurentMatrix h;
  h.f = g.f;
  h.n = n;
  h.e = relabeled(g, b1);
  Vec vals = triangularize(h, prec);

  // alpha-component of the unipotent part: x = T_{k,k+1} / t^{v_{k+1}}
  const Laurent& entry = h.at(k, k + 1);
  long long j = 0;
  auto v = entry.stored_val();
  if (v && *v < vals[k + 1]) {
    if (!entry.exact() && *v > entry.known_upto() - Laurent::val_margin)
      throw Error(errc::precision_exhausted, "alpha-component valuation near precision bound");
    j = vals[k + 1] - *v;
  } else {
    if (!entry.vanishes_below(static_cast<int>(vals[k + 1]))) j = 0;  // throws if uncertain
  }

  Vec r1(n, 0), r2 = iwasawa_retraction(g, b2, prec);
  for (int a = 0; a < n; ++a) r1[b1.order[a]] = vals[a];
  // postcondition: r_{B2} - r_{B1} = j alpha^vee, alpha = e_{o_k} - e_{o_{k+1}}
  Vec expect = r1;
  expect[b1.order[k]] += j;
  expect[b1.order[k + 1]] -= j;
  if (expect != r2)
    throw Error(errc::precision_exhausted,
                "adjacency postcondition failed at working precision");
  return j;
}

bool gl_leq_B(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    s += b[i] - a[i];
    if (i + 1 < a.size() && s < 0) return false;
  }
  return s == 0;
}

Vec block_sums(const Vec& v, const std::vector<int>& blocks) {
  Vec out;
  int pos = 0;
  for (int sz : blocks) {
    Int s = 0;
    for (int i = 0; i < sz; ++i) s += v[pos++];
    out.push_back(s);
  }
  assert(pos == static_cast<int>(v.size()));
  return out;
}

bool gl_leq_P(const Vec& block_a, const Vec& block_b) { return gl_leq_B(block_a, block_b); }

namespace {

LaurentMatrix inverse_in_K(const LaurentMatrix& q, int prec) {
  int n = q.n;
  LaurentMatrix a = q;
  LaurentMatrix b = LaurentMatrix::identity(q.f, n);
  for (int col = 0; col < n; ++col) {
    int prow = -1;
    for (int i = col; i < n; ++i) {
      auto v = a.at(i, col).stored_val();
      if (v && *v == 0) {
        prow = i;
        break;
      }
    }
    if (prow < 0) throw Error(errc::singular_matrix, "matrix is not invertible over o");
    if (prow != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(col, j), a.at(prow, j));
        std::swap(b.at(col, j), b.at(prow, j));
      }
    Laurent pinv = a.at(col, col).inverse(prec);
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) * pinv;
      b.at(col, j) = b.at(col, j) * pinv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a.at(i, col).is_exact_zero()) continue;
      Laurent f = a.at(i, col);
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = a.at(i, j) - f * a.at(col, j);
        b.at(i, j) = b.at(i, j) - f * b.at(col, j);
      }
    }
  }
  return b;
}

}  // namespace

KmReport km_membership(const LaurentMatrix& g, const std::vector<int>& blocks, int prec) {
  KmReport rep;
  int n = g.n;

  // route 1: all retractions agree in X_M
  auto borels = all_borels(n);
  Vec ref;
  rep.by_retractions = true;
  for (const auto& b : borels) {
    Vec r = block_sums(iwasawa_retraction(g, b, prec), blocks);
    if (ref.empty())
      ref = r;
    else if (r != ref)
      rep.by_retractions = false;
  }

  // route 2: lattice saturation per column block
  LaurentMatrix q = LaurentMatrix::zero(g.f, n);
  int col0 = 0;
  for (int sz : blocks) {
    std::vector<Laurent> cb(static_cast<size_t>(n) * sz);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < sz; ++j) cb[static_cast<size_t>(i) * sz + j] = g.at(i, col0 + j);
    SmithDvr s = smith_dvr(std::move(cb), n, sz, g.f, prec, true);
    if (s.rank != sz) throw Error(errc::singular_matrix, "column block is singular");
    for (int j = 0; j < sz; ++j)
      for (int i = 0; i < n; ++i) q.at(i, col0 + j) = s.u_inv.at(i, j);
    col0 += sz;
  }
  rep.by_witness = in_K(q, prec);
  if (rep.by_witness) {
    LaurentMatrix m = inverse_in_K(q, prec).mul(g);
    // off-block entries cancel exactly; their stored windows must be empty
    std::vector<int> block_of(n, -1);
    int pos = 0, bi = 0;
    for (int sz : blocks) {
      for (int i = 0; i < sz; ++i) block_of[pos++] = bi;
      ++bi;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (block_of[i] != block_of[j]) {
          assert(!m.at(i, j).stored_val());
          m.at(i, j) = Laurent::zero(g.f);
        }
    rep.witness_k = q;
    rep.witness_m = m;
  }
  return rep;
}

HnWitnessReport hn_witness_check(const LaurentMatrix& g, const std::vector<int>& blocks,
                                 const Vec& mu, int prec) {
  HnWitnessReport rep;
  int n = g.n;
  rep.cartan_matches_mu = (cartan_invariants(g, prec) == mu);

  Vec r_upper = iwasawa_retraction(g, BorelChoice::upper(n), prec);
  rep.hypothesis_met = (block_sums(r_upper, blocks) == block_sums(mu, blocks));

  rep.all_borel_bounded = true;
  rep.sandwich_ok = true;
  for (const auto& b : all_borels(n)) {
    Vec r = iwasawa_retraction(g, b, prec);
    if (!gl_leq_P(block_sums(r, blocks), block_sums(mu, blocks))) rep.all_borel_bounded = false;
    if (!(gl_leq_B(r_upper, r) && gl_leq_B(r, mu))) rep.sandwich_ok = false;
  }

  if (rep.hypothesis_met) {
    KmReport km = km_membership(g, blocks, prec);
    rep.factored = km.by_witness;
    if (km.witness_m) {
      int pos = 0;
      for (int sz : blocks) {
        LaurentMatrix blk = LaurentMatrix::zero(g.f, sz);
        for (int i = 0; i < sz; ++i)
          for (int j = 0; j < sz; ++j) blk.at(i, j) = km.witness_m->at(pos + i, pos + j);
        Vec inv = cartan_invariants(blk, prec);
        rep.m_invariants.insert(rep.m_invariants.end(), inv.begin(), inv.end());
        pos += sz;
      }
      rep.m_invariants_match_mu = (rep.m_invariants == mu);
    }
  }
  return rep;
}

LaurentMatrix hermite_reduce(const LaurentMatrix& x, int prec) {
  int n = x.n;
  LaurentMatrix h = x;

  // upper triangular via right column operations, bottom row first
  for (int r = n - 1; r >= 0; --r) {
    std::vector<const Laurent*> row;
    for (int c = 0; c <= r; ++c) row.push_back(&h.at(r, c));
    auto pivot = min_val_pivot(row);
    if (!pivot) throw Error(errc::singular_matrix, "matrix is singular at working precision");
    int pc = pivot->first;
    if (pc != r)
      for (int i = 0; i < n; ++i) std::swap(h.at(i, pc), h.at(i, r));
    Laurent pinv = h.at(r, r).inverse(prec);
    for (int c = 0; c < r; ++c) {
      if (h.at(r, c).is_exact_zero()) continue;
      Laurent q = h.at(r, c) * pinv;
      for (int i = 0; i <= r; ++i) h.at(i, c) = h.at(i, c) - q * h.at(i, r);
      assert(!h.at(r, c).stored_val());
      h.at(r, c) = Laurent::zero(h.f);
    }
  }

  // monic monomial pivots
  Vec diag(n, 0);
  for (int j = 0; j < n; ++j) {
    int a = h.at(j, j).certified_val();
    diag[j] = a;
    Laurent unit = h.at(j, j).shifted(-a);
    Laurent uinv = unit.inverse(prec);
    for (int i = 0; i <= j; ++i) h.at(i, j) = h.at(i, j) * uinv;
    h.at(j, j) = Laurent::monomial(h.f, 1, a);
  }

  // reduce above-diagonal entries mod t^{a_i}
  for (int j = 1; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      const Laurent& entry = h.at(i, j);
      std::vector<Laurent::Elt> tail_coeffs;
      int ai = static_cast<int>(diag[i]);
      int hi = entry.exact() ? INT_MAX : entry.known_upto();
      if (!entry.exact() && hi < ai + 1)
        throw Error(errc::precision_exhausted, "cannot reduce entry modulo pivot");
      // q = t^{-a_i} . (part of the entry supported at exponents >= a_i)
      Laurent q = Laurent::zero(h.f);
      auto sv = entry.stored_val();
      if (sv) {
        int top = entry.exact() ? INT_MAX : entry.known_upto();
        std::vector<Laurent::Elt> qc;
        int qlo = 0;
        bool any = false;
        for (int exp = ai; exp < top; ++exp) {
          if (exp - ai > 4 * prec) break;  // exact entries have finite support
          Laurent::Elt c = entry.coeff(exp);
          if (c != 0 && !any) {
            qlo = exp - ai;
            any = true;
          }
          if (any) qc.push_back(c);
        }
        while (!qc.empty() && qc.back() == 0) qc.pop_back();
        if (any && !qc.empty()) q = Laurent::from_coeffs(h.f, qlo, qc);
      }
      if (!q.is_exact_zero())
        for (int r = 0; r <= i; ++r) h.at(r, j) = h.at(r, j) - q * h.at(r, i);
    }

  // restore exactness from the certified windows
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Laurent& entry = h.at(i, j);
      int ai = static_cast<int>(diag[i]);
      if (!entry.exact() && entry.known_upto() < ai)
        throw Error(errc::precision_exhausted, "reduced entry window below pivot exponent");
      std::vector<Laurent::Elt> window;
      auto sv = entry.stored_val();
      int lo = sv ? *sv : 0;
      for (int exp = lo; exp < ai; ++exp) window.push_back(entry.coeff(exp));
      h.at(i, j) = Laurent::from_coeffs(h.f, lo, window);
    }
  return h;
}

namespace {

struct OffDiagSlot {
  int row, col, exp;
};

}  // namespace

AdlvResult adlv_enumerate(int n, const Vec& mu, const LaurentMatrix& b, int window, int prec,
                          size_t budget, Exec exec) {
  AdlvResult res;
  res.q = b.f->q();
  res.s = b.f->s();
  res.window = window;
  res.prec = prec;

  Vec mu_dom = mu;
  std::sort(mu_dom.rbegin(), mu_dom.rend());
  Int mu_low = mu_dom.back();

  long long fsize = b.f->size();
  int w = window;
  int diag_range = 2 * w + 1;
  long long cells = 1;
  for (int i = 0; i < n; ++i) cells *= diag_range;

  // budget: total candidate forms over all diagonal cells
  {
    long double total = 0;
    for (long long cell = 0; cell < cells; ++cell) {
      long long c = cell;
      long double forms = 1;
      std::vector<int> a(n);
      for (int i = 0; i < n; ++i) {
        a[i] = static_cast<int>(c % diag_range) - w;
        c /= diag_range;
      }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          int width = a[i] + w;
          if (width > 0)
            for (int t = 0; t < width; ++t) forms *= fsize;
        }
      total += forms;
    }
    if (total > static_cast<long double>(budget))
      throw Error(errc::budget_exceeded,
                  "window scan needs about " + std::to_string(static_cast<double>(total)) +
                      " lattice classes, budget " + std::to_string(budget));
  }

  LaurentMatrix sigma_b_base = b;  // b is used untwisted
  std::vector<std::vector<std::pair<std::string, LaurentMatrix>>> found(cells);
  std::vector<size_t> scanned(cells, 0);
  std::exception_ptr first_error;
  std::atomic<bool> have_error{false};

  parallel_for(0, cells, exec, [&](int64_t cell) {
    if (have_error.load()) return;
    try {
      std::vector<int> a(n);
      long long c = cell;
      for (int i = 0; i < n; ++i) {
        a[i] = static_cast<int>(c % diag_range) - w;
        c /= diag_range;
      }
      std::vector<OffDiagSlot> slots;
      for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
          for (int exp = -w; exp < a[i]; ++exp) slots.push_back({i, j, exp});

      std::vector<GaloisField::Elt> digits(slots.size(), 0);
      LaurentMatrix x = LaurentMatrix::zero(b.f, n);
      for (;;) {
        ++scanned[cell];
        // build the candidate
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) x.at(i, j) = Laurent::zero(b.f);
        for (int i = 0; i < n; ++i) x.at(i, i) = Laurent::monomial(b.f, 1, a[i]);
        for (size_t s = 0; s < slots.size(); ++s)
          if (digits[s] != 0)
            x.at(slots[s].row, slots[s].col) =
                x.at(slots[s].row, slots[s].col) +
                Laurent::monomial(b.f, digits[s], slots[s].exp);

        // y = x^{-1} (b sigma(x)) by exact back substitution
        LaurentMatrix z = b.mul(x.frobenius_map());
        LaurentMatrix y = LaurentMatrix::zero(b.f, n);
        bool ok = true;
        for (int i = n - 1; i >= 0 && ok; --i) {
          Laurent tinv = Laurent::monomial(b.f, 1, -a[i]);
          for (int j = 0; j < n; ++j) {
            Laurent acc = z.at(i, j);
            for (int k = i + 1; k < n; ++k) acc = acc - x.at(i, k) * y.at(k, j);
            y.at(i, j) = acc * tinv;
            auto v = y.at(i, j).stored_val();
            if (v && *v < mu_low) {
              ok = false;
              break;
            }
          }
        }
        if (ok && cartan_invariants(y, prec) == mu_dom) {
          // window filter on the lattice class itself
          Vec xi = cartan_invariants(x, prec);
          bool inside = true;
          for (Int ev : xi)
            if (ev < -w || ev > w) inside = false;
          if (inside) found[cell].emplace_back(x.key(), x);
        }
        // odometer
        size_t pos = 0;
        while (pos < digits.size()) {
          if (digits[pos] + 1 < fsize) {
            ++digits[pos];
            break;
          }
          digits[pos] = 0;
          ++pos;
        }
        if (pos == digits.size()) break;
      }
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (!have_error.exchange(true)) first_error = std::current_exception();
      }
    }
  });
  if (first_error) std::rethrow_exception(first_error);

  std::vector<std::pair<std::string, LaurentMatrix>> all;
  for (auto& cell : found) all.insert(all.end(), cell.begin(), cell.end());
  std::sort(all.begin(), all.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  for (auto& [k, m] : all) res.classes.push_back(std::move(m));
  for (size_t s : scanned) res.candidates += s;
  return res;
}

HodgeNewtonReport hodge_newton_verify(const Vec& mu, const LaurentMatrix& b,
                                      const std::vector<int>& blocks, int window, int prec,
                                      size_t budget, Exec exec) {
  HodgeNewtonReport rep;
  int n = b.n;
  assert(b.is_block_diagonal(blocks));

  // kappa of b per block: valuation of the block determinant
  Vec kappa_blocks;
  std::vector<LaurentMatrix> bblocks;
  {
    int pos = 0;
    for (int sz : blocks) {
      LaurentMatrix blk = LaurentMatrix::zero(b.f, sz);
      for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) blk.at(i, j) = b.at(pos + i, pos + j);
      Vec inv = cartan_invariants(blk, prec);
      Int d = 0;
      for (Int e : inv) d += e;
      kappa_blocks.push_back(d);
      bblocks.push_back(blk);
      pos += sz;
    }
  }
  Vec mu_blocks = block_sums(mu, blocks);
  rep.hypothesis_kappa_eq_mu = (kappa_blocks == mu_blocks);
  rep.hypothesis_positive = true;
  for (size_t i = 0; i + 1 < blocks.size(); ++i) {
    Rat si(kappa_blocks[i], blocks[i]);
    Rat sj(kappa_blocks[i + 1], blocks[i + 1]);
    if (!(si > sj)) rep.hypothesis_positive = false;
  }
  rep.predicted = rep.hypothesis_positive && rep.hypothesis_kappa_eq_mu;
  rep.mazur_verdict = gl_leq_P(kappa_blocks, mu_blocks);
  if (!rep.predicted) {
    rep.skipped = true;
    return rep;
  }

  rep.g_result = adlv_enumerate(n, mu, b, window, prec, budget, exec);
  rep.g_classes = rep.g_result.classes.size();

  // M-side: product of the per-block sets, embedded block-diagonally
  std::vector<std::vector<LaurentMatrix>> block_classes;
  {
    int pos = 0;
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      Vec mu_seg(mu.begin() + pos, mu.begin() + pos + blocks[bi]);
      AdlvResult r = adlv_enumerate(blocks[bi], mu_seg, bblocks[bi], window, prec, budget, exec);
      block_classes.push_back(r.classes);
      pos += blocks[bi];
    }
  }
  std::set<std::string> m_keys;
  bool any_empty = false;
  for (const auto& bc : block_classes)
    if (bc.empty()) any_empty = true;
  if (!any_empty) {
    std::vector<size_t> idx(blocks.size(), 0);
    for (;;) {
      std::vector<LaurentMatrix> parts;
      for (size_t bi = 0; bi < blocks.size(); ++bi) parts.push_back(block_classes[bi][idx[bi]]);
      m_keys.insert(block_diag(parts).key());
      size_t pos = 0;
      while (pos < idx.size()) {
        if (++idx[pos] < block_classes[pos].size()) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos == idx.size()) break;
    }
  }
  rep.m_classes = m_keys.size();

  std::set<std::string> g_keys;
  for (const auto& m : rep.g_result.classes) g_keys.insert(m.key());
  for (const auto& k : g_keys)
    if (!m_keys.count(k)) rep.extra_g.push_back(k);
  bool missing = false;
  for (const auto& k : m_keys)
    if (!g_keys.count(k)) missing = true;
  rep.equal = rep.extra_g.empty() && !missing;
  return rep;
}

LaurentMatrix random_in_K(std::shared_ptr<const GaloisField> f, int n, std::mt19937_64& rng) {
  long long size = f->size();
  auto rand_elt = [&]() { return static_cast<GaloisField::Elt>(rng() % size); };
  auto rand_unit = [&]() { return static_cast<GaloisField::Elt>(1 + rng() % (size - 1)); };

  LaurentMatrix d = LaurentMatrix::zero(f, n);
  for (int i = 0; i < n; ++i) {
    std::vector<GaloisField::Elt> cs{rand_unit(), rand_elt(), rand_elt()};
    d.at(i, i) = Laurent::from_coeffs(f, 0, cs);
  }
  LaurentMatrix u = LaurentMatrix::identity(f, n);
  LaurentMatrix l = LaurentMatrix::identity(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < j) u.at(i, j) = Laurent::from_coeffs(f, 0, {rand_elt(), rand_elt(), rand_elt()});
      if (i > j) l.at(i, j) = Laurent::from_coeffs(f, 0, {rand_elt(), rand_elt(), rand_elt()});
    }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
  LaurentMatrix p = LaurentMatrix::zero(f, n);
  for (int i = 0; i < n; ++i) p.at(perm[i], i) = Laurent::one(f);
  return p.mul(d).mul(u).mul(l);
}

LaurentMatrix random_gl(std::shared_ptr<const GaloisField> f, int n, int coweight_range,
                        std::mt19937_64& rng) {
  Vec lam(n);
  for (int i = 0; i < n; ++i)
    lam[i] = static_cast<Int>(rng() % (2 * coweight_range + 1)) - coweight_range;
  return random_in_K(f, n, rng).mul(LaurentMatrix::coweight(f, lam)).mul(random_in_K(f, n, rng));
}

LaurentMatrix superbasic_block(std::shared_ptr<const GaloisField> f, int n, int k) {
  LaurentMatrix m = LaurentMatrix::zero(f, n);
  if (n == 1) {
    m.at(0, 0) = Laurent::monomial(f, 1, k);
    return m;
  }
  for (int i = 0; i + 1 < n; ++i) m.at(i + 1, i) = Laurent::one(f);
  m.at(0, n - 1) = Laurent::monomial(f, 1, k);
  return m;
}

LaurentMatrix block_diag(const std::vector<LaurentMatrix>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.n;
  LaurentMatrix m = LaurentMatrix::zero(blocks.front().f, n);
  int pos = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j) m.at(pos + i, pos + j) = b.at(i, j);
    pos += b.n;
  }
  return m;
}

LaurentMatrix parse_matrix(std::shared_ptr<const GaloisField> f,
                           const std::vector<std::vector<std::string>>& entries) {
  int n = static_cast<int>(entries.size());
  LaurentMatrix m = LaurentMatrix::zero(f, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[i].size()) != n)
      throw Error(errc::parse_error, "matrix literal is not square");
    for (int j = 0; j < n; ++j) m.at(i, j) = parse_laurent(f, entries[i][j]);
  }
  return m;
}

}  // namespace adl
