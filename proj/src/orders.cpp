#include "adl/orders.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "adl/errors.hpp"

namespace adl {

bool SigmaAction::is_identity() const {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return order == 1;
}

QVec SigmaAction::apply(const QVec& v) const {
  QVec r(v.size(), Rat(0));
  for (size_t i = 0; i < matrix.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] += matrix[i][j] * v[j];
  return r;
}

std::string SigmaAction::key() const {
  std::string k = "s";
  for (int p : perm) k += std::to_string(p) + ".";
  return k;
}

SigmaAction validate_sigma(const RootDatum& rd, const std::vector<int>& perm) {
  int m = rd.num_simple();
  if (static_cast<int>(perm.size()) != m)
    throw Error(errc::not_an_automorphism, "permutation length != number of simple roots");
  std::vector<bool> seen(m, false);
  for (int p : perm) {
    if (p < 0 || p >= m || seen[p])
      throw Error(errc::not_an_automorphism, "not a permutation of the simple indices");
    seen[p] = true;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (rd.cartan[perm[i]][perm[j]] != rd.cartan[i][j])
        throw Error(errc::not_an_automorphism, "Cartan matrix not preserved");

  SigmaAction s;
  s.perm = perm;
  int n = rd.rank_x;
  bool id_perm = true;
  for (int i = 0; i < m; ++i)
    if (perm[i] != i) id_perm = false;

  if (rd.isogeny == "gl") {
    if (id_perm) {
      s.matrix = imat_identity(n);
    } else {
      // the A-type flip; lattice model e_i -> -e_{n-1-i}
      s.matrix = IMat(n, Vec(n, 0));
      for (int i = 0; i < n; ++i) s.matrix[n - 1 - i][i] = -1;
    }
  } else {
    // sc: coordinates are the simple coroots; ad: the fundamental coweights.
    // Either way sigma permutes the basis.
    s.matrix = IMat(n, Vec(n, 0));
    for (int j = 0; j < n; ++j) s.matrix[perm[j]][j] = 1;
  }

  // the lattice map must carry coroot j to coroot perm[j]
  for (int j = 0; j < m; ++j)
    assert(s.apply(rd.simple_coroots[j]) == rd.simple_coroots[perm[j]]);

  IMat pw = s.matrix;
  s.order = 1;
  IMat id = imat_identity(n);
  while (!imat_equal(pw, id)) {
    pw = imat_mul(s.matrix, pw);
    ++s.order;
    assert(s.order <= 2 * n + 2);
  }
  return s;
}

std::string LeviFolding::key() const { return levi->key() + "_" + sigma.key(); }

std::shared_ptr<const LeviFolding> fold_levi(std::shared_ptr<const LeviDatum> lv,
                                             const SigmaAction& sigma) {
  const RootDatum& rd = *lv->datum;
  std::set<int> levi_set(lv->levi_simple.begin(), lv->levi_simple.end());
  for (int i : lv->levi_simple)
    if (!levi_set.count(sigma.perm[i]))
      throw Error(errc::levi_not_sigma_stable, "sigma must stabilize the Levi subset");

  auto f = std::make_shared<LeviFolding>();
  f->levi = lv;
  f->sigma = sigma;

  int n = rd.rank_x;
  IMat one_minus_s = imat_sub(imat_identity(n), sigma.matrix);

  auto quotient_cols = [&](const std::vector<int>& coroot_idx) {
    IMat cols;
    for (int i : coroot_idx) cols.push_back(rd.simple_coroots[i]);
    for (int j = 0; j < n; ++j) {
      Vec col(n);
      for (int i = 0; i < n; ++i) col[i] = one_minus_s[i][j];
      cols.push_back(col);
    }
    return cols;
  };
  std::vector<int> all_idx(rd.num_simple());
  for (int i = 0; i < rd.num_simple(); ++i) all_idx[i] = i;
  f->ym = LatticeQuotient(n, quotient_cols(lv->levi_simple));
  f->yg = LatticeQuotient(n, quotient_cols(all_idx));

  // sigma-orbits on the complement simples
  std::set<int> remaining(lv->complement_simple.begin(), lv->complement_simple.end());
  while (!remaining.empty()) {
    int start = *remaining.begin();
    std::vector<int> orbit;
    int cur = start;
    do {
      orbit.push_back(cur);
      remaining.erase(cur);
      cur = sigma.perm[cur];
    } while (cur != start);
    std::sort(orbit.begin(), orbit.end());
    f->orbits.push_back(orbit);
  }

  // columns [orbit reps | Levi coroots | (1-S)] for order decisions on Y_M
  size_t width = f->orbits.size() + lv->levi_simple.size() + n;
  f->order_system = IMat(n, Vec(width, 0));
  size_t c = 0;
  for (const auto& orbit : f->orbits) {
    for (int i = 0; i < n; ++i) f->order_system[i][c] = rd.simple_coroots[orbit[0]][i];
    ++c;
  }
  for (int idx : lv->levi_simple) {
    for (int i = 0; i < n; ++i) f->order_system[i][c] = rd.simple_coroots[idx][i];
    ++c;
  }
  for (int j = 0; j < n; ++j, ++c)
    for (int i = 0; i < n; ++i) f->order_system[i][c] = one_minus_s[i][j];

  // a_P = { x : sigma x = x, <alpha_i, x> = 0 for i in the Levi }
  IMat cond;
  for (int i : lv->levi_simple) cond.push_back(rd.simple_roots[i]);
  for (int i = 0; i < n; ++i) cond.push_back(one_minus_s[i]);
  f->ap_basis = rational_kernel(cond);

  // W_{M(F)}: sigma-fixed elements of W_M
  for (const auto& w : weyl_elements(rd, lv->levi_simple))
    if (imat_equal(imat_mul(sigma.matrix, w), imat_mul(w, sigma.matrix)))
      f->relative_weyl.push_back(w);

  // distinct restrictions to a_P of the roots of T in N
  auto restriction = [&](const Vec& chr) {
    QVec r;
    for (const auto& b : f->ap_basis) r.push_back(rd.pair(chr, b));
    return r;
  };
  std::set<int> levi_support(lv->levi_simple.begin(), lv->levi_simple.end());
  std::vector<QVec> seen_restrictions;
  for (const auto& root : rd.roots) {
    if (!root.positive) continue;
    bool in_m = true;
    for (size_t j = 0; j < root.coeffs.size(); ++j)
      if (root.coeffs[j] != 0 && !levi_support.count(static_cast<int>(j))) in_m = false;
    if (in_m) continue;
    QVec res = restriction(root.chr);
    bool fresh = true;
    for (const auto& r : seen_restrictions)
      if (r == res) {
        fresh = false;
        break;
      }
    if (fresh) {
      seen_restrictions.push_back(res);
      f->n_root_reps.push_back(root.chr);
    }
  }
  return f;
}

YMClass to_YM(const std::shared_ptr<const LeviFolding>& fold, const XMClass& c) {
  if (c.levi->key() != fold->levi->key())
    throw Error(errc::levi_mismatch, "class belongs to a different Levi");
  return YMClass{fold, c.rep, fold->ym.normal_form(c.rep)};
}

YMClass to_YM(const std::shared_ptr<const LeviFolding>& fold, const Vec& coweight) {
  return YMClass{fold, coweight, fold->ym.normal_form(coweight)};
}

bool leq_P(const std::shared_ptr<const LeviDatum>& lv, const XMClass& a, const XMClass& b) {
  if (a.levi->key() != lv->key() || b.levi->key() != lv->key())
    throw Error(errc::levi_mismatch, "operands belong to different Levis");
  const RootDatum& rd = *lv->datum;
  Vec diff(rd.rank_x);
  for (int i = 0; i < rd.rank_x; ++i) diff[i] = b.rep[i] - a.rep[i];
  if (!lv->xg.is_zero(lv->xg.normal_form(diff))) return false;
  std::vector<int> all_idx(rd.num_simple());
  for (int i = 0; i < rd.num_simple(); ++i) all_idx[i] = i;
  auto coeffs = coroot_coefficients(rd, diff, all_idx);
  if (!coeffs) return false;
  std::set<int> comp(lv->complement_simple.begin(), lv->complement_simple.end());
  for (int j = 0; j < rd.num_simple(); ++j)
    if (comp.count(j) && (*coeffs)[j] < 0) return false;
  return true;
}

bool leq_P_YM(const YMClass& a, const YMClass& b) {
  if (a.fold->key() != b.fold->key())
    throw Error(errc::levi_mismatch, "operands belong to different foldings");
  const LeviFolding& f = *a.fold;
  int n = f.rd().rank_x;
  Vec diff(n);
  for (int i = 0; i < n; ++i) diff[i] = b.rep[i] - a.rep[i];
  auto sol = solve_integer(f.order_system, diff);
  if (!sol) return false;  // unequal Y_G images
  for (size_t k = 0; k < f.orbits.size(); ++k)
    if ((*sol)[k] < 0) return false;
  return true;
}

QVec flat(const SigmaAction& sigma, const QVec& x) {
  QVec acc = x;
  QVec cur = x;
  for (int k = 1; k < sigma.order; ++k) {
    cur = sigma.apply(cur);
    acc = qadd(acc, cur);
  }
  return qscale(Rat(1, sigma.order), acc);
}

QVec flat(const SigmaAction& sigma, const Vec& x) { return flat(sigma, to_qvec(x)); }

QVec pr_M(const LeviFolding& fold, const QVec& a) {
  assert(fold.sigma.apply(a) == a);
  QVec acc(a.size(), Rat(0));
  for (const auto& w : fold.relative_weyl) {
    QVec img(a.size(), Rat(0));
    for (size_t i = 0; i < w.size(); ++i)
      for (size_t j = 0; j < a.size(); ++j) img[i] += w[i][j] * a[j];
    acc = qadd(acc, img);
  }
  return qscale(Rat(1, static_cast<long long>(fold.relative_weyl.size())), acc);
}

QVec ap_image(const LeviFolding& fold, const Vec& rep) {
  return pr_M(fold, flat(fold.sigma, rep));
}

bool in_YM_plus(const YMClass& y) {
  const LeviFolding& f = *y.fold;
  QVec bar = ap_image(f, y.rep);
  for (const auto& chr : f.n_root_reps)
    if (f.rd().pair(chr, bar) <= 0) return false;
  return true;
}

bool real_leq(const RootDatum& rd, const QVec& x, const QVec& y) {
  int m = rd.num_simple();
  QVec diff = qsub(y, x);
  if (m == 0) return qis_zero(diff);
  IMat sys(rd.rank_x, Vec(m, 0));
  for (int i = 0; i < rd.rank_x; ++i)
    for (int j = 0; j < m; ++j) sys[i][j] = rd.simple_coroots[j][i];
  auto coeffs = solve_rational(sys, diff);
  if (!coeffs) return false;  // diff outside the span of the simple coroots
  for (const auto& cfs : *coeffs)
    if (cfs < 0) return false;
  return true;
}

ReformReport reform_equiv_report(const std::shared_ptr<const LeviFolding>& fold,
                                 const Vec& mu, const YMClass& nu) {
  const RootDatum& rd = fold->rd();
  if (!rd.is_dominant(mu))
    throw Error(errc::non_dominant, "mu must be dominant");
  ReformReport rep{};
  YMClass mu_class = to_YM(fold, mu);
  rep.cond_order = leq_P_YM(nu, mu_class);

  bool same_yg = fold->yg.normal_form(nu.rep) == fold->yg.normal_form(mu);
  QVec nu_bar = ap_image(*fold, nu.rep);
  QVec mu_flat = flat(fold->sigma, mu);
  rep.cond_real = same_yg && real_leq(rd, nu_bar, mu_flat);
  rep.cond_real_proj = same_yg && real_leq(rd, nu_bar, pr_M(*fold, mu_flat));
  rep.agree = (rep.cond_order == rep.cond_real);
  return rep;
}

}  // namespace adl
