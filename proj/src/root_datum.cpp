#include "adl/root_datum.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "adl/errors.hpp"

namespace adl {

Int RootDatum::pair(const Vec& chr, const Vec& cochr) const {
  Int s = 0;
  for (size_t i = 0; i < chr.size(); ++i) s += chr[i] * cochr[i];
  return s;
}

Rat RootDatum::pair(const Vec& chr, const QVec& cochr) const {
  Rat s = 0;
  for (size_t i = 0; i < chr.size(); ++i) s += chr[i] * cochr[i];
  return s;
}

Vec RootDatum::reflect_coweight(int i, const Vec& v) const {
  Int p = pair(simple_roots[i], v);
  Vec r = v;
  for (int k = 0; k < rank_x; ++k) r[k] -= p * simple_coroots[i][k];
  return r;
}

QVec RootDatum::reflect_coweight(int i, const QVec& v) const {
  Rat p = pair(simple_roots[i], v);
  QVec r = v;
  for (int k = 0; k < rank_x; ++k) r[k] -= p * simple_coroots[i][k];
  return r;
}

bool RootDatum::is_dominant(const Vec& v) const {
  for (const auto& a : simple_roots)
    if (pair(a, v) < 0) return false;
  return true;
}

bool RootDatum::is_dominant(const QVec& v) const {
  for (const auto& a : simple_roots)
    if (pair(a, v) < 0) return false;
  return true;
}

namespace {

IMat cartan_matrix(const std::string& type, int m) {
  auto chain = [&](std::vector<std::pair<int, int>> extra_edges, int len) {
    IMat c(len, Vec(len, 0));
    for (int i = 0; i < len; ++i) c[i][i] = 2;
    for (int i = 0; i + 1 < len; ++i) c[i][i + 1] = c[i + 1][i] = -1;
    for (auto [a, b] : extra_edges) c[a][b] = c[b][a] = -1;
    return c;
  };
  if (type == "A" || type == "GL") return chain({}, m);
  if (type == "B") {
    IMat c = chain({}, m);
    c[m - 2][m - 1] = -2;  // <alpha_{m-1}, alpha_m^vee>, alpha_m short
    c[m - 1][m - 2] = -1;
    return c;
  }
  if (type == "C") {
    IMat c = chain({}, m);
    c[m - 2][m - 1] = -1;
    c[m - 1][m - 2] = -2;  // alpha_m long
    return c;
  }
  if (type == "D") {
    IMat c = chain({}, m - 1);
    c.resize(m);
    for (auto& row : c) row.resize(m, 0);
    c[m - 1].assign(m, 0);
    c[m - 1][m - 1] = 2;
    c[m - 2][m - 1] = c[m - 1][m - 2] = 0;
    c[m - 3][m - 1] = c[m - 1][m - 3] = -1;  // fork at node m-2 (1-based)
    return c;
  }
  if (type == "G2") {
    return {{2, -1}, {-3, 2}};
  }
  if (type == "F4") {
    IMat c = chain({}, 4);
    c[1][2] = -2;
    c[2][1] = -1;
    return c;
  }
  if (type == "E6" || type == "E7" || type == "E8") {
    // Bourbaki: chain 1-3-4-5-..., node 2 attached to node 4
    IMat c(m, Vec(m, 0));
    for (int i = 0; i < m; ++i) c[i][i] = 2;
    auto edge = [&](int a, int b) { c[a][b] = c[b][a] = -1; };
    edge(0, 2);
    edge(1, 3);
    for (int i = 2; i + 1 < m; ++i) edge(i, i + 1);
    return c;
  }
  throw Error(errc::unknown_type, "unsupported Cartan type: " + type);
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long weyl_order_of(const std::string& type, int rank) {
  if (type == "A") return factorial(rank + 1);
  if (type == "GL") return factorial(rank);
  if (type == "B" || type == "C") return (1LL << rank) * factorial(rank);
  if (type == "D") return (1LL << (rank - 1)) * factorial(rank);
  if (type == "G2") return 12;
  if (type == "F4") return 1152;
  if (type == "E6") return 51840;
  if (type == "E7") return 2903040;
  if (type == "E8") return 696729600;
  return 1;
}

void check_rank(const std::string& type, int rank) {
  auto bad = [&]() {
    throw Error(errc::rank_out_of_range,
                "type " + type + " with rank " + std::to_string(rank));
  };
  if (type == "A" && (rank < 1 || rank > 8)) bad();
  else if ((type == "B" || type == "C") && (rank < 2 || rank > 8)) bad();
  else if (type == "D" && (rank < 3 || rank > 8)) bad();
  else if (type == "G2" && rank != 2) bad();
  else if (type == "F4" && rank != 4) bad();
  else if (type == "E6" && rank != 6) bad();
  else if (type == "E7" && rank != 7) bad();
  else if (type == "E8" && rank != 8) bad();
  else if (type == "GL" && (rank < 1 || rank > 9)) bad();
}

void enumerate_roots(RootDatum& rd) {
  int m = rd.num_simple();
  if (m == 0) return;
  std::set<Vec> seen;
  std::vector<Vec> queue;
  for (const auto& a : rd.simple_roots)
    if (seen.insert(a).second) queue.push_back(a);
  for (size_t h = 0; h < queue.size(); ++h) {
    Vec cur = queue[h];
    for (int i = 0; i < m; ++i) {
      // s_i on the character side
      Int p = rd.pair(cur, rd.simple_coroots[i]);
      Vec img = cur;
      for (int k = 0; k < rd.rank_x; ++k) img[k] -= p * rd.simple_roots[i][k];
      if (seen.insert(img).second) queue.push_back(img);
    }
  }
  IMat basis;  // columns = simple roots
  basis.assign(rd.simple_roots.begin(), rd.simple_roots.end());
  IMat sys(rd.rank_x, Vec(m, 0));
  for (int i = 0; i < rd.rank_x; ++i)
    for (int j = 0; j < m; ++j) sys[i][j] = rd.simple_roots[j][i];
  for (const auto& chr : queue) {
    auto sol = solve_integer(sys, chr);
    assert(sol.has_value());
    bool pos = true, neg = true;
    for (Int c : *sol) {
      if (c < 0) pos = false;
      if (c > 0) neg = false;
    }
    assert(pos || neg);
    rd.roots.push_back({chr, *sol, pos});
  }
  std::sort(rd.roots.begin(), rd.roots.end(),
            [](const RootDatum::Root& a, const RootDatum::Root& b) { return a.chr < b.chr; });
}

}  // namespace

std::shared_ptr<const RootDatum> build_root_datum(const std::string& type, int rank,
                                                  const std::string& isogeny) {
  static const std::set<std::string> known = {"A",  "B",  "C",  "D",  "E6",
                                              "E7", "E8", "F4", "G2", "GL"};
  if (!known.count(type)) throw Error(errc::unknown_type, "type tag: " + type);
  if (isogeny != "sc" && isogeny != "ad" && isogeny != "gl")
    throw Error(errc::unknown_type, "isogeny tag: " + isogeny);
  if ((type == "GL") != (isogeny == "gl"))
    throw Error(errc::unknown_type, "isogeny 'gl' goes with type 'GL' only");
  check_rank(type, rank);

  auto rd = std::make_shared<RootDatum>();
  rd->type = type;
  rd->rank = rank;
  rd->isogeny = isogeny;
  rd->weyl_order = weyl_order_of(type, rank);

  if (type == "GL") {
    int n = rank;
    rd->rank_x = n;
    rd->cartan = cartan_matrix("A", n - 1 > 0 ? n - 1 : 1);
    if (n == 1) rd->cartan.clear();
    for (int i = 0; i + 1 < n; ++i) {
      Vec r(n, 0);
      r[i] = 1;
      r[i + 1] = -1;
      rd->simple_roots.push_back(r);
      rd->simple_coroots.push_back(r);
    }
  } else {
    int m = rank;
    rd->rank_x = m;
    rd->cartan = cartan_matrix(type, m);
    for (int i = 0; i < m; ++i) {
      if (isogeny == "sc") {
        // coroots are the standard basis; root i reads off Cartan row i
        Vec e(m, 0);
        e[i] = 1;
        rd->simple_coroots.push_back(e);
        rd->simple_roots.push_back(rd->cartan[i]);
      } else {
        // roots are the standard basis; coroot j is Cartan column j
        Vec e(m, 0);
        e[i] = 1;
        rd->simple_roots.push_back(e);
        Vec col(m, 0);
        for (int k = 0; k < m; ++k) col[k] = rd->cartan[k][i];
        rd->simple_coroots.push_back(col);
      }
    }
  }

  // pairing must reproduce the Cartan matrix
  for (int i = 0; i < rd->num_simple(); ++i)
    for (int j = 0; j < rd->num_simple(); ++j)
      assert(rd->pair(rd->simple_roots[i], rd->simple_coroots[j]) == rd->cartan[i][j]);

  enumerate_roots(*rd);
  IMat all_coroots;
  for (const auto& cv : rd->simple_coroots) all_coroots.push_back(cv);
  rd->xg = LatticeQuotient(rd->rank_x, all_coroots);
  return rd;
}

std::pair<Vec, std::vector<int>> dominant_rep(const RootDatum& rd, const Vec& v) {
  Vec cur = v;
  std::vector<int> word;
  size_t cap = rd.roots.size() / 2 + 1;
  for (;;) {
    int neg = -1;
    for (int i = 0; i < rd.num_simple(); ++i)
      if (rd.pair(rd.simple_roots[i], cur) < 0) {
        neg = i;
        break;
      }
    if (neg < 0) break;
    cur = rd.reflect_coweight(neg, cur);
    word.push_back(neg);
    assert(word.size() <= cap);
  }
  return {cur, word};
}

Vec apply_word(const RootDatum& rd, const std::vector<int>& word, Vec v) {
  for (int i : word) v = rd.reflect_coweight(i, v);
  return v;
}

std::vector<Vec> weyl_orbit(const RootDatum& rd, const Vec& v, size_t budget) {
  std::set<Vec> seen{v};
  std::vector<Vec> queue{v};
  for (size_t h = 0; h < queue.size(); ++h) {
    Vec cur = queue[h];
    for (int i = 0; i < rd.num_simple(); ++i) {
      Vec img = rd.reflect_coweight(i, cur);
      if (seen.insert(img).second) {
        if (seen.size() > budget)
          throw Error(errc::budget_exceeded,
                      "Weyl orbit larger than " + std::to_string(budget));
        queue.push_back(img);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<IMat> weyl_elements(const RootDatum& rd, const std::vector<int>& gen_subset,
                                size_t budget) {
  int n = rd.rank_x;
  std::vector<IMat> gens;
  for (int i : gen_subset) {
    IMat s = imat_identity(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        s[a][b] -= rd.simple_coroots[i][a] * rd.simple_roots[i][b];
    gens.push_back(s);
  }
  std::set<IMat> seen{imat_identity(n)};
  std::vector<IMat> queue{imat_identity(n)};
  for (size_t h = 0; h < queue.size(); ++h) {
    IMat cur = queue[h];
    for (const auto& s : gens) {
      IMat img = imat_mul(s, cur);
      if (seen.insert(img).second) {
        if (seen.size() > budget)
          throw Error(errc::budget_exceeded,
                      "Weyl subgroup larger than " + std::to_string(budget));
        queue.push_back(img);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

Rat coweight_height(const RootDatum& rd, const Vec& mu) {
  int m = rd.num_simple();
  if (m == 0) return 0;
  QVec rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = rd.pair(rd.simple_roots[i], mu);
  auto c = solve_rational(rd.cartan, rhs);
  assert(c.has_value());  // Cartan matrices are invertible
  Rat h = 0;
  for (const auto& x : *c) h += x;
  return h;
}

std::string LeviDatum::key() const {
  std::string k = datum->key() + "_M";
  for (int i : levi_simple) k += "." + std::to_string(i);
  return k;
}

std::shared_ptr<const LeviDatum> levi(std::shared_ptr<const RootDatum> datum,
                                      const std::vector<int>& subset) {
  auto lv = std::make_shared<LeviDatum>();
  lv->datum = datum;
  std::set<int> chosen;
  for (int i : subset) {
    if (i < 0 || i >= datum->num_simple())
      throw Error(errc::index_out_of_range, "simple index " + std::to_string(i));
    chosen.insert(i);
  }
  IMat levi_cols;
  for (int i = 0; i < datum->num_simple(); ++i) {
    if (chosen.count(i))
      lv->levi_simple.push_back(i);
    else
      lv->complement_simple.push_back(i);
  }
  for (int i : lv->levi_simple) levi_cols.push_back(datum->simple_coroots[i]);
  lv->xm = LatticeQuotient(datum->rank_x, levi_cols);
  lv->xg = datum->xg;
  return lv;
}

XMClass project_XM(const std::shared_ptr<const LeviDatum>& lv, const Vec& v) {
  return XMClass{lv, v, lv->xm.normal_form(v)};
}

std::optional<Vec> coroot_coefficients(const RootDatum& rd, const Vec& x,
                                       const std::vector<int>& basis) {
  IMat sys(rd.rank_x, Vec(basis.size(), 0));
  for (size_t j = 0; j < basis.size(); ++j) {
    int idx = basis[j];
    if (idx < 0 || idx >= rd.num_simple())
      throw Error(errc::index_out_of_range, "simple index " + std::to_string(idx));
    for (int i = 0; i < rd.rank_x; ++i) sys[i][j] = rd.simple_coroots[idx][i];
  }
  return solve_integer(sys, x);
}

}  // namespace adl
