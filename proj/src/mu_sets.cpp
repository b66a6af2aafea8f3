#include "adl/mu_sets.hpp"

#include <algorithm>
#include <cassert>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "adl/errors.hpp"
#include "adl/lp.hpp"

namespace adl {

bool PmuSet::contains(const Vec& v) const {
  return std::binary_search(elements.begin(), elements.end(), v);
}

bool PmuMSet::contains_nf(const Vec& nf) const {
  return std::binary_search(element_nfs.begin(), element_nfs.end(), nf);
}

bool in_Pmu(const RootDatum& rd, const Vec& mu, const Vec& nu) {
  if (!rd.is_dominant(mu)) throw Error(errc::non_dominant, "mu must be dominant");
  if (rd.xg.normal_form(mu) != rd.xg.normal_form(nu)) return false;
  Vec nu_plus = dominant_rep(rd, nu).first;
  Vec diff(rd.rank_x);
  for (int i = 0; i < rd.rank_x; ++i) diff[i] = mu[i] - nu_plus[i];
  std::vector<int> all_idx(rd.num_simple());
  for (int i = 0; i < rd.num_simple(); ++i) all_idx[i] = i;
  auto coeffs = coroot_coefficients(rd, diff, all_idx);
  if (!coeffs) return false;
  for (Int c : *coeffs)
    if (c < 0) return false;
  return true;
}

namespace {

/* Dominant elements of P_mu: mu - sum c_i alpha_i^vee over integer c >= 0,
   with sum(c) bounded by the coroot height of mu. */
std::vector<Vec> dominant_layer(const RootDatum& rd, const Vec& mu) {
  int m = rd.num_simple();
  std::vector<Vec> out;
  Rat h = coweight_height(rd, mu);
  long long hmax = static_cast<long long>(h.convert_to<double>() + Rat(1).convert_to<double>());
  if (m == 0) {
    out.push_back(mu);
    return out;
  }
  Vec c(m, 0);
  for (;;) {
    long long total = 0;
    for (Int x : c) total += x;
    if (total <= hmax) {
      Vec nu = mu;
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < rd.rank_x; ++i) nu[i] -= c[j] * rd.simple_coroots[j][i];
      if (rd.is_dominant(nu)) out.push_back(nu);
    }
    // odometer over the simplex sum(c) <= hmax
    int pos = m - 1;
    while (pos >= 0) {
      ++c[pos];
      long long t = 0;
      for (Int x : c) t += x;
      if (t <= hmax) break;
      c[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PmuSet enumerate_Pmu(std::shared_ptr<const RootDatum> rd, const Vec& mu, size_t budget,
                     Exec exec) {
  if (!rd->is_dominant(mu)) throw Error(errc::non_dominant, "mu must be dominant");
  std::vector<Vec> layer = dominant_layer(*rd, mu);
  size_t predicted = layer.size() * static_cast<size_t>(rd->weyl_order);
  if (predicted > budget)
    throw Error(errc::budget_exceeded,
                "predicted orbit points " + std::to_string(predicted) + " exceed budget " +
                    std::to_string(budget));

  PmuSet ps;
  ps.datum = rd;
  ps.mu = mu;
  std::vector<std::vector<Vec>> orbits(layer.size());
  parallel_for(0, static_cast<int64_t>(layer.size()), exec,
               [&](int64_t i) { orbits[i] = weyl_orbit(*rd, layer[i], budget); });
  for (size_t i = 0; i < layer.size(); ++i) {
    ps.generation_stats.emplace_back(layer[i], orbits[i].size());
    ps.elements.insert(ps.elements.end(), orbits[i].begin(), orbits[i].end());
  }
  std::sort(ps.elements.begin(), ps.elements.end());
  ps.elements.erase(std::unique(ps.elements.begin(), ps.elements.end()), ps.elements.end());
  if (ps.elements.size() > budget)
    throw Error(errc::budget_exceeded, "enumerated " + std::to_string(ps.elements.size()) +
                                           " points, budget " + std::to_string(budget));
  return ps;
}

ConvexityResult convexity_oracle(const RootDatum& rd, const Vec& mu, const Vec& nu,
                                 size_t budget) {
  ConvexityResult res;
  res.orbit = weyl_orbit(rd, mu, budget);
  int d = rd.rank_x;
  int k = static_cast<int>(res.orbit.size());
  std::vector<QVec> rows(d + 1, QVec(k, Rat(0)));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < d; ++i) rows[i][j] = res.orbit[j][i];
    rows[d][j] = 1;
  }
  QVec rhs(d + 1, Rat(0));
  for (int i = 0; i < d; ++i) rhs[i] = nu[i];
  rhs[d] = 1;

  LpResult lp = lp_equality_feasible(rows, rhs);
  res.in_hull = lp.feasible;
  if (lp.feasible) {
    res.coefficients = lp.point;
    // verify the certificate: convex combination reproducing nu
    Rat total = 0;
    QVec recon(d, Rat(0));
    for (int j = 0; j < k; ++j) {
      assert(lp.point[j] >= 0);
      total += lp.point[j];
      for (int i = 0; i < d; ++i) recon[i] += lp.point[j] * res.orbit[j][i];
    }
    assert(total == 1);
    for (int i = 0; i < d; ++i) assert(recon[i] == nu[i]);
  } else {
    res.functional.assign(lp.farkas.begin(), lp.farkas.end() - 1);
    res.threshold = -lp.farkas[d];
    // verify: f.p <= threshold for every orbit point, f.nu > threshold
    for (int j = 0; j < k; ++j) {
      Rat v = 0;
      for (int i = 0; i < d; ++i) v += res.functional[i] * res.orbit[j][i];
      assert(v <= res.threshold);
    }
    Rat v = 0;
    for (int i = 0; i < d; ++i) v += res.functional[i] * nu[i];
    assert(v > res.threshold);
  }
  return res;
}

namespace {

std::string mu_tag(const Vec& mu) {
  std::string t;
  for (Int x : mu) t += (t.empty() ? "" : "_") + std::to_string(x);
  return t;
}

}  // namespace

std::shared_ptr<const PmuSet> PmuCache::get(std::shared_ptr<const RootDatum> rd, const Vec& mu,
                                            size_t budget, Exec exec) {
  std::string key = rd->key() + "_mu" + mu_tag(mu);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sets_.find(key);
    if (it != sets_.end()) return it->second;
  }
  namespace fs = std::filesystem;
  std::string path;
  if (!dir_.empty()) {
    path = (fs::path(dir_) / (key + ".json")).string();
    std::ifstream in(path);
    if (in) {
      nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
      if (!doc.is_discarded() && doc.value("datum", "") == rd->key() &&
          doc.value("mu", std::vector<Int>{}) == mu) {
        auto ps = std::make_shared<PmuSet>();
        ps->datum = rd;
        ps->mu = mu;
        for (const auto& e : doc["elements"]) ps->elements.push_back(e.get<Vec>());
        std::sort(ps->elements.begin(), ps->elements.end());
        for (const auto& s : doc["stats"])
          ps->generation_stats.emplace_back(s[0].get<Vec>(), s[1].get<size_t>());
        std::lock_guard<std::mutex> lock(mu_);
        sets_[key] = ps;
        return ps;
      }
    }
  }
  auto ps = std::make_shared<PmuSet>(enumerate_Pmu(rd, mu, budget, exec));
  if (!dir_.empty()) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    nlohmann::ordered_json doc;
    doc["datum"] = rd->key();
    doc["mu"] = mu;
    doc["elements"] = ps->elements;
    auto stats = nlohmann::ordered_json::array();
    for (const auto& [rep, count] : ps->generation_stats)
      stats.push_back({rep, count});
    doc["stats"] = stats;
    std::ofstream out(path);
    out << doc.dump(1) << "\n";
  }
  std::lock_guard<std::mutex> lock(mu_);
  sets_[key] = ps;
  return ps;
}

std::shared_ptr<const PmuMSet> PmuCache::get_projected(
    const std::shared_ptr<const LeviFolding>& fold, const Vec& mu, size_t budget, Exec exec) {
  std::string key = fold->key() + "_mu" + mu_tag(mu);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = projected_.find(key);
    if (it != projected_.end()) return it->second;
  }
  auto base = get(fold->levi->datum, mu, budget, exec);
  auto pm = std::make_shared<PmuMSet>();
  pm->fold = fold;
  pm->mu = mu;
  for (const auto& v : base->elements) pm->element_nfs.push_back(fold->ym.normal_form(v));
  std::sort(pm->element_nfs.begin(), pm->element_nfs.end());
  pm->element_nfs.erase(std::unique(pm->element_nfs.begin(), pm->element_nfs.end()),
                        pm->element_nfs.end());
  std::lock_guard<std::mutex> lock(mu_);
  projected_[key] = pm;
  return pm;
}

bool in_PmuM(const std::shared_ptr<const LeviFolding>& fold, const Vec& mu, const YMClass& y,
             PmuCache& cache, size_t budget, Exec exec) {
  if (!fold->rd().is_dominant(mu)) throw Error(errc::non_dominant, "mu must be dominant");
  return cache.get_projected(fold, mu, budget, exec)->contains_nf(y.nf);
}

}  // namespace adl
