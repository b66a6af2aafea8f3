#include "adl/newton.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <exception>
#include <functional>

#include "adl/errors.hpp"

namespace adl {

QVec newton_point(const RootDatum& rd, const SigmaAction& sigma, const Vec& mu,
                  const std::vector<int>& weyl_word) {
  int n = rd.rank_x;
  IMat w = imat_identity(n);
  // the word acts left to right, so the matrix is s_{last} ... s_{first}
  for (int i : weyl_word) {
    IMat s = imat_identity(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        s[a][b] -= rd.simple_coroots[i][a] * rd.simple_roots[i][b];
    w = imat_mul(s, w);
  }
  IMat ws = imat_mul(w, sigma.matrix);
  IMat pw = ws;
  int r = 1;
  IMat id = imat_identity(n);
  while (!imat_equal(pw, id)) {
    pw = imat_mul(ws, pw);
    ++r;
    assert(r <= 1000000);
  }
  QVec acc(n, Rat(0));
  Vec cur = mu;
  for (int i = 1; i <= r; ++i) {
    cur = imat_apply(ws, cur);
    for (int k = 0; k < n; ++k) acc[k] += cur[k];
  }
  QVec nu = qscale(Rat(1, r), acc);
  // (w sigma)-fixed by construction; cheap sanity check
  QVec img(n, Rat(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) img[a] += ws[a][b] * nu[b];
  assert(img == nu);
  return nu;
}

BasicClass make_basic(const std::shared_ptr<const LeviFolding>& fold, const Vec& kappa_lift) {
  return BasicClass{fold, to_YM(fold, kappa_lift)};
}

std::vector<Rat> slopes_on_N(const BasicClass& b) {
  const LeviFolding& f = *b.fold;
  QVec bar = ap_image(f, b.kappa.rep);
  std::vector<Rat> out;
  for (const auto& chr : f.n_root_reps) out.push_back(f.rd().pair(chr, bar));
  return out;
}

bool mazur_check(const BasicClass& b, const Vec& mu) {
  if (!in_YM_plus(b.kappa))
    throw Error(errc::hypothesis_violated, "kappa is not in Y_M^+");
  return leq_P_YM(b.kappa, to_YM(b.fold, mu));
}

bool nonempty(const BasicClass& b, const Vec& mu, PmuCache& cache, size_t budget, Exec exec) {
  return in_PmuM(b.fold, mu, b.kappa, cache, budget, exec);
}

HnHypothesis hn_hypothesis(const BasicClass& b, const Vec& mu) {
  HnHypothesis h;
  h.basic_positive = in_YM_plus(b.kappa);
  h.kappa_equals_mu = (b.kappa == to_YM(b.fold, mu));
  h.bijection_predicted = h.basic_positive && h.kappa_equals_mu;
  return h;
}

std::vector<std::vector<int>> sigma_stable_levis(const RootDatum& rd,
                                                 const SigmaAction& sigma) {
  int m = rd.num_simple();
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    bool stable = true;
    for (int i = 0; i < m && stable; ++i)
      if ((mask >> i) & 1u) stable = ((mask >> sigma.perm[i]) & 1u) != 0;
    if (!stable) continue;
    std::vector<int> subset;
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1u) subset.push_back(i);
    out.push_back(subset);
  }
  return out;
}

std::vector<Vec> dominant_coweights_up_to(const RootDatum& rd, const Rat& height_bound) {
  std::vector<Vec> out;
  if (rd.type == "GL") {
    int n = rd.rank_x;
    if (n == 1) return {Vec{0}};
    // partitions mu_1 >= ... >= mu_n = 0 with coroot height <= bound
    long long top = 1;
    {
      // height((k,0,...,0)) = k (n-1)/n * ... ; solve k from the bound
      Rat per_unit = coweight_height(rd, [&] {
        Vec e(n, 0);
        e[0] = 1;
        return e;
      }());
      while (Rat(top + 1) * per_unit <= height_bound) ++top;
    }
    Vec mu(n, 0);
    std::function<void(int, long long)> rec = [&](int pos, long long cap) {
      if (pos == n - 1) {
        mu[n - 1] = 0;
        if (coweight_height(rd, mu) <= height_bound) out.push_back(mu);
        return;
      }
      for (long long v = 0; v <= cap; ++v) {
        mu[pos] = v;
        rec(pos + 1, v);
      }
    };
    // descending entries; first entry bounded by `top`
    for (long long v = 0; v <= top; ++v) {
      mu[0] = v;
      rec(1, v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  int m = rd.num_simple();
  // pairing profile m_i = <alpha_i, mu> >= 0; height is linear in it with
  // positive weights, so the profile box is finite
  QVec weights(m, Rat(0));
  for (int i = 0; i < m; ++i) {
    QVec rhs(m, Rat(0));
    rhs[i] = 1;
    auto c = solve_rational(rd.cartan, rhs);
    assert(c.has_value());
    for (const auto& x : *c) weights[i] += x;  // height of the i-th profile unit
  }
  std::vector<long long> cap(m);
  for (int i = 0; i < m; ++i) {
    long long k = 0;
    while (Rat(k + 1) * weights[i] <= height_bound) ++k;
    cap[i] = k;
  }
  Vec profile(m, 0);
  IMat pairing_rows(m, Vec(rd.rank_x, 0));
  for (int i = 0; i < m; ++i) pairing_rows[i] = rd.simple_roots[i];
  for (;;) {
    Rat h = 0;
    for (int i = 0; i < m; ++i) h += Rat(profile[i]) * weights[i];
    if (h <= height_bound) {
      QVec rhs(m, Rat(0));
      for (int i = 0; i < m; ++i) rhs[i] = profile[i];
      auto sol = solve_rational(pairing_rows, rhs);
      if (sol) {
        bool integral = true;
        Vec mu(rd.rank_x, 0);
        for (int i = 0; i < rd.rank_x; ++i) {
          const Rat& x = (*sol)[i];
          if (denominator(x) != 1) {
            integral = false;
            break;
          }
          mu[i] = numerator(x).convert_to<long long>();
        }
        if (integral) {
          assert(rd.is_dominant(mu));
          out.push_back(mu);
        }
      }
    }
    int pos = m - 1;
    while (pos >= 0) {
      if (profile[pos] < cap[pos]) {
        ++profile[pos];
        break;
      }
      profile[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct ScanTask {
  size_t levi_index;
  Vec mu;
};

struct ScanBucket {
  size_t nu_checked = 0;
  size_t torsion_flagged = 0;
  bool budget_hit = false;
  std::vector<ScanCounterexample> counterexamples;
  std::vector<ScanCounterexample> easy_violations;
};

}  // namespace

ScanReport converse_scan(std::shared_ptr<const RootDatum> rd, const SigmaAction& sigma,
                         const std::vector<std::vector<int>>& levi_filter,
                         const Rat& height_bound, PmuCache& cache, size_t budget,
                         Exec exec) {
  ScanReport report;
  report.datum_key = rd->key();
  report.sigma_perm = sigma.perm;
  report.height_bound = height_bound;

  std::vector<std::vector<int>> levis =
      levi_filter.empty() ? sigma_stable_levis(*rd, sigma) : levi_filter;
  std::vector<std::shared_ptr<const LeviFolding>> folds;
  for (const auto& subset : levis) folds.push_back(fold_levi(levi(rd, subset), sigma));
  report.levis_scanned = folds.size();

  std::vector<Vec> mus = dominant_coweights_up_to(*rd, height_bound);
  report.mu_scanned = mus.size();

  std::vector<ScanTask> tasks;
  for (size_t li = 0; li < folds.size(); ++li)
    for (const auto& mu : mus) tasks.push_back({li, mu});

  std::vector<ScanBucket> buckets(tasks.size());
  std::exception_ptr first_error;
  std::atomic<bool> have_error{false};

  parallel_for(0, static_cast<int64_t>(tasks.size()), exec, [&](int64_t ti) {
    if (have_error.load()) return;
    try {
      const auto& task = tasks[ti];
      const auto& fold = folds[task.levi_index];
      const RootDatum& datum = *rd;
      ScanBucket& bucket = buckets[ti];
      const Vec& mu = task.mu;

      auto pm = cache.get_projected(fold, mu, budget, Exec::serial);

      // every candidate nu <=_P mu with equal Y_G image is
      //   mu - sum over orbits c_O * alpha_{O}^vee,  0 <= c_O <= height(mu)
      long long hcap;
      {
        Rat h = coweight_height(datum, mu);
        hcap = (numerator(h) / denominator(h)).convert_to<long long>();
      }
      size_t northo = fold->orbits.size();
      std::vector<long long> c(northo, 0);
      YMClass mu_class = to_YM(fold, mu);
      for (;;) {
        Vec lift = mu;
        for (size_t o = 0; o < northo; ++o) {
          int rep_idx = fold->orbits[o][0];
          for (int i = 0; i < datum.rank_x; ++i)
            lift[i] -= c[o] * datum.simple_coroots[rep_idx][i];
        }
        YMClass nu = to_YM(fold, lift);
        bool order_holds = leq_P_YM(nu, mu_class);
        if (order_holds) {
          if (in_YM_plus(nu)) {
            ++bucket.nu_checked;
            bool member = pm->contains_nf(nu.nf);
            if (!member)
              bucket.counterexamples.push_back(
                  {fold->levi->levi_simple, mu, lift, order_holds, member});
          } else if (fold->ym.is_torsion(nu.nf) && !fold->ym.is_zero(nu.nf)) {
            ++bucket.torsion_flagged;
          }
        }
        // odometer
        size_t pos = 0;
        while (pos < northo) {
          if (c[pos] < hcap) {
            ++c[pos];
            break;
          }
          c[pos] = 0;
          ++pos;
        }
        if (pos == northo || northo == 0) break;
      }

      // the easy direction: membership in P_{mu,M} implies the order
      for (const auto& nf : pm->element_nfs) {
        YMClass nu{fold, fold->ym.lift(nf), nf};
        if (!leq_P_YM(nu, mu_class))
          bucket.easy_violations.push_back(
              {fold->levi->levi_simple, mu, nu.rep, false, true});
      }
    } catch (const Error& e) {
      if (e.code() == errc::budget_exceeded) {
        buckets[ti].budget_hit = true;  // partial report, not a failure
      } else {
#ifdef _OPENMP
#pragma omp critical
#endif
        {
          if (!have_error.exchange(true)) first_error = std::current_exception();
        }
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

  for (const auto& bucket : buckets) {
    if (bucket.budget_hit) report.complete = false;
    report.nu_checked += bucket.nu_checked;
    report.torsion_flagged += bucket.torsion_flagged;
    report.counterexamples.insert(report.counterexamples.end(), bucket.counterexamples.begin(),
                                  bucket.counterexamples.end());
    report.easy_direction_violations.insert(report.easy_direction_violations.end(),
                                            bucket.easy_violations.begin(),
                                            bucket.easy_violations.end());
  }
  return report;
}

}  // namespace adl
