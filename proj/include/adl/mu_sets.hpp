#ifndef ADL_MU_SETS_HPP
#define ADL_MU_SETS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "adl/orders.hpp"
#include "adl/parallel.hpp"
#include "adl/root_datum.hpp"

namespace adl {

/* The finite set of cocharacters congruent to mu in X_G and lying in the
   convex hull of its Weyl orbit. */
struct PmuSet {
  std::shared_ptr<const RootDatum> datum;
  Vec mu;
  std::vector<Vec> elements;  // sorted, duplicate-free
  // one entry per dominant stratum: (dominant representative, orbit size)
  std::vector<std::pair<Vec, size_t>> generation_stats;

  bool contains(const Vec& v) const;
};

/* Its image in Y_M. */
struct PmuMSet {
  std::shared_ptr<const LeviFolding> fold;
  Vec mu;
  std::vector<Vec> element_nfs;  // sorted Y_M normal forms

  bool contains_nf(const Vec& nf) const;
};

/* Membership by the dominance criterion: equal X_G image, and
   mu - dominant_rep(nu) a non-negative integral combination of simple
   coroots.  (The convexity oracle below validates this shortcut.) */
bool in_Pmu(const RootDatum& rd, const Vec& mu, const Vec& nu);

PmuSet enumerate_Pmu(std::shared_ptr<const RootDatum> rd, const Vec& mu,
                     size_t budget = 1000000, Exec exec = Exec::serial);

/* Exact convex-hull membership over the explicit orbit points: a convex
   combination certificate, or a separating functional. */
struct ConvexityResult {
  bool in_hull = false;
  std::vector<Vec> orbit;   // hull vertices used
  QVec coefficients;        // convex combination when in_hull
  QVec functional;          // f with f.p <= threshold < f.nu otherwise
  Rat threshold;
};

ConvexityResult convexity_oracle(const RootDatum& rd, const Vec& mu, const Vec& nu,
                                 size_t budget = 1000000);

/* Memoizing cache for 𝒫_mu sets and their Y_M images; optionally backed
   by one JSON document per (datum, mu) in cache_dir. */
class PmuCache {
public:
  PmuCache() = default;
  explicit PmuCache(std::string cache_dir) : dir_(std::move(cache_dir)) {}

  std::shared_ptr<const PmuSet> get(std::shared_ptr<const RootDatum> rd, const Vec& mu,
                                    size_t budget = 1000000, Exec exec = Exec::serial);
  std::shared_ptr<const PmuMSet> get_projected(const std::shared_ptr<const LeviFolding>& fold,
                                               const Vec& mu, size_t budget = 1000000,
                                               Exec exec = Exec::serial);

private:
  std::string dir_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const PmuSet>> sets_;
  std::map<std::string, std::shared_ptr<const PmuMSet>> projected_;
};

bool in_PmuM(const std::shared_ptr<const LeviFolding>& fold, const Vec& mu,
             const YMClass& y, PmuCache& cache, size_t budget = 1000000,
             Exec exec = Exec::serial);

}  // namespace adl

#endif
