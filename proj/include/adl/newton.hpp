#ifndef ADL_NEWTON_HPP
#define ADL_NEWTON_HPP

#include <memory>
#include <string>
#include <vector>

#include "adl/mu_sets.hpp"
#include "adl/orders.hpp"

namespace adl {

/* The rational cocharacter (1/r) sum_{i=1..r} (w sigma)^i (mu), r = order
   of w sigma on X_*(T).  Fixed by w sigma; linear in mu. */
QVec newton_point(const RootDatum& rd, const SigmaAction& sigma, const Vec& mu,
                  const std::vector<int>& weyl_word);

/* A basic sigma-conjugacy datum of M(L): determined by its kappa value. */
struct BasicClass {
  std::shared_ptr<const LeviFolding> fold;
  YMClass kappa;
};

BasicClass make_basic(const std::shared_ptr<const LeviFolding>& fold, const Vec& kappa_lift);

/* Slopes of the class on Lie(N): the pairings of the a_P-image of kappa
   with the roots of A_P in N (one per restriction). */
std::vector<Rat> slopes_on_N(const BasicClass& b);

/* kappa <=_P mu in Y_M; false certifies emptiness of the mu-level set.
   Requires kappa in Y_M^+ (HYPOTHESIS_VIOLATED otherwise). */
bool mazur_check(const BasicClass& b, const Vec& mu);

/* Exact non-emptiness: kappa lies in the Y_M-image of P_mu. */
bool nonempty(const BasicClass& b, const Vec& mu, PmuCache& cache,
              size_t budget = 1000000, Exec exec = Exec::serial);

struct HnHypothesis {
  bool basic_positive = false;     // kappa in Y_M^+
  bool kappa_equals_mu = false;    // kappa = image of mu in Y_M
  bool bijection_predicted = false;
};

HnHypothesis hn_hypothesis(const BasicClass& b, const Vec& mu);

/* Exhaustive comparison of the order condition with P_mu membership over
   all sigma-stable standard Levis and all dominant mu up to the height
   bound.  Counterexamples are (order holds, membership fails) pairs; any
   (membership holds, order fails) pair is an implementation bug. */
struct ScanCounterexample {
  std::vector<int> levi_simple;
  Vec mu;
  Vec nu_lift;
  bool cond_order;
  bool cond_pmu;
};

struct ScanReport {
  std::string datum_key;
  std::vector<int> sigma_perm;
  Rat height_bound;
  size_t levis_scanned = 0;
  size_t mu_scanned = 0;
  size_t nu_checked = 0;
  size_t torsion_flagged = 0;  // nu candidates with zero a_P-image dropped
                               // by the strict Y_M^+ reading
  std::vector<ScanCounterexample> counterexamples;
  std::vector<ScanCounterexample> easy_direction_violations;
  bool complete = true;  // false when the budget cut the scan short
};

/* Dominant integral coweights with coroot height <= bound.  For GL data
   the scan is normalized to the slice with last coordinate zero (central
   shifts act on everything in sight). */
std::vector<Vec> dominant_coweights_up_to(const RootDatum& rd, const Rat& height_bound);

ScanReport converse_scan(std::shared_ptr<const RootDatum> rd, const SigmaAction& sigma,
                         const std::vector<std::vector<int>>& levi_filter,
                         const Rat& height_bound, PmuCache& cache,
                         size_t budget = 1000000, Exec exec = Exec::serial);

/* All sigma-stable standard Levi subsets. */
std::vector<std::vector<int>> sigma_stable_levis(const RootDatum& rd,
                                                 const SigmaAction& sigma);

}  // namespace adl

#endif
