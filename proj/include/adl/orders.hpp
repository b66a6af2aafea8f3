#ifndef ADL_ORDERS_HPP
#define ADL_ORDERS_HPP

#include <memory>
#include <vector>

#include "adl/root_datum.hpp"

namespace adl {

/* A Cartan-preserving permutation of the simple roots (the unramified
   twist; identity = split), together with its canonical extension to a
   lattice automorphism of X_*(T). */
struct SigmaAction {
  std::vector<int> perm;
  int order = 1;     // order of the lattice automorphism
  IMat matrix;       // action on X_*(T)

  bool is_identity() const;
  Vec apply(const Vec& v) const { return imat_apply(matrix, v); }
  QVec apply(const QVec& v) const;
  std::string key() const;
};

/* Throws NOT_AN_AUTOMORPHISM when the permutation does not preserve the
   Cartan matrix.  For GL data the nontrivial diagram flip extends to
   e_i -> -e_{n-1-i} (the unitary-group convention for the central
   direction); sc/ad data extend by permuting basis coordinates. */
SigmaAction validate_sigma(const RootDatum& rd, const std::vector<int>& perm);

/* A sigma-stable standard Levi with its coinvariant machinery:
   Y_M = X_M / (1-sigma) X_M, the free orbit basis of the kernel of
   Y_M -> Y_G, the split-center subspace a_P, and the relative Weyl
   group W_{M(F)} (sigma-fixed elements of W_M). */
struct LeviFolding {
  std::shared_ptr<const LeviDatum> levi;
  SigmaAction sigma;
  LatticeQuotient ym;  // quotient of Z^{rank_x}
  LatticeQuotient yg;
  std::vector<std::vector<int>> orbits;  // sigma-orbits on complement_simple
  IMat order_system;   // columns [orbit coroot reps | Levi coroots | (1-S)]
  std::vector<QVec> ap_basis;     // rational basis of a_P
  std::vector<IMat> relative_weyl;  // W_{M(F)} as matrices on X_*(T)
  std::vector<Vec> n_root_reps;   // one root of T in N per A_P-restriction

  const RootDatum& rd() const { return *levi->datum; }
  std::string key() const;
};

/* Throws LEVI_NOT_SIGMA_STABLE when sigma does not stabilize the subset. */
std::shared_ptr<const LeviFolding> fold_levi(std::shared_ptr<const LeviDatum> lv,
                                             const SigmaAction& sigma);

struct YMClass {
  std::shared_ptr<const LeviFolding> fold;
  Vec rep;
  Vec nf;

  bool operator==(const YMClass& o) const { return nf == o.nf; }
  bool operator!=(const YMClass& o) const { return nf != o.nf; }
};

YMClass to_YM(const std::shared_ptr<const LeviFolding>& fold, const XMClass& c);
YMClass to_YM(const std::shared_ptr<const LeviFolding>& fold, const Vec& coweight);

/* a <=_P b  on X_M: b - a is a non-negative integral combination of the
   images of the complement-simple coroots (requires equal X_G images). */
bool leq_P(const std::shared_ptr<const LeviDatum>& lv, const XMClass& a, const XMClass& b);

/* a <=_P b  on Y_M, decided in the free orbit basis. */
bool leq_P_YM(const YMClass& a, const YMClass& b);

/* Strict positivity of the a_P-image against every root of A_P in N. */
bool in_YM_plus(const YMClass& y);

/* sigma-orbit average X_R -> a (the fixed subspace). */
QVec flat(const SigmaAction& sigma, const QVec& x);
QVec flat(const SigmaAction& sigma, const Vec& x);

/* Average over W_{M(F)}: a -> a_P.  Input must be sigma-fixed. */
QVec pr_M(const LeviFolding& fold, const QVec& a);

/* Image of a Y_M element in a_P (well-defined on classes). */
QVec ap_image(const LeviFolding& fold, const Vec& rep);

/* x <= y in the real dominance order: y - x is a non-negative rational
   combination of the simple coroots. */
bool real_leq(const RootDatum& rd, const QVec& x, const QVec& y);

/* Side-by-side evaluation of the two order criteria (and the projected
   variant of the second one). */
struct ReformReport {
  bool cond_order;        // nu <=_P mu in Y_M
  bool cond_real;         // equal Y_G images and nu_bar <= mu_flat
  bool cond_real_proj;    // equal Y_G images and nu_bar <= pr_M(mu_flat)
  bool agree;             // cond_order == cond_real
};

ReformReport reform_equiv_report(const std::shared_ptr<const LeviFolding>& fold,
                                 const Vec& mu, const YMClass& nu);

}  // namespace adl

#endif
