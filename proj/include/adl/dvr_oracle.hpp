#ifndef ADL_DVR_ORACLE_HPP
#define ADL_DVR_ORACLE_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adl/laurent.hpp"
#include "adl/parallel.hpp"
#include "adl/rational.hpp"

namespace adl {

/* Square matrices over F_{q^s}((t)), the concrete GL_n model.  The residue
   extension degree s approximates an algebraically closed residue field:
   non-emptiness findings are certificates, emptiness holds only relative
   to the declared (window, s, precision) contract. */
struct LaurentMatrix {
  std::shared_ptr<const GaloisField> f;
  int n = 0;
  std::vector<Laurent> e;  // row-major

  static LaurentMatrix zero(std::shared_ptr<const GaloisField> f, int n);
  static LaurentMatrix identity(std::shared_ptr<const GaloisField> f, int n);
  /* mu(t) = diag(t^{mu_1}, ..., t^{mu_n}) */
  static LaurentMatrix coweight(std::shared_ptr<const GaloisField> f, const Vec& mu);

  Laurent& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
  const Laurent& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }

  LaurentMatrix mul(const LaurentMatrix& o) const;
  LaurentMatrix frobenius_map() const;  // entrywise coefficient q-power
  bool is_block_diagonal(const std::vector<int>& blocks) const;

  /* canonical serialization; entries must be exact */
  std::string key() const;
  std::string str() const;
};

/* A Borel subgroup containing the diagonal torus, as an ordering of the
   coordinate characters: order[a] is the index ranked a-th.  The identity
   ordering is the upper-triangular Borel, its reversal the opposite one. */
struct BorelChoice {
  std::vector<int> order;

  static BorelChoice upper(int n);
  static BorelChoice lower(int n);
};

/* all n! Borel subgroups; n <= 4 enforced */
std::vector<BorelChoice> all_borels(int n);

/* position k when the two orderings differ by swapping ranks k, k+1 */
std::optional<int> adjacent_position(const BorelChoice& b1, const BorelChoice& b2);

/* a minimal gallery from b to its opposite (adjacent steps) */
std::vector<BorelChoice> gallery_to_opposite(const BorelChoice& b);

/* r_B(g): the torus exponents of the Iwasawa decomposition g in K mu(t) U(F).
   Left K- and right U(F)-invariant; PRECISION_EXHAUSTED when a pivot cannot
   be certified. */
Vec iwasawa_retraction(const LaurentMatrix& g, const BorelChoice& borel, int prec);

/* elementary-divisor exponents, sorted decreasingly (the dominant Cartan
   datum for the upper-triangular Borel) */
Vec cartan_invariants(const LaurentMatrix& g, int prec);

bool in_K(const LaurentMatrix& g, int prec);

/* the non-negative step j with r_{B2}(g) - r_{B1}(g) = j alpha^vee for
   adjacent Borel subgroups */
long long adjacency_jump(const LaurentMatrix& g, const BorelChoice& b1,
                         const BorelChoice& b2, int prec);

/* dominance orders in GL_n coordinates */
bool gl_leq_B(const Vec& a, const Vec& b);  // prefix sums of b-a >= 0, equal total
Vec block_sums(const Vec& v, const std::vector<int>& blocks);
bool gl_leq_P(const Vec& block_a, const Vec& block_b);  // on block-sum vectors

/* membership in K.M(F) for a standard block Levi, decided two independent
   ways: agreement of all n! retractions in X_M, and a constructive
   factorization g = k m via lattice saturation. */
struct KmReport {
  bool by_retractions = false;
  bool by_witness = false;
  std::optional<LaurentMatrix> witness_k;  // in K
  std::optional<LaurentMatrix> witness_m;  // block diagonal
};

KmReport km_membership(const LaurentMatrix& g, const std::vector<int>& blocks, int prec);

/* For g in K mu(t) K whose upper retraction equals mu in X_M: g factors as
   k m with the M-Cartan datum of m equal to mu.  Off-hypothesis inputs are
   reported as skipped; the retraction bounds are checked either way. */
struct HnWitnessReport {
  bool cartan_matches_mu = false;
  bool hypothesis_met = false;   // r_B(g) = mu in X_M
  bool factored = false;
  Vec m_invariants;              // per-block Cartan data of m, concatenated
  bool m_invariants_match_mu = false;
  bool all_borel_bounded = false;  // r_{B'}(g) <=_P mu in X_M for all B'
  bool sandwich_ok = false;        // r_B(g) <=_B r_{B'}(g) <=_B mu for all B'
};

HnWitnessReport hn_witness_check(const LaurentMatrix& g, const std::vector<int>& blocks,
                                 const Vec& mu, int prec);

/* canonical upper-triangular lattice representative of g K (monic monomial
   diagonal, row-i entries reduced mod t^{a_i}); exact output */
LaurentMatrix hermite_reduce(const LaurentMatrix& x, int prec);

/* the affine Deligne-Lusztig set at micro scale: all lattice classes with
   elementary divisors in [-window, window] whose transform lands in the
   K-double coset of mu(t) */
struct AdlvResult {
  std::vector<LaurentMatrix> classes;  // canonical representatives, sorted by key
  size_t candidates = 0;               // lattice classes scanned
  long long q = 0;
  int s = 1;
  int window = 0;
  int prec = 0;
};

AdlvResult adlv_enumerate(int n, const Vec& mu, const LaurentMatrix& b, int window,
                          int prec, size_t budget = 50000000, Exec exec = Exec::serial);

/* window-bounded comparison of the M-level and G-level sets for block
   diagonal b (basic in the block Levi) */
struct HodgeNewtonReport {
  bool hypothesis_positive = false;  // strictly decreasing block slopes
  bool hypothesis_kappa_eq_mu = false;
  bool predicted = false;
  bool skipped = false;           // hypothesis not met; sets not compared
  bool mazur_verdict = false;     // kappa <=_P mu on block sums
  size_t g_classes = 0;
  size_t m_classes = 0;
  bool equal = false;
  std::vector<std::string> extra_g;  // G-classes outside the M-image
  AdlvResult g_result;
};

HodgeNewtonReport hodge_newton_verify(const Vec& mu, const LaurentMatrix& b,
                                      const std::vector<int>& blocks, int window, int prec,
                                      size_t budget = 50000000, Exec exec = Exec::serial);

/* seeded generators for the property suites */
LaurentMatrix random_in_K(std::shared_ptr<const GaloisField> f, int n, std::mt19937_64& rng);
LaurentMatrix random_gl(std::shared_ptr<const GaloisField> f, int n, int coweight_range,
                        std::mt19937_64& rng);
/* block-diagonal cyclic representative with invariant exponents k on the
   corner: slopes k/n (basic) */
LaurentMatrix superbasic_block(std::shared_ptr<const GaloisField> f, int n, int k);
LaurentMatrix block_diag(const std::vector<LaurentMatrix>& blocks);

/* matrix literal: array of arrays of series expressions */
LaurentMatrix parse_matrix(std::shared_ptr<const GaloisField> f,
                           const std::vector<std::vector<std::string>>& entries);

}  // namespace adl

#endif
