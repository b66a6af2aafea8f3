#ifndef ADL_ROOT_DATUM_HPP
#define ADL_ROOT_DATUM_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adl/intlin.hpp"
#include "adl/rational.hpp"

namespace adl {

/* Based root datum of a split reductive group, in explicit coordinates.

   Coordinates are fixed per isogeny flavor (Bourbaki numbering of the
   simple roots throughout):
     sc : X_*(T) = coroot lattice, simple coroots = standard basis,
          simple roots = rows of the Cartan matrix;
     ad : X_*(T) = coweight lattice, simple roots = standard basis on the
          character side, simple coroots = columns of the Cartan matrix;
     gl : type GL only; X_*(T) = Z^n, roots/coroots e_i - e_{i+1}.
   The pairing between characters and cocharacters is the dot product.
   Cartan convention: cartan[i][j] = <alpha_i, alpha_j^vee>.  */
struct RootDatum {
  std::string type;     // "A","B","C","D","E6","E7","E8","F4","G2","GL"
  int rank = 0;         // Cartan rank (GL_n has rank n, n-1 simple roots)
  std::string isogeny;  // "sc", "ad", "gl"
  int rank_x = 0;       // dimension of X_*(T)

  IMat cartan;                        // m x m, m = #simple roots
  std::vector<Vec> simple_roots;      // character-side coordinates
  std::vector<Vec> simple_coroots;    // cocharacter coordinates
  long long weyl_order = 1;

  // all roots, character side, with integer coefficients over the simples
  struct Root {
    Vec chr;       // character coordinates
    Vec coeffs;    // coefficients over simple roots
    bool positive; // all coeffs >= 0
  };
  std::vector<Root> roots;

  LatticeQuotient xg;  // X_G = X_*(T) / coroot lattice

  int num_simple() const { return static_cast<int>(simple_roots.size()); }

  Int pair(const Vec& chr, const Vec& cochr) const;
  Rat pair(const Vec& chr, const QVec& cochr) const;

  /* s_i(v) = v - <alpha_i, v> alpha_i^vee on cocharacters */
  Vec reflect_coweight(int i, const Vec& v) const;
  QVec reflect_coweight(int i, const QVec& v) const;

  bool is_dominant(const Vec& v) const;
  bool is_dominant(const QVec& v) const;

  std::string key() const { return type + "_" + std::to_string(rank) + "_" + isogeny; }
};

/* spec: {"type": ..., "rank": ..., "isogeny": "sc|ad|gl"} */
std::shared_ptr<const RootDatum> build_root_datum(const std::string& type, int rank,
                                                  const std::string& isogeny);

/* Dominant representative plus the reduced word of simple reflections that
   carries v to it (applied left to right).  Deterministic: at every step the
   leftmost simple root with negative pairing is used. */
std::pair<Vec, std::vector<int>> dominant_rep(const RootDatum& rd, const Vec& v);

Vec apply_word(const RootDatum& rd, const std::vector<int>& word, Vec v);

/* Full Weyl orbit of v (as a sorted, duplicate-free list).
   Throws BUDGET_EXCEEDED beyond the given size. */
std::vector<Vec> weyl_orbit(const RootDatum& rd, const Vec& v, size_t budget = 1000000);

/* Matrices of all Weyl group elements acting on X_*(T).
   Throws BUDGET_EXCEEDED beyond the given size. */
std::vector<IMat> weyl_elements(const RootDatum& rd, const std::vector<int>& gen_subset,
                                size_t budget = 1000000);

/* height of mu = sum of the simple-coroot coefficients of the semisimple
   part of mu (central directions contribute nothing) */
Rat coweight_height(const RootDatum& rd, const Vec& mu);

/* Standard Levi subgroup given by a subset of the simple roots, together
   with the quotient lattices X_M (and X_G for the full set). */
struct LeviDatum {
  std::shared_ptr<const RootDatum> datum;
  std::vector<int> levi_simple;        // sorted
  std::vector<int> complement_simple;  // sorted
  LatticeQuotient xm;   // X_M = X_*(T) / <alpha_i^vee : i in levi_simple>
  LatticeQuotient xg;   // X_G = X_*(T) / full coroot lattice

  bool is_full() const { return complement_simple.empty(); }
  std::string key() const;
};

std::shared_ptr<const LeviDatum> levi(std::shared_ptr<const RootDatum> datum,
                                      const std::vector<int>& subset);

/* An element of X_M.  Canonical Smith-coordinate label; `rep` is one
   cocharacter representative. */
struct XMClass {
  std::shared_ptr<const LeviDatum> levi;
  Vec rep;
  Vec nf;

  bool operator==(const XMClass& o) const { return nf == o.nf; }
  bool operator!=(const XMClass& o) const { return nf != o.nf; }
};

XMClass project_XM(const std::shared_ptr<const LeviDatum>& lv, const Vec& v);

/* Unique integer coefficients of x over the chosen simple coroots, or
   nullopt when x is outside their integral span. */
std::optional<Vec> coroot_coefficients(const RootDatum& rd, const Vec& x,
                                       const std::vector<int>& basis);

}  // namespace adl

#endif
