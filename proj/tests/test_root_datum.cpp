#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "adl/errors.hpp"
#include "adl/root_datum.hpp"

using namespace adl;

namespace {

Vec random_coweight(std::mt19937_64& rng, int n, int span = 4) {
  Vec v(n);
  for (auto& x : v) x = static_cast<Int>(rng() % (2 * span + 1)) - span;
  return v;
}

std::vector<std::shared_ptr<const RootDatum>> sample_data() {
  return {
      build_root_datum("GL", 2, "gl"), build_root_datum("GL", 3, "gl"),
      build_root_datum("A", 2, "sc"),  build_root_datum("A", 3, "ad"),
      build_root_datum("B", 2, "sc"),  build_root_datum("C", 3, "ad"),
      build_root_datum("G2", 2, "sc"), build_root_datum("D", 4, "sc"),
  };
}

}  // namespace

TEST_CASE("GL_2 coordinates") {
  auto rd = build_root_datum("GL", 2, "gl");
  CHECK(rd->rank_x == 2);
  CHECK(rd->simple_coroots.size() == 1);
  CHECK(rd->simple_coroots[0] == Vec{1, -1});
  CHECK(rd->weyl_order == 2);
}

TEST_CASE("G_2 Cartan matrix") {
  auto rd = build_root_datum("G2", 2, "sc");
  CHECK(rd->cartan == IMat{{2, -1}, {-3, 2}});
  CHECK(rd->roots.size() == 12);
  CHECK(rd->weyl_order == 12);
}

TEST_CASE("A_3 simply connected") {
  auto rd = build_root_datum("A", 3, "sc");
  CHECK(rd->rank_x == 3);
  CHECK(rd->simple_coroots.size() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(rd->pair(rd->simple_roots[i], rd->simple_coroots[j]) == rd->cartan[i][j]);
  CHECK(rd->roots.size() == 12);
}

TEST_CASE("bad constructor arguments") {
  CHECK_THROWS_AS(build_root_datum("H3", 3, "sc"), Error);
  CHECK_THROWS_AS(build_root_datum("A", 11, "sc"), Error);
  CHECK_THROWS_AS(build_root_datum("A", 2, "gl"), Error);
  CHECK_THROWS_AS(build_root_datum("G2", 3, "sc"), Error);
}

TEST_CASE("dominant_rep in type A sorts descending") {
  auto rd = build_root_datum("GL", 3, "gl");
  auto [dom, word] = dominant_rep(*rd, {0, 2, 1});
  CHECK(dom == Vec{2, 1, 0});
  CHECK(apply_word(*rd, word, {0, 2, 1}) == dom);
  // dominant input: empty word
  auto [dom2, word2] = dominant_rep(*rd, {2, 1, 0});
  CHECK(dom2 == Vec{2, 1, 0});
  CHECK(word2.empty());
}

TEST_CASE("dominant_rep lands in the orbit and is dominant (full G_2 sweep)") {
  auto rd = build_root_datum("G2", 2, "sc");
  // independent oracle: the full reflection-closure orbit
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    Vec v = random_coweight(rng, 2);
    auto orbit = weyl_orbit(*rd, v);
    auto [dom, word] = dominant_rep(*rd, v);
    CHECK(rd->is_dominant(dom));
    CHECK(std::binary_search(orbit.begin(), orbit.end(), dom));
    CHECK(apply_word(*rd, word, v) == dom);
    CHECK(12 % orbit.size() == 0);
    // exactly one dominant element per orbit
    int count = 0;
    for (const auto& u : orbit)
      if (rd->is_dominant(u)) ++count;
    CHECK(count == 1);
  }
  // the negative of a dominant regular vector needs the longest element
  Vec minus_reg{-1, -1};
  Vec lift = imat_apply(imat_identity(2), minus_reg);
  auto [dom, word] = dominant_rep(*rd, lift);
  CHECK(rd->is_dominant(dom));
  for (int i = 0; i < 2; ++i) CHECK(rd->pair(rd->simple_roots[i], dom) >= 0);
}

TEST_CASE("reflections square to the identity") {
  std::mt19937_64 rng(5);
  for (const auto& rd : sample_data())
    for (int trial = 0; trial < 100; ++trial) {
      Vec v = random_coweight(rng, rd->rank_x);
      for (int i = 0; i < rd->num_simple(); ++i)
        CHECK(rd->reflect_coweight(i, rd->reflect_coweight(i, v)) == v);
    }
}

TEST_CASE("orbit sizes divide the Weyl order; regular orbits are full") {
  std::mt19937_64 rng(9);
  for (const auto& rd : sample_data()) {
    for (int trial = 0; trial < 10; ++trial) {
      Vec v = random_coweight(rng, rd->rank_x);
      auto orbit = weyl_orbit(*rd, v);
      CHECK(rd->weyl_order % static_cast<long long>(orbit.size()) == 0);
    }
    // a regular vector has a full orbit
    Vec reg(rd->rank_x, 0);
    // build something regular: pairing 1 with every simple root if possible
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      Vec v = random_coweight(rng, rd->rank_x, 6);
      bool regular = true;
      for (const auto& root : rd->roots)
        if (rd->pair(root.chr, v) == 0) regular = false;
      if (regular) {
        reg = v;
        found = true;
      }
    }
    if (found) {
      auto orbit = weyl_orbit(*rd, reg);
      CHECK(static_cast<long long>(orbit.size()) == rd->weyl_order);
    }
  }
}

TEST_CASE("dominant_rep is idempotent") {
  std::mt19937_64 rng(13);
  for (const auto& rd : sample_data())
    for (int trial = 0; trial < 50; ++trial) {
      Vec v = random_coweight(rng, rd->rank_x);
      auto [dom, word] = dominant_rep(*rd, v);
      auto [dom2, word2] = dominant_rep(*rd, dom);
      CHECK(dom2 == dom);
      CHECK(word2.empty());
    }
}

TEST_CASE("levi quotients: GL_3 with M = GL_2 x GL_1") {
  auto rd = build_root_datum("GL", 3, "gl");
  auto lv = levi(rd, {0});
  CHECK(lv->levi_simple == std::vector<int>{0});
  CHECK(lv->complement_simple == std::vector<int>{1});
  CHECK(lv->xm.free_rank() == 2);
  CHECK(lv->xm.torsion_orders().empty());
  // the quotient is (a,b,c) -> (a+b, c): classes agree iff those sums do
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Vec a = random_coweight(rng, 3), b = random_coweight(rng, 3);
    bool same_sums = (a[0] + a[1] == b[0] + b[1]) && (a[2] == b[2]);
    CHECK((project_XM(lv, a) == project_XM(lv, b)) == same_sums);
  }
  // kernel is exactly the M-coroot line
  CHECK(lv->xm.is_zero(project_XM(lv, {1, -1, 0}).nf));
  CHECK(!lv->xm.is_zero(project_XM(lv, {1, 0, 0}).nf));
  // the complement coroot is non-torsion in X_M
  auto cls = project_XM(lv, rd->simple_coroots[1]);
  CHECK(!lv->xm.is_zero(cls.nf));
  CHECK(!lv->xm.is_torsion(cls.nf));
}

TEST_CASE("levi edge cases: empty and full subsets") {
  auto rd = build_root_datum("GL", 3, "gl");
  auto lt = levi(rd, {});
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    Vec a = random_coweight(rng, 3), b = random_coweight(rng, 3);
    CHECK((project_XM(lt, a) == project_XM(lt, b)) == (a == b));
  }
  auto lg = levi(rd, {0, 1});
  for (int trial = 0; trial < 50; ++trial) {
    Vec a = random_coweight(rng, 3), b = random_coweight(rng, 3);
    bool same_sum = a[0] + a[1] + a[2] == b[0] + b[1] + b[2];
    CHECK((project_XM(lg, a) == project_XM(lg, b)) == same_sum);
  }
  CHECK_THROWS_AS(levi(rd, {5}), Error);
}

TEST_CASE("X_G torsion for adjoint types") {
  // PGL_2: X_G = Z/2
  auto rd = build_root_datum("A", 1, "ad");
  CHECK(rd->xg.free_rank() == 0);
  CHECK(rd->xg.torsion_orders() == std::vector<Int>{2});
  // SL_2: X_G trivial
  auto sc = build_root_datum("A", 1, "sc");
  CHECK(sc->xg.free_rank() == 0);
  CHECK(sc->xg.torsion_orders().empty());
}

TEST_CASE("project_XM is additive") {
  auto rd = build_root_datum("B", 3, "sc");
  auto lv = levi(rd, {0, 2});
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    Vec a = random_coweight(rng, 3), b = random_coweight(rng, 3);
    Vec sum(3);
    for (int i = 0; i < 3; ++i) sum[i] = a[i] + b[i];
    CHECK(lv->xm.add(project_XM(lv, a).nf, project_XM(lv, b).nf) == project_XM(lv, sum).nf);
  }
}

TEST_CASE("coroot coefficients: examples and reconstruction") {
  auto rd = build_root_datum("GL", 3, "gl");
  auto c = coroot_coefficients(*rd, {1, 0, -1}, {0, 1});
  REQUIRE(c.has_value());
  CHECK(*c == Vec{1, 1});
  CHECK(coroot_coefficients(*rd, {0, 0, 0}, {0, 1}) == Vec{0, 0});
  CHECK(!coroot_coefficients(*rd, {1, 0, 0}, {0, 1}).has_value());
  CHECK_THROWS_AS(coroot_coefficients(*rd, {0, 0, 0}, {7}), Error);

  std::mt19937_64 rng(4);
  for (const auto& datum : sample_data())
    for (int trial = 0; trial < 50; ++trial) {
      Vec x = random_coweight(rng, datum->rank_x);
      std::vector<int> basis;
      for (int i = 0; i < datum->num_simple(); ++i)
        if (rng() % 2) basis.push_back(i);
      auto coeffs = coroot_coefficients(*datum, x, basis);
      if (coeffs) {
        Vec recon(datum->rank_x, 0);
        for (size_t j = 0; j < basis.size(); ++j)
          for (int i = 0; i < datum->rank_x; ++i)
            recon[i] += (*coeffs)[j] * datum->simple_coroots[basis[j]][i];
        CHECK(recon == x);
      }
    }
}

TEST_CASE("coweight height") {
  auto rd = build_root_datum("GL", 3, "gl");
  // (1,0,-1) = alpha_1^vee + alpha_2^vee: height 2
  CHECK(coweight_height(*rd, {1, 0, -1}) == Rat(2));
  // central vectors have height zero
  CHECK(coweight_height(*rd, {5, 5, 5}) == Rat(0));
  // (2,0,0) has semisimple part (4/3,-2/3,-2/3) = (4/3) a_1 + (2/3) a_2
  CHECK(coweight_height(*rd, {2, 0, 0}) == Rat(2));
}
