#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "satake/repring.hpp"
#include "satake/root_datum.hpp"
#include "satake/weyl.hpp"

using namespace satake;

namespace {

// known root counts and Cartan matrices are the construction invariants
void check_datum_invariants(const RootDatum& d) {
  // roots closed under negation is built in (we store positives only), so the
  // real checks are the pairing normalizations
  for (int i = 0; i < d.nsimple(); ++i) {
    CHECK(dot(d.two_rho, d.pos_coroots[d.simple_idx[i]]) == 2);
    for (int j = 0; j < d.nsimple(); ++j) {
      Int cij = dot(d.pos_roots[d.simple_idx[i]], d.pos_coroots[d.simple_idx[j]]);
      CHECK(cij == d.bourbaki_cartan[i][j]);
      if (i == j) CHECK(cij == 2);
      if (i != j) CHECK(cij <= 0);
    }
  }
  // every root must have <alpha, alpha^vee> = 2
  for (std::size_t p = 0; p < d.pos_roots.size(); ++p)
    CHECK(dot(d.pos_roots[p], d.pos_coroots[p]) == 2);
}

}  // namespace

TEST_CASE("root data construct with the expected sizes") {
  struct Row {
    const char* label;
    std::size_t pos_roots;
    Int weyl;
  };
  for (const Row& r : {Row{"GL2", 1, 2}, Row{"GL3", 3, 6}, Row{"GL4", 6, 24}, Row{"B2", 4, 8},
                       Row{"B3", 9, 48}, Row{"C3", 9, 48}, Row{"D4", 12, 192}, Row{"G2", 6, 12},
                       Row{"D6", 30, 23040}, Row{"E6", 36, 51840}, Row{"E7", 63, 2903040},
                       Row{"E8", 120, 696729600}, Row{"F4", 24, 1152}}) {
    const RootDatum& d = root_datum(r.label);
    INFO(r.label);
    CHECK(d.pos_roots.size() == r.pos_roots);
    CHECK(d.weyl_order == r.weyl);
    check_datum_invariants(d);
  }
  CHECK(root_datum("C2").label == "B2");  // rank-2 coincidence, one datum
  CHECK(root_datum("A2").label == "GL3");
}

TEST_CASE("pairing") {
  const RootDatum& gl3 = root_datum("GL3");
  // simple root against its fundamental coweight
  for (int i = 0; i < gl3.nsimple(); ++i)
    CHECK(pairing(gl3.simple_root(i), gl3.fundamental_coweight(i)) == 1);
  // bilinearity / zero vector
  CHECK(pairing(gl3.two_rho_vec(), gl3.zero()) == 0);

  // the Spin(12) pairing: <2 w_6, w_3^vee> = 3
  const RootDatum& d6 = root_datum("D6");
  IVec coeffs(6, 0);
  coeffs[5] = 2;  // 2 * fundamental weight 6
  auto x = weight_in_root_lattice(d6, coeffs);
  REQUIRE(x.has_value());
  CHECK(pairing(*x, d6.fundamental_coweight(2)) == 3);

  // datum mismatch must be an error
  CHECK_THROWS_AS(pairing(gl3.two_rho_vec(), root_datum("GL2").zero()), datum_mismatch_error);
}

TEST_CASE("dominance") {
  const RootDatum& gl3 = root_datum("GL3");
  CHECK(is_dominant(gl3.weight({2, 1, 0})));
  CHECK_FALSE(is_dominant(gl3.weight({0, 1, 0})));
  CHECK(is_dominant(gl3.zero()));

  CHECK(dominance_leq(gl3.weight({1, 1, 1}), gl3.weight({2, 1, 0})));
  const RootDatum& gl2 = root_datum("GL2");
  CHECK_FALSE(dominance_leq(gl2.weight({2, 0}), gl2.weight({1, 1})));
  CHECK(dominance_leq(gl2.weight({1, 1}), gl2.weight({2, 0})));
  CHECK(dominance_leq(gl3.weight({2, 1, 0}), gl3.weight({2, 1, 0})));
  CHECK_THROWS_AS(dominance_leq(gl3.weight({0, 1, 0}), gl3.weight({2, 1, 0})),
                  precondition_error);
}

TEST_CASE("dominance is a partial order on random dominant triples") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<Int> entry(0, 4);
  const RootDatum& d = root_datum("GL4");
  auto random_dominant = [&] {
    IVec v(4);
    for (auto& x : v) x = entry(rng);
    std::sort(v.rbegin(), v.rend());
    return d.weight(v);
  };
  for (int trial = 0; trial < 300; ++trial) {
    WeightVec a = random_dominant(), b = random_dominant(), c = random_dominant();
    CHECK(dominance_leq(a, a));
    if (dominance_leq(a, b) && dominance_leq(b, a)) CHECK(a == b);
    if (dominance_leq(a, b) && dominance_leq(b, c)) CHECK(dominance_leq(a, c));
  }
}

TEST_CASE("dominant representative") {
  const RootDatum& gl3 = root_datum("GL3");
  CHECK(dominant_representative(gl3.weight({0, 2, 1})) == gl3.weight({2, 1, 0}));
  CHECK(dominant_representative(gl3.weight({2, 1, 0})) == gl3.weight({2, 1, 0}));

  const RootDatum& b2 = root_datum("C2");
  WeightVec v = b2.weight({-1, -1});
  WeightVec vd = dominant_representative(v);
  CHECK(vd == b2.weight({1, 1}));
  // orbit membership certified by the brute-force orbit
  auto orb = orbit(vd);
  CHECK(std::find(orb.begin(), orb.end(), v) != orb.end());
}

TEST_CASE("dual coweight") {
  const RootDatum& gl2 = root_datum("GL2");
  CHECK(dual_coweight(gl2.weight({1, 0})) == gl2.weight({0, -1}));
  const RootDatum& b2 = root_datum("B2");
  for (IVec c : {IVec{1, 0}, IVec{1, 1}, IVec{2, 1}})
    CHECK(dual_coweight(b2.weight(c)) == b2.weight(c));  // w0 = -1 in type B/C
  const RootDatum& d6 = root_datum("D6");
  WeightVec w6 = d6.fundamental_coweight(5);
  CHECK(dual_coweight(w6) == w6);  // the Spin(12) half-spin coweight is self-dual

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> entry(-3, 3);
  const RootDatum& gl4 = root_datum("GL4");
  for (int trial = 0; trial < 200; ++trial) {
    IVec v(4);
    for (auto& x : v) x = entry(rng);
    WeightVec w = dominant_representative(gl4.weight(v));
    CHECK(dual_coweight(dual_coweight(w)) == w);  // involution
  }
}

TEST_CASE("minuscule and quasi-minuscule") {
  const RootDatum& gl4 = root_datum("GL4");
  CHECK(is_minuscule(gl4.weight({1, 0, 0, 0})));
  CHECK(is_minuscule(gl4.weight({1, 1, 0, 0})));
  CHECK(is_minuscule(gl4.zero()));
  CHECK_FALSE(is_minuscule(gl4.weight({2, 0, 0, 0})));

  const RootDatum& b2 = root_datum("C2");
  CHECK_FALSE(is_minuscule(b2.weight({1, 1})));
  CHECK(is_minuscule(b2.weight({1, 0})));

  CHECK(is_quasi_minuscule(b2.weight({1, 1})));
  CHECK_FALSE(is_quasi_minuscule(b2.weight({1, 0})));
  CHECK_THROWS_AS(is_quasi_minuscule(b2.zero()), precondition_error);

  // adjoint representation of A2: weight set is the roots plus zero
  const RootDatum& gl3 = root_datum("GL3");
  CHECK(is_quasi_minuscule(gl3.weight({1, 0, -1})));

  // cross-engine characterization: minuscule iff the weight system is one
  // orbit with all multiplicities 1
  for (const char* label : {"GL3", "B2", "B3", "C3", "D4"}) {
    const RootDatum& d = root_datum(label);
    for (int i = 0; i < d.nsimple(); ++i) {
      WeightVec w = d.fundamental_coweight(i);
      const WeightMultiset& ws = weight_system(w);
      bool orbit_only = true;
      auto orb = orbit(w);
      std::vector<IVec> oc;
      for (auto& o : orb) oc.push_back(o.c);
      std::sort(oc.begin(), oc.end());
      std::vector<IVec> sup;
      for (auto& [cvec, m] : ws.entries) {
        sup.push_back(cvec);
        if (m != 1) orbit_only = false;
      }
      orbit_only = orbit_only && (sup == oc);
      INFO(label << " w" << i + 1);
      CHECK(orbit_only == is_minuscule(w));
    }
  }
}

TEST_CASE("allowed fundamental coweights") {
  CHECK(is_allowed_fundamental(root_datum("C4ad"), 4));
  CHECK(is_allowed_fundamental(root_datum("C3ad"), 3));
  CHECK_FALSE(is_allowed_fundamental(root_datum("B3ad"), 2));
  CHECK(is_allowed_fundamental(root_datum("B3ad"), 1));
  CHECK(is_allowed_fundamental(root_datum("B3ad"), 3));
  for (int i = 1; i <= 8; ++i) CHECK_FALSE(is_allowed_fundamental(root_datum("E8"), i));
  CHECK_THROWS_AS(is_allowed_fundamental(root_datum("B3ad"), 4), precondition_error);
  // unique-minuscule types: that minuscule coweight is allowed
  CHECK(is_allowed_fundamental(root_datum("B5ad"), 1));
  CHECK(is_allowed_fundamental(root_datum("C5ad"), 5));
  CHECK(is_allowed_fundamental(root_datum("E7"), 7));
}

TEST_CASE("sum of minuscules decomposition") {
  const RootDatum& gl3 = root_datum("GL3");
  auto dec = sum_of_minuscules_decomposition(gl3.weight({2, 1, 0}));
  REQUIRE(dec.has_value());
  REQUIRE(dec->size() == 2);
  CHECK((*dec)[0].first == gl3.weight({1, 0, 0}));
  CHECK((*dec)[0].second == 1);
  CHECK((*dec)[1].first == gl3.weight({1, 1, 0}));
  CHECK((*dec)[1].second == 1);

  const RootDatum& b2 = root_datum("C2");
  CHECK_FALSE(sum_of_minuscules_decomposition(b2.weight({1, 1})).has_value());
  CHECK(sum_of_minuscules_decomposition(b2.weight({2, 0})).has_value());

  // a dominant minuscule decomposes as itself
  auto self = sum_of_minuscules_decomposition(gl3.weight({1, 1, 0}));
  REQUIRE(self.has_value());
  REQUIRE(self->size() == 1);
  CHECK((*self)[0] == std::make_pair(gl3.weight({1, 1, 0}), Int(1)));

  // negative central part for GLn
  auto neg = sum_of_minuscules_decomposition(gl3.weight({0, -1, -1}));
  REQUIRE(neg.has_value());
  IVec sum(3, 0);
  for (auto& [w, m] : *neg) {
    CHECK(is_minuscule(w));
    sum = sum + m * w.c;
  }
  CHECK(sum == IVec{0, -1, -1});
}

TEST_CASE("project to adjoint") {
  const RootDatum& gl2 = root_datum("GL2");
  auto p = project_to_adjoint(gl2.weight({1, 0}));
  REQUIRE(p.size() == 1);
  CHECK(p[0].c == IVec{1});  // coefficient 1 on the A1 fundamental coweight
  CHECK(project_to_adjoint(gl2.weight({1, 1}))[0].c == IVec{0});  // central

  // projection then inclusion is the identity on a single-factor weight of a
  // product datum
  const RootDatum& prod = root_datum("GL2xB2");
  WeightVec w = prod.weight({0, 0, 1, 0});
  auto pp = project_to_adjoint(w);
  REQUIRE(pp.size() == 2);
  CHECK(pp[0].c == IVec{0});
  CHECK(pp[1].c == IVec{1, 0});  // B2 adjoint coordinates of (1,0): w1^vee
}

TEST_CASE("appendix minuscule column for the computational data") {
  // in the B2 model the minuscule coweight is w1 (the Sp4 standard rep)
  const RootDatum& b2 = root_datum("B2");
  std::vector<int> minuscule_nodes;
  for (int i = 0; i < b2.nsimple(); ++i)
    if (is_minuscule(b2.fundamental_coweight(i))) minuscule_nodes.push_back(i + 1);
  CHECK(minuscule_nodes == std::vector<int>{1});

  const RootDatum& d4 = root_datum("D4");
  minuscule_nodes.clear();
  for (int i = 0; i < d4.nsimple(); ++i)
    if (is_minuscule(d4.fundamental_coweight(i))) minuscule_nodes.push_back(i + 1);
  CHECK(minuscule_nodes == std::vector<int>{1, 3, 4});

  const RootDatum& g2 = root_datum("G2");
  for (int i = 0; i < g2.nsimple(); ++i) CHECK_FALSE(is_minuscule(g2.fundamental_coweight(i)));
}

TEST_CASE("center data") {
  CHECK(root_datum("GL3").center_free_rank == 1);
  CHECK(root_datum("GL3").center_invariants.empty());
  CHECK(root_datum("B2").center_invariants == std::vector<Int>{2});
  CHECK(root_datum("D4").center_invariants == std::vector<Int>{2, 2});
  CHECK(root_datum("D5ad").center_invariants == std::vector<Int>{4});
  CHECK(root_datum("E6").center_invariants == std::vector<Int>{3});
  CHECK(root_datum("E7").center_invariants == std::vector<Int>{2});
  CHECK(root_datum("E8").center_invariants.empty());
  CHECK(root_datum("G2").center_invariants.empty());
}

TEST_CASE("weight vec arithmetic is componentwise and datum-checked") {
  const RootDatum& gl2 = root_datum("GL2");
  WeightVec a = gl2.weight({1, 2}), b = gl2.weight({3, -1});
  CHECK((a + b).c == IVec{4, 1});
  CHECK((a - b).c == IVec{-2, 3});
  CHECK((-a).c == IVec{-1, -2});
  CHECK((3 * a).c == IVec{3, 6});
  CHECK_THROWS_AS(a + root_datum("GL3").zero(), datum_mismatch_error);
}
