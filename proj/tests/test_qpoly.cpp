#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "satake/qpoly.hpp"

using namespace satake;

namespace {

QPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 8), coeff(-9, 9), nterms(0, 5);
  QPoly p;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) p.add_term(deg(rng), coeff(rng));
  return p;
}

}  // namespace

TEST_CASE("qpoly basic arithmetic") {
  QPoly q = QPoly::monomial(1);
  QPoly p = q * q - QPoly(1);
  CHECK(p.degree() == 2);
  CHECK(p.coeff(0) == -1);
  CHECK(p.coeff(1) == 0);
  CHECK(p.to_string() == "q^2 - 1");
  CHECK((p - p).is_zero());
  CHECK(QPoly().degree() == -1);
  CHECK(p.eval(3) == 8);
}

TEST_CASE("qpoly ring axioms on random triples") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 500; ++trial) {
    QPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    // evaluation is a ring homomorphism
    BigInt q0 = 7;
    CHECK((a * b).eval(q0) == a.eval(q0) * b.eval(q0));
  }
}

TEST_CASE("qpoly exact division") {
  QPoly q = QPoly::monomial(1);
  QPoly pw = q + QPoly(1);           // 1 + q
  QPoly prod = pw * pw * (q - QPoly(1));
  CHECK(prod.divexact(pw * pw) == q - QPoly(1));
  CHECK_THROWS_AS((q + QPoly(2)).divexact(pw), inconsistency_error);
  // remainder-free but coefficient-inexact case
  CHECK_THROWS_AS((QPoly(3) * q).divexact(QPoly(2) * q), inconsistency_error);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    QPoly a = random_poly(rng), b = random_poly(rng);
    if (b.is_zero()) continue;
    CHECK((a * b).divexact(b) == a);
  }
}
