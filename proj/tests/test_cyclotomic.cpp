#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dcm/cyclotomic.hpp"

using namespace dcm;

namespace {

std::vector<Rat> poly_from(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return v;
}

Cyc random_cyc(std::mt19937_64& rng, unsigned N) {
  std::vector<Rat> cs(totient(N));
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  for (auto& c : cs) c = rat(num(rng), den(rng));
  return Cyc::from_coeffs(N, cs);
}

}  // namespace

TEST_CASE("totient") {
  CHECK(totient(1) == 1);
  CHECK(totient(2) == 1);
  CHECK(totient(12) == 4);
  CHECK(totient(97) == 96);
  CHECK(totient(100) == 40);
}

TEST_CASE("cyclotomic polynomials, small conductors") {
  CHECK(cyclotomic_poly(1) == poly_from({-1, 1}));
  CHECK(cyclotomic_poly(2) == poly_from({1, 1}));
  CHECK(cyclotomic_poly(3) == poly_from({1, 1, 1}));
  CHECK(cyclotomic_poly(4) == poly_from({1, 0, 1}));
  CHECK(cyclotomic_poly(6) == poly_from({1, -1, 1}));
  CHECK(cyclotomic_poly(12) == poly_from({1, 0, -1, 0, 1}));
  // degree is the totient throughout
  for (unsigned N = 1; N <= 40; ++N)
    CHECK(cyclotomic_poly(N).size() == totient(N) + 1);
}

TEST_CASE("roots of unity: powers, sums, products") {
  // zeta_N^N = 1, and the full geometric sum vanishes unless N | k.
  for (unsigned N : {3u, 4u, 5u, 8u, 12u}) {
    Cyc z = Cyc::zeta(N);
    Cyc pw(1);
    for (unsigned i = 0; i < N; ++i) pw *= z;
    CHECK(pw == Cyc(1));
    for (unsigned k = 0; k <= 2 * N; ++k) {
      Cyc sum(0);
      for (unsigned j = 0; j < N; ++j) sum += Cyc::zeta(N, static_cast<long>(j) * k);
      CHECK(sum == (k % N == 0 ? Cyc(Rat(static_cast<long>(N))) : Cyc(0)));
    }
  }
  // (z5 + z5^4)(z5^2 + z5^3) = -1: the golden-ratio norm identity.
  Cyc a = Cyc::zeta(5, 1) + Cyc::zeta(5, 4);
  Cyc b = Cyc::zeta(5, 2) + Cyc::zeta(5, 3);
  CHECK(a * b == Cyc(-1));
  CHECK(a + b == Cyc(-1));
}

TEST_CASE("cross-conductor arithmetic and equality") {
  // z6 = -z3^2, z4^2 = -1, z2 = -1
  CHECK(Cyc::zeta(6) == -Cyc::zeta(3, 2));
  CHECK(Cyc::zeta(4) * Cyc::zeta(4) == Cyc(-1));
  CHECK(Cyc::zeta(2) == Cyc(-1));
  CHECK(Cyc::zeta(8) * Cyc::zeta(8, 7) == Cyc(1));
  CHECK(Cyc::zeta(3) + Cyc::zeta(3, 2) == Cyc(-1));
  // lifting keeps the value
  Cyc z3 = Cyc::zeta(3);
  CHECK(z3.lift(12) == z3);
  CHECK(z3.lift(12).conductor() == 12);
}

TEST_CASE("field axioms, seeded sample") {
  std::mt19937_64 rng(2024);
  for (unsigned N : {1u, 3u, 5u, 8u, 12u, 15u, 60u}) {
    for (int trial = 0; trial < 8; ++trial) {
      Cyc a = random_cyc(rng, N), b = random_cyc(rng, N), c = random_cyc(rng, N);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == Cyc(0));
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == Cyc(1));
        CHECK(a / a == Cyc(1));
      }
    }
  }
}

TEST_CASE("galois action and conjugation") {
  Cyc z = Cyc::zeta(7);
  CHECK(z.galois(2) == Cyc::zeta(7, 2));
  CHECK(z.conj() == Cyc::zeta(7, 6));
  CHECK_THROWS_AS(z.galois(7), std::invalid_argument);
  // conj is an involution and fixes rationals
  Cyc w = Cyc(rat(3, 2)) + Cyc(2) * Cyc::zeta(5, 2);
  CHECK(w.conj().conj() == w);
  CHECK(Cyc(rat(-5, 3)).conj() == Cyc(rat(-5, 3)));
  // norm of 1 + z5: product over the orbit is rational
  Cyc prod(1);
  for (long j : {1L, 2L, 3L, 4L}) prod *= Cyc(1) + Cyc::zeta(5, j);
  CHECK(prod == Cyc(1));
}

TEST_CASE("rational detection and extraction") {
  Cyc z = Cyc::zeta(5);
  Cyc s(0);
  for (long j = 0; j < 5; ++j) s += Cyc::zeta(5, j);
  CHECK(s.is_rational());
  CHECK(s.to_rat() == 0);
  CHECK(!z.is_rational());
  CHECK_THROWS_AS(z.to_rat(), std::domain_error);
  CHECK((z * z.inverse()).to_rat() == 1);
}

TEST_CASE("inverse of mixed-conductor values") {
  Cyc v = Cyc(1) + Cyc(2) * Cyc::zeta(3);
  CHECK(v * v.inverse() == Cyc(1));
  Cyc w = Cyc::zeta(8) - Cyc::zeta(8, 3);  // sqrt(2)
  CHECK(w * w == Cyc(2));
  CHECK(w.inverse() * Cyc(2) == w);
  CHECK_THROWS_AS(Cyc(0).inverse(), std::domain_error);
}

TEST_CASE("string rendering pins") {
  CHECK(Cyc(0).str() == "0");
  CHECK(Cyc(rat(-3, 2)).str() == "-3/2");
  CHECK(Cyc::zeta(5).str() == "z5");
  CHECK((-Cyc::zeta(5)).str() == "-z5");
  CHECK((Cyc(1) + Cyc(2) * Cyc::zeta(5, 2)).str() == "1 + 2*z5^2");
  CHECK((Cyc(2) * Cyc::zeta(7, 4) - Cyc::zeta(7)).str() == "-z7 + 2*z7^4");
  CHECK((Cyc(rat(1, 3)) * Cyc::zeta(7, 4) * Cyc(-1)).str() == "-1/3*z7^4");
  // values keep their stored conductor; equality is still cross-conductor
  CHECK((Cyc::zeta(8) * Cyc::zeta(8)).str() == "z8^2");
  CHECK(Cyc::zeta(8) * Cyc::zeta(8) == Cyc::zeta(4));
}
