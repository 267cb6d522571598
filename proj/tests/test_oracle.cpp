#include "doctest.h"
#include "support.hpp"
#include "wehler/oracle.hpp"
#include "wehler/volume.hpp"

using namespace wehler;
using namespace wehler::oracle;
using wehler::testing::ivec;

TEST_CASE("square-free ring arithmetic") {
  const int N = 3;
  auto w0 = SquareFreePoly::generator(N, 0), w1 = SquareFreePoly::generator(N, 1);
  CHECK(poly_mul(w0, w0) == SquareFreePoly(N));
  auto one = SquareFreePoly::constant(N, Rational(1));
  auto prod = poly_mul(one + w0, one + w1);
  CHECK(prod == one + w0 + w1 + poly_mul(w0, w1));
  for (int n = 2; n <= 6; ++n) {
    auto s1 = SquareFreePoly::elementary(n, 1);
    auto pw = SquareFreePoly::constant(n, Rational(1));
    Integer f(1);
    for (int p = 1; p <= n + 1; ++p) {
      pw = poly_mul(pw, s1);
      f *= p;
      CHECK(pw * Rational(Integer(1), f) == SquareFreePoly::elementary(n, p));
    }
  }
  CHECK_THROWS_AS(SquareFreePoly(13), OracleFailure);
}

TEST_CASE("Todd class components") {
  for (int N = 2; N <= 7; ++N) {
    auto td = todd_class(N);
    CHECK(td.coeff(0) == 1);
    CHECK(td.component(2) == SquareFreePoly::elementary(N, 2) * Rational(1, 3));
    for (int d = 1; d <= N + 1; d += 2) CHECK(td.component(d) == SquareFreePoly(N));
  }
}

TEST_CASE("integration") {
  for (int N = 2; N <= 6; ++N) {
    auto top = SquareFreePoly::constant(N, Rational(1));
    for (int i = 0; i < N; ++i) top = poly_mul(top, SquareFreePoly::generator(N, i));
    CHECK(integrate(top) == 2);
    CHECK(integrate(poly_mul(top, SquareFreePoly::generator(N, N))) == 0);
    CHECK(integrate(SquareFreePoly::elementary(N, N)) == 2 * (N + 1));
    auto s1 = SquareFreePoly::elementary(N, 1), pw = SquareFreePoly::constant(N, Rational(1));
    for (int p = 0; p < N; ++p) pw = poly_mul(pw, s1);
    CHECK(integrate(pw) / Rational(factorial(N)) == Rational(2 * binomial(N + 1, N)));
    auto e = poly_exp_truncated(SquareFreePoly::linear(u_vector<Rational>(N)), N);
    CHECK(integrate_product(e, todd_class(N)) == integrate(poly_mul(e, todd_class(N))));
  }
}

TEST_CASE("chi oracle examples") {
  CHECK(chi_oracle(u_vector<Rational>(3)) == 16);
  CHECK(chi_oracle(LatticeVector<Rational>::zero(4)) == 2);
  CHECK(chi_oracle(LatticeVector<Rational>::zero(3)) == 0);
  for (int N = 2; N <= 8; ++N) CHECK(chi_oracle(LatticeVector<Rational>::zero(N)) == (N % 2 == 0 ? 2 : 0));
}

TEST_CASE("chi oracle matches the closed-form h0 on small classes") {
  std::mt19937_64 rng(16);
  for (int N = 2; N <= 7; ++N) {
    ChiOracle chi(N);
    for (int trial = 0; trial < 60; ++trial) {
      auto G = wehler::testing::random_ample(rng, N, 5);
      if (trial % 3 == 0) G = G.with(trial % (N + 1), Rational(0));
      CHECK(chi(G) == h0_nef_big(G));
    }
  }
}

TEST_CASE("brute-force reduction") {
  auto r = brute_force_reduce(u_vector<Rational>(3), 4);
  CHECK(r.word.empty());
  auto s = brute_force_reduce(ivec({-1, 3, 3, 3}), 4);
  CHECK(s.word == Word({0}));
  CHECK(s.reduced == ivec({1, 1, 1, 1}));
  CHECK_THROWS_AS(brute_force_reduce(apply_word(Word({0, 1, 2, 3, 0, 1}), u_vector<Rational>(3)), 3), NotFound);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    int N = 3 + trial % 2;
    auto a = wehler::testing::random_ample(rng, N, 3);
    auto v = apply_word(wehler::testing::random_word(rng, N, 1 + trial % 6), a);
    auto bf = brute_force_reduce(v, 8);
    auto gr = reduce_to_chamber(v, 1000);
    CHECK(bf.reduced == gr.reduced);
    CHECK(gr.steps >= bf.steps);
  }
}
