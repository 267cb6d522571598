#include "doctest.h"
#include "support.hpp"
#include "wehler/chamber.hpp"
#include "wehler/volume.hpp"

using namespace wehler;
using wehler::testing::ivec;

namespace {

// Matrix of sigma_i acting on omega-coordinates, for cross-checking.
std::vector<std::vector<long>> reflection_matrix(int N, int i) {
  std::vector<std::vector<long>> m(N + 1, std::vector<long>(N + 1, 0));
  for (int r = 0; r <= N; ++r) {
    m[r][r] = 1;
    m[r][i] = 2;
  }
  m[i][i] = -1;
  return m;
}

}  // namespace

TEST_CASE("word storage collapses squares and merges runs") {
  CHECK(Word({1, 1}).empty());
  CHECK(Word({0, 1, 1, 0}).empty());
  Word w({0, 1, 0, 1, 2});
  CHECK(w.length() == 5);
  CHECK(w.blocks().size() == 2);
  CHECK(w.letters() == std::vector<int>{0, 1, 0, 1, 2});
  CHECK(w.inverse().letters() == std::vector<int>{2, 1, 0, 1, 0});
  CHECK((w * w.inverse()).empty());
  auto big = Word::alternating(0, 1, Integer(1) << 80);
  CHECK(big.length() == (Integer(1) << 80));
  CHECK((big * big.inverse()).empty());
  CHECK(big.str().find("alt(0,1;") != std::string::npos);
  CHECK(Word({3, 2, 3}) == Word::alternating(3, 2, Integer(3)));
}

TEST_CASE("reflection examples") {
  for (int N = 2; N <= 6; ++N)
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j)
        if (i != j) CHECK(reflect(i, omega<Rational>(N, j)) == omega<Rational>(N, j));
  CHECK(reflect(0, omega<Rational>(3, 0)) == ivec({-1, 2, 2, 2}));
  CHECK_THROWS_AS(reflect(4, u_vector<Rational>(3)), InvalidArgument);
}

TEST_CASE("reflection agrees with the matrix action and preserves the form") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int N = 2 + trial % 5;
    int i = static_cast<int>(rng() % (N + 1));
    auto v = wehler::testing::random_rational_vector(rng, N);
    auto w = wehler::testing::random_rational_vector(rng, N);
    auto m = reflection_matrix(N, i);
    std::vector<Rational> mv(N + 1, Rational(0));
    for (int r = 0; r <= N; ++r)
      for (int c = 0; c <= N; ++c) mv[r] += Rational(m[r][c]) * v[c];
    CHECK(reflect(i, v) == LatticeVector<Rational>(mv));
    CHECK(pair(reflect(i, v), reflect(i, w)) == pair(v, w));
    CHECK(reflect(i, reflect(i, v)) == v);
  }
}

TEST_CASE("apply_word examples and closed-form runs") {
  auto v = ivec({-1, 3, 3, 3});
  CHECK(apply_word(Word{}, v) == v);
  CHECK(apply_word(Word({2, 2}), v) == v);
  CHECK(apply_word(Word({0}), v) == ivec({1, 1, 1, 1}));
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    int N = 2 + trial % 5;
    auto w = wehler::testing::random_word(rng, N, 1 + trial % 12);
    auto x = wehler::testing::random_rational_vector(rng, N);
    auto y = x;
    auto ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) y = reflect(*it, y);
    CHECK(apply_word(w, x) == y);
  }
  // A long alternating run through the closed form matches repeated reflection.
  auto x = ivec({2, -1, 5, 4});
  auto y = x;
  for (int k = 0; k < 37; ++k) y = reflect(k % 2 == 0 ? 1 : 2, y);
  CHECK(apply_word(Word::alternating(1, 2, Integer(37)).inverse(), x) == y);
}

TEST_CASE("reduce_to_chamber examples") {
  auto r = reduce_to_chamber(u_vector<Rational>(3), 10);
  CHECK(r.word.empty());
  CHECK(r.reduced == u_vector<Rational>(3));
  auto s = reduce_to_chamber(ivec({-1, 3, 3, 3}), 10);
  CHECK(s.word == Word({0}));
  CHECK(s.reduced == ivec({1, 1, 1, 1}));
  CHECK(s.steps == 1);
}

TEST_CASE("round trip recovers random ample classes") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    int N = 2 + trial % 5;
    auto a = wehler::testing::random_ample(rng, N);
    auto w = wehler::testing::random_word(rng, N, 12);
    auto v = apply_word(w, a);
    auto r = reduce_to_chamber(v, 1000);
    CHECK(r.reduced == a);
    CHECK(apply_word(r.word, v) == r.reduced);
    // Ample points have trivial stabilizer, so the word is w^-1.
    CHECK(r.word == w.inverse());
    CHECK(reduce_to_chamber(r.reduced, 10).word.empty());
  }
}

TEST_CASE("accelerated reduction reproduces the literal greedy loop") {
  std::mt19937_64 rng(33);
  ReductionOptions plain;
  plain.accelerate = false;
  for (int trial = 0; trial < 300; ++trial) {
    int N = 2 + trial % 5;
    auto a = wehler::testing::random_ample(rng, N, 4);
    // Walk deep into a cusp and out again so long runs occur.
    Word w = wehler::testing::random_word(rng, N, 3) * Word::alternating(0, 1, Integer(2 * (trial % 40 + 1))) *
             wehler::testing::random_word(rng, N, 4);
    auto v = apply_word(w, a) + u_vector<Rational>(N) * Rational(trial % 3, 7);
    auto fast = reduce_to_chamber(v, 100000);
    auto slow = reduce_to_chamber(v, 100000, plain);
    CHECK(fast.reduced == slow.reduced);
    CHECK(fast.word == slow.word);
    CHECK(fast.steps == slow.steps);
    CHECK(fast.iterations <= slow.iterations);
  }
}

TEST_CASE("deep cusp points reduce in few iterations") {
  auto p = omega_hat<Rational>(3, 0, 1);
  auto a = p + u_vector<Rational>(3) * Rational(Integer(1), Integer(1) << 200);
  auto w = Word({2}) * Word::alternating(0, 1, Integer(1) << 60) * Word({3});
  auto v = apply_word(w, a);
  auto r = reduce_to_chamber(v, 50);
  CHECK(r.reduced == a);
  CHECK(r.iterations < 10);
}

TEST_CASE("step cap and float oscillation") {
  std::mt19937_64 rng(2);
  auto v = apply_word(wehler::testing::random_word(rng, 3, 20), u_vector<Rational>(3));
  CHECK_THROWS_AS(reduce_to_chamber(v, 1), StepCapExceeded);

  PrecisionContext ctx(128);
  // After sigma_0 the pair (1, 0) has vanishing invariant x_0 + x_1.
  auto bad = LatticeVector<BigFloat>({BigFloat(-1), BigFloat(1), BigFloat(5), BigFloat(5)});
  try {
    reduce_to_chamber(bad, 100);
    FAIL("expected NonConvergent");
  } catch (const NonConvergent& e) {
    CHECK(e.coordinate == 1);
  }
  auto q = apply_word(Word({2, 0, 1, 0, 1}), omega_hat<BigFloat>(3, 0, 1));
  CHECK(reduce_to_chamber(q, 100).reduced == omega_hat<BigFloat>(3, 0, 1));
}

TEST_CASE("float backend clamps tiny negatives and records it") {
  PrecisionContext ctx(256);
  auto v = LatticeVector<BigFloat>({BigFloat(1), BigFloat(2), -ldexp(BigFloat(1), -200), BigFloat(3)});
  auto r = reduce_to_chamber(v, 10);
  CHECK(r.clamped);
  CHECK(r.word.empty());
  CHECK(r.reduced[2] == 0);
}

TEST_CASE("float and exact reductions agree on moderate inputs") {
  PrecisionContext ctx(256);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    int N = 3 + trial % 3;
    auto v = apply_word(wehler::testing::random_word(rng, N, 15), wehler::testing::random_ample(rng, N));
    auto ex = reduce_to_chamber(v, 1000);
    auto fl = reduce_to_chamber(to_big(v), 1000);
    CHECK(ex.word == fl.word);
    for (int i = 0; i <= N; ++i) CHECK(abs(fl.reduced[i] - to_big(ex.reduced[i])) < BigFloat(1e-60));
  }
}

TEST_CASE("classify_cone examples") {
  auto cu = classify_cone(u_vector<Rational>(3));
  CHECK(cu.ample);
  CHECK(cu.nef);
  CHECK(cu.in_dual_cone_C);
  CHECK(cu.in_fundamental_F);
  CHECK(cu.timelike);
  auto ch = classify_cone(omega_hat<Rational>(3, 0, 1));
  CHECK(ch.nef);
  CHECK_FALSE(ch.ample);
  CHECK(ch.in_fundamental_F);
  auto c0 = classify_cone(omega<Rational>(3, 0));
  CHECK(c0.nef);
  CHECK_FALSE(c0.in_dual_cone_C);
}

TEST_CASE("parabolic attraction toward omega_hat") {
  for (int N = 3; N <= 5; ++N) {
    auto p = omega_hat<Rational>(N, 0, 1);
    auto v = u_vector<Rational>(N) + omega<Rational>(N, 2);
    BigFloat last = slice_distance(v, p);
    for (int n = 1; n <= 40; ++n) {
      auto w = apply_word(Word::alternating(0, 1, Integer(2 * n)), v);
      BigFloat d = slice_distance(w, p);
      CHECK(d < last);
      last = d;
    }
    CHECK(last < BigFloat(0.01));
  }
}
