#pragma once

#include <random>
#include <vector>

#include "wehler/lattice.hpp"
#include "wehler/word.hpp"

namespace wehler::testing {

inline LatticeVector<Rational> ivec(std::initializer_list<long> xs) {
  std::vector<Rational> c;
  for (long x : xs) c.emplace_back(x);
  return LatticeVector<Rational>(std::move(c));
}

inline LatticeVector<Rational> random_rational_vector(std::mt19937_64& rng, int N, int lo = -9, int hi = 9,
                                                      int max_den = 5) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
  std::vector<Rational> c;
  for (int i = 0; i <= N; ++i) c.emplace_back(num(rng), den(rng));
  return LatticeVector<Rational>(std::move(c));
}

inline LatticeVector<Rational> random_ample(std::mt19937_64& rng, int N, int hi = 6) {
  std::uniform_int_distribution<int> d(1, hi);
  std::vector<Rational> c;
  for (int i = 0; i <= N; ++i) c.emplace_back(d(rng));
  return LatticeVector<Rational>(std::move(c));
}

// Uniform reduced word of the given length over [0, N].
inline Word random_word(std::mt19937_64& rng, int N, int length) {
  std::uniform_int_distribution<int> d(0, N);
  std::vector<int> letters;
  while (static_cast<int>(letters.size()) < length) {
    int g = d(rng);
    if (!letters.empty() && letters.back() == g) continue;
    letters.push_back(g);
  }
  return Word(letters);
}

}  // namespace wehler::testing
