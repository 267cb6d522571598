#pragma once

#include <optional>
#include <vector>

#include "wehler/lattice.hpp"
#include "wehler/word.hpp"

namespace wehler {

// sigma_i: x_i -> -x_i, x_j -> x_j + 2 x_i.
template <class S>
LatticeVector<S> reflect(int i, const LatticeVector<S>& v);

template <class S>
LatticeVector<S> apply_word(const Word& w, const LatticeVector<S>& v);

// In-place action of m alternating reflections, g acting first, then h, ...
// Closed form: c = x_g + x_h is invariant, the pivot values step by c.
template <class S>
void apply_alternation(std::vector<S>& x, int g, int h, const Integer& m);

struct ReductionOptions {
  // Relative clamp tolerance for the float backend; default 2^(-mantissa/2).
  std::optional<BigFloat> eps;
  // Jump over runs of the greedy rule with the closed form. Off gives the
  // literal one-reflection-per-iteration loop (tests only).
  bool accelerate = true;
  // Reduce only over these generators (all when empty).
  std::vector<int> generators;
};

template <class S>
struct ReductionResult {
  LatticeVector<S> reduced;
  Word word;  // apply_word(word, input) == reduced
  Integer steps;  // reflections, equal to word length
  long long iterations = 0;  // loop iterations; what max_steps caps
  bool clamped = false;
  int clamped_count = 0;
};

inline constexpr long long kDefaultMaxSteps = 100000;

template <class S>
ReductionResult<S> reduce_to_chamber(const LatticeVector<S>& v, long long max_steps = kDefaultMaxSteps,
                                     const ReductionOptions& opts = {});

struct ConeMembership {
  bool ample = false;
  bool nef = false;
  bool in_dual_cone_C = false;
  bool in_fundamental_F = false;
  bool timelike = false;
};

template <class S>
ConeMembership classify_cone(const LatticeVector<S>& v);

// Ray cap for the ray scans: 10 * (-log2 s) + 1000.
long long default_scan_max_steps(unsigned q);

}  // namespace wehler
