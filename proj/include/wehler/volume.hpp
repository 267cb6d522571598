#pragma once

#include <vector>

#include "wehler/chamber.hpp"
#include "wehler/lattice.hpp"

namespace wehler {

// tau_0 = 1, tau_1, ..., tau_n of the coordinates, via prod (1 + x_i z).
template <class S>
std::vector<S> elementary_symmetric(const std::vector<S>& x);

template <class S>
struct SymmetricProfile {
  std::vector<S> taus;
};

template <class S>
SymmetricProfile<S> symmetric_profile(const LatticeVector<S>& reduced) {
  return {elementary_symmetric(reduced.coords())};
}

// tau_k of the chamber-reduced coordinates; vol_0 = 1.
template <class S>
S vol_k(const LatticeVector<S>& v, int k, long long max_steps = kDefaultMaxSteps, const ReductionOptions& opts = {});

// (G^N) = 2 N! tau_N(G) for nef G.
template <class S>
S top_intersection(const LatticeVector<S>& G);

// Volume via reduction; 0 for reducible classes that are not big.
template <class S>
S volume(const LatticeVector<S>& v, long long max_steps = kDefaultMaxSteps, const ReductionOptions& opts = {});

// h^0 of a nef and big integral class: 2 * sum_j tau_{N-2j}(G).
Integer h0_nef_big(const LatticeVector<Rational>& G);

// C_N = 1 + sum_{j=1}^{floor(N/2)} binom(N+1, 2j+1).
Integer sandwich_constant(int N);

Integer factorial(int n);
Integer binomial(int n, int k);

}  // namespace wehler
