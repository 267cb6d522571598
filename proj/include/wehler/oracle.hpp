#pragma once

#include <cstdint>
#include <vector>

#include "wehler/chamber.hpp"
#include "wehler/lattice.hpp"

namespace wehler::oracle {

inline constexpr int kRingMaxN = 12;

// Element of Q[w_0..w_N]/(w_i^2), dense over subsets (bit masks) of [N].
class SquareFreePoly {
 public:
  explicit SquareFreePoly(int N);

  static SquareFreePoly constant(int N, const Rational& c);
  static SquareFreePoly generator(int N, int i);
  static SquareFreePoly linear(const LatticeVector<Rational>& G);
  // sigma_p: sum of all square-free monomials of degree p.
  static SquareFreePoly elementary(int N, int p);

  int N() const { return N_; }
  std::size_t size() const { return c_.size(); }
  const Rational& coeff(std::uint32_t mask) const { return c_[mask]; }
  Rational& coeff(std::uint32_t mask) { return c_[mask]; }

  SquareFreePoly component(int degree) const;
  SquareFreePoly operator+(const SquareFreePoly& o) const;
  SquareFreePoly operator*(const Rational& k) const;
  bool operator==(const SquareFreePoly& o) const { return N_ == o.N_ && c_ == o.c_; }

 private:
  int N_;
  std::vector<Rational> c_;
};

SquareFreePoly poly_mul(const SquareFreePoly& p, const SquareFreePoly& q);

// sum_k p^k / k!, dropping everything above total degree `degree_cap`.
SquareFreePoly poly_exp_truncated(const SquareFreePoly& p, int degree_cap);

// sinh(sigma_1)/sigma_1 truncated to the ring.
SquareFreePoly todd_class(int N);

// 2 x (sum of degree-N coefficients).
Rational integrate(const SquareFreePoly& p);

// integrate(p * q) without forming the full product.
Rational integrate_product(const SquareFreePoly& p, const SquareFreePoly& q);

// Holds the Todd class for repeated chi evaluations at one N.
class ChiOracle {
 public:
  explicit ChiOracle(int N);
  Integer operator()(const LatticeVector<Rational>& G) const;

 private:
  int N_;
  SquareFreePoly todd_;
};

Integer chi_oracle(const LatticeVector<Rational>& G);

// Breadth-first search over reduced words of length <= depth; returns a
// shortest word (first in BFS order) landing in the closed chamber.
ReductionResult<Rational> brute_force_reduce(const LatticeVector<Rational>& v, int depth);

}  // namespace wehler::oracle
