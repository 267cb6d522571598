#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "wehler/errors.hpp"
#include "wehler/scalar.hpp"

namespace wehler {

inline constexpr int kMaxN = 64;

// Vector of N^1 in the omega basis: v = sum x_i omega_i, i = 0..N.
template <class S>
class LatticeVector {
 public:
  using scalar_type = S;

  LatticeVector() = default;
  explicit LatticeVector(std::vector<S> coords);
  LatticeVector(std::initializer_list<S> coords) : LatticeVector(std::vector<S>(coords)) {}

  static LatticeVector zero(int N);

  int N() const { return static_cast<int>(x_.size()) - 1; }
  std::size_t size() const { return x_.size(); }
  const S& operator[](std::size_t i) const { return x_[i]; }
  const std::vector<S>& coords() const { return x_; }

  // Copy with coordinate i replaced.
  LatticeVector with(std::size_t i, S value) const;

  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-(const LatticeVector& o) const;
  LatticeVector operator*(const S& k) const;
  LatticeVector operator-() const;

  bool operator==(const LatticeVector& o) const { return x_ == o.x_; }
  bool operator!=(const LatticeVector& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::vector<S> x_;
};

template <class S>
LatticeVector<S> operator*(const S& k, const LatticeVector<S>& v) {
  return v * k;
}

// Gram matrix of the form: -(N-2) on the diagonal, 1 off it.
struct FormConstants {
  int N;
  Integer diag() const { return Integer(-(N - 2)); }
  Integer offdiag() const { return Integer(1); }
  std::vector<std::vector<Integer>> gram() const;
};

template <class S>
S pair(const LatticeVector<S>& v, const LatticeVector<S>& w);

template <class S>
S norm_sq(const LatticeVector<S>& v) {
  return pair(v, v);
}

// Default tolerance for the float backend: 2^(-mantissa/2).
BigFloat default_isotropy_eps();

template <class S>
bool is_isotropic(const LatticeVector<S>& v);
template <>
bool is_isotropic(const LatticeVector<Rational>& v);
template <>
bool is_isotropic(const LatticeVector<BigFloat>& v);
bool is_isotropic(const LatticeVector<BigFloat>& v, const BigFloat& eps);

template <class S>
bool is_timelike_positive(const LatticeVector<S>& v);

template <class S>
LatticeVector<S> omega(int N, int i);
template <class S>
LatticeVector<S> u_vector(int N);
template <class S>
LatticeVector<S> alpha(int N, int i);
template <class S>
LatticeVector<S> omega_hat(int N, int i, int j);

template <class S>
S max_abs(const LatticeVector<S>& v);

// Euclidean distance between [v] and [w] on the slice <., u> = 1, in omega
// coordinates. Both pairings with u must be positive.
template <class S>
BigFloat slice_distance(const LatticeVector<S>& v, const LatticeVector<S>& w);

LatticeVector<BigFloat> to_big(const LatticeVector<Rational>& v);
inline const LatticeVector<BigFloat>& to_big(const LatticeVector<BigFloat>& v) { return v; }

// Backend conversion; Rational -> Rational and BigFloat -> BigFloat are identity.
template <class T, class S>
LatticeVector<T> convert(const LatticeVector<S>& v);

void check_dimension(int N);
void check_same_dimension(std::size_t a, std::size_t b);

}  // namespace wehler
