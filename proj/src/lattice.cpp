#include "wehler/lattice.hpp"

#include <sstream>

namespace wehler {

void check_dimension(int N) {
  if (N < 2 || N > kMaxN)
    throw InvalidArgument("N must lie in [2, " + std::to_string(kMaxN) + "], got " + std::to_string(N));
}

void check_same_dimension(std::size_t a, std::size_t b) {
  if (a != b)
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b) + " coordinates");
}

template <class S>
LatticeVector<S>::LatticeVector(std::vector<S> coords) : x_(std::move(coords)) {
  check_dimension(N());
}

template <class S>
LatticeVector<S> LatticeVector<S>::zero(int N) {
  return LatticeVector(std::vector<S>(N + 1, S(0)));
}

template <class S>
LatticeVector<S> LatticeVector<S>::with(std::size_t i, S value) const {
  auto c = x_;
  c.at(i) = std::move(value);
  return LatticeVector(std::move(c));
}

template <class S>
LatticeVector<S> LatticeVector<S>::operator+(const LatticeVector& o) const {
  check_same_dimension(size(), o.size());
  auto c = x_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.x_[i];
  return LatticeVector(std::move(c));
}

template <class S>
LatticeVector<S> LatticeVector<S>::operator-(const LatticeVector& o) const {
  check_same_dimension(size(), o.size());
  auto c = x_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.x_[i];
  return LatticeVector(std::move(c));
}

template <class S>
LatticeVector<S> LatticeVector<S>::operator*(const S& k) const {
  auto c = x_;
  for (auto& e : c) e *= k;
  return LatticeVector(std::move(c));
}

template <class S>
LatticeVector<S> LatticeVector<S>::operator-() const {
  auto c = x_;
  for (auto& e : c) e = -e;
  return LatticeVector(std::move(c));
}

template <class S>
std::string LatticeVector<S>::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (i) os << ',';
    os << ScalarTraits<S>::format(x_[i]);
  }
  return os.str();
}

std::vector<std::vector<Integer>> FormConstants::gram() const {
  std::vector<std::vector<Integer>> g(N + 1, std::vector<Integer>(N + 1, offdiag()));
  for (int i = 0; i <= N; ++i) g[i][i] = diag();
  return g;
}

// <v,w> = (sum x)(sum y) - (N-1) sum x_i y_i, which is the Gram form expanded.
template <class S>
S pair(const LatticeVector<S>& v, const LatticeVector<S>& w) {
  check_same_dimension(v.size(), w.size());
  S sx(0), sy(0), diag(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    sx += v[i];
    sy += w[i];
    diag += v[i] * w[i];
  }
  return sx * sy - S(v.N() - 1) * diag;
}

BigFloat default_isotropy_eps() {
  return ldexp(BigFloat(1), -static_cast<int>(current_mantissa_bits() / 2));
}

template <>
bool is_isotropic(const LatticeVector<Rational>& v) {
  return norm_sq(v) == 0;
}

bool is_isotropic(const LatticeVector<BigFloat>& v, const BigFloat& eps) {
  BigFloat m = max_abs(v);
  return abs(norm_sq(v)) <= eps * m * m;
}

template <>
bool is_isotropic(const LatticeVector<BigFloat>& v) {
  return is_isotropic(v, default_isotropy_eps());
}

template <class S>
bool is_timelike_positive(const LatticeVector<S>& v) {
  return norm_sq(v) > 0 && pair(v, u_vector<S>(v.N())) > 0;
}

template <class S>
LatticeVector<S> omega(int N, int i) {
  if (i < 0 || i > N) throw InvalidArgument("basis index out of range");
  auto v = LatticeVector<S>::zero(N);
  return v.with(i, S(1));
}

template <class S>
LatticeVector<S> u_vector(int N) {
  check_dimension(N);
  return LatticeVector<S>(std::vector<S>(N + 1, S(1)));
}

template <class S>
LatticeVector<S> alpha(int N, int i) {
  if (i < 0 || i > N) throw InvalidArgument("basis index out of range");
  return u_vector<S>(N).with(i, S(-1));
}

template <class S>
LatticeVector<S> omega_hat(int N, int i, int j) {
  if (i < 0 || i > N || j < 0 || j > N || i == j) throw InvalidArgument("omega_hat needs distinct indices in [0, N]");
  return u_vector<S>(N).with(i, S(0)).with(j, S(0));
}

template <class S>
S max_abs(const LatticeVector<S>& v) {
  S m(0);
  for (const auto& c : v.coords())
    if (abs(c) > m) m = abs(c);
  return m;
}

template <class S>
BigFloat slice_distance(const LatticeVector<S>& v, const LatticeVector<S>& w) {
  auto u = u_vector<S>(v.N());
  S pv = pair(v, u), pw = pair(w, u);
  if (!(pv > 0) || !(pw > 0)) throw InvalidArgument("slice_distance needs positive pairings with u");
  BigFloat s(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    BigFloat d = BigFloat(S(v[i] / pv - w[i] / pw));
    s += d * d;
  }
  return sqrt(s);
}

LatticeVector<BigFloat> to_big(const LatticeVector<Rational>& v) { return convert<BigFloat>(v); }

template <class T, class S>
LatticeVector<T> convert(const LatticeVector<S>& v) {
  std::vector<T> c;
  c.reserve(v.size());
  for (const auto& e : v.coords()) c.emplace_back(T(e));
  return LatticeVector<T>(std::move(c));
}

#define WEHLER_INSTANTIATE(S)                                                   \
  template class LatticeVector<S>;                                             \
  template S pair<S>(const LatticeVector<S>&, const LatticeVector<S>&);        \
  template bool is_timelike_positive<S>(const LatticeVector<S>&);              \
  template LatticeVector<S> omega<S>(int, int);                                \
  template LatticeVector<S> u_vector<S>(int);                                  \
  template LatticeVector<S> alpha<S>(int, int);                                \
  template LatticeVector<S> omega_hat<S>(int, int, int);                       \
  template S max_abs<S>(const LatticeVector<S>&);                              \
  template BigFloat slice_distance<S>(const LatticeVector<S>&, const LatticeVector<S>&);

WEHLER_INSTANTIATE(Rational)
WEHLER_INSTANTIATE(BigFloat)
#undef WEHLER_INSTANTIATE

template LatticeVector<BigFloat> convert<BigFloat, Rational>(const LatticeVector<Rational>&);
template LatticeVector<BigFloat> convert<BigFloat, BigFloat>(const LatticeVector<BigFloat>&);
template LatticeVector<Rational> convert<Rational, Rational>(const LatticeVector<Rational>&);

}  // namespace wehler
