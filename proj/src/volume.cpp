#include "wehler/volume.hpp"

#include <algorithm>

namespace wehler {

Integer factorial(int n) {
  Integer r(1);
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return Integer(0);
  Integer r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Inputs here are chamber coordinates, all nonnegative, so plain accumulation
// has no cancellation to compensate for.
template <class S>
std::vector<S> elementary_symmetric(const std::vector<S>& x) {
  std::vector<S> e(x.size() + 1, S(0));
  e[0] = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t p = i + 1; p >= 1; --p) e[p] += e[p - 1] * x[i];
  return e;
}

template <class S>
S vol_k(const LatticeVector<S>& v, int k, long long max_steps, const ReductionOptions& opts) {
  if (k < 0 || k > v.N()) throw InvalidArgument("vol_k needs 0 <= k <= N");
  if (k == 0) return S(1);
  auto r = reduce_to_chamber(v, max_steps, opts);
  return elementary_symmetric(r.reduced.coords())[k];
}

template <class S>
S top_intersection(const LatticeVector<S>& G) {
  for (const auto& c : G.coords())
    if (c < 0) throw NotNef("top_intersection needs a nef class, got " + G.str());
  return S(2) * S(factorial(G.N())) * elementary_symmetric(G.coords())[G.N()];
}

template <class S>
S volume(const LatticeVector<S>& v, long long max_steps, const ReductionOptions& opts) {
  auto r = reduce_to_chamber(v, max_steps, opts);
  return top_intersection(r.reduced);
}

Integer h0_nef_big(const LatticeVector<Rational>& G) {
  int zeros = 0;
  for (const auto& c : G.coords()) {
    if (!is_integral(c)) throw NotIntegral("h0_nef_big needs integral coordinates, got " + G.str());
    if (c < 0) throw NotNef("h0_nef_big needs a nef class, got " + G.str());
    if (c == 0) ++zeros;
  }
  if (zeros > 1) throw NotBig("h0_nef_big: two or more vanishing coordinates in " + G.str());
  auto tau = elementary_symmetric(G.coords());
  Rational sum(0);
  for (int p = G.N(); p >= 0; p -= 2) sum += tau[p];
  return numerator(Rational(2 * sum));
}

Integer sandwich_constant(int N) {
  if (N < 3) throw InvalidArgument("sandwich constant defined for N >= 3");
  Integer c(1);
  for (int j = 1; 2 * j <= N; ++j) c += binomial(N + 1, 2 * j + 1);
  return c;
}

#define WEHLER_INSTANTIATE(S)                                                                 \
  template std::vector<S> elementary_symmetric<S>(const std::vector<S>&);                    \
  template S vol_k<S>(const LatticeVector<S>&, int, long long, const ReductionOptions&);     \
  template S top_intersection<S>(const LatticeVector<S>&);                                   \
  template S volume<S>(const LatticeVector<S>&, long long, const ReductionOptions&);

WEHLER_INSTANTIATE(Rational)
WEHLER_INSTANTIATE(BigFloat)
#undef WEHLER_INSTANTIATE

}  // namespace wehler
