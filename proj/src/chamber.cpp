#include "wehler/chamber.hpp"

#include <algorithm>

namespace wehler {

long long default_scan_max_steps(unsigned q) { return 10LL * q + 1000; }

namespace {

template <class S>
void reflect_in_place(std::vector<S>& x, int i) {
  S a = x[i];
  S twice = a + a;
  for (auto& c : x) c += twice;
  x[i] = -a;
}

}  // namespace

template <class S>
LatticeVector<S> reflect(int i, const LatticeVector<S>& v) {
  if (i < 0 || i > v.N()) throw InvalidArgument("reflection index " + std::to_string(i) + " out of range");
  auto x = v.coords();
  reflect_in_place(x, i);
  return LatticeVector<S>(std::move(x));
}

template <class S>
void apply_alternation(std::vector<S>& x, int g, int h, const Integer& m) {
  S p0 = x[g];
  S c = x[g] + x[h];
  S M(m);
  S shift = S(2) * (M * p0 + c * (M * (M - 1)) / S(2));
  for (std::size_t l = 0; l < x.size(); ++l)
    if (static_cast<int>(l) != g && static_cast<int>(l) != h) x[l] += shift;
  int next = (m % 2 == 0) ? g : h;
  int other = next == g ? h : g;
  x[next] = p0 + M * c;
  x[other] = c - x[next];
}

template <class S>
LatticeVector<S> apply_word(const Word& w, const LatticeVector<S>& v) {
  w.check_letters(v.N());
  auto x = v.coords();
  const auto& blocks = w.blocks();
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    if (it->length == 1) {
      reflect_in_place(x, it->first);
      continue;
    }
    bool odd = it->length % 2 == 1;
    int g = odd ? it->first : it->second;
    int h = odd ? it->second : it->first;
    apply_alternation(x, g, h, it->length);
  }
  return LatticeVector<S>(std::move(x));
}

namespace {

template <class S>
struct Threshold {
  static S rel() { return S(0); }
};

template <>
struct Threshold<BigFloat> {
  static BigFloat rel() { return default_isotropy_eps(); }
};

Integer ceil_div(const Rational& a, const Rational& b) { return ceil_to_integer(Rational(a / b)); }
Integer ceil_div(const BigFloat& a, const BigFloat& b) { return ceil_to_integer(BigFloat(a / b)); }

}  // namespace

template <class S>
ReductionResult<S> reduce_to_chamber(const LatticeVector<S>& v, long long max_steps, const ReductionOptions& opts) {
  constexpr bool exact = ScalarTraits<S>::is_exact;
  const int n1 = static_cast<int>(v.size());
  std::vector<int> gens = opts.generators;
  if (gens.empty())
    for (int i = 0; i < n1; ++i) gens.push_back(i);
  std::sort(gens.begin(), gens.end());
  for (int g : gens)
    if (g < 0 || g >= n1) throw InvalidArgument("generator index out of range");

  S eps_rel(0);
  if constexpr (!exact) eps_rel = opts.eps ? BigFloat(*opts.eps) : Threshold<S>::rel();

  auto x = v.coords();
  ReductionResult<S> res;
  res.steps = 0;
  Word acting;  // letters in acting order; the result word is its reversal
  int prev = -1;

  for (;;) {
    int i = gens.front();
    for (int g : gens)
      if (x[g] < x[i]) i = g;
    S thr(0);
    if constexpr (!exact) {
      S m(0);
      for (const auto& c : x)
        if (abs(c) > m) m = abs(c);
      thr = eps_rel * m;
    }
    if (x[i] >= -thr) {
      if constexpr (!exact) {
        for (int g : gens)
          if (x[g] < 0) {
            x[g] = 0;
            res.clamped = true;
            ++res.clamped_count;
          }
      }
      break;
    }
    if (res.iterations >= max_steps) throw StepCapExceeded(max_steps);
    ++res.iterations;

    if (prev < 0 || !opts.accelerate) {
      reflect_in_place(x, i);
      acting.push_back(i);
      res.steps += 1;
      prev = i;
      continue;
    }

    // Greedy keeps alternating between i and prev = j while the pair pivot
    // p_n = p0 + n c stays the (tie-broken) minimum. That set of n is a
    // prefix, so its end is found by bisection.
    const int j = prev;
    const S p0 = x[i];
    const S c = x[i] + x[j];
    if constexpr (!exact) {
      if (abs(c) <= thr)
        throw NonConvergent("coordinate " + std::to_string(i) + " oscillates within tolerance of 0", i);
    }
    std::vector<int> others;
    for (int g : gens)
      if (g != i && g != j) others.push_back(g);

    auto ok = [&](const Integer& n) {
      S N(n);
      S pn = p0 + N * c;
      if (!(pn < 0)) return false;
      int idx = (n % 2 == 0) ? i : j;
      S shift = S(2) * (N * p0 + c * (N * (N - 1)) / S(2));
      for (int l : others) {
        S d = x[l] + shift - pn;
        if (d < 0 || (d == 0 && l < idx)) return false;
      }
      return true;
    };

    Integer upper;
    if (c > 0) {
      upper = ceil_div(S(-p0), c) - 1;
    } else if (others.empty()) {
      if constexpr (exact) throw StepCapExceeded(max_steps);
      throw NonConvergent("pair (" + std::to_string(i) + "," + std::to_string(j) + ") never leaves the cusp", i);
    } else {
      // p_n <= p0 < 0, and for n >= 2 the other coordinates fall at least
      // like x_l - p0 + 2 n p0.
      upper = Integer(2);
      bool first = true;
      for (int l : others) {
        Integer b = ceil_div(S(x[l] - p0), S(-(p0 + p0))) + 2;
        if (first || b < upper) upper = b;
        first = false;
      }
      if (upper < 2) upper = 2;
    }

    Integer m(1);
    if (upper >= 1 && ok(Integer(1))) {
      Integer lo(1), hi(upper);
      while (lo < hi) {
        Integer mid = (lo + hi + 1) / 2;
        if (ok(mid)) lo = mid;
        else hi = mid - 1;
      }
      m = lo + 1;
    }
    apply_alternation(x, i, j, m);
    acting.push_back_run(i, j, m);
    res.steps += m;
    prev = (m % 2 == 1) ? i : j;
  }
  res.reduced = LatticeVector<S>(std::move(x));
  res.word = acting.inverse();
  return res;
}

template <class S>
ConeMembership classify_cone(const LatticeVector<S>& v) {
  ConeMembership r;
  r.ample = std::all_of(v.coords().begin(), v.coords().end(), [](const S& c) { return c > 0; });
  r.nef = std::all_of(v.coords().begin(), v.coords().end(), [](const S& c) { return c >= 0; });
  S sum(0);
  for (const auto& c : v.coords()) sum += c;
  r.in_dual_cone_C = true;
  for (const auto& c : v.coords())
    if (sum - S(v.N() - 1) * c < 0) r.in_dual_cone_C = false;
  r.in_fundamental_F = r.nef && r.in_dual_cone_C;
  r.timelike = is_timelike_positive(v);
  return r;
}

#define WEHLER_INSTANTIATE(S)                                                                        \
  template LatticeVector<S> reflect<S>(int, const LatticeVector<S>&);                               \
  template LatticeVector<S> apply_word<S>(const Word&, const LatticeVector<S>&);                    \
  template void apply_alternation<S>(std::vector<S>&, int, int, const Integer&);                    \
  template ReductionResult<S> reduce_to_chamber<S>(const LatticeVector<S>&, long long,              \
                                                   const ReductionOptions&);                        \
  template ConeMembership classify_cone<S>(const LatticeVector<S>&);

WEHLER_INSTANTIATE(Rational)
WEHLER_INSTANTIATE(BigFloat)
#undef WEHLER_INSTANTIATE

}  // namespace wehler
