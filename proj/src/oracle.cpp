#include "wehler/oracle.hpp"

#include <bit>

namespace wehler::oracle {

namespace {

void guard(int N) {
  if (N < 1 || N > kRingMaxN)
    throw OracleFailure("ring size guard: N must lie in [1, " + std::to_string(kRingMaxN) + "]");
}

int degree(std::uint32_t mask) { return std::popcount(mask); }

}  // namespace

SquareFreePoly::SquareFreePoly(int N) : N_(N) {
  guard(N);
  c_.assign(std::size_t(1) << (N + 1), Rational(0));
}

SquareFreePoly SquareFreePoly::constant(int N, const Rational& c) {
  SquareFreePoly p(N);
  p.c_[0] = c;
  return p;
}

SquareFreePoly SquareFreePoly::generator(int N, int i) {
  SquareFreePoly p(N);
  if (i < 0 || i > N) throw InvalidArgument("generator index out of range");
  p.c_[std::size_t(1) << i] = 1;
  return p;
}

SquareFreePoly SquareFreePoly::linear(const LatticeVector<Rational>& G) {
  SquareFreePoly p(G.N());
  for (int i = 0; i <= G.N(); ++i) p.c_[std::size_t(1) << i] = G[i];
  return p;
}

SquareFreePoly SquareFreePoly::elementary(int N, int deg) {
  SquareFreePoly p(N);
  for (std::size_t m = 0; m < p.c_.size(); ++m)
    if (degree(static_cast<std::uint32_t>(m)) == deg) p.c_[m] = 1;
  return p;
}

SquareFreePoly SquareFreePoly::component(int d) const {
  SquareFreePoly p(N_);
  for (std::size_t m = 0; m < c_.size(); ++m)
    if (degree(static_cast<std::uint32_t>(m)) == d) p.c_[m] = c_[m];
  return p;
}

SquareFreePoly SquareFreePoly::operator+(const SquareFreePoly& o) const {
  if (o.N_ != N_) throw DimensionMismatch("ring dimension mismatch");
  SquareFreePoly p = *this;
  for (std::size_t m = 0; m < c_.size(); ++m) p.c_[m] += o.c_[m];
  return p;
}

SquareFreePoly SquareFreePoly::operator*(const Rational& k) const {
  SquareFreePoly p = *this;
  for (auto& e : p.c_) e *= k;
  return p;
}

SquareFreePoly poly_mul(const SquareFreePoly& p, const SquareFreePoly& q) {
  if (p.N() != q.N()) throw DimensionMismatch("ring dimension mismatch");
  SquareFreePoly r(p.N());
  std::vector<std::uint32_t> qs;
  for (std::uint32_t b = 0; b < q.size(); ++b)
    if (q.coeff(b) != 0) qs.push_back(b);
  for (std::uint32_t a = 0; a < p.size(); ++a) {
    if (p.coeff(a) == 0) continue;
    for (std::uint32_t b : qs)
      if ((a & b) == 0) r.coeff(a | b) += p.coeff(a) * q.coeff(b);
  }
  return r;
}

SquareFreePoly poly_exp_truncated(const SquareFreePoly& p, int degree_cap) {
  SquareFreePoly sum = SquareFreePoly::constant(p.N(), Rational(1));
  SquareFreePoly term = sum;
  for (int k = 1; k <= p.N() + 1; ++k) {
    term = poly_mul(term, p) * Rational(1, k);
    sum = sum + term;
  }
  SquareFreePoly out(p.N());
  for (std::uint32_t m = 0; m < sum.size(); ++m)
    if (degree(m) <= degree_cap) out.coeff(m) = sum.coeff(m);
  return out;
}

SquareFreePoly todd_class(int N) {
  SquareFreePoly s1 = SquareFreePoly::elementary(N, 1);
  SquareFreePoly s1sq = poly_mul(s1, s1);
  SquareFreePoly td = SquareFreePoly::constant(N, Rational(1));
  SquareFreePoly pw = td;
  Integer fact(1);
  for (int p = 1; 2 * p <= N + 1; ++p) {
    pw = poly_mul(pw, s1sq);
    fact *= (2 * p) * (2 * p + 1);
    td = td + pw * Rational(Integer(1), fact);
  }
  return td;
}

Rational integrate(const SquareFreePoly& p) {
  Rational s(0);
  for (std::uint32_t m = 0; m < p.size(); ++m)
    if (degree(m) == p.N()) s += p.coeff(m);
  return 2 * s;
}

Rational integrate_product(const SquareFreePoly& p, const SquareFreePoly& q) {
  if (p.N() != q.N()) throw DimensionMismatch("ring dimension mismatch");
  const std::uint32_t full = (std::uint32_t(1) << (p.N() + 1)) - 1;
  Rational s(0);
  for (std::uint32_t a = 0; a <= full; ++a) {
    if (p.coeff(a) == 0) continue;
    int need = p.N() - degree(a);
    if (need < 0) continue;
    std::uint32_t rest = full & ~a;
    // Subsets of the complement with the missing degree.
    for (std::uint32_t b = rest;; b = (b - 1) & rest) {
      if (degree(b) == need && q.coeff(b) != 0) s += p.coeff(a) * q.coeff(b);
      if (b == 0) break;
    }
  }
  return 2 * s;
}

ChiOracle::ChiOracle(int N) : N_(N), todd_(todd_class(N)) {}

Integer ChiOracle::operator()(const LatticeVector<Rational>& G) const {
  if (G.N() != N_) throw DimensionMismatch("chi oracle built for another N");
  for (const auto& c : G.coords())
    if (!is_integral(c)) throw NotIntegral("chi_oracle needs an integral class");
  SquareFreePoly e = poly_exp_truncated(SquareFreePoly::linear(G), N_);
  Rational chi = integrate_product(e, todd_);
  if (!is_integral(chi))
    throw OracleFailure("non-integral Euler characteristic " + ScalarTraits<Rational>::format(chi) + " for G = " +
                        G.str());
  return numerator(chi);
}

Integer chi_oracle(const LatticeVector<Rational>& G) { return ChiOracle(G.N())(G); }

ReductionResult<Rational> brute_force_reduce(const LatticeVector<Rational>& v, int depth) {
  if (depth < 0 || depth > 10) throw InvalidArgument("brute force depth must lie in [0, 10]");
  struct Node {
    std::vector<Rational> x;
    std::vector<int> acting;
  };
  auto nef = [](const std::vector<Rational>& x) {
    for (const auto& c : x)
      if (c < 0) return false;
    return true;
  };
  auto finish = [&](Node&& n) {
    ReductionResult<Rational> r;
    std::vector<int> letters(n.acting.rbegin(), n.acting.rend());
    r.word = Word(letters);
    r.steps = static_cast<long>(n.acting.size());
    r.iterations = static_cast<long long>(n.acting.size());
    r.reduced = LatticeVector<Rational>(std::move(n.x));
    return r;
  };
  std::vector<Node> level{{v.coords(), {}}};
  if (nef(level[0].x)) return finish(std::move(level[0]));
  const int n1 = static_cast<int>(v.size());
  for (int d = 1; d <= depth; ++d) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (int g = 0; g < n1; ++g) {
        if (!node.acting.empty() && node.acting.back() == g) continue;
        Node child{node.x, node.acting};
        Rational twice = child.x[g] + child.x[g];
        for (auto& c : child.x) c += twice;
        child.x[g] = -node.x[g];
        child.acting.push_back(g);
        if (nef(child.x)) return finish(std::move(child));
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  throw NotFound(depth);
}

}  // namespace wehler::oracle
