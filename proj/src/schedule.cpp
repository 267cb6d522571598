#include "wehler/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <mpfr.h>

#include "wehler/errors.hpp"
#include "wehler/lattice.hpp"

namespace wehler {

CuspId::CuspId(int a, int b) : i(std::min(a, b)), j(std::max(a, b)) {
  if (a == b) throw InvalidArgument("cusp needs two distinct indices");
  if (a < 0 || b < 0) throw InvalidArgument("negative cusp index");
}

bool CuspId::adjacent_to(const CuspId& o) const {
  int shared = (i == o.i) + (i == o.j) + (j == o.i) + (j == o.j);
  return shared == 1;
}

std::string CuspId::str() const { return "{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

std::string to_string(LengthRule r) {
  switch (r) {
    case LengthRule::geometric: return "geometric";
    case LengthRule::supergeometric: return "supergeometric";
    case LengthRule::polynomial: return "polynomial";
  }
  return "?";
}

LengthRule length_rule_from_string(const std::string& s) {
  if (s == "geometric") return LengthRule::geometric;
  if (s == "supergeometric") return LengthRule::supergeometric;
  if (s == "polynomial") return LengthRule::polynomial;
  throw InvalidArgument("unknown length rule '" + s + "'");
}

Integer round_exp(const Rational& ell) {
  if (ell < 0) throw InvalidArgument("round_exp needs a nonnegative length");
  double approx = to_double(ell);
  auto bits = static_cast<mpfr_prec_t>(std::ceil(approx * 1.4426950408889634) + 64);
  mpfr_t x;
  mpfr_init2(x, bits);
  mpfr_set_q(x, ell.backend().data(), MPFR_RNDN);
  mpfr_exp(x, x, MPFR_RNDN);
  mpfr_round(x, x);
  Integer k;
  mpfr_get_z(k.backend().data(), x, MPFR_RNDN);
  mpfr_clear(x);
  return k;
}

std::vector<Rational> generator_lengths(const ScheduleGenerator& g) {
  if (g.count < 1) throw InvalidArgument("generator count must be positive");
  if (!(g.L > 1)) throw InvalidArgument("generator needs L > 1");
  std::vector<Rational> out;
  Rational ell = g.L;
  for (int n = 1; n <= g.count; ++n) {
    switch (g.rule) {
      case LengthRule::geometric:
        if (n > 1) ell = std::min(Rational(ell * g.L), g.ell_cap);
        break;
      case LengthRule::supergeometric:
        if (n > 1) ell = std::min(Rational(ell * ell), g.ell_cap);
        break;
      case LengthRule::polynomial: {
        if (!is_integral(g.L)) throw InvalidArgument("polynomial lengths need an integral exponent");
        Integer e = numerator(g.L);
        Integer p = mp::pow(Integer(n), static_cast<unsigned>(e.convert_to<long>()));
        ell = std::min(Rational(p), g.ell_cap);
        break;
      }
    }
    out.push_back(std::min(ell, g.ell_cap));
  }
  return out;
}

std::vector<CuspId> default_cusp_sequence(const std::vector<int>& support, int count) {
  if (support.size() < 3) throw InvalidArgument("cusp walk needs a support of size >= 3");
  std::vector<int> s = support;
  std::sort(s.begin(), s.end());
  std::vector<CuspId> out;
  for (int n = 0; n < count; ++n) out.emplace_back(s[0], n % 2 == 0 ? s[1] : s[2]);
  return out;
}

ExcursionSchedule make_schedule(int N, const ScheduleGenerator& g, std::vector<int> support, const Integer& k_min) {
  ExcursionSchedule s;
  s.N = N;
  std::sort(support.begin(), support.end());
  s.support = support;
  s.generator = g;
  s.k_min = k_min;
  auto lengths = generator_lengths(g);
  auto cusps = default_cusp_sequence(s.support, g.count);
  for (int n = 0; n < g.count; ++n) {
    Integer k = round_exp(lengths[n]);
    if (k < k_min) k = k_min;
    s.excursions.push_back({cusps[n], k, lengths[n]});
  }
  s.validate();
  return s;
}

void ExcursionSchedule::validate() const {
  check_dimension(N);
  std::set<int> sup(support.begin(), support.end());
  if (sup.size() != support.size()) throw InvalidArgument("schedule support has repeated indices");
  if (sup.size() < 3) throw InvalidArgument("schedule support needs at least 3 indices");
  for (int i : sup)
    if (i < 0 || i > N) throw InvalidArgument("schedule support index out of range");
  if (excursions.empty()) throw InvalidArgument("schedule has no excursions");
  BigFloat threshold = to_big(gluing_threshold);
  for (std::size_t n = 0; n < excursions.size(); ++n) {
    const auto& e = excursions[n];
    if (!sup.count(e.cusp.i) || !sup.count(e.cusp.j))
      throw InvalidArgument("cusp " + e.cusp.str() + " leaves the schedule support");
    if (e.k < k_min) throw InvalidArgument("excursion power below k_min");
    if (!(log_of(e.k) > threshold)) throw InvalidArgument("excursion length below the gluing threshold");
    if (n > 0) {
      const auto& prev = excursions[n - 1].cusp;
      if (!(prev == e.cusp) && !prev.adjacent_to(e.cusp))
        throw InvalidArgument("cusps " + prev.str() + " and " + e.cusp.str() + " are not adjacent");
    }
  }
}

std::vector<int> ExcursionSchedule::generators_used() const {
  std::set<int> g;
  for (const auto& e : excursions) {
    g.insert(e.cusp.i);
    g.insert(e.cusp.j);
  }
  return {g.begin(), g.end()};
}

bool ExcursionSchedule::single_cusp() const {
  for (const auto& e : excursions)
    if (!(e.cusp == excursions.front().cusp)) return false;
  return !excursions.empty();
}

}  // namespace wehler
