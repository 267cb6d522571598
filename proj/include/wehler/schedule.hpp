#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wehler/scalar.hpp"

namespace wehler {

// Unordered pair {i, j}, stored with i < j.
struct CuspId {
  int i = 0;
  int j = 1;
  CuspId() = default;
  CuspId(int a, int b);
  bool adjacent_to(const CuspId& o) const;
  bool operator==(const CuspId&) const = default;
  std::string str() const;
};

enum class LengthRule {
  geometric,       // l_n = L^n
  supergeometric,  // l_n = L^(2^(n-1))
  polynomial,      // l_n = n^L, L a positive integer
};

std::string to_string(LengthRule r);
LengthRule length_rule_from_string(const std::string& s);

struct ScheduleGenerator {
  LengthRule rule = LengthRule::geometric;
  Rational L{3};
  int count = 4;
  // Lengths above the cap are replaced by it, keeping k_n = round(e^l_n) finite.
  Rational ell_cap{10000};
};

struct Excursion {
  CuspId cusp;
  Integer k;  // unipotent power (sigma_i sigma_j)^k
  Rational ell;  // prescribed length l_n when generated, else 0
};

struct ExcursionSchedule {
  int N = 3;
  std::vector<int> support;
  std::vector<Excursion> excursions;
  std::optional<ScheduleGenerator> generator;
  Integer k_min{3};
  // log k_n must exceed this gluing threshold.
  Rational gluing_threshold{1};

  void validate() const;
  std::vector<int> generators_used() const;
  bool single_cusp() const;
};

// Lowest-index admissible walk inside the support: {s0,s1}, {s0,s2}, {s0,s1}, ...
std::vector<CuspId> default_cusp_sequence(const std::vector<int>& support, int count);

// Lengths l_1..l_count of the generator, exact and capped.
std::vector<Rational> generator_lengths(const ScheduleGenerator& g);

// round(exp(l)) computed with enough working bits to be exact.
Integer round_exp(const Rational& ell);

ExcursionSchedule make_schedule(int N, const ScheduleGenerator& g, std::vector<int> support,
                                const Integer& k_min = Integer(3));

}  // namespace wehler
