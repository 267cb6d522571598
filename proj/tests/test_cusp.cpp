#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "wehler/cusp.hpp"
#include "wehler/errors.hpp"

using namespace wehler;
using wehler::testing::ivec;

namespace {

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("height examples") {
  auto u = u_vector<Rational>(3);
  CuspId c(0, 1);
  CHECK(to_double(height(c, u)) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  auto v = ivec({1, 2, 3, 4});
  CHECK(height(c, v * Rational(7)) == height(c, v));
  CHECK(height(CuspId(1, 0), v) == height(c, v));

  auto w = omega_hat<Rational>(3, 0, 1);
  auto w2 = omega_hat<Rational>(3, 0, 2);
  BigFloat last(0);
  for (int q = 1; q <= 20; ++q) {
    auto h = height(c, w + w2 * pow2_neg<Rational>(q));
    CHECK(h > last);
    last = h;
  }
  CHECK(last > 100);

  CHECK_THROWS_AS(height(c, omega_hat<Rational>(3, 0, 1)), NonTimelike);
  // Timelike but past pointing.
  CHECK_THROWS_AS(height(c, -u), ZeroPairing);
}

TEST_CASE("horoball thresholds") {
  auto u = u_vector<Rational>(3);
  CuspId c(0, 1);
  CHECK_FALSE(in_horoball(c, u, BigFloat(1)));
  auto h = height(c, u);
  CHECK(in_horoball(c, u, h));
  auto v = ivec({1, 1, 9, 9});
  for (double L : {0.5, 1.0, 2.0, 4.0})
    if (in_horoball(c, v, BigFloat(L))) CHECK(in_horoball(c, v, BigFloat(L / 2)));
}

TEST_CASE("s and t reparametrization") {
  PrecisionContext pc(256);
  CHECK(to_double(s_to_t(BigFloat(1))) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  for (const char* s : {"1e-30", "0.001", "0.5", "7", "1e20"}) {
    BigFloat x(s);
    CHECK(to_double(abs(t_to_s(s_to_t(x)) / x - 1)) < 1e-60);
  }
  BigFloat s = pow2_neg<BigFloat>(40);
  CHECK(to_double(s_to_t(s) / (-log(s) / 2)) == doctest::Approx(1).epsilon(1e-9));
  CHECK_THROWS_AS(s_to_t(BigFloat(0)), InvalidArgument);
  CHECK_THROWS_AS(t_to_s(BigFloat(-1)), InvalidArgument);
}

TEST_CASE("phi proxy offset, invariance and cusp speed") {
  auto u = u_vector<Rational>(3);
  BigFloat offset = phi_proxy(u);
  CHECK(phi_proxy(u) - offset == 0);
  std::mt19937_64 rng(7);
  for (int n = 0; n < 20; ++n) {
    auto v = wehler::testing::random_ample(rng, 3);
    auto w = wehler::testing::random_word(rng, 3, 12);
    CHECK(phi_proxy(apply_word(w, v)) == phi_proxy(v));
  }
  // a_s = s u + omega_hat(0,1) climbs the cusp at unit speed in t.
  std::vector<double> t, phi;
  for (unsigned q = 10; q <= 40; ++q) {
    auto s = pow2_neg<Rational>(q);
    t.push_back(to_double(s_to_t(to_big(s))));
    phi.push_back(to_double(phi_proxy(u * s + omega_hat<Rational>(3, 0, 1))));
  }
  CHECK(fit_slope(t, phi) == doctest::Approx(1).epsilon(0.01));
}

TEST_CASE("excursion words") {
  CuspId c(1, 2);
  auto v = ivec({3, -1, 2, 5});
  CHECK(apply_word(excursion_word(c, Integer(1)), v) == reflect(1, reflect(2, v)));
  CHECK(excursion_word(c, Integer(5)).length() == 10);
  CHECK_THROWS_AS(excursion_word(c, Integer(0)), InvalidArgument);

  // Depth at the hyperbolic midpoint of [u, (ij)^k u] grows like log k.
  PrecisionContext pc(256);
  auto u = u_vector<Rational>(3);
  BigFloat nu = sqrt(to_big(pair(u, u)));
  std::vector<double> lk, phi;
  for (long k : {8, 64, 512, 4096}) {
    auto x = apply_word(excursion_word(CuspId(0, 1), Integer(k)), u);
    BigFloat nx = sqrt(to_big(pair(x, x)));
    auto mid = to_big(u) * BigFloat(1 / nu) + to_big(x) * BigFloat(1 / nx);
    lk.push_back(std::log(static_cast<double>(k)));
    phi.push_back(to_double(phi_proxy(mid)));
  }
  CHECK(fit_slope(lk, phi) == doctest::Approx(1).epsilon(0.05));

  auto target = omega_hat<Rational>(3, 0, 1);
  BigFloat last(1e9);
  for (long k = 1; k <= 64; ++k) {
    auto d = slice_distance(apply_word(excursion_word(CuspId(0, 1), Integer(k)), u), target);
    CHECK(d < last);
    last = d;
  }
}

TEST_CASE("schedule construction and validation") {
  CHECK(round_exp(Rational(3)) == 20);
  CHECK(round_exp(Rational(0)) == 1);
  CHECK(round_exp(Rational(9)) == 8103);
  // e^100 = 2.688117141816135448e43
  CHECK(integer_string(round_exp(Rational(100))).substr(0, 16) == "2688117141816135");

  ScheduleGenerator g;
  g.L = 3;
  g.count = 4;
  CHECK(generator_lengths(g) == std::vector<Rational>{3, 9, 27, 81});
  g.rule = LengthRule::supergeometric;
  g.L = 20;
  g.count = 3;
  CHECK(generator_lengths(g) == std::vector<Rational>{20, 400, 10000});
  g.rule = LengthRule::polynomial;
  g.L = 10;
  g.count = 3;
  CHECK(generator_lengths(g) == std::vector<Rational>{1, 1024, 10000});

  auto s = make_schedule(3, ScheduleGenerator{LengthRule::geometric, Rational(3), 4}, {0, 1, 2, 3});
  CHECK(s.excursions.size() == 4);
  CHECK(s.excursions[0].cusp == CuspId(0, 1));
  CHECK(s.excursions[1].cusp == CuspId(0, 2));
  CHECK(s.excursions[0].k == 20);
  CHECK(s.generators_used() == std::vector<int>{0, 1, 2});
  CHECK_FALSE(s.single_cusp());

  CHECK(CuspId(0, 1).adjacent_to(CuspId(1, 3)));
  CHECK_FALSE(CuspId(0, 1).adjacent_to(CuspId(2, 3)));
  CHECK_FALSE(CuspId(0, 1).adjacent_to(CuspId(0, 1)));

  auto bad = s;
  bad.excursions[1].cusp = CuspId(2, 3);
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.excursions[2].k = 2;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.support = {0, 1};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.excursions.clear();
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS(build_recurrent_point(bad, 1), InvalidArgument);
  CHECK_THROWS_AS(build_recurrent_point(s, 5), InvalidArgument);
}

TEST_CASE("recurrent points converge geometrically") {
  PrecisionContext pc(256);
  auto s = make_schedule(3, ScheduleGenerator{LengthRule::geometric, Rational(3), 6}, {0, 1, 2, 3});
  auto p = build_recurrent_point(s, 6);
  const auto& inc = p.certificate.increments;
  REQUIRE(inc.size() == 6);
  REQUIRE(p.certificate.decay_rate);
  CHECK(*p.certificate.decay_rate < 1);
  for (std::size_t n = 2; n < inc.size(); ++n) CHECK(inc[n] * 10 <= inc[n - 1]);
  CHECK(pair(p.direction, u_vector<Rational>(3)) == 1);
  // The direction is isotropic up to the last excursion's depth.
  CHECK(to_double(abs(to_big(pair(p.direction, p.direction)))) < 1e-100);
  REQUIRE(p.spec.recurrent);
  CHECK(p.spec.recurrent->support == std::vector<int>{0, 1, 2});

  std::atomic<bool> stop{true};
  CHECK_THROWS_AS(build_recurrent_point(s, 6, &stop), Cancelled);
}

TEST_CASE("single excursion lands within O(1/k) of its cusp") {
  auto target = omega_hat<Rational>(3, 0, 1);
  for (long k : {20, 400, 8000, 160000}) {
    ExcursionSchedule s;
    s.N = 3;
    s.support = {0, 1, 2};
    s.excursions = {{CuspId(0, 1), Integer(k), Rational(0)}};
    auto p = build_recurrent_point(s, 1);
    CHECK(!p.certificate.decay_rate);
    double d = to_double(slice_distance(p.direction, target));
    CHECK(d * k < 1.0);
    CHECK(d * k > 0.01);
  }
}

TEST_CASE("delta targets") {
  CHECK(to_double(delta_inf_target(BigFloat(3), 3)) == doctest::Approx(1.25));
  CHECK(to_double(delta_inf_target(BigFloat(2), 4)) == doctest::Approx(5.0 / 3));
  CHECK(to_double(delta_inf_target(BigFloat("1.0000001"), 5)) == doctest::Approx(2.5).epsilon(1e-6));
  CHECK(to_double(limsup_ratio(BigFloat(3))) == doctest::Approx(0.5));
  CHECK_THROWS_AS(limsup_ratio(BigFloat(1)), InvalidArgument);
  CHECK(to_double(abs(solve_L_for_delta(BigFloat("1.25"), 3) - 3)) < 1e-9);
  CHECK(to_double(abs(solve_L_for_delta(BigFloat(5) / 3, 4) - 2)) < 1e-9);
  CHECK_THROWS_AS(solve_L_for_delta(BigFloat("1.6"), 3), InvalidArgument);
}
