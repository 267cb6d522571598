#pragma once

#include <atomic>
#include <optional>
#include <vector>

#include "wehler/boundary_spec.hpp"
#include "wehler/chamber.hpp"
#include "wehler/lattice.hpp"
#include "wehler/schedule.hpp"

namespace wehler {

// Ht_ij(v) = |v| / <v, omega_hat(i,j)>.
template <class S>
BigFloat height(const CuspId& c, const LatticeVector<S>& v);

template <class S>
bool in_horoball(const CuspId& c, const LatticeVector<S>& v, const BigFloat& L);

// t = log((1+s)/s) / 2 and its inverse s = e^(-2t) / (1 - e^(-2t)).
BigFloat s_to_t(const BigFloat& s);
BigFloat t_to_s(const BigFloat& t);

// log vol_1 of the reduction of v/|v|. The additive calibration offset for a
// basepoint a0 is phi_proxy(a0).
template <class S>
BigFloat phi_proxy(const LatticeVector<S>& v, long long max_steps = kDefaultMaxSteps,
                   const ReductionOptions& opts = {});

// (i j)^k: 2k letters, j acting first.
Word excursion_word(const CuspId& c, const Integer& k);

// e_1 e_2 ... e_d for the first d excursions.
Word schedule_word(const ExcursionSchedule& s, int depth);

struct RecurrenceCertificate {
  int depth = 0;
  // increments[n-1] = slice distance between truncations n-1 and n (x_0 = u).
  std::vector<BigFloat> increments;
  // exp of the slope of a least-squares line through log increments.
  std::optional<BigFloat> decay_rate;
  bool monotone = true;
};

struct RecurrentPoint {
  BoundaryPointSpec spec;
  // x_d / <x_d, u> with x_d = W_d . u, exact.
  LatticeVector<Rational> direction;
  RecurrenceCertificate certificate;
};

// Truncation x_d = apply_word(W_d, u) of the schedule; exact.
LatticeVector<Rational> schedule_truncation(const ExcursionSchedule& s, int depth);

// Throws NonConvergent when the increments are not strictly decreasing and
// Cancelled when *cancel is raised (checked between excursions).
RecurrentPoint build_recurrent_point(const ExcursionSchedule& s, int depth,
                                     const std::atomic<bool>* cancel = nullptr);

BigFloat limsup_ratio(const BigFloat& L);
BigFloat delta_inf_target(const BigFloat& L, int N);
// Inverse of L -> delta_inf_target(L, N) on (1, inf) by bisection; target in (1, N/2).
BigFloat solve_L_for_delta(const BigFloat& delta, int N, const BigFloat& tol = BigFloat("1e-12"));

}  // namespace wehler
