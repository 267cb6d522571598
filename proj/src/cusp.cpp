#include "wehler/cusp.hpp"

#include <cmath>

#include "wehler/errors.hpp"
#include "wehler/volume.hpp"

namespace wehler {

namespace {

void check_cusp(const CuspId& c, int N) {
  if (c.j > N) throw InvalidArgument("cusp " + c.str() + " out of range for N=" + std::to_string(N));
}

}  // namespace

template <class S>
BigFloat height(const CuspId& c, const LatticeVector<S>& v) {
  check_cusp(c, v.N());
  S vv = pair(v, v);
  if (!(vv > 0)) throw NonTimelike("height needs <v,v> > 0");
  S pc = pair(v, omega_hat<S>(v.N(), c.i, c.j));
  if (!(pc > 0)) throw ZeroPairing("height needs <v, omega_hat> > 0");
  return sqrt(to_big(vv)) / to_big(pc);
}

template <class S>
bool in_horoball(const CuspId& c, const LatticeVector<S>& v, const BigFloat& L) {
  return height(c, v) >= L;
}

BigFloat s_to_t(const BigFloat& s) {
  if (!(s > 0)) throw InvalidArgument("s_to_t needs s > 0");
  return log1p(1 / s) / 2;
}

BigFloat t_to_s(const BigFloat& t) {
  if (!(t > 0)) throw InvalidArgument("t_to_s needs t > 0");
  return 1 / expm1(2 * t);
}

template <class S>
BigFloat phi_proxy(const LatticeVector<S>& v, long long max_steps, const ReductionOptions& opts) {
  S vv = pair(v, v);
  if (!(vv > 0)) throw NonTimelike("phi_proxy needs <v,v> > 0");
  auto r = reduce_to_chamber(v, max_steps, opts);
  S tau1(0);
  for (const auto& x : r.reduced.coords()) tau1 += x;
  return log_of(tau1) - log_of(vv) / 2;
}

Word excursion_word(const CuspId& c, const Integer& k) {
  if (k < 1) throw InvalidArgument("excursion power must be positive");
  return Word::alternating(c.i, c.j, Integer(2 * k));
}

Word schedule_word(const ExcursionSchedule& s, int depth) {
  if (depth < 0 || depth > static_cast<int>(s.excursions.size()))
    throw InvalidArgument("depth exceeds the schedule length");
  Word w;
  for (int n = 0; n < depth; ++n) w = w * excursion_word(s.excursions[n].cusp, s.excursions[n].k);
  return w;
}

LatticeVector<Rational> schedule_truncation(const ExcursionSchedule& s, int depth) {
  return apply_word(schedule_word(s, depth), u_vector<Rational>(s.N));
}

RecurrentPoint build_recurrent_point(const ExcursionSchedule& s, int depth, const std::atomic<bool>* cancel) {
  s.validate();
  if (depth < 1 || depth > static_cast<int>(s.excursions.size()))
    throw InvalidArgument("depth must lie in [1, schedule length]");

  RecurrenceCertificate cert;
  cert.depth = depth;
  auto prev = u_vector<Rational>(s.N);
  for (int n = 1; n <= depth; ++n) {
    if (cancel && cancel->load()) throw Cancelled();
    auto x = schedule_truncation(s, n);
    cert.increments.push_back(slice_distance(prev, x));
    prev = std::move(x);
  }
  for (std::size_t n = 1; n < cert.increments.size(); ++n)
    if (!(cert.increments[n] < cert.increments[n - 1])) cert.monotone = false;
  if (!cert.monotone) throw NonConvergent("truncation increments are not decreasing");

  if (cert.increments.size() >= 2) {
    // Least squares of log increment against n.
    std::size_t m = cert.increments.size();
    BigFloat sx(0), sy(0), sxx(0), sxy(0);
    for (std::size_t n = 0; n < m; ++n) {
      BigFloat x(static_cast<long>(n + 1));
      BigFloat y = log(cert.increments[n]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    BigFloat M(static_cast<long>(m));
    BigFloat slope = (M * sxy - sx * sy) / (M * sxx - sx * sx);
    cert.decay_rate = exp(slope);
    if (!(*cert.decay_rate < 1)) throw NonConvergent("fitted decay rate is not below 1");
  }

  Rational nu = pair(prev, u_vector<Rational>(s.N));
  RecurrentPoint out;
  out.direction = prev * Rational(1 / nu);
  out.spec.N = s.N;
  RecurrentProgram prog;
  prog.body = ScheduleProgram{s, depth};
  prog.support = s.generators_used();
  out.spec.recurrent = std::move(prog);
  out.certificate = std::move(cert);
  return out;
}

BigFloat limsup_ratio(const BigFloat& L) {
  if (!(L > 1)) throw InvalidArgument("limsup_ratio needs L > 1");
  return (L - 1) / (L + 1);
}

BigFloat delta_inf_target(const BigFloat& L, int N) {
  check_dimension(N);
  return BigFloat(N) / 2 - BigFloat(N - 2) / 2 * limsup_ratio(L);
}

BigFloat solve_L_for_delta(const BigFloat& delta, int N, const BigFloat& tol) {
  if (N < 3) throw InvalidArgument("delta inversion needs N >= 3");
  if (!(delta > 1) || !(delta < BigFloat(N) / 2))
    throw InvalidArgument("delta target must lie strictly between 1 and N/2");
  // delta_inf_target decreases from N/2 (L -> 1) to 1 (L -> inf).
  BigFloat lo(1), hi(2);
  while (delta_inf_target(hi, N) > delta) hi *= 2;
  while (hi - lo > tol) {
    BigFloat mid = (lo + hi) / 2;
    if (delta_inf_target(mid, N) > delta)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

#define WEHLER_INSTANTIATE(S)                                                              \
  template BigFloat height<S>(const CuspId&, const LatticeVector<S>&);                     \
  template bool in_horoball<S>(const CuspId&, const LatticeVector<S>&, const BigFloat&);   \
  template BigFloat phi_proxy<S>(const LatticeVector<S>&, long long, const ReductionOptions&);

WEHLER_INSTANTIATE(Rational)
WEHLER_INSTANTIATE(BigFloat)
#undef WEHLER_INSTANTIATE

}  // namespace wehler
