#include "wehler/boundary.hpp"

#include <algorithm>
#include <set>

#include <mpfr.h>

#include "wehler/errors.hpp"

namespace wehler {

// ---- spec validation

int BoundaryPointSpec::recurrent_rank_N() const {
  if (!recurrent) return N;
  return recurrent->embed_k ? *recurrent->embed_k : N;
}

std::vector<int> BoundaryPointSpec::divergent_support() const {
  std::vector<int> out;
  for (const auto& [i, c] : divergent) out.push_back(i);
  return out;
}

std::vector<int> BoundaryPointSpec::recurrent_support() const {
  if (!recurrent) return {};
  if (const auto* sp = std::get_if<ScheduleProgram>(&recurrent->body)) return sp->schedule.support;
  std::vector<int> s = recurrent->support;
  std::sort(s.begin(), s.end());
  return s;
}

void BoundaryPointSpec::validate() const {
  check_dimension(N);
  word.check_letters(N);
  for (const auto& [i, c] : divergent) {
    if (i < 0 || i > N) throw InvalidArgument("divergent index " + std::to_string(i) + " out of range");
    if (!(c > 0)) throw InvalidArgument("divergent coefficients must be positive");
  }
  if (!divergent.empty() && static_cast<int>(divergent.size()) > N - 1)
    throw InvalidArgument("divergent support may have at most N-1 indices");
  if (!recurrent) return;

  const auto& r = *recurrent;
  int Nr = recurrent_rank_N();
  if (r.embed_k && (*r.embed_k < 2 || *r.embed_k >= N)) throw InvalidArgument("embed_k must satisfy 2 <= k < N");
  if (const auto* e = std::get_if<ExplicitIsotropic>(&r.body)) {
    if (e->q.N() != Nr) throw DimensionMismatch("explicit recurrent vector has the wrong rank");
    if (!is_isotropic(e->q)) throw InvalidArgument("explicit recurrent vector is not isotropic");
    if (!(pair(e->q, u_vector<Rational>(Nr)) > 0)) throw InvalidArgument("explicit recurrent vector is not future pointing");
  } else {
    const auto& sp = std::get<ScheduleProgram>(r.body);
    if (sp.schedule.N != Nr) throw DimensionMismatch("schedule rank does not match the spec");
    sp.schedule.validate();
    if (sp.depth < 1 || sp.depth > static_cast<int>(sp.schedule.excursions.size()))
      throw InvalidArgument("schedule depth must lie in [1, schedule length]");
  }
  auto sr = recurrent_support();
  std::set<int> srs(sr.begin(), sr.end());
  if (srs.size() != sr.size()) throw InvalidArgument("recurrent support has repeated indices");
  if (srs.size() < 3) throw InvalidArgument("recurrent support needs at least 3 indices");
  for (int i : sr) {
    if (i < 0 || i > Nr) throw InvalidArgument("recurrent support index out of range");
    if (divergent.count(i)) throw InvalidArgument("divergent and recurrent supports overlap");
  }
}

// ---- embedding

template <class S>
LatticeVector<S> embed(int k, int N, const LatticeVector<S>& v) {
  check_dimension(N);
  if (k < 2 || k >= N) throw InvalidArgument("embed needs 2 <= k < N");
  if (v.N() != k) throw DimensionMismatch("embed input must have rank k+1");
  S total(0);
  for (const auto& x : v.coords()) total += x;
  S tail = total / S(k - 1);
  std::vector<S> c(v.coords());
  c.resize(N + 1, tail);
  return LatticeVector<S>(std::move(c));
}

// ---- materialization

LatticeVector<Rational> divergent_vector(const BoundaryPointSpec& spec) {
  auto q = LatticeVector<Rational>::zero(spec.N);
  for (const auto& [i, c] : spec.divergent) q = q.with(i, q[i] + c);
  return q;
}

LatticeVector<Rational> recurrent_vector(const BoundaryPointSpec& spec, const MaterializeOptions& opts,
                                         std::optional<RecurrenceCertificate>* cert) {
  if (!spec.recurrent) return LatticeVector<Rational>::zero(spec.N);
  const auto& r = *spec.recurrent;
  LatticeVector<Rational> q;
  if (const auto* e = std::get_if<ExplicitIsotropic>(&r.body)) {
    q = e->q;
  } else {
    const auto& sp = std::get<ScheduleProgram>(r.body);
    auto point = build_recurrent_point(sp.schedule, opts.depth.value_or(sp.depth), opts.cancel);
    q = point.direction;
    if (cert) *cert = std::move(point.certificate);
  }
  return r.embed_k ? embed(*r.embed_k, spec.N, q) : q;
}

template <class S>
Materialized<S> materialize(const BoundaryPointSpec& spec, const MaterializeOptions& opts) {
  spec.validate();
  Materialized<S> out;
  auto q = divergent_vector(spec) + recurrent_vector(spec, opts, &out.certificate);
  out.vector = convert<S>(apply_word(spec.word, q));
  return out;
}

// ---- decomposition

namespace {

// Moves a nonnegative parabolic vector into the divergent map.
void absorb(std::map<int, Rational>& divergent, const LatticeVector<Rational>& r) {
  for (int i = 0; i <= r.N(); ++i) {
    if (r[i] < 0) throw InvalidArgument("parabolic recurrent content leaves the nef cone");
    if (r[i] > 0) divergent[i] += r[i];
  }
}

}  // namespace

Decomposition decompose(const BoundaryPointSpec& spec, int parabolic_depth, const MaterializeOptions& opts) {
  spec.validate();
  BoundaryPointSpec norm = spec;
  Decomposition out;

  if (spec.recurrent) {
    const auto& r = *spec.recurrent;
    int Nr = spec.recurrent_rank_N();
    auto lift = [&](const LatticeVector<Rational>& v) { return r.embed_k ? embed(*r.embed_k, spec.N, v) : v; };
    if (const auto* e = std::get_if<ExplicitIsotropic>(&r.body)) {
      ReductionOptions ro;
      ro.generators = spec.recurrent_support();
      ReductionResult<Rational> red;
      try {
        red = reduce_to_chamber(e->q, parabolic_depth, ro);
      } catch (const StepCapExceeded&) {
        throw AmbiguousAtDepth("cannot certify the recurrent vector within the parabolic scan depth", parabolic_depth);
      }
      // q = g^-1 r with g in W_{S_r}, which fixes q_d.
      absorb(norm.divergent, lift(red.reduced));
      norm.word = spec.word * red.word.inverse();
      norm.recurrent.reset();
    } else {
      const auto& sp = std::get<ScheduleProgram>(r.body);
      if (sp.schedule.single_cusp()) {
        // The unipotent orbit of u converges to [omega_hat(i,j)] / (2N-2).
        const auto& c = sp.schedule.excursions.front().cusp;
        auto limit = omega_hat<Rational>(Nr, c.i, c.j) * Rational(1, 2 * Nr - 2);
        absorb(norm.divergent, lift(limit));
        norm.recurrent.reset();
      } else {
        norm.recurrent->support = sp.schedule.generators_used();
      }
    }
  }

  for (const auto& [i, c] : norm.divergent) out.S_d.push_back(i);
  if (norm.recurrent) {
    const auto& sp = std::get<ScheduleProgram>(norm.recurrent->body);
    out.S_r = sp.schedule.generators_used();
  }
  if (!out.S_d.empty() && static_cast<int>(out.S_d.size()) > spec.N - 1)
    throw InvalidArgument("decomposition produced a divergent support of size N");

  auto q_d = divergent_vector(norm);
  auto q_r = recurrent_vector(norm, opts, &out.certificate);

  // Strip trailing letters of T = [N] \ (S_d u S_r) that fix q_d + q_r pointwise.
  std::set<int> used(out.S_d.begin(), out.S_d.end());
  used.insert(out.S_r.begin(), out.S_r.end());
  Word w = norm.word;
  while (!w.empty()) {
    int l = w.last_letter();
    if (used.count(l) || q_r[l] != 0) break;
    w = w.without_last();
  }
  norm.word = w;
  out.coset_word = w;
  out.p_d = apply_word(w, q_d);
  out.p_r = apply_word(w, q_r);
  out.normalized = std::move(norm);
  return out;
}

// ---- circle of isotropic rays

namespace {

LatticeVector<BigFloat> scaled(const LatticeVector<BigFloat>& v, const BigFloat& k) { return v * k; }

}  // namespace

CircleFrame circle_frame(const LatticeVector<BigFloat>& p0, const LatticeVector<BigFloat>& p1,
                         const LatticeVector<BigFloat>& base) {
  check_same_dimension(p0.size(), p1.size());
  check_same_dimension(p0.size(), base.size());
  BigFloat eps = default_isotropy_eps();
  for (const auto* p : {&p0, &p1}) {
    if (!is_isotropic(*p, eps)) throw InvalidArgument("curve endpoints must be isotropic");
    if (!(pair(*p, base) > 0)) throw InvalidArgument("curve endpoints must pair positively with the base");
  }
  BigFloat bb = pair(base, base);
  if (!(bb > 0)) throw NonTimelike("curve base must be timelike");

  CircleFrame f;
  f.e0 = scaled(base, 1 / sqrt(bb));
  auto spacelike = [&](const LatticeVector<BigFloat>& v) { return v - f.e0 * pair(v, f.e0); };

  auto g1 = spacelike(p0);
  BigFloat n1 = sqrt(-pair(g1, g1));
  BigFloat size = max_abs(p0) + max_abs(p1) + max_abs(base);
  f.e1 = g1 * (1 / n1);

  auto g2 = spacelike(p1);
  auto h2 = g2 + f.e1 * pair(g2, f.e1);
  BigFloat q2 = -pair(h2, h2);
  if (!(q2 > eps * size * size) || !(n1 > eps * size))
    throw DegenerateSpan("base, p0 and p1 are linearly dependent");
  f.e2 = h2 * (1 / sqrt(q2));
  f.theta_max = atan2(-pair(g2, f.e2), -pair(g2, f.e1));
  f.scale = pair(p0, base) / sqrt(bb);
  return f;
}

LatticeVector<BigFloat> circle_point(const CircleFrame& f, const BigFloat& t) {
  BigFloat a = t * f.theta_max;
  return (f.e0 + f.e1 * BigFloat(cos(a)) + f.e2 * BigFloat(sin(a))) * f.scale;
}

LatticeVector<BigFloat> boundary_curve(const LatticeVector<BigFloat>& p0, const LatticeVector<BigFloat>& p1,
                                       const BigFloat& t, const LatticeVector<BigFloat>& base) {
  if (t < 0 || t > 1) throw InvalidArgument("curve parameter must lie in [0,1]");
  return circle_point(circle_frame(p0, p1, base), t);
}

LatticeVector<BigFloat> boundary_curve(const LatticeVector<BigFloat>& p0, const LatticeVector<BigFloat>& p1,
                                       const BigFloat& t) {
  return boundary_curve(p0, p1, t, u_vector<BigFloat>(p0.N()));
}

Rational exact_rational(const BigFloat& x) {
  if (!isfinite(x)) throw InvalidArgument("exact_rational needs a finite value");
  // get_z_2exp reports the minimal exponent for zero.
  if (x == 0) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.backend().data(), x.backend().data());
  Rational r(m);
  if (e >= 0)
    mpq_mul_2exp(r.backend().data(), r.backend().data(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(r.backend().data(), r.backend().data(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

LatticeVector<Rational> exact_rational(const LatticeVector<BigFloat>& v) {
  std::vector<Rational> c;
  for (const auto& x : v.coords()) c.push_back(exact_rational(x));
  return LatticeVector<Rational>(std::move(c));
}

template LatticeVector<Rational> embed<Rational>(int, int, const LatticeVector<Rational>&);
template LatticeVector<BigFloat> embed<BigFloat>(int, int, const LatticeVector<BigFloat>&);
template Materialized<Rational> materialize<Rational>(const BoundaryPointSpec&, const MaterializeOptions&);
template Materialized<BigFloat> materialize<BigFloat>(const BoundaryPointSpec&, const MaterializeOptions&);

}  // namespace wehler
