#pragma once

#include <atomic>
#include <optional>
#include <vector>

#include "wehler/boundary_spec.hpp"
#include "wehler/cusp.hpp"
#include "wehler/lattice.hpp"

namespace wehler {

// phi_{k,N}: omega_i' -> omega_i + (omega_{k+1} + ... + omega_N) / (k-1), i <= k.
template <class S>
LatticeVector<S> embed(int k, int N, const LatticeVector<S>& v);

struct MaterializeOptions {
  // Overrides the depth stored in a schedule program.
  std::optional<int> depth;
  const std::atomic<bool>* cancel = nullptr;
};

template <class S>
struct Materialized {
  LatticeVector<S> vector;
  std::optional<RecurrenceCertificate> certificate;
};

// q_r in ambient coordinates, exact: explicit vector or normalized truncation,
// carried through embed when requested. Zero without a recurrent part.
LatticeVector<Rational> recurrent_vector(const BoundaryPointSpec& spec, const MaterializeOptions& opts = {},
                                         std::optional<RecurrenceCertificate>* cert = nullptr);

LatticeVector<Rational> divergent_vector(const BoundaryPointSpec& spec);

// word . (q_d + q_r), assembled exactly then converted to S.
template <class S>
Materialized<S> materialize(const BoundaryPointSpec& spec, const MaterializeOptions& opts = {});

inline constexpr int kDefaultParabolicDepth = 10;

struct Decomposition {
  LatticeVector<Rational> p_d;
  LatticeVector<Rational> p_r;
  std::vector<int> S_d;
  std::vector<int> S_r;
  Word coset_word;
  // Spec with parabolic content moved into the divergent part and the word
  // replaced by coset_word.
  BoundaryPointSpec normalized;
  std::optional<RecurrenceCertificate> certificate;
};

// Throws AmbiguousAtDepth when an explicit recurrent vector does not reach the
// chamber of W_{S_r} within parabolic_depth reduction iterations.
Decomposition decompose(const BoundaryPointSpec& spec, int parabolic_depth = kDefaultParabolicDepth,
                        const MaterializeOptions& opts = {});

// Orthonormal frame of span{base, p0, p1}: e0 timelike, e1 along p0, and
// p1 at angle theta_max in the (e1, e2) plane.
struct CircleFrame {
  LatticeVector<BigFloat> e0, e1, e2;
  BigFloat theta_max;
  BigFloat scale;  // makes <D(t), base> = <p0, base>
};

// Throws DegenerateSpan when the three vectors are dependent.
CircleFrame circle_frame(const LatticeVector<BigFloat>& p0, const LatticeVector<BigFloat>& p1,
                         const LatticeVector<BigFloat>& base);

// scale * (e0 + cos(t theta) e1 + sin(t theta) e2).
LatticeVector<BigFloat> circle_point(const CircleFrame& f, const BigFloat& t);

LatticeVector<BigFloat> boundary_curve(const LatticeVector<BigFloat>& p0, const LatticeVector<BigFloat>& p1,
                                       const BigFloat& t);
LatticeVector<BigFloat> boundary_curve(const LatticeVector<BigFloat>& p0, const LatticeVector<BigFloat>& p1,
                                       const BigFloat& t, const LatticeVector<BigFloat>& base);

// Exact value of a binary float.
Rational exact_rational(const BigFloat& x);
LatticeVector<Rational> exact_rational(const LatticeVector<BigFloat>& v);

}  // namespace wehler
