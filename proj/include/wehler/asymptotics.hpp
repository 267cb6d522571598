#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wehler/boundary.hpp"
#include "wehler/chamber.hpp"
#include "wehler/lattice.hpp"

namespace wehler {

// s = base^(-q) for q = q_min..q_max.
struct RayGrid {
  unsigned base = 2;
  int q_min = 4;
  int q_max = 30;
  std::string str() const;
};

template <class S>
S grid_s(unsigned base, int q);

template <class S>
struct RayRow {
  int q = 0;
  S s;
  BigFloat t;
  S vol;
  BigFloat log_vol_over_log_s;
  std::optional<BigFloat> phi;  // empty when a_s is not timelike
  Integer word_length;
  bool clamped = false;
  std::optional<BigFloat> local_slope;
  std::string error;  // empty on success
  bool ok() const { return error.empty(); }
};

template <class S>
struct RayScanTable {
  int N = 0;
  RayGrid grid;
  std::vector<RayRow<S>> rows;
};

struct ScanOptions {
  // Per-row reduction cap; 0 picks default_scan_max_steps(q).
  long long max_steps = 0;
  // 0 uses the hardware concurrency.
  unsigned workers = 0;
  // Window of the per-row local slope column.
  int window = 5;
  ReductionOptions reduction;
};

// Rows of a_s = s A + p. Row order follows the grid regardless of workers.
template <class S>
RayScanTable<S> ray_scan(const LatticeVector<S>& p, const LatticeVector<S>& A, const RayGrid& grid,
                         const ScanOptions& opts = {});

template <class S>
RayScanTable<S> ray_scan(const BoundaryPointSpec& D, const LatticeVector<S>& A, const RayGrid& grid,
                         const ScanOptions& opts = {}, const MaterializeOptions& mopts = {});

struct SlopeEstimates {
  int window = 5;
  // Windowed least squares of log vol against log s through the origin.
  BigFloat delta_sup_hat, delta_inf_hat;
  int delta_sup_q = 0, delta_inf_q = 0;  // window centers
  BigFloat ratio_max, ratio_min;
  // Least squares with intercept over all successful rows.
  BigFloat global_slope;
  int q_min = 0, q_max = 0;  // horizon the estimates are based on
};

// Windowed slope through the origin centered on each successful row (rows
// whose window is incomplete or touches an error row are skipped).
template <class S>
std::vector<std::optional<BigFloat>> windowed_origin_slopes(const RayScanTable<S>& table, int window);

template <class S>
SlopeEstimates slope_estimates(const RayScanTable<S>& table, int window = 5);

struct NuVolEstimate {
  BigFloat real;
  Integer integer;
};
template <class S>
NuVolEstimate nu_vol_estimate(const RayScanTable<S>& table, int window = 5);

struct DesignatedPoint {
  int n = 0;
  BigFloat t;      // along the normalized geodesic
  BigFloat s;      // raw ray parameter of s A + p
  BigFloat q;      // -log_base(s) for grid matching, base 2
  Integer m;       // floor(e^(2 s_to_t(s)))
};

struct SubsequenceDesignation {
  std::vector<DesignatedPoint> hills;
  std::vector<DesignatedPoint> valleys;
  std::string derivation;
};

// Valleys at the return times to the orbit points w . x_n, hills at the
// midpoints between consecutive returns (the first between the basepoint and
// the first return). Needs a schedule program.
SubsequenceDesignation designated_subsequences(const BoundaryPointSpec& D, const LatticeVector<Rational>& A,
                                               int horizon);

LatticeVector<Rational> rounddown(const LatticeVector<Rational>& v);

struct SectionRow {
  Integer m;
  Integer h0;
  BigFloat log_h0_over_log_m;
  Integer word_length;
  Rational lower, upper;  // m^N vol(D + A/2m) and C_N m^N vol(D + A/m)
  Integer nfact_h0;
  bool sandwich_ok = false;
  std::string tag;    // "hill", "valley" or "grid"
  std::string error;  // row is reported but carries no h0 when set
  bool ok() const { return error.empty(); }
};

struct SectionScanTable {
  int N = 0;
  std::string rounding = "floor in the omega basis";
  std::vector<SectionRow> rows;
};

struct TaggedM {
  Integer m;
  std::string tag = "grid";
};

// m strictly increasing after sorting; duplicate m keep the first tag.
std::vector<TaggedM> geometric_m_grid(unsigned base, int q_min, int q_max);
std::vector<TaggedM> designated_m_grid(const SubsequenceDesignation& d, const Integer& m_max);

SectionScanTable h0_scan(const LatticeVector<Rational>& p, const LatticeVector<Rational>& A,
                         std::vector<TaggedM> grid, const ScanOptions& opts = {});

struct KappaEstimates {
  std::optional<BigFloat> kappa_R_minus_hat;  // min over valley rows
  std::optional<BigFloat> kappa_R_plus_hat;   // max over hill rows
  BigFloat kappa_sup_hat;                     // max over all rows
  BigFloat kappa_inf_hat;                     // min over all rows
  Integer m_max;
};

KappaEstimates kappa_estimates(const SectionScanTable& table);

}  // namespace wehler
