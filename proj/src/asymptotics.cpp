#include "wehler/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <thread>

#include "wehler/cusp.hpp"
#include "wehler/errors.hpp"
#include "wehler/volume.hpp"

namespace wehler {

namespace {

// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
// handled exactly once; results go to caller-owned slots.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

std::string describe(const std::exception& e) {
  if (dynamic_cast<const StepCapExceeded*>(&e)) return std::string("StepCapExceeded: ") + e.what();
  if (dynamic_cast<const NonConvergent*>(&e)) return std::string("NonConvergent: ") + e.what();
  if (dynamic_cast<const ReducedNotBig*>(&e)) return std::string("ReducedNotBig: ") + e.what();
  return e.what();
}

struct Fit {
  BigFloat slope, intercept;
};

Fit least_squares(const std::vector<BigFloat>& x, const std::vector<BigFloat>& y) {
  BigFloat n(static_cast<long>(x.size())), sx(0), sy(0), sxx(0), sxy(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  BigFloat slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

BigFloat origin_slope(const std::vector<BigFloat>& x, const std::vector<BigFloat>& y) {
  BigFloat sxx(0), sxy(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return sxy / sxx;
}

// Centered windows of successful rows; calls f(center, xs, ys).
template <class S, class F>
void for_each_window(const RayScanTable<S>& table, int window, F f) {
  if (window < 2) throw InvalidArgument("slope window must be at least 2");
  int h = window / 2;
  const auto& rows = table.rows;
  for (int c = 0; c < static_cast<int>(rows.size()); ++c) {
    int lo = c - h, hi = lo + window;
    if (lo < 0 || hi > static_cast<int>(rows.size())) continue;
    std::vector<BigFloat> xs, ys;
    bool ok = true;
    for (int i = lo; i < hi && ok; ++i) {
      ok = rows[i].ok();
      if (ok) {
        xs.push_back(log_of(rows[i].s));
        ys.push_back(log_of(rows[i].vol));
      }
    }
    if (ok) f(c, xs, ys);
  }
}

}  // namespace

std::string RayGrid::str() const {
  return "s=" + std::to_string(base) + "^-q,q=" + std::to_string(q_min) + ".." + std::to_string(q_max);
}

template <>
Rational grid_s<Rational>(unsigned base, int q) {
  if (q >= 0) return Rational(Integer(1), mp::pow(Integer(base), static_cast<unsigned>(q)));
  return Rational(mp::pow(Integer(base), static_cast<unsigned>(-q)));
}

template <>
BigFloat grid_s<BigFloat>(unsigned base, int q) {
  return pow(BigFloat(base), -q);
}

template <class S>
RayScanTable<S> ray_scan(const LatticeVector<S>& p, const LatticeVector<S>& A, const RayGrid& grid,
                         const ScanOptions& opts) {
  check_same_dimension(p.size(), A.size());
  for (const auto& x : A.coords())
    if (!(x > 0)) throw InvalidArgument("ray scan needs an ample A");
  if (grid.base < 2) throw InvalidArgument("grid base must be at least 2");
  RayScanTable<S> table;
  table.N = p.N();
  table.grid = grid;
  int n = std::max(0, grid.q_max - grid.q_min + 1);
  table.rows.resize(n);
  int N = p.N();
  S nfact2 = S(2) * ScalarTraits<S>::from_integer(factorial(N));

  parallel_for(n, opts.workers, [&](std::size_t i) {
    auto& row = table.rows[i];
    row.q = grid.q_min + static_cast<int>(i);
    row.s = grid_s<S>(grid.base, row.q);
    row.t = s_to_t(to_big(row.s));
    try {
      auto a = A * row.s + p;
      long long cap = opts.max_steps > 0 ? opts.max_steps : default_scan_max_steps(std::max(0, row.q));
      auto r = reduce_to_chamber(a, cap, opts.reduction);
      auto taus = elementary_symmetric(r.reduced.coords());
      row.vol = nfact2 * taus[N];
      row.word_length = r.steps;
      row.clamped = r.clamped;
      row.log_vol_over_log_s = log_of(row.vol) / log_of(row.s);
      S aa = pair(a, a);
      if (aa > 0) row.phi = log_of(taus[1]) - log_of(aa) / 2;
    } catch (const Error& e) {
      row.error = describe(e);
    }
  });

  for_each_window(table, opts.window, [&](int c, const auto& xs, const auto& ys) {
    table.rows[c].local_slope = least_squares(xs, ys).slope;
  });
  return table;
}

template <class S>
RayScanTable<S> ray_scan(const BoundaryPointSpec& D, const LatticeVector<S>& A, const RayGrid& grid,
                         const ScanOptions& opts, const MaterializeOptions& mopts) {
  auto p = materialize<S>(D, mopts).vector;
  return ray_scan(p, A, grid, opts);
}

template <class S>
std::vector<std::optional<BigFloat>> windowed_origin_slopes(const RayScanTable<S>& table, int window) {
  std::vector<std::optional<BigFloat>> out(table.rows.size());
  for_each_window(table, window, [&](int c, const auto& xs, const auto& ys) { out[c] = origin_slope(xs, ys); });
  return out;
}

template <class S>
SlopeEstimates slope_estimates(const RayScanTable<S>& table, int window) {
  std::vector<BigFloat> xs, ys;
  SlopeEstimates e;
  e.window = window;
  bool first = true;
  for (const auto& row : table.rows) {
    if (!row.ok()) continue;
    xs.push_back(log_of(row.s));
    ys.push_back(log_of(row.vol));
    if (first || row.log_vol_over_log_s > e.ratio_max) e.ratio_max = row.log_vol_over_log_s;
    if (first || row.log_vol_over_log_s < e.ratio_min) e.ratio_min = row.log_vol_over_log_s;
    if (first) e.q_min = row.q;
    e.q_max = row.q;
    first = false;
  }
  if (static_cast<int>(xs.size()) < window + 2) throw InvalidArgument("too few rows for the slope window");
  e.global_slope = least_squares(xs, ys).slope;

  auto slopes = windowed_origin_slopes(table, window);
  bool any = false;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (!slopes[i]) continue;
    if (!any || *slopes[i] > e.delta_sup_hat) {
      e.delta_sup_hat = *slopes[i];
      e.delta_sup_q = table.rows[i].q;
    }
    if (!any || *slopes[i] < e.delta_inf_hat) {
      e.delta_inf_hat = *slopes[i];
      e.delta_inf_q = table.rows[i].q;
    }
    any = true;
  }
  if (!any) throw InvalidArgument("no complete slope window");
  return e;
}

template <class S>
NuVolEstimate nu_vol_estimate(const RayScanTable<S>& table, int window) {
  auto e = slope_estimates(table, window);
  NuVolEstimate out;
  out.real = BigFloat(table.N) - e.delta_sup_hat;
  out.integer = floor_to_integer(out.real);
  return out;
}

SubsequenceDesignation designated_subsequences(const BoundaryPointSpec& D, const LatticeVector<Rational>& A,
                                               int horizon) {
  D.validate();
  if (!D.recurrent) throw InvalidArgument("designation needs a recurrent schedule program");
  const auto* sp = std::get_if<ScheduleProgram>(&D.recurrent->body);
  if (!sp) throw InvalidArgument("designation needs a schedule program");
  const auto& sch = sp->schedule;
  if (horizon < 1 || horizon > static_cast<int>(sch.excursions.size()))
    throw InvalidArgument("designation horizon beyond the schedule");
  check_same_dimension(A.size(), static_cast<std::size_t>(D.N + 1));

  auto lift = [&](const LatticeVector<Rational>& v) {
    auto w = D.recurrent->embed_k ? embed(*D.recurrent->embed_k, D.N, v) : v;
    return apply_word(D.word, w);
  };

  // Normalized so that <a,a> = 1 and <a,p'> = 1/2: the geodesic from a
  // towards p' is [s' a + p'] with s' = t_to_s(t), and s' = s <A,A> / (2 <A,p>).
  // Its backward end is p_- = a - p'. The return time to x solves
  // e^(2t) = <p_-,x> / <p',x> = 2 <A,x> <A,p> / (<A,A> <p,x>) - 1, kept exact
  // because x is nearly parallel to p for the deepest truncations.
  auto p = materialize<Rational>(D, {.depth = std::max(horizon, sp->depth)}).vector;
  Rational AA = pair(A, A), Ap = pair(A, p);
  if (!(AA > 0) || !(Ap > 0)) throw InvalidArgument("designation needs a timelike A pairing positively with D");
  BigFloat to_raw = to_big(Rational(2 * Ap / AA));

  auto return_time = [&](const LatticeVector<Rational>& x) {
    auto y = lift(x);
    Rational px = pair(p, y);
    if (!(px > 0)) throw InvalidArgument("orbit point does not project onto the ray");
    Rational ratio = 2 * pair(A, y) * Ap / (AA * px) - 1;
    if (!(ratio > 0)) throw InvalidArgument("orbit point does not project onto the ray");
    return BigFloat(log_of(ratio) / 2);
  };
  auto point = [&](int n, const BigFloat& t) {
    DesignatedPoint d;
    d.n = n;
    d.t = t;
    d.s = t_to_s(t) * to_raw;
    d.q = -log(d.s) / log(BigFloat(2));
    d.m = floor_to_integer(BigFloat(exp(2 * s_to_t(d.s))));
    return d;
  };

  SubsequenceDesignation out;
  BigFloat prev = return_time(u_vector<Rational>(sch.N));
  for (int n = 1; n <= horizon; ++n) {
    BigFloat tn = return_time(schedule_truncation(sch, n));
    BigFloat mid = (prev + tn) / 2;
    if (mid > 0) out.hills.push_back(point(n, mid));
    if (tn > 0) out.valleys.push_back(point(n, tn));
    prev = tn;
  }
  out.derivation = "schedule of " + std::to_string(sch.excursions.size()) + " excursions, horizon " +
                   std::to_string(horizon) + ", valleys at returns to w.x_n, hills at midpoints";
  return out;
}

LatticeVector<Rational> rounddown(const LatticeVector<Rational>& v) {
  std::vector<Rational> c;
  for (const auto& x : v.coords()) c.emplace_back(floor_to_integer(x));
  return LatticeVector<Rational>(std::move(c));
}

std::vector<TaggedM> geometric_m_grid(unsigned base, int q_min, int q_max) {
  std::vector<TaggedM> out;
  for (int q = q_min; q <= q_max; ++q) {
    Integer m = ceil_to_integer(Rational(1) / grid_s<Rational>(base, q));
    if (out.empty() || out.back().m < m) out.push_back({m, "grid"});
  }
  return out;
}

std::vector<TaggedM> designated_m_grid(const SubsequenceDesignation& d, const Integer& m_max) {
  std::vector<TaggedM> out;
  for (const auto& v : d.valleys)
    if (v.m >= 1 && v.m <= m_max) out.push_back({v.m, "valley"});
  for (const auto& h : d.hills)
    if (h.m >= 1 && h.m <= m_max) out.push_back({h.m, "hill"});
  return out;
}

SectionScanTable h0_scan(const LatticeVector<Rational>& p, const LatticeVector<Rational>& A,
                         std::vector<TaggedM> grid, const ScanOptions& opts) {
  check_same_dimension(p.size(), A.size());
  for (const auto& x : A.coords()) {
    if (!is_integral(x)) throw InvalidArgument("h0 scan needs an integral A");
    if (x < 2) throw InvalidArgument("h0 scan needs A with every coordinate >= 2");
  }
  std::stable_sort(grid.begin(), grid.end(), [](const TaggedM& a, const TaggedM& b) { return a.m < b.m; });
  grid.erase(std::unique(grid.begin(), grid.end(), [](const TaggedM& a, const TaggedM& b) { return a.m == b.m; }),
             grid.end());
  for (const auto& g : grid)
    if (g.m < 1) throw InvalidArgument("h0 scan needs m >= 1");

  int N = p.N();
  SectionScanTable table;
  table.N = N;
  table.rows.resize(grid.size());
  Integer cN = sandwich_constant(N);
  Integer nfact = factorial(N);

  parallel_for(grid.size(), opts.workers, [&](std::size_t i) {
    auto& row = table.rows[i];
    row.m = grid[i].m;
    row.tag = grid[i].tag;
    try {
      Rational m(row.m);
      unsigned q = static_cast<unsigned>(msb(row.m)) + 1;
      long long cap = opts.max_steps > 0 ? opts.max_steps : default_scan_max_steps(q);
      auto G = rounddown(p * m) + A;
      auto r = reduce_to_chamber(G, cap);
      int zeros = 0;
      for (const auto& x : r.reduced.coords()) zeros += x == 0;
      if (zeros > 1) throw ReducedNotBig("reduced class has " + std::to_string(zeros) + " zero coordinates");
      row.h0 = h0_nef_big(r.reduced);
      row.word_length = r.steps;
      row.nfact_h0 = nfact * row.h0;
      Rational mN = Rational(mp::pow(row.m, static_cast<unsigned>(N)));
      row.lower = mN * volume(p + A * Rational(Integer(1), 2 * row.m), cap);
      row.upper = Rational(cN) * mN * volume(p + A * Rational(Integer(1), row.m), cap);
      row.sandwich_ok = row.lower <= Rational(row.nfact_h0) && Rational(row.nfact_h0) <= row.upper;
      row.log_h0_over_log_m = row.m > 1 ? BigFloat(log_of(row.h0) / log_of(row.m)) : BigFloat(0);
    } catch (const Error& e) {
      row.error = describe(e);
    }
  });
  return table;
}

KappaEstimates kappa_estimates(const SectionScanTable& table) {
  KappaEstimates k;
  bool any = false;
  for (const auto& row : table.rows) {
    if (!row.ok() || row.m < 2) continue;
    const auto& r = row.log_h0_over_log_m;
    if (!any || r > k.kappa_sup_hat) k.kappa_sup_hat = r;
    if (!any || r < k.kappa_inf_hat) k.kappa_inf_hat = r;
    if (row.tag == "valley" && (!k.kappa_R_minus_hat || r < *k.kappa_R_minus_hat)) k.kappa_R_minus_hat = r;
    if (row.tag == "hill" && (!k.kappa_R_plus_hat || r > *k.kappa_R_plus_hat)) k.kappa_R_plus_hat = r;
    if (row.m > k.m_max) k.m_max = row.m;
    any = true;
  }
  if (!any) throw InvalidArgument("kappa estimates need at least one row with m >= 2");
  return k;
}

#define WEHLER_INSTANTIATE(S)                                                                                      \
  template RayScanTable<S> ray_scan<S>(const LatticeVector<S>&, const LatticeVector<S>&, const RayGrid&,           \
                                       const ScanOptions&);                                                        \
  template RayScanTable<S> ray_scan<S>(const BoundaryPointSpec&, const LatticeVector<S>&, const RayGrid&,          \
                                       const ScanOptions&, const MaterializeOptions&);                             \
  template std::vector<std::optional<BigFloat>> windowed_origin_slopes<S>(const RayScanTable<S>&, int);           \
  template SlopeEstimates slope_estimates<S>(const RayScanTable<S>&, int);                                         \
  template NuVolEstimate nu_vol_estimate<S>(const RayScanTable<S>&, int);

WEHLER_INSTANTIATE(Rational)
WEHLER_INSTANTIATE(BigFloat)
#undef WEHLER_INSTANTIATE

}  // namespace wehler
