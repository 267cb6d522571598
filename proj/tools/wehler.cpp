// Command-line front end: reduce, ray-scan, h0-scan, construct, figure1.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "wehler/chamber.hpp"
#include "wehler/errors.hpp"
#include "wehler/io.hpp"

#ifndef WEHLER_VERSION
#define WEHLER_VERSION "0.0.0"
#endif

namespace {

using namespace wehler;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct RunConfig {
  std::string backend = "exact";
  unsigned bits = kDefaultMantissaBits;
  long long max_steps = 0;
  unsigned workers = 0;
  int digits = 20;
  std::string output;
};

struct ReduceArgs {
  int n = 3;
  std::string vector;
};

struct ScanArgs {
  std::string spec_path;
  std::string a;
  int q_min = 4, q_max = 30;
  unsigned base = 2;
  int window = 5;
  int depth = 0;  // 0 keeps the spec's depth
};

struct H0Args {
  std::string spec_path;
  std::string a;
  int q_min = 1, q_max = 20;
  unsigned base = 2;
  int designated = 0;
  std::string m_max = "1073741824";
  int depth = 0;
};

struct ConstructArgs {
  int n = 3;
  std::string L;
  std::string delta_target;
  std::string rule = "geometric";
  int count = 4;
  std::string support = "0,1,2";
  int depth = 0;
};

struct Figure1Args {
  int n = 3;
  int t_count = 33;
  int q_min = 4, q_max = 24;
  unsigned base = 2;
  std::string summary;
};

// Global options plus those of the active subcommand, one key=value per line.
std::string config_text(const CLI::App& app) {
  std::string active = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name() + ".";
  std::istringstream all(app.config_to_str(true, false));
  std::string out;
  for (std::string line; std::getline(all, line);) {
    auto key = line.substr(0, line.find('='));
    if (key.find('.') == std::string::npos || key.rfind(active, 0) == 0) out += line + "\n";
  }
  return out;
}

io::Metadata base_metadata(const CLI::App& app, const std::string& command, const std::string& backend) {
  io::Metadata m;
  m.add("tool", std::string("wehler ") + WEHLER_VERSION);
  m.add("command", command);
  auto cfg = config_text(app);
  m.add("config_hash", io::hex64(io::fnv1a64(cfg)));
  std::istringstream lines(cfg);
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) m.add("config", line);
  m.add("backend", backend);
  if (backend == "float") m.add("mantissa_bits", std::to_string(current_mantissa_bits()));
  return m;
}

// Writes to --output when given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InvalidArgument("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

BoundaryPointSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read spec file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("spec is not valid JSON: ") + e.what());
  }
  return io::spec_from_json(j);
}

ScanOptions scan_options(const RunConfig& rc, int window) {
  ScanOptions o;
  o.max_steps = rc.max_steps;
  o.workers = rc.workers;
  o.window = window;
  return o;
}

MaterializeOptions materialize_options(int depth) {
  MaterializeOptions o;
  if (depth > 0) o.depth = depth;
  return o;
}

LatticeVector<Rational> ample_or_default(const std::string& text, int N, long fallback) {
  if (text.empty()) return u_vector<Rational>(N) * Rational(fallback);
  auto v = io::parse_vector(text);
  check_same_dimension(v.size(), static_cast<std::size_t>(N + 1));
  return v;
}

int run_reduce(const RunConfig& rc, const ReduceArgs& a) {
  auto v = io::parse_vector(a.vector);
  check_dimension(a.n);
  check_same_dimension(v.size(), static_cast<std::size_t>(a.n + 1));
  long long cap = rc.max_steps > 0 ? rc.max_steps : kDefaultMaxSteps;
  Sink sink(rc.output);
  auto& out = sink.stream();
  auto print = [&](const auto& r) {
    std::string coords;
    for (std::size_t i = 0; i < r.reduced.size(); ++i)
      coords += (i ? "," : "") + io::format_value(r.reduced[i], rc.backend == "exact" ? 0 : rc.digits);
    out << "reduced: " << coords << "\n";
    out << "word: " << r.word.str() << "\n";
    out << "steps: " << integer_string(r.steps) << "\n";
    if (r.clamped) out << "clamped: " << r.clamped_count << "\n";
  };
  if (rc.backend == "exact") {
    print(reduce_to_chamber(v, cap));
  } else {
    print(reduce_to_chamber(to_big(v), cap));
  }
  return kExitOk;
}

template <class S>
int ray_scan_with(const CLI::App& app, const RunConfig& rc, const ScanArgs& a, const BoundaryPointSpec& D) {
  RayGrid grid{a.base, a.q_min, a.q_max};
  auto A = ample_or_default(a.a, D.N, 1);
  auto table = ray_scan<S>(D, convert<S>(A), grid, scan_options(rc, a.window), materialize_options(a.depth));

  auto m = base_metadata(app, "ray-scan", std::string(ScalarTraits<S>::name));
  m.add("N", std::to_string(D.N));
  m.add("spec", io::spec_to_json(D).dump());
  m.add("A", A.str());
  m.add("grid", grid.str());
  int good = 0;
  for (const auto& r : table.rows) good += r.ok();
  if (good >= a.window + 2) {
    auto e = slope_estimates(table, a.window);
    auto h = "q=" + std::to_string(e.q_min) + ".." + std::to_string(e.q_max);
    m.add("global_slope[" + h + "]", io::format_value(e.global_slope, 12));
    m.add("delta_sup_hat[" + h + "]", io::format_value(e.delta_sup_hat, 12) + " at q=" + std::to_string(e.delta_sup_q));
    m.add("delta_inf_hat[" + h + "]", io::format_value(e.delta_inf_hat, 12) + " at q=" + std::to_string(e.delta_inf_q));
    auto nu = nu_vol_estimate(table, a.window);
    m.add("nu_vol[" + h + "]", io::format_value(nu.real, 12) + " (integer " + integer_string(nu.integer) + ")");
  }
  Sink sink(rc.output);
  io::write_ray_csv(sink.stream(), table, m, rc.digits);
  return kExitOk;
}

int run_ray_scan(const CLI::App& app, const RunConfig& rc, const ScanArgs& a) {
  auto D = load_spec(a.spec_path);
  if (rc.backend == "exact") return ray_scan_with<Rational>(app, rc, a, D);
  return ray_scan_with<BigFloat>(app, rc, a, D);
}

int run_h0_scan(const CLI::App& app, const RunConfig& rc, const H0Args& a) {
  auto D = load_spec(a.spec_path);
  auto A = ample_or_default(a.a, D.N, 2);
  auto p = materialize<Rational>(D, materialize_options(a.depth)).vector;
  auto m = base_metadata(app, "h0-scan", "exact");
  std::vector<TaggedM> grid;
  if (a.designated > 0) {
    auto d = designated_subsequences(D, A, a.designated);
    Integer m_max(a.m_max);
    grid = designated_m_grid(d, m_max);
    m.add("grid", "designated subsequences, horizon " + std::to_string(a.designated) + ", m <= " + a.m_max);
    m.add("designation", d.derivation);
  } else {
    if (a.base < 2) throw InvalidArgument("grid base must be at least 2");
    grid = geometric_m_grid(a.base, a.q_min, a.q_max);
    m.add("grid", "m = ceil(" + std::to_string(a.base) + "^q), q=" + std::to_string(a.q_min) + ".." +
                      std::to_string(a.q_max));
  }
  auto table = h0_scan(p, A, std::move(grid), scan_options(rc, 5));
  m.add("N", std::to_string(D.N));
  m.add("spec", io::spec_to_json(D).dump());
  m.add("A", A.str());
  m.add("rounding", table.rounding);
  bool any = false;
  for (const auto& r : table.rows) any |= r.ok() && r.m >= 2;
  if (any) {
    auto k = kappa_estimates(table);
    auto h = "m<=" + integer_string(k.m_max);
    if (k.kappa_R_minus_hat) m.add("kappa_R_minus_hat[" + h + "]", io::format_value(*k.kappa_R_minus_hat, 12));
    if (k.kappa_R_plus_hat) m.add("kappa_R_plus_hat[" + h + "]", io::format_value(*k.kappa_R_plus_hat, 12));
    m.add("kappa_sup_hat[" + h + "]", io::format_value(k.kappa_sup_hat, 12));
    m.add("kappa_inf_hat[" + h + "]", io::format_value(k.kappa_inf_hat, 12));
  }
  Sink sink(rc.output);
  io::write_section_csv(sink.stream(), table, m, rc.digits);
  return kExitOk;
}

int run_construct(const CLI::App& app, const RunConfig& rc, const ConstructArgs& a) {
  check_dimension(a.n);
  if (a.n < 3) throw InvalidArgument("construct needs N >= 3");
  ScheduleGenerator g;
  g.count = a.count;
  json construction;
  if (!a.delta_target.empty()) {
    Rational delta = ScalarTraits<Rational>::parse(a.delta_target);
    Rational half(a.n, 2);
    if (delta < 1 || delta > half)
      throw InvalidArgument("delta target " + a.delta_target + " outside [1, N/2]");
    if (delta == 1) {
      g.rule = LengthRule::supergeometric;
      g.L = 20;
    } else if (delta == half) {
      g.rule = LengthRule::polynomial;
      g.L = 10;
    } else {
      g.rule = LengthRule::geometric;
      auto L = solve_L_for_delta(to_big(delta), a.n);
      g.L = io::snap_rational(L, BigFloat("1e-9"));
      construction["L_solved"] = io::format_value(L, 30);
    }
    construction["delta_target"] = io::scalar_to_json(delta);
  } else if (!a.L.empty()) {
    g.rule = length_rule_from_string(a.rule);
    g.L = ScalarTraits<Rational>::parse(a.L);
    if (g.rule != LengthRule::polynomial && !(g.L > 1)) throw InvalidArgument("L must exceed 1");
    if (g.rule == LengthRule::polynomial && !(g.L > 0)) throw InvalidArgument("L must be positive");
  } else {
    throw InvalidArgument("construct needs --L or --delta-target");
  }
  auto schedule = make_schedule(a.n, g, io::parse_index_list(a.support));
  int depth = a.depth > 0 ? a.depth : a.count;
  auto rp = build_recurrent_point(schedule, depth);

  json out = io::spec_to_json(rp.spec);
  construction["rule"] = to_string(g.rule);
  construction["L"] = io::scalar_to_json(g.L);
  if (g.rule == LengthRule::geometric) {
    construction["delta_inf_target"] = io::format_value(delta_inf_target(to_big(g.L), a.n), 20);
    construction["limsup_ratio"] = io::format_value(limsup_ratio(to_big(g.L)), 20);
  }
  out["construction"] = construction;
  out["certificate"] = io::certificate_to_json(rp.certificate);
  auto meta = base_metadata(app, "construct", "exact");
  json md = json::object();
  for (const auto& [k, v] : meta.lines)
    if (k != "config") md[k] = v;
  out["metadata"] = md;
  Sink sink(rc.output);
  sink.stream() << out.dump(2) << "\n";
  return kExitOk;
}

int run_figure1(const CLI::App& app, const RunConfig& rc, const Figure1Args& a) {
  io::Figure1Options o;
  o.N = a.n;
  o.t_count = a.t_count;
  o.grid = RayGrid{a.base, a.q_min, a.q_max};
  o.scan = scan_options(rc, 5);
  auto table = io::figure1_scan(o);
  auto m = base_metadata(app, "figure1", "exact");
  m.add("curve", table.curve);
  m.add("curve_rounding", "D_t rounded to exact rationals at " + std::to_string(current_mantissa_bits()) + " bits");
  m.add("grid", o.grid.str() + ", t = k/" + std::to_string(a.t_count - 1));
  m.add("A", "u");
  Sink sink(rc.output);
  io::write_figure1_csv(sink.stream(), table, m, rc.digits);
  if (!a.summary.empty()) {
    Sink s(a.summary);
    auto sm = m;
    sm.add("slope", "least squares with intercept of log vol on log s over each column");
    sm.add("class", "hill when slope < " + std::to_string(o.hill_below) + ", else valley");
    io::write_figure1_summary(s.stream(), table, sm, 12);
  }
  return kExitOk;
}

bool numeric_failure(const Error& e) {
  return dynamic_cast<const StepCapExceeded*>(&e) || dynamic_cast<const NonConvergent*>(&e) ||
         dynamic_cast<const AmbiguousAtDepth*>(&e) || dynamic_cast<const Cancelled*>(&e) ||
         dynamic_cast<const ReducedNotBig*>(&e);
}

std::string error_name(const Error& e) {
  if (dynamic_cast<const StepCapExceeded*>(&e)) return "StepCapExceeded";
  if (dynamic_cast<const NonConvergent*>(&e)) return "NonConvergent";
  if (dynamic_cast<const AmbiguousAtDepth*>(&e)) return "AmbiguousAtDepth";
  if (dynamic_cast<const Cancelled*>(&e)) return "Cancelled";
  if (dynamic_cast<const ReducedNotBig*>(&e)) return "ReducedNotBig";
  if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  return "Error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volumes, section counts and boundary asymptotics on Wehler N-folds"};
  app.set_version_flag("--version", std::string("wehler ") + WEHLER_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  const char* env_config = std::getenv("WEHLER_CONFIG");
  app.set_config("--config", env_config ? env_config : "", "INI config (key=value, [subcommand] sections)");

  RunConfig rc;
  app.add_option("--backend", rc.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--bits", rc.bits, "float mantissa bits")->check(CLI::Range(16u, 1u << 20));
  app.add_option("--max-steps", rc.max_steps, "reduction iteration cap (0 = default)")->check(CLI::NonNegativeNumber);
  app.add_option("--workers", rc.workers, "scan threads (0 = all cores)");
  app.add_option("--digits", rc.digits, "significant digits in CSV (0 = exact)")->check(CLI::Range(0, 1000));
  app.add_option("-o,--output", rc.output, "output file (default stdout)");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "reduce a vector to the chamber");
  reduce->add_option("--n", ra.n, "dimension N")->required();
  reduce->add_option("vector", ra.vector, "comma separated omega coordinates")->required();

  ScanArgs sa;
  auto* ray = app.add_subcommand("ray-scan", "vol(D + sA) along s = base^-q");
  ray->add_option("--spec", sa.spec_path, "JSON boundary point spec")->required();
  ray->add_option("--a", sa.a, "ample class A (default u)");
  ray->add_option("--q-min", sa.q_min);
  ray->add_option("--q-max", sa.q_max);
  ray->add_option("--base", sa.base);
  ray->add_option("--window", sa.window, "slope window")->check(CLI::Range(2, 1000));
  ray->add_option("--depth", sa.depth, "truncation depth for schedule programs");

  H0Args ha;
  auto* h0 = app.add_subcommand("h0-scan", "h0(rounddown(mD + A)) over a grid of m");
  h0->add_option("--spec", ha.spec_path, "JSON boundary point spec")->required();
  h0->add_option("--a", ha.a, "integral A with coordinates >= 2 (default 2u)");
  h0->add_option("--q-min", ha.q_min);
  h0->add_option("--q-max", ha.q_max);
  h0->add_option("--base", ha.base);
  h0->add_option("--designated", ha.designated, "use the designated hills and valleys up to this horizon");
  h0->add_option("--m-max", ha.m_max, "largest designated m");
  h0->add_option("--depth", ha.depth, "truncation depth for schedule programs");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build an oscillating boundary point");
  construct->add_option("--n", ca.n, "dimension N");
  auto* optL = construct->add_option("--L", ca.L, "length parameter");
  auto* optD = construct->add_option("--delta-target", ca.delta_target, "liminf exponent target in [1, N/2]");
  optL->excludes(optD);
  construct->add_option("--rule", ca.rule, "length rule with --L")
      ->check(CLI::IsMember({"geometric", "supergeometric", "polynomial"}));
  construct->add_option("--count", ca.count, "number of excursions")->check(CLI::Range(1, 64));
  construct->add_option("--support", ca.support, "recurrent support indices");
  construct->add_option("--depth", ca.depth, "truncation depth (default count)");

  Figure1Args fa;
  auto* fig = app.add_subcommand("figure1", "vol(D_t + s u) on a (t, s) grid");
  fig->add_option("--n", fa.n, "dimension N");
  fig->add_option("--t-count", fa.t_count, "number of t values")->check(CLI::Range(2, 100000));
  fig->add_option("--q-min", fa.q_min);
  fig->add_option("--q-max", fa.q_max);
  fig->add_option("--base", fa.base);
  fig->add_option("--summary", fa.summary, "per-t slope and hill/valley class CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    PrecisionContext precision(rc.bits);
    if (*reduce) return run_reduce(rc, ra);
    if (*ray) return run_ray_scan(app, rc, sa);
    if (*h0) return run_h0_scan(app, rc, ha);
    if (*construct) return run_construct(app, rc, ca);
    if (*fig) return run_figure1(app, rc, fa);
  } catch (const Error& e) {
    std::cerr << "error: " << error_name(e) << ": " << e.what() << "\n";
    return numeric_failure(e) ? kExitNumeric : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
