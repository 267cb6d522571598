#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wehler/asymptotics.hpp"
#include "wehler/boundary_spec.hpp"
#include "wehler/cusp.hpp"

namespace wehler::io {

using nlohmann::json;

// Scalars are JSON strings ("3", "-1/2", "0.25", "1e-3") or JSON integers.
Rational scalar_from_json(const json& j, const std::string& where);
json scalar_to_json(const Rational& x);

// "1,2,-3/4" -> vector. Throws SchemaError.
LatticeVector<Rational> parse_vector(std::string_view text);
std::vector<int> parse_index_list(std::string_view text);

ExcursionSchedule schedule_from_json(const json& j);
json schedule_to_json(const ExcursionSchedule& s);

BoundaryPointSpec spec_from_json(const json& j);
json spec_to_json(const BoundaryPointSpec& s);

json certificate_to_json(const RecurrenceCertificate& c);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t x);

// "# key: value" lines ahead of the CSV header.
struct Metadata {
  std::vector<std::pair<std::string, std::string>> lines;
  void add(std::string key, std::string value) { lines.emplace_back(std::move(key), std::move(value)); }
};

void write_metadata(std::ostream& out, const Metadata& m);

// Decimal with `digits` significant digits; digits == 0 prints exact p/q for
// rationals and 40 digits for floats.
std::string format_value(const Rational& x, int digits);
std::string format_value(const BigFloat& x, int digits);

inline constexpr const char* kRayColumns =
    "s,t,vol,log_vol_over_log_s,phi,word_length,clamped,local_slope,error";
inline constexpr const char* kSectionColumns =
    "m,h0,log_h0_over_log_m,word_length,lower,nfact_h0,upper,sandwich_ok,tag,error";

template <class S>
void write_ray_csv(std::ostream& out, const RayScanTable<S>& t, const Metadata& m, int digits);

void write_section_csv(std::ostream& out, const SectionScanTable& t, const Metadata& m, int digits);

// Simplest rational within tol of x (continued fractions).
Rational snap_rational(const BigFloat& x, const BigFloat& tol);

// vol(D_t + s u) on the boundary arc from omega_hat(0,1) to omega_hat(0,2),
// base u + 2/(N-2) omega_N; t = k/(t_count-1). D_t is rounded to an exact
// rational at the working precision and scanned with the exact backend.
struct Figure1Options {
  int N = 3;
  int t_count = 33;
  RayGrid grid{2, 4, 24};
  ScanOptions scan;
  // Classification threshold on the fitted slope: below is a hill.
  double hill_below = 1.25;
};

struct Figure1Column {
  Rational t;
  RayScanTable<Rational> table;
  std::optional<BigFloat> slope;  // least squares with intercept
  std::string cls;                // "hill", "valley" or "" without a fit
};

struct Figure1Table {
  int N = 3;
  std::string curve;
  std::vector<Figure1Column> columns;
};

std::string figure1_curve(int N);
Figure1Table figure1_scan(const Figure1Options& opts);

inline constexpr const char* kFigure1Columns = "t,q,s,vol,log_vol_over_log_s,error";
inline constexpr const char* kFigure1SummaryColumns = "t,slope,class";

void write_figure1_csv(std::ostream& out, const Figure1Table& t, const Metadata& m, int digits);
void write_figure1_summary(std::ostream& out, const Figure1Table& t, const Metadata& m, int digits);

}  // namespace wehler::io
