#include "wehler/io.hpp"

#include <charconv>
#include <cstdio>
#include <set>

#include "wehler/errors.hpp"

namespace wehler::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw SchemaError("spec schema: " + what); }

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema(where + " needs \"" + key + "\"");
  return j.at(key);
}

int int_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where + " must be an integer");
  return j.get<int>();
}

std::vector<int> ints_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + " must be an array of integers");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(int_from_json(e, where));
  return out;
}

Integer integer_from_json(const json& j, const std::string& where) {
  Rational r = scalar_from_json(j, where);
  if (!is_integral(r)) schema(where + " must be an integer");
  return numerator(r);
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == sep) {
      out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Rational scalar_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) schema(where + " must be a decimal or p/q string");
  try {
    return ScalarTraits<Rational>::parse(j.get<std::string>());
  } catch (const Error& e) {
    schema(where + ": " + e.what());
  }
}

json scalar_to_json(const Rational& x) { return ScalarTraits<Rational>::format(x); }

LatticeVector<Rational> parse_vector(std::string_view text) {
  std::vector<Rational> c;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw SchemaError("empty coordinate in '" + std::string(text) + "'");
    try {
      c.push_back(ScalarTraits<Rational>::parse(part));
    } catch (const Error& e) {
      throw SchemaError("bad coordinate '" + part + "': " + e.what());
    }
  }
  if (c.size() < 3) throw SchemaError("a vector needs at least 3 coordinates");
  return LatticeVector<Rational>(std::move(c));
}

std::vector<int> parse_index_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    int v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || p != part.data() + part.size()) throw SchemaError("bad index '" + part + "'");
    out.push_back(v);
  }
  return out;
}

ExcursionSchedule schedule_from_json(const json& j) {
  const std::string w = "schedule";
  ExcursionSchedule s;
  s.N = int_from_json(member(j, "n", w), w + ".n");
  s.support = ints_from_json(member(j, "support", w), w + ".support");
  if (j.contains("k_min")) s.k_min = integer_from_json(j.at("k_min"), w + ".k_min");
  if (j.contains("gluing_threshold")) s.gluing_threshold = scalar_from_json(j.at("gluing_threshold"), w + ".gluing_threshold");
  if (j.contains("generator")) {
    const auto& g = j.at("generator");
    ScheduleGenerator gen;
    try {
      gen.rule = length_rule_from_string(member(g, "rule", w + ".generator").get<std::string>());
    } catch (const json::exception&) {
      schema(w + ".generator.rule must be a string");
    } catch (const InvalidArgument& e) {
      schema(e.what());
    }
    gen.L = scalar_from_json(member(g, "L", w + ".generator"), w + ".generator.L");
    gen.count = int_from_json(member(g, "count", w + ".generator"), w + ".generator.count");
    if (g.contains("ell_cap")) gen.ell_cap = scalar_from_json(g.at("ell_cap"), w + ".generator.ell_cap");
    s.generator = gen;
  }
  if (j.contains("excursions")) {
    const auto& ex = j.at("excursions");
    if (!ex.is_array()) schema(w + ".excursions must be an array");
    for (const auto& e : ex) {
      auto c = ints_from_json(member(e, "cusp", w + ".excursions[]"), w + ".excursions[].cusp");
      if (c.size() != 2) schema("cusp must be a pair of indices");
      Excursion x;
      try {
        x.cusp = CuspId(c[0], c[1]);
      } catch (const InvalidArgument& err) {
        schema(err.what());
      }
      x.k = integer_from_json(member(e, "k", w + ".excursions[]"), w + ".excursions[].k");
      x.ell = e.contains("ell") ? scalar_from_json(e.at("ell"), w + ".excursions[].ell") : Rational(0);
      s.excursions.push_back(x);
    }
  } else if (s.generator) {
    auto built = make_schedule(s.N, *s.generator, s.support, s.k_min);
    built.gluing_threshold = s.gluing_threshold;
    s = std::move(built);
  } else {
    schema(w + " needs \"excursions\" or \"generator\"");
  }
  s.validate();
  return s;
}

json schedule_to_json(const ExcursionSchedule& s) {
  json j;
  j["n"] = s.N;
  j["support"] = s.support;
  j["k_min"] = integer_string(s.k_min);
  j["gluing_threshold"] = scalar_to_json(s.gluing_threshold);
  if (s.generator) {
    j["generator"] = {{"rule", to_string(s.generator->rule)},
                      {"L", scalar_to_json(s.generator->L)},
                      {"count", s.generator->count},
                      {"ell_cap", scalar_to_json(s.generator->ell_cap)}};
  }
  json ex = json::array();
  for (const auto& e : s.excursions)
    ex.push_back({{"cusp", {e.cusp.i, e.cusp.j}}, {"k", integer_string(e.k)}, {"ell", scalar_to_json(e.ell)}});
  j["excursions"] = ex;
  return j;
}

BoundaryPointSpec spec_from_json(const json& j) {
  const std::string w = "spec";
  if (!j.is_object()) schema("spec must be a JSON object");
  BoundaryPointSpec s;
  s.N = int_from_json(member(j, "n", w), "n");
  if (j.contains("word")) {
    try {
      s.word = Word(ints_from_json(j.at("word"), "word"));
    } catch (const SchemaError&) {
      throw;
    } catch (const InvalidArgument& e) {
      schema(e.what());
    }
  }
  if (j.contains("divergent")) {
    const auto& d = j.at("divergent");
    if (!d.is_object()) schema("divergent must map indices to coefficients");
    for (const auto& [key, value] : d.items()) {
      int idx = 0;
      auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
      if (ec != std::errc() || p != key.data() + key.size()) schema("divergent key '" + key + "' is not an index");
      s.divergent[idx] = scalar_from_json(value, "divergent." + key);
    }
  }
  if (j.contains("recurrent") && !j.at("recurrent").is_null()) {
    const auto& r = j.at("recurrent");
    RecurrentProgram prog;
    if (r.contains("embed_k")) prog.embed_k = int_from_json(r.at("embed_k"), "recurrent.embed_k");
    int Nr = prog.embed_k ? *prog.embed_k : s.N;
    std::string type;
    try {
      type = member(r, "type", "recurrent").get<std::string>();
    } catch (const json::exception&) {
      schema("recurrent.type must be a string");
    }
    if (r.contains("support")) prog.support = ints_from_json(r.at("support"), "recurrent.support");
    if (type == "explicit") {
      const auto& v = member(r, "vector", "recurrent");
      if (!v.is_array()) schema("recurrent.vector must be an array");
      std::vector<Rational> c;
      for (const auto& e : v) c.push_back(scalar_from_json(e, "recurrent.vector"));
      prog.body = ExplicitIsotropic{LatticeVector<Rational>(std::move(c))};
    } else if (type == "schedule") {
      json sj = r;
      if (!sj.contains("n")) sj["n"] = Nr;
      if (!sj.contains("support")) schema("recurrent schedule needs \"support\"");
      ScheduleProgram sp;
      try {
        sp.schedule = schedule_from_json(sj);
      } catch (const SchemaError&) {
        throw;
      } catch (const InvalidArgument& e) {
        schema(e.what());
      }
      sp.depth = r.contains("depth") ? int_from_json(r.at("depth"), "recurrent.depth")
                                     : static_cast<int>(sp.schedule.excursions.size());
      if (prog.support.empty()) prog.support = sp.schedule.generators_used();
      prog.body = std::move(sp);
    } else {
      schema("recurrent.type must be \"explicit\" or \"schedule\"");
    }
    s.recurrent = std::move(prog);
  }
  try {
    s.validate();
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidArgument& e) {
    schema(e.what());
  }
  return s;
}

json spec_to_json(const BoundaryPointSpec& s) {
  json j;
  j["n"] = s.N;
  j["word"] = s.word.letters();
  json d = json::object();
  for (const auto& [i, c] : s.divergent) d[std::to_string(i)] = scalar_to_json(c);
  j["divergent"] = d;
  if (s.recurrent) {
    const auto& r = *s.recurrent;
    json rj;
    if (const auto* e = std::get_if<ExplicitIsotropic>(&r.body)) {
      rj["type"] = "explicit";
      json v = json::array();
      for (const auto& x : e->q.coords()) v.push_back(scalar_to_json(x));
      rj["vector"] = v;
      rj["support"] = r.support;
    } else {
      const auto& sp = std::get<ScheduleProgram>(r.body);
      rj = schedule_to_json(sp.schedule);
      rj["type"] = "schedule";
      rj["depth"] = sp.depth;
    }
    if (r.embed_k) rj["embed_k"] = *r.embed_k;
    j["recurrent"] = rj;
  }
  return j;
}

json certificate_to_json(const RecurrenceCertificate& c) {
  json j;
  j["depth"] = c.depth;
  json inc = json::array();
  for (const auto& x : c.increments) inc.push_back(format_value(x, 20));
  j["increments"] = inc;
  j["decay_rate"] = c.decay_rate ? json(format_value(*c.decay_rate, 20)) : json(nullptr);
  j["monotone"] = c.monotone;
  return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

void write_metadata(std::ostream& out, const Metadata& m) {
  for (const auto& [k, v] : m.lines) {
    // Keep every metadata entry on one line.
    std::string flat = v;
    for (auto& c : flat)
      if (c == '\n' || c == '\r') c = ' ';
    out << "# " << k << ": " << flat << "\n";
  }
}

std::string format_value(const BigFloat& x, int digits) {
  if (x == 0) return "0";
  return x.str((digits > 0 ? digits : 40) - 1, std::ios_base::scientific);
}

std::string format_value(const Rational& x, int digits) {
  if (digits == 0) return ScalarTraits<Rational>::format(x);
  if (x == 0) return "0";
  return format_value(to_big(x), digits);
}

template <class S>
void write_ray_csv(std::ostream& out, const RayScanTable<S>& t, const Metadata& m, int digits) {
  write_metadata(out, m);
  out << kRayColumns << "\n";
  for (const auto& r : t.rows) {
    out << format_value(r.s, digits) << "," << format_value(r.t, digits == 0 ? 40 : digits) << ",";
    if (r.ok()) {
      out << format_value(r.vol, digits) << "," << format_value(r.log_vol_over_log_s, digits == 0 ? 40 : digits) << ","
          << (r.phi ? format_value(*r.phi, digits == 0 ? 40 : digits) : "") << "," << integer_string(r.word_length)
          << "," << (r.clamped ? 1 : 0) << ","
          << (r.local_slope ? format_value(*r.local_slope, digits == 0 ? 40 : digits) : "") << ",";
    } else {
      out << ",,,,,,";
    }
    out << csv_field(r.error) << "\n";
  }
}

void write_section_csv(std::ostream& out, const SectionScanTable& t, const Metadata& m, int digits) {
  write_metadata(out, m);
  out << kSectionColumns << "\n";
  for (const auto& r : t.rows) {
    out << integer_string(r.m) << ",";
    if (r.ok()) {
      out << integer_string(r.h0) << "," << format_value(r.log_h0_over_log_m, digits == 0 ? 40 : digits) << ","
          << integer_string(r.word_length) << "," << format_value(r.lower, digits) << ","
          << integer_string(r.nfact_h0) << "," << format_value(r.upper, digits) << "," << (r.sandwich_ok ? 1 : 0)
          << ",";
    } else {
      out << ",,,,,,,";
    }
    out << r.tag << "," << csv_field(r.error) << "\n";
  }
}

template void write_ray_csv<Rational>(std::ostream&, const RayScanTable<Rational>&, const Metadata&, int);
template void write_ray_csv<BigFloat>(std::ostream&, const RayScanTable<BigFloat>&, const Metadata&, int);

}  // namespace wehler::io

namespace wehler::io {

Rational snap_rational(const BigFloat& x, const BigFloat& tol) {
  // Convergents h/k of the continued fraction of x until |x - h/k| <= tol.
  Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  BigFloat r = x;
  for (int it = 0; it < 200; ++it) {
    Integer a = floor_to_integer(r);
    Integer h = a * h0 + h1, k = a * k0 + k1;
    h1 = h0, h0 = h, k1 = k0, k0 = k;
    Rational c(h, k);
    if (abs(to_big(c) - x) <= tol) return c;
    BigFloat frac = r - BigFloat(a);
    if (frac == 0) return c;
    r = 1 / frac;
  }
  throw NonConvergent("continued fraction did not reach the tolerance");
}

std::string figure1_curve(int N) {
  return "arc omega_hat(0,1) -> omega_hat(0,2), base u + 2/(N-2) omega_" + std::to_string(N) + ", N=" +
         std::to_string(N);
}

Figure1Table figure1_scan(const Figure1Options& opts) {
  if (opts.N < 3) throw InvalidArgument("figure1 needs N >= 3");
  if (opts.t_count < 2) throw InvalidArgument("figure1 needs at least 2 t values");
  int N = opts.N;
  auto u = u_vector<BigFloat>(N);
  auto base = u.with(N, u[N] + BigFloat(2) / (N - 2));
  auto p0 = omega_hat<BigFloat>(N, 0, 1), p1 = omega_hat<BigFloat>(N, 0, 2);
  auto A = u_vector<Rational>(N);

  Figure1Table out;
  out.N = N;
  out.curve = figure1_curve(N);
  for (int k = 0; k < opts.t_count; ++k) {
    Figure1Column col;
    col.t = Rational(k, opts.t_count - 1);
    auto D = exact_rational(boundary_curve(p0, p1, to_big(col.t), base));
    col.table = ray_scan(D, A, opts.grid, opts.scan);
    int good = 0;
    for (const auto& r : col.table.rows) good += r.ok();
    if (good >= 4) {
      col.slope = slope_estimates(col.table, 2).global_slope;
      col.cls = to_double(*col.slope) < opts.hill_below ? "hill" : "valley";
    }
    out.columns.push_back(std::move(col));
  }
  return out;
}

void write_figure1_csv(std::ostream& out, const Figure1Table& t, const Metadata& m, int digits) {
  write_metadata(out, m);
  out << kFigure1Columns << "\n";
  int d = digits == 0 ? 40 : digits;
  for (const auto& c : t.columns)
    for (const auto& r : c.table.rows) {
      out << ScalarTraits<Rational>::format(c.t) << "," << r.q << "," << format_value(r.s, digits) << ",";
      if (r.ok())
        out << format_value(r.vol, digits) << "," << format_value(r.log_vol_over_log_s, d) << ",";
      else
        out << ",,";
      out << csv_field(r.error) << "\n";
    }
}

void write_figure1_summary(std::ostream& out, const Figure1Table& t, const Metadata& m, int digits) {
  write_metadata(out, m);
  out << kFigure1SummaryColumns << "\n";
  int d = digits == 0 ? 40 : digits;
  for (const auto& c : t.columns)
    out << ScalarTraits<Rational>::format(c.t) << "," << (c.slope ? format_value(*c.slope, d) : "") << "," << c.cls
        << "\n";
}

}  // namespace wehler::io
