#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ultradisc/disc.hpp"
#include "ultradisc/error.hpp"
#include "ultradisc/laurent.hpp"
#include "ultradisc/maps.hpp"
#include "ultradisc/newton.hpp"
#include "ultradisc/schroder.hpp"
#include "ultradisc/series_io.hpp"

namespace ultradisc::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

enum class OutputFormat { kJson, kText };

enum class ExitCode : int { kOk = 0, kInputError = 1, kFalsified = 2 };

struct Command {
  std::string name;  // estimate-disc | solve-conjugacy | check-bounds | distance-profile | newton-polygon | witness
  int N = 64;
  int K = 16;
  std::int64_t t_precision = 32;
  std::string method = "composition";  // composition | partition | both
  Rational display_epsilon = Rational(1, 2);
  std::optional<std::string> map_text;
  std::optional<std::string> lambda_text;
  std::optional<std::string> poly_text;
  std::optional<std::string> input_path;
  std::optional<std::string> out_path;
  OutputFormat format = OutputFormat::kJson;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"estimate-disc",    "solve-conjugacy", "check-bounds",
                                              "distance-profile", "newton-polygon",  "witness"};
  return names;
}

inline void validate(const Command& cmd) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cmd.name) == names.end())
    throw Error(ErrorCode::kInvalidArgument, "unknown command '" + cmd.name + "'");
  if (cmd.N < 1) throw Error(ErrorCode::kInvalidArgument, "--N must be >= 1");
  if (cmd.K < 1) throw Error(ErrorCode::kInvalidArgument, "--K must be >= 1");
  if (cmd.t_precision < 1) throw Error(ErrorCode::kInvalidArgument, "--t-precision must be >= 1");
  if (cmd.method != "composition" && cmd.method != "partition" && cmd.method != "both")
    throw Error(ErrorCode::kInvalidArgument, "--method must be composition, partition or both");
  if (!(cmd.display_epsilon > Rational(0) && cmd.display_epsilon < Rational(1)))
    throw Error(ErrorCode::kInvalidArgument, "--display-epsilon must lie in (0, 1)");
}

// ---------------------------------------------------------------------------
// Input parsing

namespace detail {

inline std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (lead) *lead = b;
  return s.substr(b, e - b);
}

struct Assignment {
  std::string key;
  std::string_view value;
  std::size_t value_column;
};

// "k1 = v1; k2 = v2; ..." with 0-based columns into the original text.
inline std::vector<Assignment> split_assignments(std::string_view text) {
  std::vector<Assignment> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(start, end - start);
    std::size_t lead = 0;
    if (!trim(item, &lead).empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) throw ParseError(start + lead, "expected 'name = value'");
      const std::string key(trim(item.substr(0, eq)));
      if (key.empty()) throw ParseError(start + lead, "missing name before '='");
      out.push_back({key, item.substr(eq + 1), start + eq + 1});
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

inline LaurentSeries parse_at(std::string_view text, std::size_t column) {
  try {
    return parse_series(text);
  } catch (const ParseError& e) {
    throw ParseError(column + e.column(), e.detail());
  }
}

inline int degree_key(const std::string& key, std::size_t column) {
  std::size_t used = 0;
  int degree = 0;
  try {
    degree = std::stoi(key, &used);
  } catch (const std::exception&) {
    throw ParseError(column, "bad degree '" + key + "'");
  }
  if (used != key.size() || degree < 0) throw ParseError(column, "bad degree '" + key + "'");
  return degree;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool looks_like_json(std::string_view text) {
  const std::string_view t = trim(text);
  return !t.empty() && t.front() == '{';
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("invalid JSON: ") + e.what());
  }
}

inline std::string json_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw Error(ErrorCode::kParseError, what + " must be a string");
  return j.get<std::string>();
}

}  // namespace detail

/// `lambda = <series>; a2 = <series>; ...`
inline AnalyticMap parse_map(std::string_view text, int root_of_unity_bound = AnalyticMap::kDefaultRootOfUnityBound) {
  std::optional<LaurentSeries> lambda;
  std::vector<AnalyticMap::Term> higher;
  for (const auto& a : detail::split_assignments(text)) {
    const LaurentSeries value = detail::parse_at(a.value, a.value_column);
    if (a.key == "lambda" || a.key == "a1") {
      if (lambda) throw ParseError(a.value_column, "lambda given twice");
      lambda = value;
    } else if (a.key.size() > 1 && a.key[0] == 'a') {
      const int degree = detail::degree_key(a.key.substr(1), a.value_column);
      if (degree < 2) throw ParseError(a.value_column, "coefficient names are a2, a3, ...");
      higher.push_back({degree, value});
    } else {
      throw ParseError(a.value_column, "unknown name '" + a.key + "' (expected lambda or a<i>)");
    }
  }
  if (!lambda) throw Error(ErrorCode::kParseError, "map is missing 'lambda'");
  return AnalyticMap(*lambda, std::move(higher), root_of_unity_bound);
}

/// `{ "lambda": "...", "coeffs": { "2": "...", ... } }`
inline AnalyticMap parse_map_json(const Json& j, int root_of_unity_bound = AnalyticMap::kDefaultRootOfUnityBound) {
  if (!j.is_object() || !j.contains("lambda")) throw Error(ErrorCode::kParseError, "map JSON needs a 'lambda' field");
  const LaurentSeries lambda = parse_series(detail::json_string(j["lambda"], "lambda"));
  std::vector<AnalyticMap::Term> higher;
  if (j.contains("coeffs")) {
    if (!j["coeffs"].is_object()) throw Error(ErrorCode::kParseError, "'coeffs' must be an object");
    for (const auto& [key, value] : j["coeffs"].items()) {
      const int degree = detail::degree_key(key, 0);
      higher.push_back({degree, parse_series(detail::json_string(value, "coefficient " + key))});
    }
  }
  return AnalyticMap(lambda, std::move(higher), root_of_unity_bound);
}

/// `0 = T^3; 1 = -T-T^2; 2 = 1`, index = series.
inline std::vector<std::pair<std::int64_t, LaurentSeries>> parse_polynomial(std::string_view text) {
  std::vector<std::pair<std::int64_t, LaurentSeries>> out;
  for (const auto& a : detail::split_assignments(text))
    out.emplace_back(detail::degree_key(a.key, a.value_column), detail::parse_at(a.value, a.value_column));
  return out;
}

inline std::vector<std::pair<std::int64_t, LaurentSeries>> parse_polynomial_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object())
    throw Error(ErrorCode::kParseError, "polynomial JSON needs a 'coeffs' object");
  std::vector<std::pair<std::int64_t, LaurentSeries>> out;
  for (const auto& [key, value] : j["coeffs"].items())
    out.emplace_back(detail::degree_key(key, 0), parse_series(detail::json_string(value, "coefficient " + key)));
  return out;
}

// ---------------------------------------------------------------------------
// JSON encoding. Exact quantities are strings; floats appear only under
// display_radii.

inline Json to_json(const Valuation& v) { return v.to_string(); }

inline Json to_json(const DiscRadius& r) {
  Json j;
  j["exponent"] = r.whole_field ? Json(nullptr) : Json(r.exponent.to_string());
  j["open"] = r.boundary == DiscRadius::Boundary::kOpen;
  j["whole_field"] = r.whole_field;
  j["rational_in_K"] = r.is_rational();
  return j;
}

inline Json map_json(const AnalyticMap& f) {
  Json j;
  j["lambda"] = to_string(f.multiplier());
  Json coeffs = Json::object();
  for (const auto& t : f.higher()) coeffs[std::to_string(t.degree)] = to_string(t.coefficient);
  j["coeffs"] = coeffs;
  return j;
}

inline Json to_json(const NewtonPolygon& p) {
  const auto point = [](const PolygonPoint& q) { return Json::array({q.index, q.valuation.to_string()}); };
  Json j;
  j["points"] = Json::array();
  for (const auto& q : p.points) j["points"].push_back(point(q));
  j["vertices"] = Json::array();
  for (const auto& q : p.vertices) j["vertices"].push_back(point(q));
  j["segments"] = Json::array();
  for (const auto& s : p.segments) {
    Json seg;
    seg["start"] = point(s.start);
    seg["end"] = point(s.end);
    seg["slope"] = s.slope.to_string();
    seg["length"] = s.length;
    j["segments"].push_back(seg);
  }
  j["root_valuations"] = Json::array();
  for (const auto& rv : root_valuations(p)) {
    Json r;
    r["valuation"] = rv.valuation.to_string();
    r["multiplicity"] = rv.multiplicity;
    j["root_valuations"].push_back(r);
  }
  return j;
}

inline Json to_json(const Witness& w) {
  Json j;
  j["description"] = w.description;
  j["period"] = w.period;
  j["sphere_exponent"] = w.sphere_exponent.to_string();
  j["multiplicity"] = w.multiplicity;
  j["point"] = w.point ? Json(to_string(*w.point)) : Json(nullptr);
  j["verified"] = w.verified;
  if (w.polygon) {
    Json segs = Json::array();
    for (const auto& s : w.polygon->segments) {
      Json seg;
      seg["slope"] = s.slope.to_string();
      seg["length"] = s.length;
      segs.push_back(seg);
    }
    j["polygon_segments"] = segs;
  }
  return j;
}

inline Json to_json(const WitnessReport& r) {
  Json j = Json::array();
  for (const auto& w : r.witnesses) j.push_back(to_json(w));
  return j;
}

inline Json profile_json(const DistanceProfile& p) {
  Json j;
  j["N"] = p.N;
  j["vals"] = p.vals;
  j["m"] = p.m ? Json(*p.m) : Json(nullptr);
  j["v_m"] = p.m ? Json(p.v_m()) : Json(nullptr);
  return j;
}

inline double display_radius(const Rational& exponent, const Rational& epsilon) {
  return std::pow(epsilon.to_double(), exponent.to_double());
}

inline Json estimate_json(const DiscEstimate& e, const Rational& epsilon) {
  Json j;
  j["case"] = case_name(e.residue_case);
  j["w"] = to_json(e.w);
  j["m"] = e.m ? Json(*e.m) : Json(nullptr);
  j["v_m"] = e.v_m ? Json(*e.v_m) : Json(nullptr);
  j["lower"] = to_json(e.lower);
  j["upper"] = to_json(e.upper);
  j["exact"] = e.exact;
  Json disp;
  disp["epsilon"] = epsilon.to_string();
  disp["lower"] = e.lower.whole_field ? Json(nullptr) : Json(display_radius(e.lower.exponent, epsilon));
  disp["upper"] = e.upper.whole_field ? Json(nullptr) : Json(display_radius(e.upper.exponent, epsilon));
  j["display_radii"] = disp;
  return j;
}

inline Json bound_row(const Conjugacy& c, int k, const std::optional<BoundCheck>& chk) {
  const LaurentSeries& b = c.b(k);
  Json row;
  row["k"] = k;
  row["value"] = to_string(b);
  if (b.is_zero_within_precision() && !b.is_exact()) {
    row["valuation"] = nullptr;
    row["valuation_at_least"] = std::to_string(*b.precision());
  } else {
    row["valuation"] = val(b).to_string();
  }
  row["certified_precision"] = b.precision() ? Json(std::to_string(*b.precision())) : Json("exact");
  if (chk) {
    row["bound"] = chk->bound.to_string();
    row["slack"] = chk->slack ? Json(chk->slack->to_string()) : Json(nullptr);
    row["holds"] = chk->holds;
  }
  return row;
}

// ---------------------------------------------------------------------------
// Running commands

struct Outcome {
  Json results;
  Json certifications;
  bool falsified = false;
};

namespace detail {

inline AnalyticMap load_map(const Command& cmd) {
  const int bound = std::max(cmd.N, AnalyticMap::kDefaultRootOfUnityBound);
  if (cmd.map_text) return parse_map(*cmd.map_text, bound);
  if (cmd.input_path) {
    const std::string text = read_file(*cmd.input_path);
    if (looks_like_json(text)) return parse_map_json(parse_json(text), bound);
    return parse_map(text, bound);
  }
  throw Error(ErrorCode::kInvalidArgument, "no map given (use --map or --input)");
}

inline Outcome run_estimate(const Command& cmd, const AnalyticMap& f, Json& inputs) {
  inputs["map"] = map_json(f);
  const DiscEstimate e = estimate_disc(f, cmd.N);
  const WitnessReport wr = sharpness_witnesses(f, e, cmd.t_precision);
  Outcome o;
  o.results = estimate_json(e, cmd.display_epsilon);
  o.results["witnesses"] = to_json(wr);
  o.results["witnesses_not_found"] = wr.not_found;
  o.certifications["root_of_unity_checked_through"] = f.root_of_unity_checked_through();
  o.certifications["distance_pattern_checked_through"] = e.profile.N;
  o.certifications["max_attained"] = growth_exponent(f).attained;
  o.certifications["arithmetic"] = "exact";
  o.falsified = wr.falsified;
  return o;
}

inline Outcome run_solve(const Command& cmd, const AnalyticMap& f, Json& inputs, bool bounds_only) {
  inputs["map"] = map_json(f);
  const std::vector<SolveMethod> methods =
      cmd.method == "both"        ? std::vector<SolveMethod>{SolveMethod::kComposition, SolveMethod::kPartition}
      : cmd.method == "partition" ? std::vector<SolveMethod>{SolveMethod::kPartition}
                                  : std::vector<SolveMethod>{SolveMethod::kComposition};
  const DistanceProfile profile = distance_profile(f.multiplier(), std::max(cmd.N, cmd.K - 1));
  const GrowthExponent w = growth_exponent(f);
  Outcome o;
  o.results["K"] = cmd.K;
  o.results["t_precision"] = cmd.t_precision;
  o.results["w"] = to_json(w.w);
  std::vector<Conjugacy> solved;
  Json tables;
  Json residuals;
  bool all_hold = true;
  for (SolveMethod m : methods) {
    solved.push_back(solve(f, cmd.K, cmd.t_precision, m));
    const Conjugacy& c = solved.back();
    const std::vector<BoundCheck> checks = check_bk_bound(c, profile, w.w);
    Json rows = Json::array();
    rows.push_back(bound_row(c, 1, std::nullopt));
    for (const auto& chk : checks) {
      rows.push_back(bound_row(c, chk.k, chk));
      all_hold = all_hold && chk.holds;
    }
    tables[method_name(m)] = rows;
    const ResidualReport rr = residual(f, c, cmd.K);
    Json r;
    r["zero"] = rr.zero;
    r["first_nonzero_degree"] = rr.first_nonzero_degree ? Json(*rr.first_nonzero_degree) : Json(nullptr);
    residuals[method_name(m)] = r;
    if (!rr.zero) o.falsified = true;
  }
  o.results["coefficients"] = tables;
  o.results["residual"] = residuals;
  if (solved.size() == 2) {
    const bool agree = same_coefficients(solved[0], solved[1], cmd.K);
    o.results["methods_agree"] = agree;
    if (!agree) o.falsified = true;
  }
  o.results["bounds_hold"] = all_hold;
  if (!all_hold) o.falsified = true;

  if (bounds_only) {
    const DiscEstimate e = estimate_disc(f, std::max(cmd.N, cmd.K - 1));
    Json inj;
    if (e.lower.whole_field) {
      inj["exponent"] = nullptr;
      inj["holds"] = true;
    } else {
      const bool holds = injectivity_check(solved.front().series(), e.lower.exponent);
      inj["exponent"] = e.lower.exponent.to_string();
      inj["holds"] = holds;
      if (!holds) o.falsified = true;
    }
    o.results["injective_on_lower_disc"] = inj;
  }
  o.certifications["root_of_unity_checked_through"] =
      std::max(f.root_of_unity_checked_through(), profile.N);
  o.certifications["residual_checked_through_degree"] = cmd.K;
  o.certifications["arithmetic"] = "exact with tracked T-precision";
  return o;
}

}  // namespace detail

/// Evaluates a validated command. Errors propagate as exceptions.
inline Outcome execute(const Command& cmd, Json& inputs) {
  if (cmd.name == "estimate-disc" || cmd.name == "witness") {
    const AnalyticMap f = detail::load_map(cmd);
    Outcome o = detail::run_estimate(cmd, f, inputs);
    if (cmd.name == "witness") {
      Json r;
      r["case"] = o.results["case"];
      r["witnesses"] = o.results["witnesses"];
      r["witnesses_not_found"] = o.results["witnesses_not_found"];
      o.results = r;
    }
    return o;
  }
  if (cmd.name == "solve-conjugacy") return detail::run_solve(cmd, detail::load_map(cmd), inputs, false);
  if (cmd.name == "check-bounds") return detail::run_solve(cmd, detail::load_map(cmd), inputs, true);
  if (cmd.name == "distance-profile") {
    LaurentSeries lambda;
    if (cmd.lambda_text)
      lambda = parse_series(*cmd.lambda_text);
    else
      lambda = detail::load_map(cmd).multiplier();
    inputs["lambda"] = to_string(lambda);
    const DistanceProfile p = distance_profile(lambda, cmd.N);
    const CaseClassification cls = classify_case(lambda);
    Outcome o;
    o.results = profile_json(p);
    o.results["case"] = case_name(cls.residue_case);
    o.results["residue_order"] = cls.order ? Json(*cls.order) : Json(nullptr);
    o.certifications["root_of_unity_checked_through"] = p.N;
    o.certifications["distance_pattern_verified"] = true;
    return o;
  }
  // newton-polygon
  std::vector<std::pair<std::int64_t, LaurentSeries>> coeffs;
  if (cmd.poly_text) {
    coeffs = parse_polynomial(*cmd.poly_text);
  } else if (cmd.input_path) {
    const std::string text = detail::read_file(*cmd.input_path);
    coeffs = detail::looks_like_json(text) ? parse_polynomial_json(detail::parse_json(text)) : parse_polynomial(text);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "no polynomial given (use --poly or --input)");
  }
  Json pin = Json::object();
  for (const auto& [i, c] : coeffs) pin[std::to_string(i)] = to_string(c);
  inputs["coeffs"] = pin;
  Outcome o;
  o.results = to_json(build_polygon(coeffs));
  o.certifications["arithmetic"] = "exact";
  return o;
}

inline ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvariantViolation:
    case ErrorCode::kWitnessNotFound:
      return ExitCode::kFalsified;
    default:
      return ExitCode::kInputError;
  }
}

inline Json options_json(const Command& cmd) {
  Json j;
  j["N"] = cmd.N;
  j["K"] = cmd.K;
  j["t_precision"] = cmd.t_precision;
  j["method"] = cmd.method;
  j["display_epsilon"] = cmd.display_epsilon.to_string();
  return j;
}

namespace detail {

inline void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace detail

inline void write_report(const Json& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::kJson) {
    out << report.dump(2) << '\n';
  } else {
    detail::flatten(report, "", out);
  }
}

/// Runs one command and writes its report (to `out`, or to cmd.out_path).
/// Exit code 0 on success, 1 on bad input, 2 when a mathematical check
/// failed.
inline int run(const Command& cmd, std::ostream& out) {
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = cmd.name;
  report["options"] = options_json(cmd);
  Json inputs = Json::object();
  ExitCode code = ExitCode::kOk;
  try {
    validate(cmd);
    Outcome o = execute(cmd, inputs);
    report["inputs"] = inputs;
    report["results"] = std::move(o.results);
    report["certifications"] = std::move(o.certifications);
    if (o.falsified) code = ExitCode::kFalsified;
  } catch (const Error& e) {
    report["inputs"] = inputs;
    Json err;
    err["code"] = std::string(error_code_name(e.code()));
    err["message"] = e.what();
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) err["column"] = pe->column();
    report["error"] = err;
    code = exit_code_for(e.code());
  }
  report["status"] = code == ExitCode::kOk ? "ok" : (code == ExitCode::kFalsified ? "falsified" : "input_error");
  if (cmd.out_path) {
    std::ofstream file(*cmd.out_path);
    if (!file) {
      out << "cannot write '" << *cmd.out_path << "'\n";
      return static_cast<int>(ExitCode::kInputError);
    }
    write_report(report, cmd.format, file);
  } else {
    write_report(report, cmd.format, out);
  }
  return static_cast<int>(code);
}

}  // namespace ultradisc::cli
