#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rikit/criteria.hpp"
#include "rikit/indices.hpp"
#include "rikit/maximal.hpp"
#include "rikit/metric.hpp"
#include "rikit/regularize.hpp"

namespace rikit::io {

using json = nlohmann::json;

// ---- scalars ------------------------------------------------------------------------------

inline json to_json(const ExtReal& x) {
  if (x.is_inf()) return "inf";
  return x.value();
}

/// Plain doubles with +inf written as the string "inf" (JSON has no infinity literal).
inline json num(double x) {
  if (std::isinf(x) && x > 0) return "inf";
  if (std::isinf(x)) return "-inf";
  return x;
}

inline double read_num(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::Validation, "expected a number, got \"" + s + "\"");
  }
  require(j.is_number(), "expected a number");
  return j.get<double>();
}

inline ExtReal read_ext(const json& j) {
  const double v = read_num(j);
  if (std::isinf(v)) {
    require(v > 0, "ExtReal values must be nonnegative");
    return ExtReal::infinity();
  }
  return ExtReal(v);
}

inline json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

inline std::vector<double> read_nums(const json& j) {
  require(j.is_array(), "expected an array of numbers");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(read_num(x));
  return v;
}

template <class T>
json indices(const std::vector<T>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

// ---- rearrangement types ------------------------------------------------------------------

inline json to_json(const WeightedSamples& u) { return {{"values", nums(u.values)}, {"weights", nums(u.weights)}}; }

/// Accepts {"values": [...], "weights": [...]}; missing weights default to 1.
inline WeightedSamples weighted_samples_from_json(const json& j) {
  WeightedSamples u;
  u.values = read_nums(j.at("values"));
  u.weights = j.contains("weights") ? read_nums(j.at("weights")) : std::vector<double>(u.values.size(), 1.0);
  u.validate();
  return u;
}

inline json to_json(const GridFn& f) {
  json vals = json::array();
  for (const auto& v : f.values) vals.push_back(to_json(v));
  return {{"breakpoints", nums(f.breakpoints)}, {"values", vals}, {"tail", f.tail}};
}

inline GridFn grid_fn_from_json(const json& j) {
  std::vector<ExtReal> vals;
  for (const auto& v : j.at("values")) vals.push_back(read_ext(v));
  return make_grid_fn(read_nums(j.at("breakpoints")), std::move(vals), j.contains("tail") ? read_num(j.at("tail")) : 0.0);
}

inline std::string grid_fn_csv(const GridFn& f) {
  std::ostringstream os;
  os.precision(17);
  os << "t_lo,t_hi,value\n";
  for (std::size_t i = 0; i < f.cells(); ++i) {
    os << f.lo(i) << ',' << f.hi(i) << ',';
    if (f.values[i].is_inf()) {
      os << "inf";
    } else {
      os << f.values[i].value();
    }
    os << '\n';
  }
  if (f.tail != 0.0) os << f.support_end() << ",inf," << f.tail << '\n';
  return os.str();
}

// ---- fundamental functions and norm specs -------------------------------------------------

inline json to_json(const OrliczFn& f) {
  if (f.kind == OrliczFn::Kind::Power) return {{"kind", "Power"}, {"r", f.r}};
  return {{"kind", "Sampled"}, {"xs", nums(f.xs)}, {"ys", nums(f.ys)}};
}

inline OrliczFn orlicz_from_json(const json& j) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "Power") return OrliczFn::power(read_num(j.at("r")));
  if (k == "Sampled") return OrliczFn::sampled(read_nums(j.at("xs")), read_nums(j.at("ys")));
  throw Error(ErrorCode::Validation, "unknown Orlicz kind " + k);
}

inline json to_json(const FundamentalFn& f) {
  using F = FundamentalFn::Form;
  json j;
  switch (f.form) {
    case F::Power:
      j = {{"form", "Power"}, {"alpha", f.alpha}, {"scale", f.scale}};
      break;
    case F::PowerLog:
      j = {{"form", "PowerLog"}, {"alpha", f.alpha}, {"beta", f.beta}};
      break;
    case F::OrliczInverse:
      j = {{"form", "OrliczInverse"}, {"psi", to_json(f.psi)}};
      break;
    case F::Sampled: {
      std::vector<double> bp{0.0};
      bp.insert(bp.end(), f.nodes_t.begin(), f.nodes_t.end());
      j = {{"form", "Sampled"}, {"breakpoints", nums(bp)}, {"values", nums(f.nodes_v)}, {"tail", f.sampled_tail}};
      break;
    }
    case F::MaxOf: {
      json parts = json::array();
      for (const auto& p : f.parts) parts.push_back(to_json(p));
      j = {{"form", "MaxOf"}, {"parts", parts}};
      break;
    }
    case F::PsiMajorant:
      j = {{"form", "PsiMajorant"}, {"p", f.alpha}, {"inner", to_json(*f.inner)}};
      break;
  }
  if (std::isfinite(f.domain_cap)) j["domain_cap"] = f.domain_cap;
  return j;
}

inline FundamentalFn fundamental_from_json(const json& j) {
  const std::string form = j.at("form").get<std::string>();
  FundamentalFn f;
  if (form == "Power") {
    f = FundamentalFn::power(read_num(j.at("alpha")), j.contains("scale") ? read_num(j.at("scale")) : 1.0);
  } else if (form == "PowerLog") {
    f = FundamentalFn::power_log(read_num(j.at("alpha")), read_num(j.at("beta")));
  } else if (form == "OrliczInverse") {
    f = FundamentalFn::orlicz_inverse(orlicz_from_json(j.at("psi")));
  } else if (form == "Sampled") {
    f = FundamentalFn::from_grid(grid_fn_from_json(j));
  } else if (form == "MaxOf") {
    std::vector<FundamentalFn> parts;
    for (const auto& p : j.at("parts")) parts.push_back(fundamental_from_json(p));
    f = FundamentalFn::max_of(std::move(parts));
  } else if (form == "PsiMajorant") {
    f = FundamentalFn::psi_majorant(fundamental_from_json(j.at("inner")), read_num(j.at("p")));
  } else {
    throw Error(ErrorCode::Validation, "unknown fundamental-function form " + form);
  }
  if (j.contains("domain_cap")) f = f.capped(read_num(j.at("domain_cap")));
  return f;
}

inline const char* family_name(NormSpec::Family f) {
  using F = NormSpec::Family;
  switch (f) {
    case F::Lp: return "Lp";
    case F::LorentzPQ: return "LorentzPQ";
    case F::LorentzPInf: return "LorentzPInf";
    case F::LambdaPhi: return "LambdaPhi";
    case F::LambdaQPhi: return "LambdaQPhi";
    case F::Marcinkiewicz: return "Marcinkiewicz";
    case F::WeakMarcinkiewicz: return "WeakMarcinkiewicz";
    case F::MarcinkiewiczP: return "MarcinkiewiczP";
    case F::MarcinkiewiczPLoc: return "MarcinkiewiczPLoc";
    case F::OrliczLux: return "OrliczLux";
    case F::IntersectionMax: return "IntersectionMax";
  }
  return "?";
}

inline json to_json(const NormSpec& s) {
  using F = NormSpec::Family;
  json j{{"family", family_name(s.family)}};
  switch (s.family) {
    case F::Lp:
    case F::LorentzPInf:
      j["p"] = s.p;
      break;
    case F::LorentzPQ:
      j["p"] = s.p;
      j["q"] = s.q;
      break;
    case F::LambdaPhi:
    case F::Marcinkiewicz:
    case F::WeakMarcinkiewicz:
      j["phi"] = to_json(s.phi);
      break;
    case F::LambdaQPhi:
      j["phi"] = to_json(s.phi);
      j["q"] = s.q;
      break;
    case F::MarcinkiewiczP:
    case F::MarcinkiewiczPLoc:
      j["phi"] = to_json(s.phi);
      j["p"] = s.p;
      break;
    case F::OrliczLux:
      j["psi"] = to_json(s.psi);
      break;
    case F::IntersectionMax: {
      json parts = json::array();
      for (const auto& p : s.parts) parts.push_back(to_json(p));
      j["parts"] = parts;
      break;
    }
  }
  return j;
}

inline NormSpec norm_spec_from_json(const json& j) {
  const std::string f = j.at("family").get<std::string>();
  auto phi = [&] { return fundamental_from_json(j.at("phi")); };
  NormSpec s;
  if (f == "Lp") {
    s = NormSpec::lp(read_num(j.at("p")));
  } else if (f == "LorentzPQ") {
    s = NormSpec::lorentz(read_num(j.at("p")), read_num(j.at("q")));
  } else if (f == "LorentzPInf") {
    s = NormSpec::lorentz_inf(read_num(j.at("p")));
  } else if (f == "LambdaPhi") {
    s = NormSpec::lambda(phi());
  } else if (f == "LambdaQPhi") {
    s = NormSpec::lambda_q(phi(), read_num(j.at("q")));
  } else if (f == "Marcinkiewicz") {
    s = NormSpec::marcinkiewicz(phi());
  } else if (f == "WeakMarcinkiewicz") {
    s = NormSpec::weak_marcinkiewicz(phi());
  } else if (f == "MarcinkiewiczP") {
    s = NormSpec::marcinkiewicz_p(phi(), read_num(j.at("p")));
  } else if (f == "MarcinkiewiczPLoc") {
    s = NormSpec::marcinkiewicz_p_loc(phi(), read_num(j.at("p")));
  } else if (f == "OrliczLux") {
    s = NormSpec::orlicz(orlicz_from_json(j.at("psi")));
  } else if (f == "IntersectionMax") {
    std::vector<NormSpec> parts;
    for (const auto& p : j.at("parts")) parts.push_back(norm_spec_from_json(p));
    s = NormSpec::intersection(std::move(parts));
  } else {
    throw Error(ErrorCode::Validation, "unknown norm family " + f);
  }
  s.validate();
  return s;
}

// ---- shorthand ----------------------------------------------------------------------------
//
//   lp:P                 lorentz:P,Q          lorentz-inf:P
//   lambda:PHI           lambda-q:PHI,Q       marc:PHI          weak-marc:PHI
//   marc-p:PHI,P         marc-p-loc:PHI,P     orlicz:power:R
//   PHI = power:A | power:A*C | power-log:A:B

namespace detail {

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Validation, "not a number: '" + s + "'");
  }
  require(used == s.size(), "not a number: '" + s + "'");
  return v;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  return out;
}

inline FundamentalFn parse_phi(const std::string& s) {
  if (s.rfind("power-log:", 0) == 0) {
    const std::string rest = s.substr(10);
    const auto c = rest.find(':');
    require(c != std::string::npos, "power-log needs A:B");
    return FundamentalFn::power_log(parse_double(rest.substr(0, c)), parse_double(rest.substr(c + 1)));
  }
  if (s.rfind("power:", 0) == 0) {
    const std::string rest = s.substr(6);
    const auto star = rest.find('*');
    if (star == std::string::npos) return FundamentalFn::power(parse_double(rest));
    return FundamentalFn::power(parse_double(rest.substr(0, star)), parse_double(rest.substr(star + 1)));
  }
  throw Error(ErrorCode::Validation, "unknown fundamental-function shorthand '" + s + "'");
}

/// Splits "PHI,X" at the last comma.
inline std::pair<FundamentalFn, double> phi_and_number(const std::string& s) {
  const auto c = s.rfind(',');
  require(c != std::string::npos, "expected PHI,NUMBER in '" + s + "'");
  return {parse_phi(s.substr(0, c)), parse_double(s.substr(c + 1))};
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace detail

inline NormSpec parse_shorthand(const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, "space shorthand needs FAMILY:ARGS, got '" + text + "'");
  const std::string fam = text.substr(0, colon), rest = text.substr(colon + 1);
  auto nums_exact = [&](std::size_t k) {
    auto v = detail::parse_list(rest);
    require(v.size() == k, "wrong number of arguments in '" + text + "'");
    return v;
  };
  if (fam == "lp") return NormSpec::lp(nums_exact(1)[0]);
  if (fam == "lorentz") {
    const auto v = nums_exact(2);
    return NormSpec::lorentz(v[0], v[1]);
  }
  if (fam == "lorentz-inf") return NormSpec::lorentz_inf(nums_exact(1)[0]);
  if (fam == "lambda") return NormSpec::lambda(detail::parse_phi(rest));
  if (fam == "marc") return NormSpec::marcinkiewicz(detail::parse_phi(rest));
  if (fam == "weak-marc") return NormSpec::weak_marcinkiewicz(detail::parse_phi(rest));
  if (fam == "lambda-q") {
    auto [phi, q] = detail::phi_and_number(rest);
    return NormSpec::lambda_q(phi, q);
  }
  if (fam == "marc-p") {
    auto [phi, p] = detail::phi_and_number(rest);
    return NormSpec::marcinkiewicz_p(phi, p);
  }
  if (fam == "marc-p-loc") {
    auto [phi, p] = detail::phi_and_number(rest);
    return NormSpec::marcinkiewicz_p_loc(phi, p);
  }
  if (fam == "orlicz") {
    require(rest.rfind("power:", 0) == 0, "orlicz shorthand is orlicz:power:R");
    return NormSpec::orlicz(OrliczFn::power(detail::parse_double(rest.substr(6))));
  }
  throw Error(ErrorCode::Validation, "unknown space family '" + fam + "'");
}

/// Inverse of parse_shorthand; empty when the NormSpec has no shorthand (sampled or composite data).
inline std::string to_shorthand(const NormSpec& s) {
  using F = NormSpec::Family;
  using detail::fmt;
  auto phi = [](const FundamentalFn& f) -> std::string {
    if (std::isfinite(f.domain_cap)) return "";
    if (f.form == FundamentalFn::Form::Power) {
      return "power:" + fmt(f.alpha) + (f.scale == 1.0 ? "" : "*" + fmt(f.scale));
    }
    if (f.form == FundamentalFn::Form::PowerLog) return "power-log:" + fmt(f.alpha) + ":" + fmt(f.beta);
    return "";
  };
  auto with = [&](const char* name, const std::string& ph, const std::string& tail = "") -> std::string {
    return ph.empty() ? "" : std::string(name) + ":" + ph + tail;
  };
  switch (s.family) {
    case F::Lp: return "lp:" + fmt(s.p);
    case F::LorentzPQ: return "lorentz:" + fmt(s.p) + "," + fmt(s.q);
    case F::LorentzPInf: return "lorentz-inf:" + fmt(s.p);
    case F::LambdaPhi: return with("lambda", phi(s.phi));
    case F::Marcinkiewicz: return with("marc", phi(s.phi));
    case F::WeakMarcinkiewicz: return with("weak-marc", phi(s.phi));
    case F::LambdaQPhi: return with("lambda-q", phi(s.phi), "," + fmt(s.q));
    case F::MarcinkiewiczP: return with("marc-p", phi(s.phi), "," + fmt(s.p));
    case F::MarcinkiewiczPLoc: return with("marc-p-loc", phi(s.phi), "," + fmt(s.p));
    case F::OrliczLux:
      return s.psi.kind == OrliczFn::Kind::Power ? "orlicz:power:" + fmt(s.psi.r) : "";
    case F::IntersectionMax: return "";
  }
  return "";
}

// ---- metric measure spaces and curves -----------------------------------------------------

inline json to_json(const MMS& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.n; ++i) {
    rows.push_back(std::vector<double>(s.dist.begin() + static_cast<std::ptrdiff_t>(i * s.n),
                                       s.dist.begin() + static_cast<std::ptrdiff_t>((i + 1) * s.n)));
  }
  return {{"dist", rows}, {"weights", s.weights}};
}

inline MMS mms_from_json(const json& j) {
  std::vector<std::vector<double>> m;
  for (const auto& row : j.at("dist")) m.push_back(read_nums(row));
  return MMS::from_matrix(m, read_nums(j.at("weights")));
}

inline json to_json(const CurveFamily& f) {
  json curves = json::array();
  for (const auto& c : f.curves) curves.push_back(c.vertices);
  return {{"generator", f.generator}, {"curves", curves}};
}

/// Accepts {"curves": [[...], ...]} or a bare array of vertex lists.
inline CurveFamily curve_family_from_json(const json& j) {
  CurveFamily f;
  const json& arr = j.is_array() ? j : j.at("curves");
  if (j.is_object() && j.contains("generator")) f.generator = j.at("generator").get<std::string>();
  for (const auto& c : arr) f.curves.push_back({c.get<std::vector<std::size_t>>()});
  return f;
}

/// `path:n`, `grid:m,n`, `tree:b,d`.
inline Graph generate(const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, "generator needs KIND:ARGS, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const auto v = detail::parse_list(text.substr(colon + 1));
  for (double x : v) require(x >= 0 && x == std::floor(x), "generator arguments must be nonnegative integers");
  if (kind == "path" && v.size() == 1) return path_graph(static_cast<std::size_t>(v[0]));
  if (kind == "grid" && v.size() == 2) return grid_graph(static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]));
  if (kind == "tree" && v.size() == 2) return tree_graph(static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]));
  throw Error(ErrorCode::Validation, "unknown generator '" + text + "'");
}

inline json to_json(const Graph& g) {
  json j = to_json(g.space);
  json edges = json::array();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    edges.push_back({g.edges[e].first, g.edges[e].second, g.edge_length[e]});
  }
  j["edges"] = edges;
  return j;
}

// ---- results ------------------------------------------------------------------------------

inline json to_json(const Certificate& c) {
  return {{"method", c.method},        {"kkt_residual", c.kkt_residual}, {"iterations", c.iterations},
          {"rounds", c.rounds},        {"non_unique", c.non_unique},     {"slack", nums(c.slack)},
          {"dual", nums(c.dual)}};
}

inline json to_json(const SolveResult& r) {
  json j{{"optimum", num(r.optimum)}, {"minimizer", nums(r.minimizer)}, {"certificate", to_json(r.certificate)}};
  if (!r.auxiliary.empty()) j["auxiliary"] = nums(r.auxiliary);
  return j;
}

inline json to_json(const ConditionResult& c) {
  return {{"id", c.id}, {"verdict", to_string(c.verdict)}, {"value", num(c.value)}, {"certificate", c.certificate}};
}

inline json to_json(const CriteriaReport& r) {
  json conds = json::array(), comp = json::array();
  for (const auto& c : r.conditions) conds.push_back(to_json(c));
  for (const auto& c : r.complete_conditions) comp.push_back(to_json(c));
  return {{"p", r.p},
          {"delta", r.delta},
          {"complete_space", r.complete_space},
          {"absolutely_continuous", r.absolutely_continuous},
          {"overall", to_string(r.overall)},
          {"conditions", conds},
          {"complete_conditions", comp},
          {"warnings", r.warnings}};
}

inline std::string criteria_table(const CriteriaReport& r) {
  std::ostringstream os;
  os << "p = " << r.p << ", delta = " << r.delta << ", complete = " << (r.complete_space ? "yes" : "no")
     << ", absolutely continuous = " << (r.absolutely_continuous ? "yes" : "no") << '\n';
  auto block = [&](const char* title, const std::vector<ConditionResult>& cs) {
    if (cs.empty()) return;
    os << title << '\n';
    for (const auto& c : cs) {
      os << "  " << std::left;
      os.width(6);
      os << c.id;
      os.width(14);
      os << to_string(c.verdict) << c.certificate << '\n';
    }
  };
  block("conditions:", r.conditions);
  block("complete-space conditions:", r.complete_conditions);
  os << "density: " << to_string(r.overall) << '\n';
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  return os.str();
}

inline json to_json(const IndexReport& r) {
  auto pairs = [](const std::vector<std::pair<double, double>>& v) {
    json a = json::array();
    for (const auto& [s, k] : v) a.push_back({num(s), num(k)});
    return a;
  };
  return {{"beta_upper", r.beta_upper},   {"alpha_lower", r.alpha_lower}, {"beta_exact", r.beta_exact},
          {"alpha_exact", r.alpha_exact}, {"lower_bound_only", r.lower_bound_only}, {"note", r.note},
          {"k_samples", pairs(r.k_samples)}, {"h_samples", pairs(r.h_samples)}};
}

inline json to_json(const HerzRieszRatios& r) {
  return {{"min_ratio", num(r.min_ratio)}, {"max_ratio", num(r.max_ratio)}};
}

inline json to_json(const LipTruncResult& r) {
  return {{"sigma", r.sigma},
          {"sigma0", r.sigma0},
          {"lipschitz_constant", r.lipschitz_constant},
          {"eta", r.eta},
          {"c_delta", r.c_delta},
          {"norm_gap", num(r.norm_gap)},
          {"E_eps", indices(r.E_eps)},
          {"E_measure", r.E_measure},
          {"A", indices(r.A)},
          {"gap_gradient_verified", r.gap_gradient_verified},
          {"u_eps", nums(r.u_eps)}};
}

inline std::string scan_csv(const LipTruncResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "stage,sigma,test1,test2,pass\n";
  for (const auto& row : r.trace) {
    os << row.stage << ',' << row.sigma << ',' << row.test1 << ',' << row.test2 << ',' << (row.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "sigma,gap,gradient,superlevel_size\n";
  for (const auto& r : rows) os << r.sigma << ',' << r.gap << ',' << r.gradient << ',' << r.superlevel_size << '\n';
  return os.str();
}

inline std::string point_fn_csv(const PointFn& f, const char* name = "value") {
  std::ostringstream os;
  os.precision(17);
  os << "index," << name << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) os << i << ',' << f[i] << '\n';
  return os.str();
}

// ---- files --------------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Validation, path + ": " + e.what());
  }
}

/// A space argument is either shorthand or a path to a NormSpec JSON file.
inline NormSpec read_space(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe) return norm_spec_from_json(read_json_file(arg));
  return parse_shorthand(arg);
}

/// A metric space argument is either a generator string or an MMS JSON file.
inline Graph read_metric_space(const std::string& arg) {
  std::ifstream probe(arg);
  if (!probe) return generate(arg);
  const json j = read_json_file(arg);
  Graph g;
  g.space = mms_from_json(j);
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      g.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
      g.edge_length.push_back(e.size() > 2 ? read_num(e.at(2)) : g.space.d(g.edges.back().first, g.edges.back().second));
    }
  }
  return g;
}

/// Point functions are stored as {"values": [...]} or a bare array.
inline PointFn read_point_fn(const std::string& path) {
  const json j = read_json_file(path);
  return read_nums(j.is_array() ? j : j.at("values"));
}

}  // namespace rikit::io
