// ri-kit: command-line front end for the rikit library.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "rikit/rikit.hpp"

namespace fs = std::filesystem;
using namespace rikit;
using io::json;

namespace {

struct Globals {
  std::uint64_t seed = 20240601;
  std::string out;
  std::string format = "json";
  double tol = 1e-8;
};

/// Writes to OUT/<name> when --out is given, else to stdout.
void emit(const Globals& g, const std::string& name, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  fs::create_directories(g.out);
  std::ofstream f(fs::path(g.out) / name);
  require(static_cast<bool>(f), "cannot write " + (fs::path(g.out) / name).string());
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void emit_json(const Globals& g, const std::string& stem, const json& j) { emit(g, stem + ".json", j.dump(2)); }

std::string fmt17(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

SolverOptions solver_options(const Globals& g) {
  SolverOptions o;
  o.tol = g.tol;
  return o;
}

/// shortest | edges | pairs | subpaths | khop:K | path to a curve-family JSON file.
CurveFamily family_from(const std::string& arg, const Graph& G) {
  if (arg == "shortest") return shortest_path_family(G);
  if (arg == "edges") return edge_family(G);
  if (arg == "pairs") return pair_family(G.space);
  if (arg == "subpaths") return subpath_closure(shortest_path_family(G));
  if (arg == "empty") return CurveFamily{{}, "empty"};
  if (arg.rfind("khop:", 0) == 0) return k_hop_family(G, std::stoul(arg.substr(5)));
  CurveFamily f = io::curve_family_from_json(io::read_json_file(arg));
  f.validate(G.space);
  return f;
}

std::vector<std::size_t> index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    require(!item.empty() && item.find_first_not_of("0123456789") == std::string::npos, "bad index '" + item + "'");
    out.push_back(std::stoul(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ri-kit: rearrangement-invariant norms, maximal operators, modulus and Lipschitz truncation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized presets");
  app.add_option("--out", g.out, "write artifacts into this directory instead of stdout");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", g.tol, "solver KKT tolerance")->check(CLI::PositiveNumber);

  std::string space, fn, mms = "path:5", family = "shortest", set, hfile, preset, hr_family = "grid:10,10";
  double p = 1.0, eps = 0.1, delta = 1.0, c_delta = 2.0, alpha = 2.0;
  int dim = 3;
  std::size_t grid = 200, count = 10000, seeds = 100, instances = 20;
  bool complete = false, table = false, sharp = false;

  auto* c_rearrange = app.add_subcommand("rearrange", "decreasing rearrangement of weighted samples");
  c_rearrange->add_option("--fn", fn, "WeightedSamples JSON")->required();

  auto* c_norm = app.add_subcommand("norm", "norm of weighted samples or a decreasing GridFn");
  c_norm->add_option("--space", space, "shorthand or NormSpec JSON")->required();
  c_norm->add_option("--fn", fn, "WeightedSamples or GridFn JSON")->required();

  auto* c_maximal = app.add_subcommand("maximal", "metric maximal function and Herz-Riesz ratios");
  c_maximal->add_option("--mms", mms, "generator (path:n, grid:m,n, tree:b,d) or MMS JSON");
  c_maximal->add_option("--fn", fn, "point function JSON")->required();
  c_maximal->add_option("--p", p, "exponent of M_p");

  auto* c_indices = app.add_subcommand("indices", "fundamental and Boyd index estimates");
  c_indices->add_option("--space", space)->required();

  auto* c_criteria = app.add_subcommand("criteria", "Lipschitz-density criteria report");
  c_criteria->add_option("--space", space)->required();
  c_criteria->add_option("--p", p)->required();
  c_criteria->add_option("--delta", delta);
  c_criteria->add_flag("--complete", complete, "also evaluate the complete-space conditions");
  c_criteria->add_flag("--table", table, "human-readable table instead of JSON/CSV");

  auto* c_modulus = app.add_subcommand("modulus", "p-modulus of a curve family");
  c_modulus->add_option("--mms", mms);
  c_modulus->add_option("--family", family, "shortest | edges | pairs | subpaths | khop:K | empty | file");
  c_modulus->add_option("--p", p)->required();

  auto* c_capacity = app.add_subcommand("capacity", "Sobolev capacity of an index set");
  c_capacity->add_option("--mms", mms);
  c_capacity->add_option("--family", family);
  c_capacity->add_option("--set", set, "comma-separated indices")->required();
  c_capacity->add_option("--p", p)->required();

  auto* c_hajlasz = app.add_subcommand("hajlasz", "minimal upper and Hajlasz gradients");
  c_hajlasz->add_option("--mms", mms);
  c_hajlasz->add_option("--family", family);
  c_hajlasz->add_option("--fn", fn)->required();
  c_hajlasz->add_option("--p", p)->required();
  c_hajlasz->add_flag("--sharp", sharp, "also print the sharp maximal function");

  auto* c_regularize = app.add_subcommand("regularize", "Lipschitz truncation");
  c_regularize->add_option("--mms", mms);
  c_regularize->add_option("--family", family);
  c_regularize->add_option("--fn", fn)->required();
  c_regularize->add_option("--grad", hfile, "Hajlasz gradient JSON (default: pointwise max slope / 2)");
  c_regularize->add_option("--space", space)->required();
  c_regularize->add_option("--eps", eps)->required();
  c_regularize->add_option("--c-delta", c_delta, "concavity modulus for quasi-normed spaces");

  auto* c_demo = app.add_subcommand("demo", "experiment presets");
  c_demo->add_option("preset", preset)->required()->check(CLI::IsMember(presets::catalogue()));
  c_demo->add_option("--alpha", alpha);
  c_demo->add_option("--n", dim);
  c_demo->add_option("--grid", grid);
  c_demo->add_option("--count", count, "lorentz-embedding instances");
  c_demo->add_option("--family", hr_family, "herz-riesz graph generator");
  c_demo->add_option("--seeds", seeds, "herz-riesz seeds");
  c_demo->add_option("--instances", instances, "lip-trunc-sweep instances");

  auto* c_generate = app.add_subcommand("generate", "emit a generated metric measure space");
  c_generate->add_option("spec", mms, "path:n | grid:m,n | tree:b,d")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const bool csv = g.format == "csv";
    if (c_rearrange->parsed()) {
      const GridFn u = decreasing_rearrangement(io::weighted_samples_from_json(io::read_json_file(fn)));
      if (csv) {
        emit(g, "rearrangement.csv", io::grid_fn_csv(u));
      } else {
        emit_json(g, "rearrangement", io::to_json(u));
      }
    } else if (c_norm->parsed()) {
      const NormSpec spec = io::read_space(space);
      const json j = io::read_json_file(fn);
      const ExtReal v = j.contains("breakpoints") ? norm(io::grid_fn_from_json(j), spec)
                                                  : norm(io::weighted_samples_from_json(j), spec);
      if (csv) {
        emit(g, "norm.csv", "norm\n" + (v.is_inf() ? std::string("inf") : fmt17(v.value())) + "\n");
      } else {
        emit_json(g, "norm", {{"space", io::to_json(spec)}, {"norm", io::to_json(v)}});
      }
    } else if (c_maximal->parsed()) {
      const Graph G = io::read_metric_space(mms);
      const PointFn u = io::read_point_fn(fn);
      const PointFn M = maximal_metric(G.space, u, p);
      const HerzRieszRatios hr = herz_riesz_ratios(G.space, u, p);
      if (csv) {
        emit(g, "maximal.csv", io::point_fn_csv(M, "maximal"));
      } else {
        emit_json(g, "maximal", {{"p", p}, {"maximal", io::nums(M)}, {"herz_riesz", io::to_json(hr)}});
      }
    } else if (c_indices->parsed()) {
      const NormSpec spec = io::read_space(space);
      const IndexReport z = zippin_upper(spec_fundamental(spec));
      const IndexReport b = boyd_upper_lowerbound(spec);
      if (csv) {
        std::string t = "kind,s,value\n";
        for (const auto& [s, k] : z.k_samples) t += "k," + fmt17(s) + "," + fmt17(k) + "\n";
        for (const auto& [s, h] : b.h_samples) t += "h," + fmt17(s) + "," + fmt17(h) + "\n";
        emit(g, "indices.csv", t);
      } else {
        emit_json(g, "indices", {{"fundamental", io::to_json(z)}, {"boyd", io::to_json(b)}});
      }
    } else if (c_criteria->parsed()) {
      const CriteriaReport r = density_criteria_report(io::read_space(space), p, complete, delta);
      if (table) {
        emit(g, "criteria.txt", io::criteria_table(r));
      } else if (csv) {
        std::string t = "block,id,verdict,value,certificate\n";
        auto rows = [&](const char* block, const std::vector<ConditionResult>& cs) {
          for (const auto& c : cs) {
            t += std::string(block) + "," + c.id + "," + to_string(c.verdict) + "," + fmt17(c.value) + ",\"" +
                 c.certificate + "\"\n";
          }
        };
        rows("main", r.conditions);
        rows("complete", r.complete_conditions);
        emit(g, "criteria.csv", t);
      } else {
        emit_json(g, "criteria", io::to_json(r));
      }
    } else if (c_modulus->parsed()) {
      const Graph G = io::read_metric_space(mms);
      const SolveResult r = modulus(G.space, family_from(family, G), p, solver_options(g));
      if (csv) {
        emit(g, "modulus.csv", io::point_fn_csv(r.minimizer, "rho"));
      } else {
        emit_json(g, "modulus", io::to_json(r));
      }
    } else if (c_capacity->parsed()) {
      const Graph G = io::read_metric_space(mms);
      const SolveResult r = capacity(G.space, index_list(set), family_from(family, G), p, solver_options(g));
      if (csv) {
        emit(g, "capacity.csv", io::point_fn_csv(r.minimizer, "u"));
      } else {
        emit_json(g, "capacity", io::to_json(r));
      }
    } else if (c_hajlasz->parsed()) {
      const Graph G = io::read_metric_space(mms);
      const PointFn u = io::read_point_fn(fn);
      const SolveResult ug = minimal_upper_gradient(G.space, u, family_from(family, G), p, solver_options(g));
      const SolveResult hj = minimal_hajlasz(G.space, u, p, solver_options(g));
      json j{{"upper_gradient", io::to_json(ug)}, {"hajlasz", io::to_json(hj)},
             {"hajlasz_pointwise", io::nums(hajlasz_pointwise(G.space, u))}};
      if (sharp) j["sharp_maximal"] = io::nums(sharp_maximal(G.space, u));
      if (csv) {
        emit(g, "hajlasz.csv", io::point_fn_csv(hj.minimizer, "h"));
      } else {
        emit_json(g, "hajlasz", j);
      }
    } else if (c_regularize->parsed()) {
      const Graph G = io::read_metric_space(mms);
      const PointFn u = io::read_point_fn(fn);
      const PointFn h = hfile.empty() ? hajlasz_pointwise(G.space, u) : io::read_point_fn(hfile);
      LipTruncOptions o;
      o.c_delta = c_delta;
      const LipTruncResult r = lipschitz_truncation(G.space, u, h, io::read_space(space), family_from(family, G), eps, o);
      if (!g.out.empty()) emit(g, "scan.csv", io::scan_csv(r));
      if (csv) {
        emit(g, "regularize.csv", io::scan_csv(r));
      } else {
        emit_json(g, "regularize", io::to_json(r));
      }
    } else if (c_demo->parsed()) {
      presets::PresetOutput r;
      if (preset == "lorentz-embedding") r = presets::lorentz_embedding(g.seed, count);
      if (preset == "herz-riesz") r = presets::herz_riesz(hr_family, g.seed, seeds);
      if (preset == "criteria-sweep") r = presets::criteria_sweep();
      if (preset == "modulus-grid") r = presets::modulus_grid();
      if (preset == "lip-trunc-sweep") r = presets::lip_trunc_sweep(g.seed, instances);
      if (preset == "marcinkiewicz-gap") r = presets::marcinkiewicz_gap(alpha, dim, grid);
      if (!g.out.empty()) {
        emit(g, r.id + ".csv", r.table.csv());
        emit_json(g, r.id + "-summary", r.summary);
      } else if (csv) {
        emit(g, r.id + ".csv", r.table.csv());
      } else {
        emit_json(g, r.id, {{"summary", r.summary}, {"rows", r.table.rows}, {"header", r.table.header}});
      }
    } else if (c_generate->parsed()) {
      emit_json(g, "space", io::to_json(io::generate(mms)));
    }
  } catch (const Error& e) {
    std::cerr << "ri-kit: " << e.what() << '\n';
    return e.code() == ErrorCode::BudgetExhausted || e.code() == ErrorCode::SolverStall ? 3 : 2;
  } catch (const io::json::exception& e) {
    std::cerr << "ri-kit: malformed input: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ri-kit: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
