#include "mtrans/cli.hpp"

#include "mtrans/construct.hpp"
#include "mtrans/error.hpp"
#include "mtrans/hull.hpp"
#include "mtrans/io.hpp"
#include "mtrans/optimize.hpp"
#include "mtrans/transversal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace mtrans {

namespace {

using nlohmann::json;

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

json big_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(x);
  }
  return x.str();
}

json vectors_json(const MultiTransversal& t) {
  json out = json::array();
  for (const auto& [v, c] : t.entries()) out.push_back({{"v", v.coords()}, {"mult", c}});
  return out;
}

void emit(std::ostream& out, const std::string& path, const std::string& contents) {
  if (path.empty()) {
    out << contents;
  } else {
    write_file(path, contents);
  }
}

struct ConstructOptions {
  std::vector<std::string> params;
  std::vector<std::string> inputs;
  std::string beta = "0";
  std::string mu;
  std::string betas;
  std::string method = "frac";
  std::string alphas;
  std::string mode = "transversal";
  std::string out;
  std::string params_out;
};

int cmd_construct(const ConstructOptions& o, std::ostream& out) {
  std::vector<ParamSet> params;
  for (const auto& path : o.params) params.push_back(parse_params(read_file(path)).params);
  std::vector<MultiTransversal> inputs;
  for (const auto& path : o.inputs) inputs.push_back(parse_transversal(read_file(path)));

  auto one_params = [&]() -> const ParamSet& {
    if (params.size() != 1) {
      throw ParseError("method " + o.method + " takes exactly one --params file");
    }
    return params.front();
  };

  TransversalWithParams result;
  if (o.method == "frac") {
    const ParamSet& p = one_params();
    const Rational beta = Rational::parse(o.beta);
    if (o.mu.empty()) {
      result = {construct_full(p, beta), p};
    } else {
      const Rational mu = Rational::parse(o.mu);
      const auto bad = gencond_violations(p, mu);
      if (!bad.empty()) {
        throw ConstructionError("window too wide for P = " + to_string(bad.front()), bad.front());
      }
      result = {fractional_construction(p.dims(), FracWindow(beta, mu)), p};
    }
  } else if (o.method == "interval") {
    const ParamSet& p = one_params();
    if (o.mu.empty() || o.betas.empty()) {
      throw ParseError("method interval needs --mu and --betas");
    }
    const Rational mu = Rational::parse(o.mu);
    const auto betas = parse_rational_list(o.betas);
    auto t = interval_union_construction(p.dims(), p.k(), mu, betas);
    std::map<Subset, std::int64_t> bounds;
    for (const auto& P : p.subsets()) bounds[P] = (mu * Rational(p.box_size(P))).to_int64();
    result = {std::move(t), ParamSet(p.dims(), p.k(), std::move(bounds))};
  } else if (o.method == "tensor") {
    if (inputs.size() != 2 || params.size() != 2) {
      throw ParseError("method tensor needs two --in files and two --params files");
    }
    result = tensor_product(inputs[0], params[0], inputs[1], params[1]);
  } else if (o.method == "lincomb") {
    const auto alphas = parse_rational_list(o.alphas);
    if (inputs.empty() || inputs.size() != params.size() || inputs.size() != alphas.size()) {
      throw ParseError("method lincomb needs matching numbers of --in, --params and --alphas entries");
    }
    std::vector<LinearTerm> terms;
    for (std::size_t i = 0; i < inputs.size(); ++i) terms.push_back({alphas[i], inputs[i], params[i]});
    CombinationMode mode;
    if (o.mode == "transversal") {
      mode = CombinationMode::transversal;
    } else if (o.mode == "moa") {
      mode = CombinationMode::moa;
    } else {
      throw ParseError("--mode must be transversal or moa");
    }
    result = linear_combination(terms, mode);
  } else {
    throw ParseError("unknown method " + o.method);
  }

  emit(out, o.out, format_transversal(result.transversal));
  if (!o.params_out.empty()) write_file(o.params_out, format_params({result.params, {}, {}}));
  return exit_ok;
}

struct VerifyOptions {
  std::string params;
  std::string input;
  bool as_moa = false;
  int strength = -1;
};

json strength_json(const StrengthResult& r, int d) {
  json j{{"strength", d}, {"holds", r.holds}};
  json lambda = json::array();
  for (const auto& [cols, value] : r.lambda) lambda.push_back({{"columns", cols}, {"lambda", value}});
  j["lambda"] = lambda;
  if (!r.holds) {
    j["witness"] = {{"columns", r.columns},
                    {"first_tuple", r.first_tuple},
                    {"first_count", r.first_count},
                    {"second_tuple", r.second_tuple},
                    {"second_count", r.second_count}};
  }
  return j;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const ParamSet p = parse_params(read_file(o.params)).params;
  const std::string text = read_file(o.input);
  const bool moa_input = text.rfind("MOA", 0) == 0;

  MultiTransversal t;
  std::optional<Moa> array;
  if (moa_input) {
    array = parse_moa(text);
    t = rows_as_multiset(*array);
  } else {
    t = parse_transversal(text);
  }

  json report;
  bool ok = true;
  if (!(t.dims() == p.dims())) {
    report["error"] = "input dimensions differ from the parameter file";
    out << report.dump(2) << "\n";
    return exit_verify;
  }
  const auto check = check_transversal(t, p);
  ok = check.ok;
  json witnesses = json::array();
  for (const auto& w : check.witnesses) {
    witnesses.push_back({{"P", w.P}, {"fixed", w.fixed}, {"count", w.count}, {"bound", w.bound}});
  }
  report["transversal"] = {{"ok", check.ok}, {"witnesses", witnesses}};
  report["size"] = t.size();
  report["simple"] = is_simple(t);
  report["konstant"] = konstant_holds(p);
  if (check.ok) {
    const auto full = fullness(t, p);
    report["full"] = full.is_full;
    report["tight_sets"] = full.tight_sets;
  } else {
    report["full"] = false;
  }

  if (o.as_moa || moa_input) {
    const int d = o.strength >= 0 ? o.strength : p.parts() - p.k();
    json moa;
    try {
      const Moa a = array ? *array : to_moa(t, p);
      const auto r = moa_strength(a, d);
      moa = strength_json(r, d);
      ok = ok && r.holds;
    } catch (const ConstructionError& e) {
      moa = {{"strength", d}, {"holds", false}, {"error", e.what()}};
      ok = false;
    } catch (const RangeError& e) {
      moa = {{"strength", d}, {"holds", false}, {"error", e.what()}};
      ok = false;
    }
    report["moa"] = moa;
  }
  report["ok"] = ok;
  out << report.dump(2) << "\n";
  return ok ? exit_ok : exit_verify;
}

struct SolveOptions {
  std::string params;
  std::string mode = "bnb";
  std::string out;
};

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const ParamFile file = parse_params(read_file(o.params));
  if (!file.m) {
    throw ParseError("solve needs \"m\" in the parameter file");
  }
  SolveMode mode;
  if (o.mode == "exhaustive") {
    mode = SolveMode::exhaustive;
  } else if (o.mode == "bnb") {
    mode = SolveMode::branch_and_bound;
  } else {
    throw ParseError("--mode must be exhaustive or bnb");
  }
  const auto result = max_weight_transversal(file.params, *file.m, mode);
  if (!o.out.empty()) write_file(o.out, format_transversal(result.best));
  json report{{"weight", big_to_json(result.weight)},
              {"node_count", result.node_count},
              {"optimal", result.optimal},
              {"best", vectors_json(result.best)}};
  out << report.dump(2) << "\n";
  return exit_ok;
}

struct HullOptions {
  std::string params;
  bool simple = false;
  bool extreme = false;
  std::string decompose;
};

int cmd_hull(const HullOptions& o, std::ostream& out, std::ostream& err) {
  const ParamFile file = parse_params(read_file(o.params));
  const ParamSet& p = file.params;
  std::vector<GammaRow> rows;
  if (file.gamma) rows = file.gamma->rows();
  if (o.simple) {
    const auto simple = GammaConstraint::simplicity(p.dims()).rows();
    rows.insert(rows.end(), simple.begin(), simple.end());
  }
  const GammaConstraint gamma(std::move(rows));
  const auto m = p.dims().part_sizes();
  if (std::any_of(m.begin(), m.end(), [](int x) { return x < 1; })) {
    throw ParseError("hull needs every n_j >= 2");
  }

  if (o.extreme == !o.decompose.empty()) {
    throw ParseError("give exactly one of --extreme and --decompose");
  }
  if (o.extreme) {
    json points = json::array();
    for (const auto& s : extreme_points(p, gamma)) points.push_back(s.counts());
    out << json{{"n", p.dims().sizes()}, {"extreme_points", points}}.dump(2) << "\n";
    return exit_ok;
  }

  const ProfileMatrix target = parse_profile(read_file(o.decompose));
  if (!(target.dims() == p.dims())) {
    throw ParseError("target dimensions differ from the parameter file");
  }
  const auto transversals = enumerate_transversals(p, gamma, false);
  std::vector<ProfileMatrix> candidates;
  for (const auto& t : transversals) candidates.push_back(s_matrix(t, m));
  const auto lambda = convex_decomposition(target, candidates);
  if (!lambda) {
    err << "infeasible\n";
    out << json{{"feasible", false}}.dump(2) << "\n";
    return exit_verify;
  }
  json terms = json::array();
  for (std::size_t u = 0; u < candidates.size(); ++u) {
    if ((*lambda)[u] == Rational(0)) continue;
    terms.push_back({{"coefficient", (*lambda)[u].to_string()},
                     {"transversal", vectors_json(transversals[u])},
                     {"s_matrix", candidates[u].counts()}});
  }
  out << json{{"feasible", true}, {"terms", terms}}.dump(2) << "\n";
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-transversals, mixed orthogonal arrays and Sperner multi-families"};
  app.require_subcommand(1);

  ConstructOptions co;
  auto* construct = app.add_subcommand("construct", "Build a transversal and write it as a transversal file");
  construct->add_option("--params", co.params, "Parameter file (repeat for tensor/lincomb)")->required();
  construct->add_option("--in", co.inputs, "Input transversal file (tensor/lincomb)");
  construct->add_option("--beta", co.beta, "Window start, p/q");
  construct->add_option("--mu", co.mu, "Window width, p/q");
  construct->add_option("--betas", co.betas, "Comma-separated window starts for the interval method");
  construct->add_option("--method", co.method, "frac | interval | tensor | lincomb")
      ->check(CLI::IsMember({"frac", "interval", "tensor", "lincomb"}));
  construct->add_option("--alphas", co.alphas, "Comma-separated coefficients for lincomb");
  construct->add_option("--mode", co.mode, "transversal | moa (lincomb)");
  construct->add_option("--out", co.out, "Output file (default: standard output)");
  construct->add_option("--params-out", co.params_out, "Write the parameters of the result here");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Check a transversal or MOA file against parameters");
  verify->add_option("--params", vo.params, "Parameter file")->required();
  verify->add_option("--in", vo.input, "Transversal or MOA file")->required();
  verify->add_flag("--as-moa", vo.as_moa, "Also test the array strength");
  verify->add_option("--strength", vo.strength, "Strength d (default M - k)");

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Maximum-weight simple transversal");
  solve->add_option("--params", so.params, "Parameter file with \"m\"")->required();
  solve->add_option("--mode", so.mode, "exhaustive | bnb")->check(CLI::IsMember({"exhaustive", "bnb"}));
  solve->add_option("--out", so.out, "Write the optimal transversal here");

  HullOptions ho;
  auto* hull = app.add_subcommand("hull", "Extreme points and convex decompositions of profile matrices");
  hull->add_option("--params", ho.params, "Parameter file (optional \"gamma\")")->required();
  hull->add_flag("--simple", ho.simple, "Add the simplicity constraint");
  hull->add_flag("--extreme", ho.extreme, "Print the extreme points");
  hull->add_option("--decompose", ho.decompose, "Profile file to decompose");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_parse;
  }

  try {
    if (construct->parsed()) return cmd_construct(co, out);
    if (verify->parsed()) return cmd_verify(vo, out);
    if (solve->parsed()) return cmd_solve(so, out);
    return cmd_hull(ho, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const ConstructionError& e) {
    err << "construction error: " << e.what();
    if (!e.subset().empty()) err << " (P = " << to_string(e.subset()) << ")";
    err << "\n";
    return exit_construct;
  } catch (const ParameterError& e) {
    err << "construction error: " << e.what() << "\n";
    return exit_construct;
  } catch (const ScaleError& e) {
    err << "scale error: " << e.what() << "\n";
    return exit_scale;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_verify;
  }
}

}  // namespace mtrans
