#include "ustat/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ustat/bounds.hpp"
#include "ustat/constants_study.hpp"
#include "ustat/hoeffding.hpp"
#include "ustat/kernel_spec.hpp"
#include "ustat/montecarlo.hpp"
#include "ustat/oracle.hpp"
#include "ustat/remark.hpp"
#include "ustat/tolerances.hpp"

namespace ustat {

namespace {

using nlohmann::json;

std::int64_t parse_count(const std::string& text, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + " is not an integer: '" + text + "'");
  }
  if (pos != text.size()) {
    throw std::invalid_argument(std::string(what) + " has trailing characters: '" + text + "'");
  }
  return v;
}

json dist_echo(const FiniteDistribution& dist) {
  json values = json::array();
  json probs = json::array();
  for (Eigen::Index i = 0; i < dist.values().size(); ++i) {
    values.push_back(dist.values()[i]);
    probs.push_back(dist.probs()[i]);
  }
  return {{"values", values}, {"probs", probs}};
}

struct LoadedKernel {
  KernelSpec spec;
  KernelTable kernel;
  FiniteDistribution dist;
};

LoadedKernel load_finite_kernel(const std::string& path) {
  KernelSpec spec = parse_kernel_spec(path);
  if (spec.kind == KernelKind::remark_exponential) {
    throw std::invalid_argument("kernel spec '" + path +
                                "' is the continuous counterexample family; this command "
                                "needs a finite-alphabet kernel");
  }
  FiniteDistribution dist = *spec.dist;
  KernelTable kernel = build_kernel(spec, dist);
  return {std::move(spec), std::move(kernel), std::move(dist)};
}

json parse_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(std::string(what) + " file cannot be opened: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + " file " + path + ": " + e.what());
  }
}

FiniteDistribution distribution_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("values") || !j.contains("probs")) {
    throw std::invalid_argument(where + " needs 'values' and 'probs' arrays");
  }
  const json& values = j.at("values");
  const json& probs = j.at("probs");
  if (!values.is_array() || !probs.is_array() || values.size() != probs.size() ||
      values.empty()) {
    throw std::invalid_argument(where + ": 'values' and 'probs' must be nonempty arrays of "
                                        "matching length");
  }
  Eigen::VectorXd v(values.size()), q(probs.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number() || !probs[i].is_number()) {
      throw std::invalid_argument(where + ": entries must be numbers");
    }
    v[static_cast<Eigen::Index>(i)] = values[i].get<double>();
    q[static_cast<Eigen::Index>(i)] = probs[i].get<double>();
  }
  return FiniteDistribution(std::move(v), std::move(q));
}

SequenceFamily load_sequence(const std::string& path) {
  const json j = parse_json_file(path, "sequence");
  if (!j.is_object() || !j.contains("members") || !j.at("members").is_array() ||
      j.at("members").empty()) {
    throw std::invalid_argument("sequence file " + path +
                                " needs a nonempty 'members' array");
  }
  SequenceFamily seq;
  std::size_t idx = 0;
  for (const json& member : j.at("members")) {
    seq.members.push_back(
        distribution_from_json(member, "members[" + std::to_string(idx) + "]"));
    ++idx;
  }
  return seq;
}

std::vector<CorpusMember> load_corpus(const std::string& path) {
  const json j = parse_json_file(path, "corpus");
  if (!j.is_object() || !j.contains("members") || !j.at("members").is_array() ||
      j.at("members").empty()) {
    throw std::invalid_argument("corpus file " + path + " needs a nonempty 'members' array");
  }
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<CorpusMember> corpus;
  std::size_t idx = 0;
  for (const json& member : j.at("members")) {
    if (!member.is_object() || !member.contains("id") || !member.contains("path") ||
        !member.at("id").is_string() || !member.at("path").is_string()) {
      throw std::invalid_argument("corpus members[" + std::to_string(idx) +
                                  "] needs string 'id' and 'path'");
    }
    const std::filesystem::path rel = member.at("path").get<std::string>();
    const std::string kernel_path = (rel.is_absolute() ? rel : base / rel).string();
    LoadedKernel lk = load_finite_kernel(kernel_path);
    corpus.push_back({member.at("id").get<std::string>(), std::move(lk.kernel),
                      std::move(lk.dist)});
    ++idx;
  }
  return corpus;
}

double resolved_class_budget(const RunConfig& c) {
  if (c.class_budget) return *c.class_budget;
  if (const char* env = std::getenv("USTAT_BUDGET")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("USTAT_BUDGET is not a number: '") + env + "'");
    }
  }
  return OracleOptions{}.class_budget;
}

json to_json(const ExactMomentResult& r) {
  return {{"method", "exact"},        {"value", r.value},
          {"n", r.n},                 {"m", r.m},
          {"p", r.p},                 {"absolute", r.absolute},
          {"num_classes", r.num_classes}, {"elapsed_seconds", r.elapsed_seconds}};
}

json to_json(const McEstimate& e) {
  return {{"method", "mc"},           {"mean", e.mean},
          {"std_error", e.std_error}, {"n_samples", e.n_samples},
          {"seed", e.seed},           {"chunk_size", e.chunk_size},
          {"elapsed_seconds", e.elapsed_seconds}};
}

json to_json(const BoundRow& row) {
  json j{{"n", row.n},
         {"exact_moment", row.exact_moment},
         {"bound_value", row.bound_value},
         {"ratio", row.ratio}};
  if (row.lower_mean_power) j["lower_mean_power"] = *row.lower_mean_power;
  if (row.slack_mean_power) j["slack_mean_power"] = *row.slack_mean_power;
  if (row.lower_moment_sum) j["lower_moment_sum"] = *row.lower_moment_sum;
  if (row.slack_moment_sum) j["slack_moment_sum"] = *row.slack_moment_sum;
  if (row.levelwise_bound) j["levelwise_bound"] = *row.levelwise_bound;
  if (row.sumsq_over_levelwise) j["sumsq_over_levelwise"] = *row.sumsq_over_levelwise;
  return j;
}

json to_json(const BoundReport& rep) {
  json rows = json::array();
  for (const BoundRow& row : rep.rows) rows.push_back(to_json(row));
  json j{{"method", "exact"},
         {"theorem", rep.theorem},
         {"m", rep.m},
         {"p", rep.p},
         {"trivial_zero", rep.trivial_zero},
         {"rows", rows}};
  if (!rep.trivial_zero) {
    j["ratio_min"] = rep.ratio_min;
    j["ratio_max"] = rep.ratio_max;
    j["slope_of_log_ratio"] = rep.slope_of_log_ratio;
    j["fit_r2"] = rep.fit_r2;
  }
  if (rep.min_slack_mean_power) j["min_slack_mean_power"] = *rep.min_slack_mean_power;
  if (rep.min_slack_moment_sum) j["min_slack_moment_sum"] = *rep.min_slack_moment_sum;
  if (rep.orthogonality_max_rel_dev) {
    j["orthogonality_max_rel_dev"] = *rep.orthogonality_max_rel_dev;
  }
  if (rep.sumsq_ratio_min) j["sumsq_ratio_min"] = *rep.sumsq_ratio_min;
  if (rep.sumsq_ratio_max) j["sumsq_ratio_max"] = *rep.sumsq_ratio_max;
  return j;
}

json to_json(const GrowthResult& g, bool quadrature_route) {
  json per_l = json::array();
  for (const GrowthTermFit& fit : g.per_l) {
    per_l.push_back({{"l", fit.l},
                     {"m_values", fit.m_values},
                     {"term", fit.term},
                     {"term_display", fit.term_display},
                     {"fitted_slope", fit.fitted_slope},
                     {"fitted_slope_bound", fit.fitted_slope_bound},
                     {"predicted_exponent", fit.predicted_exponent},
                     {"residual", fit.residual},
                     {"r2", fit.r2}});
  }
  json j{{"method", quadrature_route ? "quadrature" : "mc"},
         {"m", g.m},
         {"k", g.k},
         {"p", g.p},
         {"n_grid", g.n_grid},
         {"per_l", per_l},
         {"degenerate_zero", g.degenerate_zero},
         {"exponent_note", g.exponent_note}};
  if (!g.degenerate_zero) {
    j["fit_r2"] = g.fit_r2;
    j["dominant_l"] = g.dominant_l;
    j["dominant_is_k"] = g.dominant_is_k;
  }
  return j;
}

json to_json(const ConstantsResult& r) {
  const auto witness = [](const ConstantsWitness& w) {
    return json{{"kernel_id", w.kernel_id}, {"n", w.n}, {"ratio", w.ratio}};
  };
  return {{"method", "exact"},
          {"theorem", r.theorem},
          {"p", r.p},
          {"m", r.m},
          {"ratio_inf", r.ratio_inf},
          {"ratio_sup", r.ratio_sup},
          {"witness_inf", witness(r.witness_inf)},
          {"witness_sup", witness(r.witness_sup)}};
}

void append_csv_value(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

std::string verify_csv(const BoundReport& rep) {
  std::string out = "n,exact_moment,bound_value,ratio";
  if (rep.theorem == 1) {
    out += ",lower_mean_power,slack_mean_power,lower_moment_sum,slack_moment_sum";
  } else if (rep.theorem == 3) {
    out += ",levelwise_bound,sumsq_over_levelwise";
  }
  out += "\n";
  for (const BoundRow& row : rep.rows) {
    out += std::to_string(row.n);
    for (double v : {row.exact_moment, row.bound_value, row.ratio}) {
      out += ",";
      append_csv_value(out, v);
    }
    if (rep.theorem == 1) {
      for (double v : {*row.lower_mean_power, *row.slack_mean_power, *row.lower_moment_sum,
                       *row.slack_moment_sum}) {
        out += ",";
        append_csv_value(out, v);
      }
    } else if (rep.theorem == 3) {
      for (double v : {*row.levelwise_bound, *row.sumsq_over_levelwise}) {
        out += ",";
        append_csv_value(out, v);
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> parse_n_grid(const std::string& text) {
  std::vector<std::int64_t> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ':')) parts.push_back(token);
    if (parts.size() < 2 || parts.size() > 3) {
      throw std::invalid_argument("grid range must be a:b, a:b:step, or a:b:xQ; got '" + text +
                                  "'");
    }
    const std::int64_t a = parse_count(parts[0], "grid start");
    const std::int64_t b = parse_count(parts[1], "grid end");
    if (b < a) throw std::invalid_argument("grid end is below grid start in '" + text + "'");
    if (parts.size() == 3 && !parts[2].empty() && parts[2][0] == 'x') {
      const std::int64_t q = parse_count(parts[2].substr(1), "grid factor");
      if (q < 2) throw std::invalid_argument("geometric grid factor must be at least 2");
      for (std::int64_t v = a; v <= b; v *= q) grid.push_back(v);
    } else {
      const std::int64_t step =
          parts.size() == 3 ? parse_count(parts[2], "grid step") : 1;
      if (step < 1) throw std::invalid_argument("grid step must be at least 1");
      for (std::int64_t v = a; v <= b; v += step) grid.push_back(v);
    }
  } else {
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) grid.push_back(parse_count(token, "grid entry"));
  }
  if (grid.empty()) throw std::invalid_argument("grid '" + text + "' is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw std::invalid_argument("grid entries must be at least 1");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }
  return grid;
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos, 0);
  } catch (const std::exception&) {
    throw std::invalid_argument("seed must be a decimal or 0x-prefixed integer: '" + text + "'");
  }
  if (pos != text.size()) {
    throw std::invalid_argument("seed has trailing characters: '" + text + "'");
  }
  return v;
}

int violation_exit_code(const std::string& command, const json& results) {
  const auto below = [&results](const char* key, double floor) {
    return results.contains(key) && results.at(key).get<double>() < floor;
  };
  if (command == "verify") {
    if (below("min_slack_mean_power", -tol::lower_slack)) return 2;
    if (below("min_slack_moment_sum", -tol::lower_slack)) return 2;
    if (results.contains("orthogonality_max_rel_dev") &&
        results.at("orthogonality_max_rel_dev").get<double>() > tol::lower_slack) {
      return 2;
    }
  } else if (command == "lemma2") {
    const json& slacks = results.contains("slacks") ? results.at("slacks") : results;
    for (const char* key : {"interpolation", "product_bound", "max_power"}) {
      if (slacks.contains(key) && slacks.at(key).get<double>() < -tol::equality) return 2;
    }
  } else if (command == "ineq7") {
    if (results.contains("forced") && results.at("forced").get<bool>() &&
        results.at("ratio").get<double>() > 1.0 + tol::equality) {
      return 2;
    }
  }
  return 0;
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"verification laboratory for moment inequalities of symmetric statistics"};
  app.require_subcommand(1);

  RunConfig c;
  std::int64_t n_value = 0;
  std::string grid_text, seed_text;
  double budget_value = 0.0, eval_budget_value = 0.0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", c.output_path, "write the report here instead of stdout");
    sub->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  const auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 4096));
  };

  CLI::App* oracle = app.add_subcommand("oracle", "exact T_n moment by class enumeration");
  oracle->add_option("--kernel", c.kernel_path, "kernel spec JSON")->required();
  oracle->add_option("--n", n_value, "sample size")->required();
  oracle->add_option("--p", c.p, "moment order")->required();
  oracle->add_flag("--signed", "signed moment E T_n^p (integer p) instead of E|T_n|^p");
  oracle->add_option("--budget", budget_value, "class enumeration budget");
  add_workers(oracle);
  add_common(oracle);

  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo T_n moment estimate");
  mc->add_option("--kernel", c.kernel_path, "kernel spec JSON")->required();
  mc->add_option("--n", n_value, "sample size")->required();
  mc->add_option("--p", c.p, "moment order")->required();
  mc->add_option("--samples", c.samples, "sample count")->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed_text, "decimal or 0x-prefixed seed");
  mc->add_flag("--signed", "signed moment instead of absolute");
  mc->add_option("--eval-budget", eval_budget_value, "kernel evaluation budget");
  add_workers(mc);
  add_common(mc);

  CLI::App* verify = app.add_subcommand("verify", "two-sided bound verification over a grid");
  verify->add_option("--theorem", c.theorem, "1 nonnegative, 2 degenerate, 3 sum-of-squares")
      ->required()
      ->check(CLI::Range(1, 3));
  verify->add_option("--kernel", c.kernel_path, "kernel spec JSON")->required();
  verify->add_option("--p", c.p, "moment order")->required();
  verify->add_option("--n-grid", grid_text, "grid: list, a:b, a:b:step, or a:b:xQ")->required();
  verify->add_option("--budget", budget_value, "class enumeration budget");
  add_workers(verify);
  add_common(verify);

  CLI::App* hoeffding = app.add_subcommand("hoeffding", "projection components and residuals");
  hoeffding->add_option("--kernel", c.kernel_path, "kernel spec JSON")->required();
  add_common(hoeffding);

  CLI::App* lemma2 = app.add_subcommand("lemma2", "sequence-moment inequality slacks");
  lemma2->add_option("--seq", c.seq_path, "sequence family JSON")->required();
  lemma2->add_option("--gamma", c.gamma, "lower exponent, >= 1")->required();
  lemma2->add_option("--s", c.s, "middle exponent")->required();
  lemma2->add_option("--p", c.p, "upper exponent")->required();
  add_common(lemma2);

  CLI::App* ineq7 = app.add_subcommand("ineq7", "cross-level product bound ratio");
  ineq7->add_option("--kernel", c.kernel_path, "kernel spec JSON")->required();
  ineq7->add_option("--n", n_value, "sample size")->required();
  ineq7->add_option("--k", c.k, "first conditioning level")->required();
  ineq7->add_option("--l", c.l, "second conditioning level")->required();
  ineq7->add_option("--s", c.s, "moment exponent, >= 1")->required();
  add_common(ineq7);

  CLI::App* growth = app.add_subcommand("growth", "counterexample growth-order study");
  growth->add_option("--kernel", c.kernel_path, "remark_exponential kernel spec JSON")
      ->required();
  growth->add_option("--n-grid", grid_text, "grid: list, a:b, a:b:step, or a:b:xQ")->required();
  growth->add_option("--seed", seed_text, "decimal or 0x-prefixed seed");
  growth->add_option("--mc-outer", c.mc_outer, "outer samples (order >= 3 route)")
      ->check(CLI::PositiveNumber);
  growth->add_option("--mc-inner", c.mc_inner, "inner samples (order >= 3 route)")
      ->check(CLI::PositiveNumber);
  add_workers(growth);
  add_common(growth);

  CLI::App* constants = app.add_subcommand("constants", "empirical bound-constant envelope");
  constants->add_option("--corpus", c.corpus_path, "corpus manifest JSON")->required();
  constants->add_option("--theorem", c.theorem, "1, 2, or 3")->required()->check(CLI::Range(1, 3));
  constants->add_option("--p", c.p, "moment order")->required();
  constants->add_option("--n-grid", grid_text, "grid: list, a:b, a:b:step, or a:b:xQ")
      ->required();
  constants->add_option("--budget", budget_value, "class enumeration budget");
  add_workers(constants);
  add_common(constants);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    throw CliExit{code == 0 ? 0 : 1};
  }

  CLI::App* sub = app.get_subcommands().at(0);
  c.command = sub->get_name();
  // Not every subcommand defines every flag; count() throws on unknown names.
  const auto given = [&](const char* name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--n")) c.n = n_value;
  if (given("--n-grid")) c.n_grid = parse_n_grid(grid_text);
  if (given("--seed")) c.seed = parse_seed(seed_text);
  if (given("--budget")) c.class_budget = budget_value;
  if (given("--eval-budget")) c.eval_budget = eval_budget_value;
  if (given("--signed")) c.absolute = false;
  return c;
}

RunOutcome run(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  json results;
  json config{{"format", c.format}};
  std::string csv;
  bool csv_capable = false;

  if (c.command == "oracle") {
    LoadedKernel lk = load_finite_kernel(c.kernel_path);
    OracleOptions opt;
    opt.class_budget = resolved_class_budget(c);
    opt.workers = c.workers;
    results = to_json(exact_Tn_moment(lk.kernel, lk.dist, *c.n, c.p, c.absolute, opt));
    config["kernel"] = c.kernel_path;
    config["dist"] = dist_echo(lk.dist);
    config["n"] = *c.n;
    config["p"] = c.p;
    config["absolute"] = c.absolute;
    config["workers"] = c.workers;
    config["class_budget"] = opt.class_budget;
  } else if (c.command == "mc") {
    LoadedKernel lk = load_finite_kernel(c.kernel_path);
    McOptions opt;
    opt.workers = c.workers;
    if (c.eval_budget) opt.eval_budget = *c.eval_budget;
    results = to_json(mc_Tn_moment(lk.kernel, lk.dist, static_cast<int>(*c.n), c.p, c.absolute,
                                   c.samples, c.seed, opt));
    config["kernel"] = c.kernel_path;
    config["dist"] = dist_echo(lk.dist);
    config["n"] = *c.n;
    config["p"] = c.p;
    config["absolute"] = c.absolute;
    config["samples"] = c.samples;
    config["seed"] = c.seed;
    config["workers"] = c.workers;
    config["eval_budget"] = opt.eval_budget;
  } else if (c.command == "verify") {
    LoadedKernel lk = load_finite_kernel(c.kernel_path);
    OracleOptions opt;
    opt.class_budget = resolved_class_budget(c);
    opt.workers = c.workers;
    BoundReport rep;
    if (c.theorem == 1) {
      rep = verify_theorem1(lk.kernel, lk.dist, c.n_grid, c.p, opt);
    } else if (c.theorem == 2) {
      rep = verify_theorem2(lk.kernel, lk.dist, c.n_grid, c.p, opt);
    } else {
      rep = verify_theorem3(lk.kernel, lk.dist, c.n_grid, c.p, opt);
    }
    results = to_json(rep);
    csv = verify_csv(rep);
    csv_capable = true;
    config["kernel"] = c.kernel_path;
    config["dist"] = dist_echo(lk.dist);
    config["theorem"] = c.theorem;
    config["p"] = c.p;
    config["n_grid"] = c.n_grid;
    config["workers"] = c.workers;
    config["class_budget"] = opt.class_budget;
  } else if (c.command == "hoeffding") {
    LoadedKernel lk = load_finite_kernel(c.kernel_path);
    ProjectionSet proj = hoeffding_project(lk.kernel, lk.dist);
    json components = json::array();
    for (const KernelTable& comp : proj.components) {
      components.push_back({{"order", comp.order()},
                            {"degeneracy_residual", check_degeneracy(comp, lk.dist)},
                            {"max_abs", comp.max_abs_entry()}});
    }
    results = {{"method", "exact"},
               {"g0", proj.g0},
               {"components", components},
               {"reconstruction_residual", reconstruction_residual(proj)},
               {"max_component_degeneracy", max_component_degeneracy(proj)}};
    config["kernel"] = c.kernel_path;
    config["dist"] = dist_echo(lk.dist);
  } else if (c.command == "lemma2") {
    SequenceFamily seq = load_sequence(c.seq_path);
    Lemma2Slacks slacks = lemma2_check(seq, c.gamma, c.s, c.p);
    json slack_json = json::object();
    if (slacks.interpolation) slack_json["interpolation"] = *slacks.interpolation;
    if (slacks.product_bound) slack_json["product_bound"] = *slacks.product_bound;
    if (slacks.max_power) slack_json["max_power"] = *slacks.max_power;
    results = {{"method", "exact"},
               {"gamma", c.gamma},
               {"s", c.s},
               {"p", c.p},
               {"members", seq.members.size()},
               {"slacks", slack_json}};
    config["seq"] = c.seq_path;
    config["gamma"] = c.gamma;
    config["s"] = c.s;
    config["p"] = c.p;
  } else if (c.command == "ineq7") {
    LoadedKernel lk = load_finite_kernel(c.kernel_path);
    const double ratio = ineq7_check(lk.kernel, lk.dist, *c.n, c.k, c.l, c.s);
    const bool forced = c.k == c.l || lk.kernel.is_constant();
    results = {{"method", "exact"}, {"n", *c.n}, {"k", c.k},          {"l", c.l},
               {"s", c.s},          {"ratio", ratio}, {"forced", forced}};
    config["kernel"] = c.kernel_path;
    config["dist"] = dist_echo(lk.dist);
    config["n"] = *c.n;
    config["k"] = c.k;
    config["l"] = c.l;
    config["s"] = c.s;
  } else if (c.command == "growth") {
    KernelSpec spec = parse_kernel_spec(c.kernel_path);
    if (spec.kind != KernelKind::remark_exponential) {
      throw std::invalid_argument("growth needs a remark_exponential kernel spec; '" +
                                  c.kernel_path + "' has kind " + kernel_kind_name(spec.kind));
    }
    RemarkKernelParams base;
    base.m = spec.m;
    base.k = spec.k;
    base.p = spec.p;
    GrowthOptions opt;
    opt.seed = c.seed;
    opt.workers = c.workers;
    opt.mc_outer = c.mc_outer;
    opt.mc_inner = c.mc_inner;
    GrowthResult g = growth_study(base, c.n_grid, opt);
    results = to_json(g, spec.m <= 2);
    {
      std::ostringstream out;
      write_growth_csv(g, out);
      csv = out.str();
    }
    csv_capable = true;
    config["kernel"] = c.kernel_path;
    config["n_grid"] = c.n_grid;
    config["seed"] = c.seed;
    config["workers"] = c.workers;
    config["mc_outer"] = c.mc_outer;
    config["mc_inner"] = c.mc_inner;
  } else if (c.command == "constants") {
    std::vector<CorpusMember> corpus = load_corpus(c.corpus_path);
    OracleOptions opt;
    opt.class_budget = resolved_class_budget(c);
    opt.workers = c.workers;
    results = to_json(estimate_constants(corpus, c.theorem, c.p, c.n_grid, opt));
    config["corpus"] = c.corpus_path;
    config["theorem"] = c.theorem;
    config["p"] = c.p;
    config["n_grid"] = c.n_grid;
    config["workers"] = c.workers;
    config["class_budget"] = opt.class_budget;
  } else {
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }

  if (c.format == "csv" && !csv_capable) {
    throw std::invalid_argument("csv output is only available for verify and growth");
  }

  RunOutcome out;
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.report = {{"command", c.command},
                {"config", config},
                {"version", kToolVersion},
                {"wall_time_seconds", wall},
                {"results", results}};
  if (c.format == "csv") out.csv = csv;
  out.exit_code = violation_exit_code(c.command, results);
  return out;
}

}  // namespace ustat
