// Copyright 2026 The c4tail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "c4tail/cores.hpp"
#include "c4tail/errors.hpp"
#include "c4tail/extremal.hpp"
#include "c4tail/kernel.hpp"
#include "c4tail/meanfield.hpp"
#include "c4tail/montecarlo.hpp"
#include "c4tail/rates.hpp"
#include "c4tail/subcube.hpp"
#include "c4tail/varsolve.hpp"

namespace {

using namespace c4tail;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Rounded to 12 significant digits; non-finite values become null.
ojson num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

int as_int(double v, const char* flag) {
  if (!(v == std::floor(v)) || std::abs(v) > 1e9)
    throw DomainError(std::string(flag) + " must be an integer");
  return static_cast<int>(v);
}

ojson edges_json(const SimpleGraph& g) {
  ojson a = ojson::array();
  for (const Edge& e : g.edges()) a.push_back({e.u, e.v});
  return a;
}

ojson graph_json(const SimpleGraph& g) {
  return {{"n", g.n()}, {"m", g.num_edges()}, {"edges", edges_json(g)}};
}

struct Output {
  ojson result;                  // object, or array of flat row objects
  std::vector<std::string> columns;  // row order for tables
  std::optional<std::string> text;   // native artifact (edge list)
  std::string default_format = "json";
};

// ---- subcommand bodies --------------------------------------------------

struct Flags {
  double n = 0, p = 0, delta = 0, eps = 0, s = 0, K = 0, m = 0;
  std::optional<double> k, R, phi_hat, m_opt;
  double min_degree = 2;
  std::uint64_t trials = 0;
  bool exact = false;
  std::string p_grid, graph, method = "ansatz";
};

ojson regime_json(const RegimeDescriptor& r) {
  return {{"label", regime_name(r.label)},
          {"name", r.name()},
          {"k", r.k ? ojson(*r.k) : ojson(nullptr)},
          {"boundary_warning", r.boundary_warning}};
}

Output run_rate(const Flags& f) {
  const RateReport rep = rate_theorem(f.n, f.p, f.delta);
  const PhiBounds b = phi_bounds(f.n, f.p, f.delta, f.eps);
  Output o;
  o.result = {{"n", num(f.n)},
              {"p", num(f.p)},
              {"delta", num(f.delta)},
              {"eps", num(f.eps)},
              {"regime", regime_json(rep.regime)},
              {"normalized_rate", num(rep.normalized_rate)},
              {"raw_log_prob", num(rep.raw_log_prob)},
              {"plant",
               {{"family", rep.plant.family},
                {"side_small", num(rep.plant.side_small)},
                {"side_large", num(rep.plant.side_large)},
                {"edges", num(rep.plant.edges)}}},
              {"rho", num(rep.rho)},
              {"dense_rate_alt", num(rep.dense_rate_alt)},
              {"planting_bound_norm", num(normalized_planting_bound(f.n, f.p, f.delta))},
              {"phi_lower", num(b.lower)},
              {"phi_upper", num(b.upper)}};
  return o;
}

std::vector<double> parse_grid(const std::string& text) {
  double lo = 0, hi = 0;
  long long steps = 0;
  char c1 = 0, c2 = 0, extra = 0;
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  if (!(is >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || (is >> extra))
    throw UsageError("--p-grid must be lo:hi:steps");
  if (!(lo > 0 && hi >= lo) || steps < 1 || steps > 1000000 || (steps == 1 && hi != lo))
    throw UsageError("--p-grid needs 0 < lo <= hi and steps >= 1");
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (long long i = 0; i < steps; ++i)
    g[i] = steps == 1 ? lo
                      : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                                    static_cast<double>(steps - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

Output run_sweep(const Flags& f) {
  Output o;
  o.default_format = "csv";
  o.columns = {"p", "regime", "k", "normalized_rate", "planting_bound_norm", "meanfield_norm", "ratio"};
  o.result = ojson::array();
  for (double p : parse_grid(f.p_grid)) {
    const RateReport rep = rate_theorem(f.n, p, f.delta);
    ojson row = {{"p", num(p)},
                 {"regime", rep.regime.name()},
                 {"k", rep.regime.k ? ojson(*rep.regime.k) : ojson(nullptr)},
                 {"normalized_rate", num(rep.normalized_rate)},
                 {"planting_bound_norm", num(normalized_planting_bound(f.n, p, f.delta))},
                 {"meanfield_norm", nullptr},
                 {"ratio", nullptr}};
    if (rep.regime.label != RegimeLabel::Dense) {
      const GapReport g = gap_report(f.n, p, f.delta);
      row["meanfield_norm"] = num(g.meanfield_norm);
      row["ratio"] = num(g.ratio);
    }
    o.result.push_back(row);
  }
  return o;
}

Output run_phi(const Flags& f) {
  const PhiBounds b = phi_bounds(f.n, f.p, f.delta, f.eps);
  Output o;
  o.result = {{"n", num(f.n)},           {"p", num(f.p)},
              {"delta", num(f.delta)},   {"eps", num(f.eps)},
              {"regime", regime_json(regime_classify(f.n, f.p))},
              {"lower", num(b.lower)},   {"upper", num(b.upper)},
              {"dense", b.dense}};
  if (f.exact) {
    const int n = as_int(f.n, "--n");
    o.result["exact_one_supcube"] = num(phi_bruteforce(n, f.p, f.delta, true));
    o.result["exact"] = num(phi_bruteforce(n, f.p, f.delta, false));
  }
  return o;
}

Output run_plant(const Flags& f) {
  std::vector<int> ks;
  if (f.k) {
    ks.push_back(as_int(*f.k, "--k"));
    if (ks[0] == 1 || ks[0] < 0) throw DomainError("--k must be 0 or at least 2");
  } else {
    ks = {0, 2, 3, 4, 5, 6, 7, 8};
  }
  const int kmax = std::max(2, *std::max_element(ks.begin(), ks.end()));
  const PlantSizes s = plant_sizes(f.n, f.p, f.delta, f.eps, kmax);
  Output o;
  ojson fams = ojson::array();
  for (int k : ks) {
    ojson row = {{"k", k}, {"r_k", num(s.r[k])}, {"m_k", num(s.m[k])}, {"side", num(k ? s.m[k] / k : std::sqrt(s.m[k]))}};
    try {
      row["log_prob_lower"] = num(planting_log_prob_lower(f.n, f.p, f.delta, f.eps, k));
    } catch (const InfeasibleError& e) {
      row["log_prob_lower"] = nullptr;
      row["note"] = e.what();
    }
    fams.push_back(row);
  }
  o.result = {{"n", num(f.n)},
              {"p", num(f.p)},
              {"delta", num(f.delta)},
              {"eps", num(f.eps)},
              {"expectation", num(s.expectation)},
              {"m_star", num(s.m_star)},
              {"hub_log_prob_lower", num(dense_planting_log_prob_lower(f.n, f.p, f.delta, f.eps))},
              {"families", fams}};
  return o;
}

Output run_extremal(const Flags& f) {
  const int n = as_int(f.n, "--n");
  const int dmin = as_int(f.min_degree, "--min-degree");
  const int top = static_cast<int>(num_pairs(std::max(n, 0)));
  int lo = n, hi = std::min(12, top);
  if (f.m_opt) lo = hi = as_int(*f.m_opt, "--m");
  if (lo < 0 || hi > top) throw DomainError("--m outside [0, C(n,2)]");
  Output o;
  o.default_format = "csv";
  o.columns = {"n", "m", "min_degree", "max_count", "bound", "tight"};
  o.result = ojson::array();
  for (int m = lo; m <= hi; ++m) {
    if (enumerate_graphs(n, m, dmin).empty()) continue;
    const ExtremalRecord r = max_induced_c4(n, m, dmin);
    const double bound = m > 3 ? bound_inducibility(n, m) : std::numeric_limits<double>::quiet_NaN();
    o.result.push_back({{"n", n},
                        {"m", m},
                        {"min_degree", dmin},
                        {"max_count", r.max_count},
                        {"bound", num(bound)},
                        {"tight", static_cast<double>(r.max_count) == bound}});
  }
  return o;
}

Output run_core_extract(const Flags& f) {
  std::ifstream in(f.graph);
  if (!in) throw DomainError("cannot read graph file " + f.graph);
  const SimpleGraph g = read_edge_list(in);
  const SimpleGraph c = extract_core(g, f.s, f.p);
  Output o;
  o.default_format = "edgelist";
  o.text = to_edge_list(c);
  o.result = {{"input", graph_json(g)},
              {"core", graph_json(c)},
              {"n_score_before", num(n_score(g, f.p))},
              {"n_score_after", num(n_score(c, f.p))}};
  return o;
}

Output run_core_census(const Flags& f) {
  const int n = as_int(f.n, "--n"), m = as_int(f.m, "--m");
  const CoreParams c = make_core_params(n, f.p, f.delta, f.eps, f.K, f.phi_hat);
  const CoreReport r = enumerate_cores(n, m, c);
  ojson ex = ojson::array();
  for (const SimpleGraph& g : r.examples) ex.push_back(edges_json(g));
  Output o;
  o.result = {{"n", r.n},
              {"m", r.m},
              {"params",
               {{"eps", num(c.eps)}, {"delta", num(c.delta)}, {"K", num(c.K)}, {"p", num(c.p)},
                {"phi_hat", num(c.phi_hat)}}},
              {"count", r.count},
              {"v_max", r.v_max},
              {"vm_bound", num(r.vm_bound)},
              {"vm_bound_holds", r.vm_bound_holds},
              {"examples", ex}};
  return o;
}

Output run_varsolve(const Flags& f) {
  const int R = f.R ? as_int(*f.R, "--R") : 0;
  const DiscreteSolution s = solve_discrete(f.n, f.p, f.delta, f.eps, R);
  ojson x = ojson::array();
  for (double v : s.x_star.values()) x.push_back(num(v));
  Output o;
  o.result = {{"k", s.k},
              {"alpha", num(s.x_star[s.k])},
              {"value", num(s.value)},
              {"grid_best", num(s.grid_best)},
              {"gap", num(s.gap)},
              {"grid_argmax", s.grid_argmax},
              {"R", s.R},
              {"t", num(s.t)},
              {"m2", num(s.m2)},
              {"push_checks", s.push_checks},
              {"push_violations", s.push_violations},
              {"x_star", x}};
  return o;
}

ojson solution_json(const MeanfieldSolution& s, int n, double p) {
  ojson q = ojson::array();
  for (double v : s.q_star) q.push_back(num(v));
  const double scale = static_cast<double>(n) * n * p * p * std::log(1 / p);
  const DegreeSumDiagnostics d = degree_sum_diagnostics(s.q_star, n, p);
  return {{"method", method_name(s.method)},
          {"cost", num(s.cost)},
          {"normalized_cost", num(s.cost / scale)},
          {"constraint_value", num(s.constraint_value)},
          {"target", num(s.target)},
          {"block_a", s.block_a},
          {"block_b", s.block_b},
          {"block_w", num(s.block_w)},
          {"iterations", s.iterations},
          {"diagnostics",
           {{"b", num(d.b)},
            {"degree_square_ratio", num(d.degree_square_ratio)},
            {"mass_ratio", num(d.mass_ratio)},
            {"square_ratio", num(d.square_ratio)}}},
          {"q_star", q}};
}

Output run_meanfield(const Flags& f, std::uint64_t seed) {
  const int n = as_int(f.n, "--n");
  Output o;
  if (f.method == "ansatz") {
    o.result = solution_json(solve_ansatz(n, f.p, f.delta), n, f.p);
  } else if (f.method == "general") {
    o.result = solution_json(solve_general(n, f.p, f.delta, seed), n, f.p);
  } else {
    o.result = {{"ansatz", solution_json(solve_ansatz(n, f.p, f.delta), n, f.p)},
                {"general", solution_json(solve_general(n, f.p, f.delta, seed), n, f.p)}};
  }
  return o;
}

Output run_gap(const Flags& f) {
  double p = f.p;
  if (f.k) p = regime_midpoint(f.n, as_int(*f.k, "--k"));
  else if (!(p > 0)) throw UsageError("gap needs --k or --p");
  const GapReport g = gap_report(f.n, p, f.delta);
  Output o;
  o.result = {{"n", num(f.n)},
              {"p", num(p)},
              {"delta", num(f.delta)},
              {"regime", regime_json(g.regime)},
              {"meanfield_norm", num(g.meanfield_norm)},
              {"family_norm", num(g.family_norm)},
              {"ratio", num(g.ratio)}};
  return o;
}

Output run_tail(const Flags& f, std::uint64_t seed) {
  const int n = as_int(f.n, "--n");
  const TailEstimate e = estimate_tail(n, f.p, f.delta, f.trials, seed);
  Output o;
  o.result = {{"n", n},
              {"p", num(f.p)},
              {"delta", num(f.delta)},
              {"threshold", num(e.threshold)},
              {"p_hat", num(e.p_hat)},
              {"trials", e.trials},
              {"successes", e.successes},
              {"ci_low", num(e.ci_low)},
              {"ci_high", num(e.ci_high)},
              {"seed", e.seed}};
  if (f.exact) {
    if (n <= kTailOracleMaxN) {
      const double exact = exact_tail_probability(n, f.p, e.threshold).probability;
      o.result["oracle"] = num(exact);
      o.result["oracle_in_ci"] = e.ci_low <= exact && exact <= e.ci_high;
    } else {
      o.result["oracle"] = nullptr;
      o.result["oracle_note"] = "exact oracle needs n <= 7";
    }
  }
  return o;
}

// ---- emission -------------------------------------------------------------

std::string csv_cell(const ojson& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt12(v.get<double>());
  if (v.is_number()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void flatten(const ojson& v, const std::string& prefix, ojson& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else {
    out[prefix] = v;
  }
}

std::string render(const Output& o, const json& config, const std::string& format) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  if (format == "edgelist") {
    if (!o.text) throw UsageError("--format edgelist is only available for core extract");
    return *o.text;
  }
  if (format == "json") {
    ojson doc;
    doc["config"] = ojson::parse(config.dump());
    doc["result"] = o.result;
    return doc.dump(2) + "\n";
  }
  os << "# config: " << config.dump() << "\n";
  std::vector<ojson> rows;
  if (o.result.is_array()) {
    for (const auto& r : o.result) rows.push_back(r);
  } else {
    ojson flat = ojson::object();
    flatten(o.result, "", flat);
    rows.push_back(flat);
  }
  std::vector<std::string> cols = o.columns;
  if (cols.empty() && !rows.empty())
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) cols.push_back(it.key());
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      os << (i ? "," : "") << csv_cell(r.contains(cols[i]) ? r.at(cols[i]) : ojson(nullptr));
    os << "\n";
  }
  return os.str();
}

json canonical_value(const CLI::Option* opt) {
  std::string text;
  if (opt->count() > 0) {
    if (opt->get_expected_max() == 0) return true;
    text = opt->results().front();
  } else {
    if (opt->get_expected_max() == 0) return false;
    text = opt->get_default_str();
    if (text.empty()) return nullptr;
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end && *end == '\0' && end != text.c_str() && std::isfinite(v)) {
    if (v == std::floor(v) && std::abs(v) < 9e15) return static_cast<long long>(v);
    return std::strtod(fmt12(v).c_str(), nullptr);
  }
  return text;
}

json run_config(const CLI::App* sub, const std::string& name, std::uint64_t seed,
                const std::string& format, const std::string& out) {
  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    json v = canonical_value(opt);
    if (!v.is_null()) params[opt->get_lnames()[0]] = v;
  }
  json c;
  c["subcommand"] = name;
  c["parameters"] = params;
  c["seed"] = seed;
  c["output_format"] = format;
  c["output_path"] = out.empty() ? json(nullptr) : json(out);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper-tail rates, oracles and experiments for induced 4-cycle counts in G(n,p)"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  std::string format, out;
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--format", format, "csv or json (edgelist for core extract)")
      ->check(CLI::IsMember({"csv", "json", "edgelist"}));
  app.add_option("--out", out, "write the artifact here instead of stdout");

  Flags f;
  struct Entry {
    CLI::App* app;
    std::string name;
    std::function<Output()> run;
  };
  std::vector<Entry> entries;
  auto nreal = [&](CLI::App* s) { s->add_option("--n", f.n, "vertex count")->required(); };
  auto preal = [&](CLI::App* s) { s->add_option("--p", f.p, "edge probability")->required(); };
  auto dreal = [&](CLI::App* s) { s->add_option("--delta", f.delta, "relative excess")->required(); };
  auto ereal = [&](CLI::App* s, bool req) {
    auto* o = s->add_option("--eps", f.eps, "slack");
    if (req) o->required();
    else o->capture_default_str();
  };

  auto* rate = app.add_subcommand("rate", "rate function and optimal plant");
  nreal(rate), preal(rate), dreal(rate), ereal(rate, false);
  entries.push_back({rate, "rate", [&] { return run_rate(f); }});

  auto* sweep = app.add_subcommand("sweep", "phase-diagram sweep over a log-spaced p grid");
  nreal(sweep), dreal(sweep);
  sweep->add_option("--p-grid", f.p_grid, "lo:hi:steps")->required();
  entries.push_back({sweep, "sweep", [&] { return run_sweep(f); }});

  auto* phi = app.add_subcommand("phi", "bounds on the subcube rate; --exact adds brute force");
  nreal(phi), preal(phi), dreal(phi), ereal(phi, false);
  phi->add_flag("--exact", f.exact, "brute force at tiny n");
  entries.push_back({phi, "phi", [&] { return run_phi(f); }});

  auto* plant = app.add_subcommand("plant", "plant sizes and planting lower bounds");
  nreal(plant), preal(plant), dreal(plant), ereal(plant, false);
  plant->add_option("--k", f.k, "family index (0 for the K_{a,a} plant)");
  entries.push_back({plant, "plant", [&] { return run_plant(f); }});

  auto* extremal = app.add_subcommand("extremal", "exhaustive maximum induced C4 counts");
  nreal(extremal);
  extremal->add_option("--m", f.m_opt, "edge count (default n..min(12, C(n,2)))");
  extremal->add_option("--min-degree", f.min_degree, "minimum degree")->capture_default_str();
  entries.push_back({extremal, "extremal", [&] { return run_extremal(f); }});

  auto* core = app.add_subcommand("core", "core extraction and census");
  core->require_subcommand(1);
  auto* extract = core->add_subcommand("extract", "delete low-drop edges until none remain");
  extract->add_option("--graph", f.graph, "edge-list file")->required();
  extract->add_option("--s", f.s, "total drop budget")->required();
  extract->add_option("--p", f.p, "edge probability")->required();
  entries.push_back({extract, "core extract", [&] { return run_core_extract(f); }});
  auto* census = core->add_subcommand("census", "exhaustive core census");
  nreal(census), dreal(census), ereal(census, true), preal(census);
  census->add_option("--m", f.m, "edge count")->required();
  census->add_option("--K", f.K, "size constant")->required();
  census->add_option("--phi-hat", f.phi_hat, "override for the rate proxy");
  entries.push_back({census, "core census", [&] { return run_core_census(f); }});

  auto* vs = app.add_subcommand("varsolve", "discrete variational problem");
  nreal(vs), preal(vs), dreal(vs), ereal(vs, true);
  vs->add_option("--R", f.R, "number of degree classes (default ceil(1/eps))");
  entries.push_back({vs, "varsolve", [&] { return run_varsolve(f); }});

  auto* mf = app.add_subcommand("meanfield", "naive mean-field problem");
  nreal(mf), preal(mf), dreal(mf);
  mf->add_option("--method", f.method, "ansatz, general or both")
      ->check(CLI::IsMember({"ansatz", "general", "both"}))
      ->capture_default_str();
  entries.push_back({mf, "meanfield", [&] { return run_meanfield(f, seed); }});

  auto* gap = app.add_subcommand("gap", "family rate over mean-field rate");
  nreal(gap), dreal(gap);
  gap->add_option("--k", f.k, "use the midpoint of regime SPARSE_K(k)");
  gap->add_option("--p", f.p, "edge probability");
  entries.push_back({gap, "gap", [&] { return run_gap(f); }});

  auto* tail = app.add_subcommand("tail", "Monte Carlo upper-tail estimate");
  nreal(tail), preal(tail), dreal(tail);
  tail->add_option("--trials", f.trials, "number of samples")->required();
  tail->add_flag("--exact", f.exact, "add the exhaustive oracle (n <= 7)");
  entries.push_back({tail, "tail", [&] { return run_tail(f, seed); }});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const Entry* chosen = nullptr;
  for (const Entry& e : entries)
    if (e.app->parsed()) chosen = &e;
  try {
    if (!chosen) throw UsageError("no subcommand");
    Output o = chosen->run();
    const std::string fmt = format.empty() ? o.default_format : format;
    const std::string text = render(o, run_config(chosen->app, chosen->name, seed, fmt, out), fmt);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream os(out, std::ios::binary);
      if (!(os << text)) throw DomainError("cannot write " + out);
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  }
}
