#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "looptrees/bijections.hpp"
#include "looptrees/exactasym.hpp"
#include "looptrees/experiments.hpp"
#include "looptrees/gamma.hpp"
#include "looptrees/laws.hpp"
#include "looptrees/metric.hpp"
#include "looptrees/planetree.hpp"
#include "looptrees/rng.hpp"
#include "looptrees/sampler.hpp"
#include "looptrees/stable.hpp"

using json = nlohmann::ordered_json;
using namespace looptrees;

namespace {

std::string g_out_dir;
std::string g_format = "csv";
std::uint64_t g_seed = 0;
int g_threads = 0;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Every artifact starts with the resolved configuration so a result file is
// reproducible on its own.
std::string config_line(const std::string& cmd,
                        const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream os;
  os << "looptree " << cmd << " seed=" << g_seed << " threads=" << g_threads;
  for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
  return os.str();
}

// Stdout by default; a file under --out when given.
class Sink {
 public:
  explicit Sink(const std::string& name) {
    if (!g_out_dir.empty()) {
      path_ = g_out_dir + "/" + name;
      file_.open(path_);
      if (!file_) throw std::runtime_error("cannot open " + path_);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::string path_;
  std::ofstream file_;
};

void emit_csv(const std::string& name, const std::string& config,
              const std::string& header,
              const std::vector<std::vector<double>>& rows) {
  Sink sink(name);
  sink.out() << "# " << config << "\n" << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      sink.out() << (i ? "," : "") << fmt17(row[i]);
    sink.out() << "\n";
  }
}

void emit_json(const std::string& name, json j) {
  Sink sink(name);
  sink.out() << j.dump(2) << "\n";
}

std::vector<std::size_t> parse_sizes(const std::string& spec) {
  std::vector<std::size_t> out;
  auto parse_one = [](const std::string& tok) -> std::size_t {
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      std::size_t base = std::stoull(tok.substr(0, caret));
      std::size_t exp = std::stoull(tok.substr(caret + 1));
      std::size_t v = 1;
      for (std::size_t i = 0; i < exp; ++i) v *= base;
      return v;
    }
    return std::stoull(tok);
  };
  auto dots = spec.find("..");
  if (dots != std::string::npos) {
    std::size_t lo = parse_one(spec.substr(0, dots));
    std::size_t hi = parse_one(spec.substr(dots + 2));
    for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_one(tok));
  if (out.empty()) throw CLI::ValidationError("--sizes", "empty size list");
  return out;
}

json fit_to_json(const FitResult& f) {
  return json{{"slope", f.slope},
              {"intercept", f.intercept},
              {"r_squared", f.r_squared},
              {"n_points", f.n_points}};
}

// ---- laws ----------------------------------------------------------------

int run_laws_dump(const std::string& model, double a, long long kmax) {
  std::vector<std::vector<double>> rows;
  for (long long k = 0; k <= kmax; ++k) {
    double m = model == "typeII" ? nu_bar(a, k) : nu(a, k);
    rows.push_back({static_cast<double>(k), m});
  }
  emit_csv("laws_dump.csv",
           config_line("laws dump", {{"model", model},
                                     {"a", fmt17(a)},
                                     {"kmax", std::to_string(kmax)}}),
           "k,mass", rows);
  return 0;
}

int run_laws_constants() {
  const auto mc = model_constants();
  json j;
  j["config"] = config_line("laws constants", {});
  j["r_c"] = mc.r_c;
  j["gamma"] = mc.gamma;
  j["z_black"] = mc.z_black;
  j["r_c_bar"] = mc.r_c_bar;
  j["z_black_bar"] = mc.z_black_bar;
  json tilt = json::array(), sub = json::array(), sup = json::array(),
       type2 = json::array();
  for (int i = 1; i <= 9; ++i) {
    double a = 0.05 * i;
    tilt.push_back({{"a", a}, {"lambda", lambda_tilt(a)}});
    sub.push_back({{"a", a}, {"c_alpha", c_alpha(a)}});
  }
  for (int i = 11; i <= 19; ++i) {
    double a = 0.05 * i;
    sup.push_back({{"a", a}, {"c_alpha", c_alpha(a)}});
    type2.push_back({{"a", a}, {"c_alpha_type2", c_alpha_type2(a)}});
  }
  j["lambda_tilt"] = tilt;
  j["c_alpha_subcritical"] = sub;
  j["c_alpha_supercritical"] = sup;
  j["c_alpha_type2"] = type2;
  emit_json("laws_constants.json", j);
  return 0;
}

// ---- bij -----------------------------------------------------------------

int run_bij_loop(const std::string& in_path, bool bar) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  Sink sink(bar ? "loop_bar_edges.txt" : "loop_edges.txt");
  sink.out() << "# "
             << config_line("bij loop",
                            {{"in", in_path}, {"bar", bar ? "1" : "0"}})
             << "\n";
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    PlaneTree t = PlaneTree::parse_line(line);
    LoopGraph g = bar ? loop_bar_of(t) : loop_of(t);
    if (!first) sink.out() << "\n";
    first = false;
    for (const auto& [u, v] : g.edges) sink.out() << u << ' ' << v << "\n";
  }
  return 0;
}

// ---- metric --------------------------------------------------------------

int run_metric_scaling(double a, const std::string& sizes_spec,
                       std::size_t samples) {
  auto sizes = parse_sizes(sizes_spec);
  auto pts = boundary_scaling(a, sizes, samples, g_seed);
  std::vector<std::vector<double>> rows;
  for (const auto& p : pts)
    rows.push_back({static_cast<double>(p.n), p.mean_diameter,
                    p.stderr_diameter, p.mean_max_cycle_fraction});
  std::string cfg = config_line("metric scaling",
                                {{"a", fmt17(a)},
                                 {"sizes", sizes_spec},
                                 {"samples", std::to_string(samples)}});
  emit_csv("scaling.csv", cfg, "n,mean_diameter,stderr,max_cycle_fraction",
           rows);
  json j = fit_to_json(scaling_fit(pts));
  j["config"] = cfg;
  emit_json("scaling_fit.json", j);
  return 0;
}

// ---- stable --------------------------------------------------------------

int run_stable_density(double alpha, double xmax, double step) {
  StableParams p{alpha};
  std::vector<std::vector<double>> rows;
  for (double x = 0.0; x <= xmax + 1e-12; x += step)
    rows.push_back({x, p1_density(p, x)});
  emit_csv("stable_density.csv",
           config_line("stable density", {{"alpha", fmt17(alpha)},
                                          {"xmax", fmt17(xmax)},
                                          {"step", fmt17(step)}}),
           "x,p1_neg", rows);
  return 0;
}

// ---- exact ---------------------------------------------------------------

int run_exact_perimeter(const std::string& model, std::size_t nmax) {
  const bool uipt = model == "uipt";
  const double expnt = uipt ? 4.0 / 3.0 : 10.0 / 3.0;
  TildeTables tables(default_m_cap(nmax));
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<double, double>> fitpts;
  for (std::size_t n = 1; n <= nmax; ++n) {
    double p = uipt ? perimeter_pmf_uipt(n, tables)
                    : perimeter_pmf_boltzmann(n, tables);
    double scaled = p * std::pow(static_cast<double>(n), expnt);
    rows.push_back({static_cast<double>(n), p, scaled});
    if (n >= std::max<std::size_t>(8, nmax / 8))
      fitpts.emplace_back(static_cast<double>(n), p);
  }
  std::string cfg = config_line("exact perimeter",
                                {{"model", model},
                                 {"nmax", std::to_string(nmax)}});
  emit_csv("perimeter_" + model + ".csv", cfg, "n,pmf,scaled_pmf", rows);
  json j = fit_to_json(fit_exponent(fitpts));
  j["config"] = cfg;
  j["slope_target"] = -expnt;
  emit_json("perimeter_" + model + "_fit.json", j);
  return 0;
}

int run_exact_llt(const std::string& ns_spec) {
  auto ns = parse_sizes(ns_spec);
  auto law = OffspringLaw::make_nu(0.5, 65536);
  std::vector<std::vector<double>> rows;
  for (std::size_t n : ns)
    rows.push_back({static_cast<double>(n), llt_error(law, n, 1.0)});
  emit_csv("llt_errors.csv",
           config_line("exact llt", {{"n", ns_spec}}), "n,sup_error", rows);
  return 0;
}

// ---- sample --------------------------------------------------------------

int run_sample(const std::string& law_name, double a, std::size_t n,
               std::size_t count) {
  OffspringLaw law = law_name == "nubar" ? OffspringLaw::make_nu_bar(a)
                                         : OffspringLaw::make_nu(a);
  ConditionedSampler cs(law, n);
  Sink sink("trees.txt");
  sink.out() << "# "
             << config_line("sample", {{"law", law_name},
                                       {"a", fmt17(a)},
                                       {"n", std::to_string(n)},
                                       {"count", std::to_string(count)}})
             << "\n";
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(g_seed, i);
    PlaneTree t = cs.sample(rng);
    sink.out() << t.to_line() << "\n";
  }
  return 0;
}

// ---- report --------------------------------------------------------------

json report_eq17() {
  TildeTables t(16384);
  auto gw = [&](std::size_t n) {
    return 24.0 * t.q(n - 1) * std::pow(static_cast<double>(n), 5.0 / 3.0);
  };
  double target = std::pow(3.0, 1.0 / 3.0) / std::abs(gamma_fn(-2.0 / 3.0));
  json j;
  j["constant"] = richardson_n13(gw(8192), gw(16384));
  j["constant_target"] = target;
  json raw = json::array();
  for (std::size_t n = 256; n <= 16384; n *= 2)
    raw.push_back({{"n", n}, {"scaled", gw(n)}});
  j["sequence"] = raw;
  return j;
}

json report_eq18() {
  TildeTables t(4096);
  auto qn = [&](std::size_t n) {
    return t.q(n) * std::pow(static_cast<double>(n), 5.0 / 3.0);
  };
  auto kn = [&](std::size_t n) {
    return t.k(n) * std::pow(static_cast<double>(n), -1.0 / 3.0);
  };
  json j;
  j["q_constant"] = richardson_n13(qn(2048), qn(4096));
  j["q_constant_target"] =
      1.0 / (8.0 * std::pow(3.0, 2.0 / 3.0) * std::abs(gamma_fn(-2.0 / 3.0)));
  j["k_constant"] = richardson_n13(kn(2048), kn(4096));
  // growth constant of the component-weight sum, divided by 24
  j["k_constant_target"] =
      std::pow(3.0, 5.0 / 6.0) /
      (72.0 * std::sqrt(2.0 * M_PI) * std::abs(gamma_fn(-2.0 / 3.0)));
  double p = 4096;
  j["k_alpha_expectation_constant"] =
      k_alpha_expectation(0.5, 4096) / std::cbrt(p);
  j["k_alpha_expectation_target"] = 24.0 * j["k_constant_target"].get<double>();
  return j;
}

json report_thm11() {
  TildeTables tables(default_m_cap(4096));
  std::vector<std::pair<double, double>> pts;
  json seq = json::array();
  for (std::size_t n = 32; n <= 4096; n *= 2) {
    double p = perimeter_pmf_uipt(n, tables);
    pts.emplace_back(static_cast<double>(n), p);
    seq.push_back({{"n", n},
                   {"pmf", p},
                   {"scaled", p * std::pow(static_cast<double>(n), 4.0 / 3.0)}});
  }
  auto up = [&](std::size_t n) {
    return perimeter_pmf_uipt(n, tables) *
           std::pow(static_cast<double>(n), 4.0 / 3.0);
  };
  json j;
  j["slope"] = fit_exponent(pts).slope;
  j["slope_target"] = -4.0 / 3.0;
  j["constant"] = richardson_n13(up(2048), up(4096));
  j["constant_target"] =
      std::pow(3.0, 2.0 / 3.0) / (2.0 * std::pow(gamma_fn(-2.0 / 3.0), 2.0));
  j["sequence"] = seq;
  return j;
}

json report_boltzmann() {
  TildeTables tables(default_m_cap(2048));
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = 32; n <= 2048; n *= 2)
    pts.emplace_back(static_cast<double>(n),
                     perimeter_pmf_boltzmann(n, tables));
  auto bp = [&](std::size_t n) {
    return perimeter_pmf_boltzmann(n, tables) *
           std::pow(static_cast<double>(n), 10.0 / 3.0);
  };
  json j;
  j["slope"] = fit_exponent(pts).slope;
  j["slope_target"] = -10.0 / 3.0;
  j["constant"] = richardson_n13(bp(1024), bp(2048));
  j["constant_target"] =
      2.0 * std::pow(3.0, 1.0 / 6.0) / std::pow(gamma_fn(-2.0 / 3.0), 2.0);
  return j;
}

json report_thm13() {
  json j;
  double max_resid = 0.0;
  for (int i = 1; i <= 50; ++i) {
    double a = 0.5 * i / 51.0;
    double l = lambda_tilt(a);
    max_resid = std::max(max_resid,
                         std::abs(l * pgf_F_prime(a, l) - pgf_F(a, l)));
  }
  j["tilt_max_residual"] = max_resid;
  j["near_critical_lambda"] =
      (1.0 - lambda_tilt(0.4999)) / std::pow(0.5 - 0.4999, 2.0);
  j["near_critical_lambda_target"] = 16.0 / 9.0;
  j["c_alpha_up"] = c_alpha(0.4999) * std::sqrt(0.5 - 0.4999);
  j["c_alpha_up_target"] = std::pow(3.0, 0.75) / 8.0;
  j["c_alpha_down"] = c_alpha(0.5001) / (0.5001 - 0.5);
  j["c_alpha_down_target"] = 2.0 / std::sqrt(3.0);
  return j;
}

json report_regimes(const std::string& sizes_spec, std::size_t samples) {
  auto sizes = parse_sizes(sizes_spec);
  json j;
  for (double a : {0.5, 0.3}) {
    auto pts = boundary_scaling(a, sizes, samples, g_seed);
    auto fit = scaling_fit(pts);
    json rows = json::array();
    for (const auto& p : pts)
      rows.push_back({{"n", p.n},
                      {"mean_diameter", p.mean_diameter},
                      {"stderr", p.stderr_diameter}});
    std::string key = a == 0.5 ? "critical" : "subcritical";
    j[key] = {{"a", a},
              {"slope", fit.slope},
              {"slope_target", a == 0.5 ? 2.0 / 3.0 : 0.5},
              {"points", rows}};
  }
  auto sup = boundary_scaling(0.8, {100000}, samples, g_seed);
  const auto mc = model_constants();
  j["supercritical"] = {
      {"a", 0.8},
      {"mean_max_cycle_fraction", sup[0].mean_max_cycle_fraction},
      {"target", (2.0 * 0.8 - 1.0) / (mc.gamma + 2.0 * 0.8)}};
  return j;
}

json report_stable() {
  StableParams p;
  json j;
  j["p1_at_zero"] = p1_density(p, 0.0);
  j["p1_at_zero_target"] = 2.0 / (3.0 * gamma_fn(1.0 / 3.0));
  j["moment_half"] = stable_moment(p, 0.5);
  j["moment_half_target"] = std::sqrt(M_PI) / gamma_fn(1.0 / 3.0);
  return j;
}

json report_llt() {
  auto law = OffspringLaw::make_nu(0.5, 65536);
  json errs = json::array();
  for (std::size_t n : {100, 1000, 10000})
    errs.push_back({{"n", n}, {"sup_error", llt_error(law, n, 1.0)}});
  auto fit = tail_bound_check(law, 1000, 1000);
  json j;
  j["errors"] = errs;
  j["tail_bound_c1"] = fit.c1;
  j["tail_bound_c2"] = fit.c2;
  return j;
}

int run_report(const std::string& name, const std::string& sizes_spec,
               std::size_t samples) {
  json j;
  if (name == "eq17") j = report_eq17();
  else if (name == "eq18") j = report_eq18();
  else if (name == "thm11") j = report_thm11();
  else if (name == "boltzmann") j = report_boltzmann();
  else if (name == "thm13") j = report_thm13();
  else if (name == "regimes") j = report_regimes(sizes_spec, samples);
  else if (name == "stable") j = report_stable();
  else if (name == "llt") j = report_llt();
  else throw CLI::ValidationError("report", "unknown report " + name);
  json out;
  out["report"] = name;
  out["config"] = config_line("report " + name, {});
  for (auto& [k, v] : j.items()) out[k] = v;
  emit_json("report_" + name + ".json", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolation-boundary looptree toolkit"};
  app.require_subcommand(1);
  app.add_option("--seed", g_seed, "master random seed");
  app.add_option("--threads", g_threads, "worker count (0 = auto)");
  app.add_option("--out", g_out_dir, "output directory (default: stdout)");
  app.add_option("--format", g_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // laws
  auto* laws_cmd = app.add_subcommand("laws", "offspring laws and constants");
  laws_cmd->require_subcommand(1);
  auto* laws_dump = laws_cmd->add_subcommand("dump", "law pmf table");
  std::string model = "typeI";
  double a = 0.5;
  long long kmax = 64;
  laws_dump->add_option("--model", model)
      ->check(CLI::IsMember({"typeI", "typeII"}));
  laws_dump->add_option("--a", a)->check(CLI::Range(1e-9, 1.0 - 1e-9));
  laws_dump->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
  auto* laws_const = laws_cmd->add_subcommand("constants", "model constants");

  // bij
  auto* bij_cmd = app.add_subcommand("bij", "tree-to-loop-graph mappings");
  bij_cmd->require_subcommand(1);
  auto* bij_loop = bij_cmd->add_subcommand("loop", "edge lists of loop graphs");
  std::string in_path;
  bool bar = false;
  bij_loop->add_option("--in", in_path, "tree file")->required();
  bij_loop->add_flag("--bar", bar, "contracted loop graph");

  // metric
  auto* metric_cmd = app.add_subcommand("metric", "metric scaling experiments");
  metric_cmd->require_subcommand(1);
  auto* metric_scaling = metric_cmd->add_subcommand("scaling", "diameter scaling");
  std::string sizes_spec = "2^10..2^14";
  std::size_t samples = 50;
  metric_scaling->add_option("--a", a)->check(CLI::Range(1e-9, 1.0 - 1e-9));
  metric_scaling->add_option("--sizes", sizes_spec);
  metric_scaling->add_option("--samples", samples)->check(CLI::PositiveNumber);

  // stable
  auto* stable_cmd = app.add_subcommand("stable", "one-sided stable density");
  stable_cmd->require_subcommand(1);
  auto* stable_density = stable_cmd->add_subcommand("density", "series values");
  double alpha = 1.5, xmax = 4.5, step = 0.01;
  stable_density->add_option("--alpha", alpha);
  stable_density->add_option("--xmax", xmax);
  stable_density->add_option("--step", step)->check(CLI::PositiveNumber);

  // exact
  auto* exact_cmd = app.add_subcommand("exact", "exact distribution engine");
  exact_cmd->require_subcommand(1);
  auto* exact_perimeter = exact_cmd->add_subcommand("perimeter", "boundary law");
  std::string pmodel = "uipt";
  std::size_t nmax = 1024;
  exact_perimeter->add_option("--model", pmodel)
      ->check(CLI::IsMember({"uipt", "boltzmann"}));
  exact_perimeter->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
  auto* exact_llt = exact_cmd->add_subcommand("llt", "local-limit errors");
  std::string ns_spec = "100,1000,10000";
  exact_llt->add_option("--n", ns_spec);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "conditioned tree samples");
  std::string law_name = "nu";
  std::size_t tree_n = 1024, count = 10;
  sample_cmd->add_option("--law", law_name)
      ->check(CLI::IsMember({"nu", "nubar"}));
  sample_cmd->add_option("--a", a)->check(CLI::Range(1e-9, 1.0 - 1e-9));
  sample_cmd->add_option("--n", tree_n)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--count", count)->check(CLI::PositiveNumber);

  // report
  auto* report_cmd = app.add_subcommand("report", "acceptance-style summaries");
  std::string report_name;
  std::string report_sizes = "2^10..2^16";
  std::size_t report_samples = 200;
  report_cmd->add_option("name", report_name, "report id")
      ->required()
      ->check(CLI::IsMember({"thm11", "eq17", "eq18", "thm13", "regimes",
                             "boltzmann", "stable", "llt"}));
  report_cmd->add_option("--sizes", report_sizes);
  report_cmd->add_option("--samples", report_samples)
      ->check(CLI::PositiveNumber);

  // Global flags remain valid after a subcommand name (e.g. trailing --seed).
  for (auto* sub : {laws_cmd, laws_dump, laws_const, bij_cmd, bij_loop,
                    metric_cmd, metric_scaling, stable_cmd, stable_density,
                    exact_cmd, exact_perimeter, exact_llt, sample_cmd,
                    report_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (g_threads <= 0)
    g_threads = static_cast<int>(std::thread::hardware_concurrency());

  try {
    if (laws_dump->parsed()) return run_laws_dump(model, a, kmax);
    if (laws_const->parsed()) return run_laws_constants();
    if (bij_loop->parsed()) return run_bij_loop(in_path, bar);
    if (metric_scaling->parsed())
      return run_metric_scaling(a, sizes_spec, samples);
    if (stable_density->parsed()) return run_stable_density(alpha, xmax, step);
    if (exact_perimeter->parsed()) return run_exact_perimeter(pmodel, nmax);
    if (exact_llt->parsed()) return run_exact_llt(ns_spec);
    if (sample_cmd->parsed()) return run_sample(law_name, a, tree_n, count);
    if (report_cmd->parsed())
      return run_report(report_name, report_sizes, report_samples);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
