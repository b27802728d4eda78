#include <CLI11.hpp>
#include <cstdio>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "infw/dataio.hpp"
#include "infw/experiment.hpp"
#include "infw/fas.hpp"
#include "infw/pointwise.hpp"

namespace {

void emit(const infw::CsvTable& table, const std::string& out_path) {
  if (out_path.empty())
    infw::write_csv(table, std::cout);
  else
    infw::write_csv(table, out_path);
}

// The worked three-output example: loss(a,b) = loss(a,c) = 1, loss(b,c) = 2,
// weak distribution 5/8 on {a,b,c} and 1/8 on each of {c}, {a,c}, {b,c}.
infw::CsvTable pointwise_demo_table() {
  using namespace infw;
  const FiniteLoss loss(3, {0, 1, 1, 1, 0, 2, 1, 2, 0});
  const WeakDist tau(3, {{0b111u, 5.0 / 8}, {0b100u, 1.0 / 8},
                         {0b101u, 1.0 / 8}, {0b110u, 1.0 / 8}});
  const char* names[] = {"a", "b", "c"};
  CsvTable t{{"quantity", "output", "value"}, {}};
  for (int z = 0; z < 3; ++z)
    t.rows.push_back({"risk_il", names[z], csv_num(infimum_risk(z, tau, loss))});
  for (int z = 0; z < 3; ++z)
    t.rows.push_back({"risk_ac", names[z], csv_num(average_risk(z, tau, loss))});
  for (int z = 0; z < 3; ++z)
    t.rows.push_back({"risk_sp", names[z], csv_num(supremum_risk(z, tau, loss))});
  const auto rho = ac_marginal(tau);
  for (int z = 0; z < 3; ++z)
    t.rows.push_back({"rho_ac", names[z], csv_num(rho[z])});
  t.rows.push_back({"predict_il", names[predict(tau, loss, Rule::IL)], ""});
  t.rows.push_back({"predict_ac", names[predict(tau, loss, Rule::AC)], ""});
  t.rows.push_back({"predict_sp", names[predict(tau, loss, Rule::SP)], ""});
  t.rows.push_back({"eta", "", csv_num(*ambiguity_eta(tau))});
  t.rows.push_back({"nu", "", csv_num(discrepancy_nu(loss))});
  t.rows.push_back({"comparison_constant", "", csv_num(comparison_constant(loss, tau))});
  t.rows.push_back({"tightest_constant", "", csv_num(tightest_constant(loss, tau))});
  return t;
}

infw::CsvTable fas_bench_table(int m_min, int m_max, int trials,
                               std::uint64_t seed) {
  using namespace infw;
  require(m_min >= 2 && m_max >= m_min, "fas-bench: bad m range");
  require(trials >= 1, "fas-bench: bad trial count");
  CsvTable t{{"m", "integral_fraction"}, {}};
  RngStream base(seed, {detail::fnv1a("fas-bench")});
  for (int m = m_min; m <= m_max; ++m) {
    RngStream rng = base.derive(static_cast<std::uint64_t>(m));
    int integral = 0;
    for (int s = 0; s < trials; ++s) {
      std::vector<double> c(pair_count(m));
      for (double& v : c) v = rng.normal();
      const FasSolution sol =
          fas_lp(FasObjective(m, std::move(c)), PartialOrder::unconstrained(m));
      if (sol.integral) ++integral;
    }
    t.rows.push_back({std::to_string(m),
                      csv_num(static_cast<double>(integral) / trials)});
  }
  return t;
}

infw::CsvTable parse_libsvm_table(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  const infw::SparseDataset data = infw::parse_libsvm(ss.str());
  infw::CsvTable t{{"rows", "features", "label", "count"}, {}};
  std::map<int, int> hist;
  for (const auto& row : data.rows) ++hist[row.label];
  if (hist.empty()) {
    t.rows.push_back({std::to_string(data.n()), std::to_string(data.max_feature),
                      "", "0"});
  } else {
    for (const auto& [label, count] : hist)
      t.rows.push_back({std::to_string(data.n()), std::to_string(data.max_feature),
                        std::to_string(label), std::to_string(count)});
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-label learning experiments"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::uint64_t seed = 0;
  std::string out_path;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--out", out_path, "output CSV path (default: stdout)");

  auto* demo = app.add_subcommand("pointwise-demo",
                                  "worked finite-output example as CSV");

  auto* bench = app.add_subcommand("fas-bench",
                                   "fraction of integral LP vertices per m");
  int m_min = 3, m_max = 6, trials = 200;
  bench->add_option("--m-min", m_min, "smallest m")->capture_default_str();
  bench->add_option("--m-max", m_max, "largest m")->capture_default_str();
  bench->add_option("--trials", trials, "objectives per m")->capture_default_str();

  auto* exp = app.add_subcommand("experiment", "corruption sweep with 8-fold CV");
  std::string task;
  exp->add_option("task", task, "classification|ranking|multilabel|regression")
      ->required();
  std::vector<double> c_values;
  std::vector<std::string> methods;
  std::string corruption;
  int n = 0, m = 0, d = 0, folds = 0, ac_samples = 0, threads = 0;
  double majority_frac = 0.0, p_phase = -1.0;
  std::vector<double> csigma, clambda;
  exp->add_option("--corruption", corruption, "classification: uniform|skewed");
  exp->add_option("--c", c_values, "corruption levels");
  exp->add_option("--methods", methods, "subset of IL AC SP");
  exp->add_option("--n", n, "sample count");
  exp->add_option("--m", m, "classes/items/tags");
  exp->add_option("--d", d, "feature count");
  exp->add_option("--folds", folds, "fold count");
  exp->add_option("--majority-frac", majority_frac, "majority class fraction");
  exp->add_option("--p-phase", p_phase, "regression phase-reveal probability");
  exp->add_option("--csigma", csigma, "kernel width factors");
  exp->add_option("--clambda", clambda, "regularization factors");
  exp->add_option("--ac-samples", ac_samples, "ranking center sample count");
  exp->add_option("--threads", threads, "worker cap (also INFW_THREADS)");

  auto* cons = app.add_subcommand("consistency", "risk vs training size");
  std::string cons_task;
  cons->add_option("task", cons_task, "classification")->required();
  std::vector<int> n_list = {50, 100, 200, 400};
  double cons_c = 0.3;
  int test_n = 1000;
  cons->add_option("--n-list", n_list, "training sizes")->capture_default_str();
  cons->add_option("--c", cons_c, "uniform corruption level")->capture_default_str();
  cons->add_option("--test-n", test_n, "test sample count")->capture_default_str();

  auto* parse = app.add_subcommand("parse-libsvm", "parse and summarize a file");
  std::string libsvm_path;
  parse->add_option("file", libsvm_path, "dataset path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*demo) {
      emit(pointwise_demo_table(), out_path);
    } else if (*bench) {
      emit(fas_bench_table(m_min, m_max, trials, seed), out_path);
    } else if (*exp) {
      infw::ExperimentConfig cfg = infw::default_experiment_config(task);
      cfg.seed = seed;
      if (!corruption.empty()) cfg.corruption = corruption;
      if (!c_values.empty()) cfg.c_grid = c_values;
      if (!methods.empty()) cfg.methods = methods;
      if (n > 0) cfg.n = n;
      if (m > 0) cfg.m = m;
      if (d > 0) cfg.d = d;
      if (folds > 0) cfg.folds = folds;
      if (majority_frac > 0.0) cfg.majority_frac = majority_frac;
      if (p_phase >= 0.0) cfg.c_grid = {p_phase};
      if (!csigma.empty()) cfg.c_sigma_grid = csigma;
      if (!clambda.empty()) cfg.c_lambda_grid = clambda;
      if (ac_samples > 0) cfg.ac_samples = ac_samples;
      if (threads > 0) cfg.threads = threads;
      emit(infw::run_experiment(cfg), out_path);
    } else if (*cons) {
      const infw::ConsistencyResult res =
          infw::consistency_sweep(cons_task, n_list, seed, cons_c, test_n);
      emit(res.table, out_path);
      std::fprintf(stderr, "rate slope (log risk vs log n): %s\n",
                   infw::csv_num(res.slope).c_str());
    } else if (*parse) {
      emit(parse_libsvm_table(libsvm_path), out_path);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
