#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "infw/classification.hpp"
#include "infw/corruption.hpp"
#include "infw/dataio.hpp"
#include "infw/kernel_ridge.hpp"
#include "infw/multilabel.hpp"
#include "infw/pointwise.hpp"
#include "infw/ranking.hpp"
#include "infw/regression.hpp"
#include "infw/rng.hpp"

namespace infw {

// Worker budget: explicit request, then INFW_THREADS, then hardware.
inline int thread_budget(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INFW_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Independent jobs over a bounded pool; results must go to per-job slots.
template <class F>
inline void parallel_for(int njobs, int nthreads, F&& f) {
  nthreads = std::min(nthreads, njobs);
  if (nthreads <= 1) {
    for (int i = 0; i < njobs; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> workers;
  workers.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t)
    workers.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= njobs) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& w : workers) w.join();
  if (err) std::rethrow_exception(err);
}

namespace detail {
inline std::uint64_t task_word(const std::string& task) {
  return infw::detail::fnv1a(task);
}
}  // namespace detail

struct ExperimentConfig {
  std::string task = "classification";
  std::vector<std::string> methods = {"IL", "AC", "SP"};
  std::string corruption = "uniform";  // classification: uniform | skewed
  std::vector<double> c_grid = {0.0, 0.2, 0.4, 0.6, 0.8};
  int n = 500;
  int m = 3;
  int d = 2;
  double majority_frac = 0.0;  // 0 = balanced (1/m)
  std::uint64_t seed = 0;
  std::vector<double> c_sigma_grid = {10.0, 5.0, 1.0, 0.5, 0.1, 0.01};
  std::vector<double> c_lambda_grid = {1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0};
  int folds = 8;
  double width_lo = 1.0, width_hi = 1.0;
  int ac_samples = 100;
  int threads = 0;
};

inline ExperimentConfig default_experiment_config(const std::string& task) {
  ExperimentConfig cfg;
  cfg.task = task;
  if (task == "classification") {
    cfg.n = 500;
    cfg.m = 3;
    cfg.d = 2;
  } else if (task == "ranking") {
    cfg.n = 60;
    cfg.m = 6;
    cfg.d = 1;
    cfg.c_sigma_grid = {1.0, 0.5};
    cfg.c_lambda_grid = {1e-3, 1.0, 1e3};
    cfg.c_grid = {0.0, 0.25, 0.5, 0.75, 1.01};
  } else if (task == "multilabel") {
    cfg.n = 300;
    cfg.m = 6;
    cfg.d = 2;
  } else if (task == "regression") {
    cfg.n = 200;
    cfg.m = 1;
    cfg.d = 1;
    cfg.methods = {"IL", "AC"};
    cfg.c_sigma_grid = {1.0, 0.5, 0.1, 0.05, 0.01};
    cfg.c_lambda_grid = {1e-3, 1.0, 1e3};
    cfg.c_grid = {0.3};  // p_phase levels
  } else {
    throw std::invalid_argument("unknown task: " + task);
  }
  return cfg;
}

inline void validate_config(const ExperimentConfig& cfg) {
  require(!cfg.methods.empty(), "config: empty method list");
  for (const auto& m : cfg.methods)
    require(m == "IL" || m == "AC" || m == "SP", "config: unknown method " + m);
  require(!cfg.c_grid.empty(), "config: empty c grid");
  for (double c : cfg.c_grid) {
    require(c >= 0.0, "config: negative corruption level");
    if (cfg.task != "ranking")
      require(c <= 1.0, "config: corruption level above 1");
  }
  require(!cfg.c_sigma_grid.empty() && !cfg.c_lambda_grid.empty(),
          "config: empty hyperparameter grid");
  require(cfg.folds >= 2 && cfg.folds <= cfg.n, "config: bad fold count");
  require(cfg.n >= 1, "config: bad n");
}

namespace detail {

struct GridRisks {
  // risks[method][cell][fold]
  std::vector<std::vector<std::vector<double>>> risks;

  GridRisks(int methods, int cells, int folds)
      : risks(methods, std::vector<std::vector<double>>(
                           cells, std::vector<double>(folds, 0.0))) {}
};

// Per method: pick the cell with lowest mean fold risk (first such cell in
// grid order) and emit its per-fold risks.
inline void emit_winner_rows(CsvTable& out, const ExperimentConfig& cfg,
                             double c_level, const GridRisks& grid) {
  const int cells = static_cast<int>(grid.risks[0].size());
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    int best_cell = 0;
    double best_mean = std::numeric_limits<double>::infinity();
    for (int cell = 0; cell < cells; ++cell) {
      double mean = 0.0;
      for (double r : grid.risks[mi][cell]) mean += r;
      mean /= grid.risks[mi][cell].size();
      if (mean < best_mean) {
        best_mean = mean;
        best_cell = cell;
      }
    }
    for (int f = 0; f < cfg.folds; ++f)
      out.rows.push_back({cfg.methods[mi], csv_num(c_level), std::to_string(f),
                          csv_num(grid.risks[mi][best_cell][f])});
  }
}

inline void sort_rows(CsvTable& out) {
  std::sort(out.rows.begin(), out.rows.end(),
            [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              if (a[0] != b[0]) return a[0] < b[0];
              const double ca = std::atof(a[1].c_str());
              const double cb = std::atof(b[1].c_str());
              if (ca != cb) return ca < cb;
              return std::atoi(a[2].c_str()) < std::atoi(b[2].c_str());
            });
}

struct CellIndex {
  double sigma, c_lambda;
};

inline std::vector<CellIndex> grid_cells(const ExperimentConfig& cfg, int d) {
  std::vector<CellIndex> cells;
  for (double cs : cfg.c_sigma_grid)
    for (double cl : cfg.c_lambda_grid) cells.push_back({cs * d, cl});
  return cells;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classification

struct ClassificationProblem {
  FeatureMatrix X;
  std::vector<int> labels;
  int m = 0;
};

inline ClassificationProblem make_classification_problem(const ExperimentConfig& cfg,
                                                         RngStream& rng) {
  const double frac = cfg.majority_frac > 0.0 ? cfg.majority_frac : 1.0 / cfg.m;
  BlobsData blobs = generate_unbalanced_blobs(cfg.n, cfg.m, frac, cfg.d, rng);
  return {std::move(blobs.X), std::move(blobs.labels), cfg.m};
}

// Deterministic labels: m vertical strips over x in [0,1]^d.
inline ClassificationProblem make_strips_problem(int n, int m, int d,
                                                 RngStream& rng) {
  Matrix X(n, d);
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) X(i, j) = rng.uniform01();
    labels[i] = std::min(m - 1, static_cast<int>(X(i, 0) * m));
  }
  return {FeatureMatrix(std::move(X)), std::move(labels), m};
}

inline std::vector<LabelSet> corrupt_classification(
    const std::vector<int>& labels, int m, const std::string& kind, double c,
    int y_major, RngStream& rng) {
  std::vector<LabelSet> sets(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    sets[i] = kind == "skewed"
                  ? corrupt_skewed_class(labels[i], y_major, m, c, rng)
                  : corrupt_uniform_class(labels[i], m, c, rng);
  return sets;
}

inline CsvTable run_classification_experiment(const ExperimentConfig& cfg,
                                              const ClassificationProblem& prob) {
  const int n = prob.X.n();
  const auto folds = kfold(n, cfg.folds, cfg.seed);
  const RngStream base(cfg.seed, {detail::task_word("classification")});
  CsvTable out{{"method", "c", "fold", "risk"}, {}};
  const int nthreads = thread_budget(cfg.threads);

  int y_major = 0;
  {
    std::vector<int> counts(prob.m, 0);
    for (int y : prob.labels) ++counts[y];
    for (int k = 1; k < prob.m; ++k)
      if (counts[k] > counts[y_major]) y_major = k;
  }

  for (std::size_t ci = 0; ci < cfg.c_grid.size(); ++ci) {
    const double c = cfg.c_grid[ci];
    RngStream corr = base.derive("corrupt").derive(ci);
    const auto sets =
        corrupt_classification(prob.labels, prob.m, cfg.corruption, c, y_major, corr);

    const auto cells = detail::grid_cells(cfg, prob.X.d());
    detail::GridRisks grid(static_cast<int>(cfg.methods.size()),
                           static_cast<int>(cells.size()), cfg.folds);

    const int njobs = static_cast<int>(cells.size()) * cfg.folds;
    parallel_for(njobs, nthreads, [&](int job) {
      const int cell = job / cfg.folds;
      const int fold = job % cfg.folds;
      std::vector<int> train_idx;
      for (int f = 0; f < cfg.folds; ++f)
        if (f != fold)
          train_idx.insert(train_idx.end(), folds[f].begin(), folds[f].end());
      const auto& test_idx = folds[fold];

      Matrix Xtr(train_idx.size(), prob.X.d());
      std::vector<LabelSet> sets_tr(train_idx.size());
      for (std::size_t i = 0; i < train_idx.size(); ++i) {
        Xtr.row(i) = prob.X.values.row(train_idx[i]);
        sets_tr[i] = sets[train_idx[i]];
      }
      const double lam =
          cells[cell].c_lambda / std::sqrt(static_cast<double>(train_idx.size()));
      RidgeModel model =
          RidgeModel::fit(FeatureMatrix(Xtr), cells[cell].sigma, lam);

      std::vector<Matrix> betas;
      for (const auto& method : cfg.methods) {
        Matrix L = method == "IL"   ? il_loss_matrix(sets_tr, prob.m)
                   : method == "AC" ? ac_loss_matrix(sets_tr, prob.m)
                                    : sp_loss_matrix(sets_tr, prob.m);
        betas.push_back(model.scores(L));
      }
      std::vector<int> errors(cfg.methods.size(), 0);
      for (int t : test_idx) {
        const Vector v = model.kernel_row(prob.X.row(t));
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
          const Vector scores = betas[mi].transpose() * v;
          errors[mi] += argmin_class(scores) != prob.labels[t] ? 1 : 0;
        }
      }
      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
        grid.risks[mi][cell][fold] =
            static_cast<double>(errors[mi]) / test_idx.size();
    });
    detail::emit_winner_rows(out, cfg, c, grid);
  }
  detail::sort_rows(out);
  return out;
}

// ---------------------------------------------------------------------------
// Ranking

struct RankingProblem {
  FeatureMatrix X;  // n x 1
  std::vector<Permutation> labels;
  std::vector<std::vector<double>> scores;
};

inline RankingProblem make_ranking_problem(const ExperimentConfig& cfg,
                                           RngStream& rng) {
  OrderingLinesData data = generate_ordering_lines(cfg.m, cfg.n, rng);
  Matrix X(cfg.n, 1);
  for (int i = 0; i < cfg.n; ++i) X(i, 0) = data.x[i];
  return {FeatureMatrix(std::move(X)), std::move(data.labels),
          std::move(data.scores)};
}

inline CsvTable run_ranking_experiment(const ExperimentConfig& cfg,
                                       const RankingProblem& prob) {
  const int n = prob.X.n();
  const int m = prob.labels[0].size();
  const double norm = static_cast<double>(m * (m - 1));
  const auto folds = kfold(n, cfg.folds, cfg.seed);
  const RngStream base(cfg.seed, {detail::task_word("ranking")});
  CsvTable out{{"method", "c", "fold", "risk"}, {}};
  const int nthreads = thread_budget(cfg.threads);
  const bool want_ac =
      std::find(cfg.methods.begin(), cfg.methods.end(), "AC") != cfg.methods.end();

  for (std::size_t ci = 0; ci < cfg.c_grid.size(); ++ci) {
    const double c = cfg.c_grid[ci];
    std::vector<PartialOrder> sets(n, PartialOrder());
    for (int i = 0; i < n; ++i)
      sets[i] = corrupt_ranking(prob.labels[i], prob.scores[i], c);

    // AC centers depend on the sets only; one pass per fold.
    std::vector<std::vector<KendallVec>> centers(cfg.folds);
    if (want_ac) {
      for (int f = 0; f < cfg.folds; ++f) {
        RngStream cs = base.derive("accenter").derive(ci).derive(f);
        for (int ffrom = 0; ffrom < cfg.folds; ++ffrom) {
          if (ffrom == f) continue;
          for (int i : folds[ffrom])
            centers[f].push_back(ranking_set_center(sets[i], cfg.ac_samples, cs));
        }
      }
    }

    const auto cells = detail::grid_cells(cfg, 1);
    detail::GridRisks grid(static_cast<int>(cfg.methods.size()),
                           static_cast<int>(cells.size()), cfg.folds);

    const int njobs = static_cast<int>(cells.size()) * cfg.folds;
    parallel_for(njobs, nthreads, [&](int job) {
      const int cell = job / cfg.folds;
      const int fold = job % cfg.folds;
      std::vector<int> train_idx;
      for (int f = 0; f < cfg.folds; ++f)
        if (f != fold)
          train_idx.insert(train_idx.end(), folds[f].begin(), folds[f].end());
      const auto& test_idx = folds[fold];

      Matrix Xtr(train_idx.size(), 1);
      std::vector<PartialOrder> sets_tr(train_idx.size());
      for (std::size_t i = 0; i < train_idx.size(); ++i) {
        Xtr(i, 0) = prob.X.values(train_idx[i], 0);
        sets_tr[i] = sets[train_idx[i]];
      }
      const double lam =
          cells[cell].c_lambda / std::sqrt(static_cast<double>(train_idx.size()));
      RidgeModel model =
          RidgeModel::fit(FeatureMatrix(Xtr), cells[cell].sigma, lam);

      std::vector<double> loss_sum(cfg.methods.size(), 0.0);
      for (int t : test_idx) {
        const AlphaWeights aw = model.alpha(prob.X.row(t));
        const std::span<const double> alpha(aw.weights.data(),
                                            static_cast<std::size_t>(aw.weights.size()));
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
          Permutation pred;
          if (cfg.methods[mi] == "IL")
            pred = il_predict_ranking(alpha, sets_tr);
          else if (cfg.methods[mi] == "AC")
            pred = ac_predict_from_centers(alpha, centers[fold], m);
          else
            pred = sp_predict_ranking(alpha, sets_tr).z;
          loss_sum[mi] += kendall_loss(pred, prob.labels[t]) / norm;
        }
      }
      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
        grid.risks[mi][cell][fold] = loss_sum[mi] / test_idx.size();
    });
    detail::emit_winner_rows(out, cfg, c, grid);
  }
  detail::sort_rows(out);
  return out;
}

// ---------------------------------------------------------------------------
// Multilabel

struct MultilabelProblem {
  FeatureMatrix X;
  std::vector<TagVector> tags;
  int m = 0;
};

// Tags from random hyperplanes over x ~ U[-1,1]^d: deterministic labels.
inline MultilabelProblem make_multilabel_problem(const ExperimentConfig& cfg,
                                                 RngStream& rng) {
  Matrix W(cfg.m, cfg.d);
  Vector bias(cfg.m);
  for (int j = 0; j < cfg.m; ++j) {
    for (int col = 0; col < cfg.d; ++col) W(j, col) = rng.normal();
    bias(j) = 0.5 * rng.normal();
  }
  Matrix X(cfg.n, cfg.d);
  std::vector<TagVector> tags(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    for (int col = 0; col < cfg.d; ++col) X(i, col) = rng.uniform(-1.0, 1.0);
    std::uint32_t bits = 0;
    for (int j = 0; j < cfg.m; ++j)
      if (W.row(j).dot(X.row(i)) + bias(j) > 0.0) bits |= 1u << j;
    tags[i] = TagVector(bits, cfg.m);
  }
  return {FeatureMatrix(std::move(X)), std::move(tags), cfg.m};
}

inline CsvTable run_multilabel_experiment(const ExperimentConfig& cfg,
                                          const MultilabelProblem& prob) {
  const int n = prob.X.n();
  const auto folds = kfold(n, cfg.folds, cfg.seed);
  const RngStream base(cfg.seed, {detail::task_word("multilabel")});
  CsvTable out{{"method", "c", "fold", "risk"}, {}};
  const int nthreads = thread_budget(cfg.threads);

  for (std::size_t ci = 0; ci < cfg.c_grid.size(); ++ci) {
    const double c = cfg.c_grid[ci];
    RngStream corr = base.derive("corrupt").derive(ci);
    std::vector<HammingBall> balls(n);
    for (int i = 0; i < n; ++i)
      balls[i] = corrupt_multilabel_ball(prob.tags[i], c, corr);

    const auto cells = detail::grid_cells(cfg, prob.X.d());
    detail::GridRisks grid(static_cast<int>(cfg.methods.size()),
                           static_cast<int>(cells.size()), cfg.folds);

    const int njobs = static_cast<int>(cells.size()) * cfg.folds;
    parallel_for(njobs, nthreads, [&](int job) {
      const int cell = job / cfg.folds;
      const int fold = job % cfg.folds;
      std::vector<int> train_idx;
      for (int f = 0; f < cfg.folds; ++f)
        if (f != fold)
          train_idx.insert(train_idx.end(), folds[f].begin(), folds[f].end());
      const auto& test_idx = folds[fold];

      Matrix Xtr(train_idx.size(), prob.X.d());
      std::vector<HammingBall> balls_tr(train_idx.size());
      for (std::size_t i = 0; i < train_idx.size(); ++i) {
        Xtr.row(i) = prob.X.values.row(train_idx[i]);
        balls_tr[i] = balls[train_idx[i]];
      }
      const double lam =
          cells[cell].c_lambda / std::sqrt(static_cast<double>(train_idx.size()));
      RidgeModel model =
          RidgeModel::fit(FeatureMatrix(Xtr), cells[cell].sigma, lam);

      std::vector<double> loss_sum(cfg.methods.size(), 0.0);
      for (int t : test_idx) {
        const AlphaWeights aw = model.alpha(prob.X.row(t));
        const std::span<const double> alpha(aw.weights.data(),
                                            static_cast<std::size_t>(aw.weights.size()));
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
          const Rule rule = cfg.methods[mi] == "IL"   ? Rule::IL
                            : cfg.methods[mi] == "AC" ? Rule::AC
                                                      : Rule::SP;
          const TagVector pred = ball_predict(alpha, balls_tr, rule, prob.m);
          loss_sum[mi] +=
              static_cast<double>(hamming(pred, prob.tags[t])) / prob.m;
        }
      }
      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
        grid.risks[mi][cell][fold] = loss_sum[mi] / test_idx.size();
    });
    detail::emit_winner_rows(out, cfg, c, grid);
  }
  detail::sort_rows(out);
  return out;
}

// ---------------------------------------------------------------------------
// Regression

struct RegressionProblem {
  FeatureMatrix X;  // n x 1
  std::vector<double> y;
};

inline double regression_signal(double x) {
  return 1.5 * std::sin(2.0 * 3.14159265358979323846 * x);
}

inline RegressionProblem make_regression_problem(const ExperimentConfig& cfg,
                                                 RngStream& rng) {
  Matrix X(cfg.n, 1);
  std::vector<double> y(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    X(i, 0) = rng.uniform01();
    y[i] = regression_signal(X(i, 0));
  }
  return {FeatureMatrix(std::move(X)), std::move(y)};
}

// For regression the corruption grid entries are phase-reveal probabilities.
inline CsvTable run_regression_experiment(const ExperimentConfig& cfg,
                                          const RegressionProblem& prob) {
  const int n = prob.X.n();
  const auto folds = kfold(n, cfg.folds, cfg.seed);
  const RngStream base(cfg.seed, {detail::task_word("regression")});
  CsvTable out{{"method", "c", "fold", "risk"}, {}};
  const int nthreads = thread_budget(cfg.threads);

  for (std::size_t ci = 0; ci < cfg.c_grid.size(); ++ci) {
    const double p_phase = cfg.c_grid[ci];
    RngStream corr = base.derive("corrupt").derive(ci);
    std::vector<IntervalUnion> sets(n);
    for (int i = 0; i < n; ++i)
      sets[i] = phase_loss_sets(prob.y[i], p_phase, cfg.width_lo, cfg.width_hi, corr);

    const auto cells = detail::grid_cells(cfg, 1);
    detail::GridRisks grid(static_cast<int>(cfg.methods.size()),
                           static_cast<int>(cells.size()), cfg.folds);

    const int njobs = static_cast<int>(cells.size()) * cfg.folds;
    parallel_for(njobs, nthreads, [&](int job) {
      const int cell = job / cfg.folds;
      const int fold = job % cfg.folds;
      std::vector<int> train_idx;
      for (int f = 0; f < cfg.folds; ++f)
        if (f != fold)
          train_idx.insert(train_idx.end(), folds[f].begin(), folds[f].end());
      const auto& test_idx = folds[fold];

      Matrix Xtr(train_idx.size(), 1);
      std::vector<IntervalUnion> sets_tr(train_idx.size());
      for (std::size_t i = 0; i < train_idx.size(); ++i) {
        Xtr(i, 0) = prob.X.values(train_idx[i], 0);
        sets_tr[i] = sets[train_idx[i]];
      }
      const double lam =
          cells[cell].c_lambda / std::sqrt(static_cast<double>(train_idx.size()));
      RidgeModel model =
          RidgeModel::fit(FeatureMatrix(Xtr), cells[cell].sigma, lam);

      std::vector<double> se_sum(cfg.methods.size(), 0.0);
      for (int t : test_idx) {
        const AlphaWeights aw = model.alpha(prob.X.row(t));
        const std::span<const double> alpha(aw.weights.data(),
                                            static_cast<std::size_t>(aw.weights.size()));
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
          double pred = 0.0;
          if (cfg.methods[mi] == "IL")
            pred = il_predict_reg(alpha, sets_tr);
          else if (cfg.methods[mi] == "AC")
            pred = ac_predict_reg(alpha, sets_tr);
          else
            pred = sp_predict_reg(alpha, sets_tr);
          const double e = pred - prob.y[t];
          se_sum[mi] += e * e;
        }
      }
      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
        grid.risks[mi][cell][fold] = se_sum[mi] / test_idx.size();
    });
    detail::emit_winner_rows(out, cfg, p_phase, grid);
  }
  detail::sort_rows(out);
  return out;
}

// ---------------------------------------------------------------------------

inline CsvTable run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  RngStream data_rng = RngStream(cfg.seed, {detail::task_word(cfg.task)}).derive("data");
  if (cfg.task == "classification")
    return run_classification_experiment(cfg, make_classification_problem(cfg, data_rng));
  if (cfg.task == "ranking")
    return run_ranking_experiment(cfg, make_ranking_problem(cfg, data_rng));
  if (cfg.task == "multilabel")
    return run_multilabel_experiment(cfg, make_multilabel_problem(cfg, data_rng));
  if (cfg.task == "regression")
    return run_regression_experiment(cfg, make_regression_problem(cfg, data_rng));
  throw std::invalid_argument("unknown task: " + cfg.task);
}

struct ConsistencyResult {
  CsvTable table;  // method, c (= n), fold (= 0), risk
  double slope = 0.0;
};

// Risk of the IL predictor on the deterministic strips problem as n grows,
// with lambda = n^{-1/2}. The rate is reported as a log-log slope, never
// asserted.
inline ConsistencyResult consistency_sweep(const std::string& task,
                                           const std::vector<int>& n_list,
                                           std::uint64_t seed,
                                           double corruption_c = 0.3,
                                           int test_n = 1000, int m = 3,
                                           double sigma = 0.2) {
  require(task == "classification",
          "consistency_sweep: only the classification task is supported");
  require(!n_list.empty(), "consistency_sweep: empty n list");
  ConsistencyResult out;
  out.table.header = {"method", "c", "fold", "risk"};
  RngStream base(seed, {detail::task_word("consistency")});
  RngStream test_rng = base.derive("test");
  const ClassificationProblem test = make_strips_problem(test_n, m, 2, test_rng);

  std::vector<double> log_n, log_r;
  for (std::size_t t = 0; t < n_list.size(); ++t) {
    const int n = n_list[t];
    RngStream train_rng = base.derive("train").derive(t);
    ClassificationProblem train = make_strips_problem(n, m, 2, train_rng);
    RngStream corr = base.derive("corrupt").derive(t);
    const auto sets =
        corrupt_classification(train.labels, m, "uniform", corruption_c, 0, corr);
    const double lambda = 1.0 / std::sqrt(static_cast<double>(n));
    RidgeModel model = RidgeModel::fit(train.X, sigma, lambda);
    const Matrix beta = model.scores(il_loss_matrix(sets, m));
    int errors = 0;
    for (int i = 0; i < test.X.n(); ++i) {
      const Vector v = model.kernel_row(test.X.row(i));
      const Vector scores = beta.transpose() * v;
      if (argmin_class(scores) != test.labels[i]) ++errors;
    }
    const double risk = static_cast<double>(errors) / test.X.n();
    out.table.rows.push_back(
        {"IL", std::to_string(n), "0", csv_num(risk)});
    log_n.push_back(std::log(static_cast<double>(n)));
    log_r.push_back(std::log(std::max(risk, 1e-6)));
  }
  // least-squares slope of log risk vs log n
  const std::size_t k = log_n.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += log_n[i];
    my += log_r[i];
  }
  mx /= k;
  my /= k;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < k; ++i) {
    num += (log_n[i] - mx) * (log_r[i] - my);
    den += (log_n[i] - mx) * (log_n[i] - mx);
  }
  out.slope = den > 0 ? num / den : 0.0;
  return out;
}

}  // namespace infw
