#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qp/portfolio.hpp"
#include "qp/qsim.hpp"
#include "qp/sat.hpp"

namespace qp::phopt {

/// Parameters of one training run: which ensemble to optimize on and how much
/// search effort to spend.
struct TrainingConfig {
  int train_n = 8;
  int train_count = 20;
  double ratio = 4.25;
  int restarts = 10;
  int budget = 500;       // objective evaluations per restart
  std::uint64_t seed = 0;
  int steps = 0;          // trial length; 0 means "use train_n"
  int rho_terms = 3;
  int tau_terms = 3;
};

/// A local optimum together with where it came from.
struct TrainedChoice {
  qsim::PhaseChoice choice;
  int train_n = 0;
  std::uint64_t seed = 0;
  int restart = 0;
  double objective = 0.0;
};

struct PortfolioSet {
  std::vector<TrainedChoice> choices;

  std::vector<qsim::PhaseChoice> phase_choices() const;
};

/// A fixed set of solvable instances with cached conflict tables and solution
/// sets, as used by both training and held-out evaluation.
struct InstancePool {
  struct Item {
    sat::SatInstance instance;
    std::vector<std::uint16_t> conflict_counts;
    std::vector<sat::Assignment> solutions;
    std::string id;
  };

  std::vector<Item> items;
  int excluded_unsat = 0;  // instances dropped for having no solution
};

/// Generate instances at (n, ratio) from the seed stream until `count`
/// solvable ones are collected; unsolvable draws are counted and skipped.
InstancePool make_instance_pool(int n, double ratio, int count, std::uint64_t seed);

/// Mean success probability of the choice's trial across the pool. In [0, 1].
double objective(const qsim::PhaseChoice& choice, const InstancePool& pool);
double objective(const qsim::PhaseChoice& choice,
                 std::span<const sat::SatInstance> instances);

/// Coordinate-wise pattern search: probe +/- step on every coefficient, move to
/// the best improving probe, halve the step when none improves, stop when the
/// budget is spent or the step falls below 1e-4. Never returns a choice worse
/// than the initial one on the training pool. Deterministic.
qsim::PhaseChoice optimize(const TrainingConfig& config, const qsim::PhaseChoice& initial);

/// Pattern search against a prebuilt pool; returns the choice and its objective.
std::pair<qsim::PhaseChoice, double> optimize_on(const InstancePool& pool,
                                                 const qsim::PhaseChoice& initial,
                                                 int budget);

/// A random choice with coefficients uniform in [-1, 1].
qsim::PhaseChoice random_choice(std::uint64_t seed, int rho_terms, int tau_terms,
                                int steps);

/// Run `restarts` pattern searches from independently seeded random initial
/// choices and keep the distinct local optima (coefficient tolerance 1e-6).
PortfolioSet build_portfolio(const TrainingConfig& config);

/// Per-instance evaluation record of a portfolio on one test instance.
struct InstanceEval {
  std::string instance_id;
  std::vector<portfolio::SuccessSample> samples;
  portfolio::StrategyStats single;  // one choice drawn and reused
  portfolio::StrategyStats mixed;   // fresh choice per trial
  double jensen_gap = 0.0;
  double single_mean_iterations = 0.0;  // <steps/p>, conditional like `single`
  double mixed_mean_iterations = 0.0;   // mixed.mean * <steps>
};

struct EvalReport {
  int test_n = 0;
  double ratio = 0.0;
  std::uint64_t seed = 0;
  std::string portfolio_id;
  std::vector<InstanceEval> instances;
  double median_single_mean = 0.0;
  double median_mixed_mean = 0.0;
  double median_jensen_gap = 0.0;
  int excluded_unsat_count = 0;
};

/// Evaluate every portfolio choice on `test_count` solvable instances of size
/// test_n (same ratio), aggregating medians across instances.
EvalReport cross_size_eval(const PortfolioSet& portfolio, int test_n, int test_count,
                           std::uint64_t seed, double ratio = 4.25,
                           const std::string& portfolio_id = "");

/// Median of a copy of xs (mean of middle pair when even). Requires nonempty.
double median(std::vector<double> xs);

}  // namespace qp::phopt
