#include "qp/phase_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "qp/parallel.hpp"
#include "qp/rng.hpp"

namespace qp::phopt {

namespace {

// Seed stream tags; keep training and initial-choice streams apart.
constexpr std::uint64_t kInstanceStream = 0x5eed0001;
constexpr std::uint64_t kRestartStream = 0x5eed0002;

constexpr double kInitialStep = 0.25;
constexpr double kMinStep = 1e-4;
constexpr double kDedupTolerance = 1e-6;

std::string instance_id(int n, double ratio, std::uint64_t seed, int index) {
  std::ostringstream out;
  out << "n" << n << "_r" << ratio << "_s" << seed << "_i" << index;
  return out.str();
}

double pool_objective(const qsim::PhaseChoice& choice, const InstancePool& pool) {
  std::vector<double> probs(pool.items.size(), 0.0);
  parallel_for(pool.items.size(), [&](std::size_t i) {
    const InstancePool::Item& item = pool.items[i];
    const qsim::StateVector state =
        qsim::heuristic_trial(item.conflict_counts, item.instance.n(),
                              item.instance.num_clauses(), choice);
    probs[i] = qsim::success_probability(state, item.solutions);
  });
  double total = 0.0;
  for (double p : probs) total += p;
  return total / static_cast<double>(probs.size());
}

bool same_choice(const qsim::PhaseChoice& a, const qsim::PhaseChoice& b) {
  if (a.steps != b.steps) return false;
  if (a.rho.size() != b.rho.size() || a.tau.size() != b.tau.size()) return false;
  for (std::size_t i = 0; i < a.rho.size(); ++i) {
    if (std::abs(a.rho[i] - b.rho[i]) > kDedupTolerance) return false;
  }
  for (std::size_t i = 0; i < a.tau.size(); ++i) {
    if (std::abs(a.tau[i] - b.tau[i]) > kDedupTolerance) return false;
  }
  return true;
}

}  // namespace

std::vector<qsim::PhaseChoice> PortfolioSet::phase_choices() const {
  std::vector<qsim::PhaseChoice> out;
  out.reserve(choices.size());
  for (const TrainedChoice& tc : choices) out.push_back(tc.choice);
  return out;
}

InstancePool make_instance_pool(int n, double ratio, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("make_instance_pool: count must be >= 1");
  if (n > sat::kBruteForceLimit) {
    throw std::invalid_argument("make_instance_pool: n exceeds the enumeration limit");
  }
  InstancePool pool;
  int index = 0;
  while (static_cast<int>(pool.items.size()) < count) {
    const std::uint64_t inst_seed = derive_seed(seed, static_cast<std::uint64_t>(index));
    sat::SatInstance instance = sat::random_instance(n, ratio, inst_seed);
    std::vector<sat::Assignment> solutions = sat::solutions_bruteforce(instance);
    if (solutions.empty()) {
      ++pool.excluded_unsat;
    } else {
      InstancePool::Item item{std::move(instance), {}, std::move(solutions),
                              instance_id(n, ratio, seed, index)};
      item.conflict_counts = sat::conflict_table(item.instance);
      pool.items.push_back(std::move(item));
    }
    ++index;
  }
  return pool;
}

double objective(const qsim::PhaseChoice& choice, const InstancePool& pool) {
  if (pool.items.empty()) throw std::invalid_argument("objective: empty instance pool");
  return pool_objective(choice, pool);
}

double objective(const qsim::PhaseChoice& choice,
                 std::span<const sat::SatInstance> instances) {
  if (instances.empty()) throw std::invalid_argument("objective: empty instance list");
  InstancePool pool;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::vector<sat::Assignment> solutions = sat::solutions_bruteforce(instances[i]);
    if (solutions.empty()) {
      throw InfeasibleError("objective: instance " + std::to_string(i) +
                            " is unsolvable; pre-filter the training set");
    }
    pool.items.push_back(InstancePool::Item{instances[i], sat::conflict_table(instances[i]),
                                            std::move(solutions), std::to_string(i)});
  }
  return pool_objective(choice, pool);
}

std::pair<qsim::PhaseChoice, double> optimize_on(const InstancePool& pool,
                                                 const qsim::PhaseChoice& initial,
                                                 int budget) {
  if (budget < 1) throw std::invalid_argument("optimize_on: budget must be >= 1");
  qsim::PhaseChoice best = initial;
  int evals = 0;
  const auto evaluate = [&](const qsim::PhaseChoice& c) {
    ++evals;
    return pool_objective(c, pool);
  };
  double best_value = evaluate(best);
  const std::size_t dims = best.rho.size() + best.tau.size();
  const auto coeff = [](qsim::PhaseChoice& c, std::size_t d) -> double& {
    return d < c.rho.size() ? c.rho[d] : c.tau[d - c.rho.size()];
  };

  double step = kInitialStep;
  while (step >= kMinStep && evals < budget) {
    double probe_best_value = best_value;
    qsim::PhaseChoice probe_best = best;
    for (std::size_t d = 0; d < dims && evals < budget; ++d) {
      for (double sign : {+1.0, -1.0}) {
        if (evals >= budget) break;
        qsim::PhaseChoice candidate = best;
        coeff(candidate, d) += sign * step;
        const double value = evaluate(candidate);
        if (value > probe_best_value) {
          probe_best_value = value;
          probe_best = candidate;
        }
      }
    }
    if (probe_best_value > best_value) {
      best = probe_best;
      best_value = probe_best_value;
    } else {
      step /= 2.0;
    }
  }
  return {best, best_value};
}

qsim::PhaseChoice optimize(const TrainingConfig& config, const qsim::PhaseChoice& initial) {
  const InstancePool pool =
      make_instance_pool(config.train_n, config.ratio, config.train_count,
                         derive_seed(config.seed, kInstanceStream));
  return optimize_on(pool, initial, config.budget).first;
}

qsim::PhaseChoice random_choice(std::uint64_t seed, int rho_terms, int tau_terms,
                                int steps) {
  if (rho_terms < 1 || tau_terms < 1) {
    throw std::invalid_argument("random_choice: coefficient counts must be >= 1");
  }
  if (steps < 1) throw std::invalid_argument("random_choice: steps must be >= 1");
  CounterRng rng(seed);
  qsim::PhaseChoice choice;
  choice.rho.resize(static_cast<std::size_t>(rho_terms));
  choice.tau.resize(static_cast<std::size_t>(tau_terms));
  for (double& c : choice.rho) c = rng.next_symmetric();
  for (double& c : choice.tau) c = rng.next_symmetric();
  choice.steps = steps;
  return choice;
}

PortfolioSet build_portfolio(const TrainingConfig& config) {
  if (config.restarts < 1) throw std::invalid_argument("build_portfolio: restarts must be >= 1");
  if (config.budget < 1) throw std::invalid_argument("build_portfolio: budget must be >= 1");
  const int steps = config.steps > 0 ? config.steps : config.train_n;
  const InstancePool pool =
      make_instance_pool(config.train_n, config.ratio, config.train_count,
                         derive_seed(config.seed, kInstanceStream));

  PortfolioSet set;
  for (int r = 0; r < config.restarts; ++r) {
    const std::uint64_t restart_seed =
        derive_seed(derive_seed(config.seed, kRestartStream), static_cast<std::uint64_t>(r));
    const qsim::PhaseChoice initial =
        random_choice(restart_seed, config.rho_terms, config.tau_terms, steps);
    auto [choice, value] = optimize_on(pool, initial, config.budget);
    const bool duplicate = std::any_of(
        set.choices.begin(), set.choices.end(),
        [&](const TrainedChoice& tc) { return same_choice(tc.choice, choice); });
    if (!duplicate) {
      set.choices.push_back(TrainedChoice{std::move(choice), config.train_n, config.seed,
                                          r, value});
    }
  }
  return set;
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median: empty input");
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  if (xs.size() % 2 == 1) return xs[mid];
  return 0.5 * (xs[mid - 1] + xs[mid]);
}

EvalReport cross_size_eval(const PortfolioSet& portfolio, int test_n, int test_count,
                           std::uint64_t seed, double ratio,
                           const std::string& portfolio_id) {
  if (portfolio.choices.empty()) {
    throw std::invalid_argument("cross_size_eval: empty portfolio");
  }
  const InstancePool pool =
      make_instance_pool(test_n, ratio, test_count, derive_seed(seed, kInstanceStream));
  const std::vector<qsim::PhaseChoice> choices = portfolio.phase_choices();

  EvalReport report;
  report.test_n = test_n;
  report.ratio = ratio;
  report.seed = seed;
  report.portfolio_id = portfolio_id;
  report.excluded_unsat_count = pool.excluded_unsat;
  report.instances.resize(pool.items.size());

  parallel_for(pool.items.size(), [&](std::size_t i) {
    const InstancePool::Item& item = pool.items[i];
    std::vector<portfolio::SuccessSample> samples;
    samples.reserve(choices.size());
    for (std::size_t k = 0; k < choices.size(); ++k) {
      const qsim::StateVector state =
          qsim::heuristic_trial(item.conflict_counts, item.instance.n(),
                                item.instance.num_clauses(), choices[k]);
      samples.push_back(portfolio::SuccessSample{
          static_cast<int>(k), qsim::success_probability(state, item.solutions)});
    }
    const portfolio::SuccessDistribution dist(samples);

    InstanceEval eval;
    eval.instance_id = item.id;
    eval.samples = std::move(samples);
    eval.single = portfolio::single_choice_stats(dist);
    eval.mixed = portfolio::mixed_strategy_stats(dist);
    eval.jensen_gap = portfolio::jensen_gap(dist);

    // Iteration counts: a trial with choice k costs steps_k iterations, so the
    // single-choice expectation is <steps/p> (conditional, like `single`) and
    // the mixed-strategy expectation is E[trials] * <steps> by Wald's identity.
    double kept_weight = 0.0;
    double steps_over_p = 0.0;
    double mean_steps = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
      const double p = dist.samples()[k].p;
      const double w = dist.weights()[k];
      mean_steps += w * static_cast<double>(choices[k].steps);
      if (p < portfolio::kDivergenceFloor) continue;
      kept_weight += w;
      steps_over_p += w * static_cast<double>(choices[k].steps) / p;
    }
    eval.single_mean_iterations =
        kept_weight > 0.0 ? steps_over_p / kept_weight
                          : std::numeric_limits<double>::infinity();
    eval.mixed_mean_iterations = eval.mixed.mean * mean_steps;
    report.instances[i] = std::move(eval);
  });

  std::vector<double> singles, mixeds, gaps;
  for (const InstanceEval& e : report.instances) {
    singles.push_back(e.single.mean);
    mixeds.push_back(e.mixed.mean);
    gaps.push_back(e.jensen_gap);
  }
  report.median_single_mean = median(std::move(singles));
  report.median_mixed_mean = median(std::move(mixeds));
  report.median_jensen_gap = median(std::move(gaps));
  return report;
}

}  // namespace qp::phopt
