#include "qp/portfolio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qp::portfolio {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWeightNormTolerance = 1e-9;

std::vector<sat::Assignment> checked_solutions(const sat::SatInstance& instance) {
  std::vector<sat::Assignment> solutions = sat::solutions_bruteforce(instance);
  if (solutions.empty()) {
    throw InfeasibleError("instance is unsolvable; success statistics are undefined");
  }
  return solutions;
}

}  // namespace

SuccessDistribution::SuccessDistribution(std::vector<SuccessSample> samples,
                                         std::vector<double> weights)
    : samples_(std::move(samples)), weights_(std::move(weights)) {
  if (samples_.empty()) {
    throw std::invalid_argument("SuccessDistribution: no samples");
  }
  for (const SuccessSample& s : samples_) {
    if (!(s.p >= 0.0) || s.p > 1.0) {
      throw std::invalid_argument("SuccessDistribution: p out of [0, 1]");
    }
  }
  if (weights_.empty()) {
    weights_.assign(samples_.size(), 1.0 / static_cast<double>(samples_.size()));
  }
  if (weights_.size() != samples_.size()) {
    throw std::invalid_argument("SuccessDistribution: weight/sample count mismatch");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw std::invalid_argument("SuccessDistribution: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("SuccessDistribution: weights sum to " +
                                std::to_string(total) + ", expected 1");
  }
}

double SuccessDistribution::mean_p() const {
  double mean = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) mean += weights_[i] * samples_[i].p;
  return mean;
}

SuccessDistribution success_distribution(const sat::SatInstance& instance,
                                         std::span<const sat::Assignment> solutions,
                                         std::span<const qsim::PhaseChoice> choices,
                                         int guard) {
  if (choices.empty()) {
    throw std::invalid_argument("success_distribution: no choices");
  }
  if (solutions.empty()) {
    throw InfeasibleError("success_distribution: empty solution set");
  }
  const std::vector<std::uint16_t> counts = sat::conflict_table(instance);
  std::vector<SuccessSample> samples;
  samples.reserve(choices.size());
  for (std::size_t k = 0; k < choices.size(); ++k) {
    const qsim::StateVector state = qsim::heuristic_trial(
        counts, instance.n(), instance.num_clauses(), choices[k], guard);
    samples.push_back(SuccessSample{static_cast<int>(k),
                                    qsim::success_probability(state, solutions)});
  }
  return SuccessDistribution(std::move(samples));
}

SuccessDistribution success_distribution(const sat::SatInstance& instance,
                                         std::span<const qsim::PhaseChoice> choices,
                                         int guard) {
  const std::vector<sat::Assignment> solutions = checked_solutions(instance);
  return success_distribution(instance, solutions, choices, guard);
}

StrategyStats single_choice_stats(const SuccessDistribution& dist, double floor) {
  StrategyStats stats;
  double kept_weight = 0.0;
  double inv_p = 0.0;
  double inv_p2 = 0.0;
  double geom_var = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist.samples()[i].p;
    const double w = dist.weights()[i];
    if (p < floor) {
      stats.divergent = true;
      continue;
    }
    kept_weight += w;
    inv_p += w / p;
    inv_p2 += w / (p * p);
    geom_var += w * (1.0 - p) / (p * p);
  }
  if (kept_weight == 0.0) {
    stats.mean = stats.variance = stats.std_dev = kInf;
    return stats;
  }
  // Conditional on p >= floor: renormalize the kept weight mass.
  inv_p /= kept_weight;
  inv_p2 /= kept_weight;
  geom_var /= kept_weight;
  stats.mean = inv_p;
  stats.variance = std::max(0.0, geom_var + (inv_p2 - inv_p * inv_p));
  stats.std_dev = std::sqrt(stats.variance);
  return stats;
}

StrategyStats mixed_strategy_stats(const SuccessDistribution& dist) {
  const double mean_p = dist.mean_p();
  if (!(mean_p > 0.0)) {
    throw InfeasibleError("mixed_strategy_stats: <p> = 0, all samples are zero");
  }
  StrategyStats stats;
  stats.mean = 1.0 / mean_p;
  stats.std_dev = std::sqrt(1.0 - mean_p) / mean_p;
  stats.variance = (1.0 - mean_p) / (mean_p * mean_p);
  stats.divergent = false;
  return stats;
}

double jensen_gap(const SuccessDistribution& dist) {
  double inv_p = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist.samples()[i].p;
    if (!(p > 0.0)) {
      throw std::invalid_argument("jensen_gap: zero sample present");
    }
    inv_p += dist.weights()[i] / p;
  }
  return inv_p - 1.0 / dist.mean_p();
}

PortfolioOperator::PortfolioOperator(const sat::SatInstance& instance,
                                     std::span<const qsim::PhaseChoice> choices,
                                     std::span<const std::complex<double>> weights,
                                     int guard) {
  if (choices.empty()) throw std::invalid_argument("PortfolioOperator: no choices");
  if (weights.size() != choices.size()) {
    throw std::invalid_argument("PortfolioOperator: weight/choice count mismatch");
  }
  n_ = instance.n();
  m_ = instance.num_clauses();
  guard_ = guard;
  s_ = 0;
  while ((std::size_t{1} << s_) < choices.size()) ++s_;
  if (n_ + s_ > guard) {
    throw std::invalid_argument("PortfolioOperator: " + std::to_string(n_ + s_) +
                                " joint qubits exceed the guard " + std::to_string(guard));
  }
  double norm2 = 0.0;
  for (const std::complex<double>& w : weights) norm2 += std::norm(w);
  if (std::abs(norm2 - 1.0) > kWeightNormTolerance) {
    throw std::invalid_argument("PortfolioOperator: weights are not normalized, |w|^2 = " +
                                std::to_string(norm2));
  }

  const std::size_t slots = std::size_t{1} << s_;
  choices_.assign(choices.begin(), choices.end());
  choices_.resize(slots, qsim::identity_choice());
  weights_.assign(weights.begin(), weights.end());
  weights_.resize(slots, std::complex<double>{0.0, 0.0});
  conflict_counts_ = sat::conflict_table(instance);

  // Complete the weight column to a unitary on the selector register:
  // Gram-Schmidt against standard basis vectors, two passes for stability.
  std::vector<std::vector<std::complex<double>>> cols;
  cols.push_back(weights_);
  for (std::size_t j = 0; j < slots && cols.size() < slots; ++j) {
    std::vector<std::complex<double>> v(slots, std::complex<double>{0.0, 0.0});
    v[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const std::vector<std::complex<double>>& c : cols) {
        std::complex<double> dot{0.0, 0.0};
        for (std::size_t i = 0; i < slots; ++i) dot += std::conj(c[i]) * v[i];
        for (std::size_t i = 0; i < slots; ++i) v[i] -= dot * c[i];
      }
    }
    double len2 = 0.0;
    for (const std::complex<double>& x : v) len2 += std::norm(x);
    if (len2 > 1e-8) {
      const double inv = 1.0 / std::sqrt(len2);
      for (std::complex<double>& x : v) x *= inv;
      cols.push_back(std::move(v));
    }
  }
  if (cols.size() != slots) {
    throw std::runtime_error("PortfolioOperator: failed to complete selector unitary");
  }
  selector_unitary_.assign(slots * slots, std::complex<double>{0.0, 0.0});
  for (std::size_t col = 0; col < slots; ++col) {
    for (std::size_t row = 0; row < slots; ++row) {
      selector_unitary_[row * slots + col] = cols[col][row];
    }
  }
}

namespace {

/// Apply a dense unitary on the selector (high) qubits: for each assignment
/// index, mix the 2^s amplitudes found at stride 2^n.
void apply_selector(qsim::StateVector& state, const std::vector<std::complex<double>>& u,
                    std::size_t slots, std::size_t block, bool adjoint) {
  const int shift = std::countr_zero(block);
  std::vector<std::complex<double>> in(slots), out(slots);
  for (std::size_t i = 0; i < block; ++i) {
    for (std::size_t k = 0; k < slots; ++k) in[k] = state.amps[(k << shift) | i];
    for (std::size_t r = 0; r < slots; ++r) {
      std::complex<double> acc{0.0, 0.0};
      if (adjoint) {
        for (std::size_t c = 0; c < slots; ++c) acc += std::conj(u[c * slots + r]) * in[c];
      } else {
        for (std::size_t c = 0; c < slots; ++c) acc += u[r * slots + c] * in[c];
      }
      out[r] = acc;
    }
    for (std::size_t k = 0; k < slots; ++k) state.amps[(k << shift) | i] = out[k];
  }
}

}  // namespace

void PortfolioOperator::apply(qsim::StateVector& state) const {
  if (state.qubits != total_qubits()) {
    throw std::invalid_argument("PortfolioOperator::apply: qubit count mismatch");
  }
  const std::size_t slots = std::size_t{1} << s_;
  const std::size_t block = std::size_t{1} << n_;
  apply_selector(state, selector_unitary_, slots, block, /*adjoint=*/false);
  for (std::size_t k = 0; k < slots; ++k) {
    const std::span<qsim::Amplitude> blk(state.amps.data() + k * block, block);
    qsim::fwht(blk);
    qsim::apply_heuristic_steps(blk, conflict_counts_, m_, choices_[k]);
  }
}

void PortfolioOperator::apply_inverse(qsim::StateVector& state) const {
  if (state.qubits != total_qubits()) {
    throw std::invalid_argument("PortfolioOperator::apply_inverse: qubit count mismatch");
  }
  const std::size_t slots = std::size_t{1} << s_;
  const std::size_t block = std::size_t{1} << n_;
  for (std::size_t k = 0; k < slots; ++k) {
    const std::span<qsim::Amplitude> blk(state.amps.data() + k * block, block);
    qsim::apply_heuristic_steps_inverse(blk, conflict_counts_, m_, choices_[k]);
    qsim::fwht(blk);
  }
  apply_selector(state, selector_unitary_, slots, block, /*adjoint=*/true);
}

qsim::StateVector PortfolioOperator::prepare() const {
  qsim::StateVector state = qsim::zero_state(total_qubits(), guard_);
  apply(state);
  return state;
}

qsim::StateVector portfolio_state(const sat::SatInstance& instance,
                                  std::span<const qsim::PhaseChoice> choices,
                                  std::span<const std::complex<double>> weights,
                                  int guard) {
  return PortfolioOperator(instance, choices, weights, guard).prepare();
}

std::vector<std::complex<double>> uniform_weights(std::size_t count) {
  if (count == 0) throw std::invalid_argument("uniform_weights: empty");
  return std::vector<std::complex<double>>(
      count, std::complex<double>{1.0 / std::sqrt(static_cast<double>(count)), 0.0});
}

EquivalenceReport equivalence_check(const sat::SatInstance& instance,
                                    std::span<const qsim::PhaseChoice> choices,
                                    std::span<const std::complex<double>> weights,
                                    int guard) {
  const std::vector<sat::Assignment> solutions = checked_solutions(instance);
  const PortfolioOperator op(instance, choices, weights, guard);
  const qsim::StateVector joint = op.prepare();

  EquivalenceReport report;
  report.p_quantum = qsim::success_probability(joint, solutions, op.selector_qubits());

  const std::vector<std::uint16_t> counts = sat::conflict_table(instance);
  double weighted = 0.0;
  for (std::size_t k = 0; k < choices.size(); ++k) {
    const qsim::StateVector state = qsim::heuristic_trial(
        counts, instance.n(), instance.num_clauses(), choices[k], guard);
    weighted += std::norm(weights[k]) * qsim::success_probability(state, solutions);
  }
  report.weighted_sum = weighted;
  report.difference = std::abs(report.p_quantum - report.weighted_sum);
  report.within_tolerance = report.difference <= kEquivalenceTolerance;
  return report;
}

std::vector<double> amplified_portfolio_curve(const sat::SatInstance& instance,
                                              std::span<const qsim::PhaseChoice> choices,
                                              std::span<const std::complex<double>> weights,
                                              int rounds_max, int guard) {
  if (rounds_max < 0) throw std::invalid_argument("amplified_portfolio: rounds must be >= 0");
  const std::vector<sat::Assignment> solutions = checked_solutions(instance);
  const PortfolioOperator op(instance, choices, weights, guard);
  qsim::StateVector state = op.prepare();
  const int s = op.selector_qubits();

  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(rounds_max) + 1);
  const double p0 = qsim::success_probability(state, solutions, s);
  if (!(p0 > 0.0)) {
    throw InfeasibleError("amplified_portfolio: portfolio success probability is zero");
  }
  curve.push_back(p0);

  const std::size_t block = std::size_t{1} << op.assignment_qubits();
  std::vector<std::uint64_t> bits((block + 63) / 64, 0);
  for (sat::Assignment sol : solutions) bits[sol >> 6] |= std::uint64_t{1} << (sol & 63);

  for (int round = 1; round <= rounds_max; ++round) {
    // Q = -A S0 A^{-1} S_sol
    for (std::size_t i = 0; i < state.size(); ++i) {
      const std::size_t a = i & (block - 1);
      if (bits[a >> 6] >> (a & 63) & 1) state.amps[i] = -state.amps[i];
    }
    op.apply_inverse(state);
    state.amps[0] = -state.amps[0];  // S0 = I - 2|0><0|
    op.apply(state);
    for (qsim::Amplitude& a : state.amps) a = -a;
    curve.push_back(qsim::success_probability(state, solutions, s));
  }
  return curve;
}

double amplified_portfolio(const sat::SatInstance& instance,
                           std::span<const qsim::PhaseChoice> choices,
                           std::span<const std::complex<double>> weights, int rounds,
                           int guard) {
  return amplified_portfolio_curve(instance, choices, weights, rounds, guard).back();
}

}  // namespace qp::portfolio
