#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qp/errors.hpp"
#include "qp/qsim.hpp"
#include "qp/sat.hpp"

namespace qp::portfolio {

/// One measured trial outcome: which phase choice, and its success probability.
struct SuccessSample {
  int choice_id = 0;
  double p = 0.0;
};

/// Empirical distribution f(p) of per-trial success probabilities over a set
/// of phase choices, with selection weights (uniform by default).
class SuccessDistribution {
 public:
  explicit SuccessDistribution(std::vector<SuccessSample> samples,
                               std::vector<double> weights = {});

  const std::vector<SuccessSample>& samples() const noexcept { return samples_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return samples_.size(); }

  /// <p>: weighted mean success probability.
  double mean_p() const;

 private:
  std::vector<SuccessSample> samples_;
  std::vector<double> weights_;
};

/// Trials-to-solution statistics of a strategy.
struct StrategyStats {
  double mean = 0.0;
  double variance = 0.0;
  double std_dev = 0.0;
  bool divergent = false;  // some sample fell below the divergence floor
};

/// Samples below this are treated as "never succeeds" for expectation purposes.
inline constexpr double kDivergenceFloor = 1e-12;

/// Tolerance of the quantum-vs-weighted-sum equivalence check.
inline constexpr double kEquivalenceTolerance = 1e-10;

/// Run every choice on the instance and record its success probability.
/// The instance must be solvable; with the first overload this is checked by
/// brute force (n <= 24), the second takes the known solution set.
SuccessDistribution success_distribution(const sat::SatInstance& instance,
                                         std::span<const qsim::PhaseChoice> choices,
                                         int guard = qsim::kDefaultQubitGuard);
SuccessDistribution success_distribution(const sat::SatInstance& instance,
                                         std::span<const sat::Assignment> solutions,
                                         std::span<const qsim::PhaseChoice> choices,
                                         int guard = qsim::kDefaultQubitGuard);

/// Statistics when one choice is drawn once and reused for every trial:
/// mean <1/p>, variance <(1-p)/p^2> + (<1/p^2> - <1/p>^2).
/// Samples with p < floor set the divergent flag; the numbers reported are
/// then conditional on p >= floor.
StrategyStats single_choice_stats(const SuccessDistribution& dist,
                                  double floor = kDivergenceFloor);

/// Statistics when a fresh choice is drawn for every trial: per-trial success
/// <p>, mean 1/<p>, std sqrt(1-<p>)/<p>. Throws InfeasibleError when <p> = 0.
StrategyStats mixed_strategy_stats(const SuccessDistribution& dist);

/// <1/p> - 1/<p> >= 0; zero only when all samples are equal.
/// Requires every p > 0.
double jensen_gap(const SuccessDistribution& dist);

/// The joint preparation operator of a quantum portfolio: weight preparation on
/// the selector register, uniform spread on the assignment register, then the
/// per-choice trial on each selector branch. Choices are padded with the
/// identity choice at zero weight up to the next power of two.
class PortfolioOperator {
 public:
  PortfolioOperator(const sat::SatInstance& instance,
                    std::span<const qsim::PhaseChoice> choices,
                    std::span<const std::complex<double>> weights,
                    int guard = qsim::kDefaultQubitGuard);

  int assignment_qubits() const noexcept { return n_; }
  int selector_qubits() const noexcept { return s_; }
  int total_qubits() const noexcept { return n_ + s_; }
  const std::vector<qsim::PhaseChoice>& padded_choices() const noexcept { return choices_; }
  const std::vector<std::complex<double>>& padded_weights() const noexcept { return weights_; }

  void apply(qsim::StateVector& state) const;          // A
  void apply_inverse(qsim::StateVector& state) const;  // A^{-1}
  qsim::StateVector prepare() const;                   // A |0...0>

 private:
  int n_ = 0;
  int s_ = 0;
  int m_ = 0;
  int guard_ = qsim::kDefaultQubitGuard;
  std::vector<std::uint16_t> conflict_counts_;
  std::vector<qsim::PhaseChoice> choices_;
  std::vector<std::complex<double>> weights_;
  std::vector<std::complex<double>> selector_unitary_;  // dense 2^s x 2^s, column 0 = weights
};

/// The joint state with amplitude weights[k] * c_i^(k) on |i, k>. Its success
/// probability is the weight-squared sum of the per-choice probabilities.
qsim::StateVector portfolio_state(const sat::SatInstance& instance,
                                  std::span<const qsim::PhaseChoice> choices,
                                  std::span<const std::complex<double>> weights,
                                  int guard = qsim::kDefaultQubitGuard);

/// Uniform real weights 1/sqrt(K).
std::vector<std::complex<double>> uniform_weights(std::size_t count);

struct EquivalenceReport {
  double p_quantum = 0.0;
  double weighted_sum = 0.0;
  double difference = 0.0;
  bool within_tolerance = false;
};

/// Compare the portfolio state's success probability against independently
/// simulated per-choice probabilities.
EquivalenceReport equivalence_check(const sat::SatInstance& instance,
                                    std::span<const qsim::PhaseChoice> choices,
                                    std::span<const std::complex<double>> weights,
                                    int guard = qsim::kDefaultQubitGuard);

/// Success probability after `rounds` amplitude-amplification iterations of the
/// portfolio preparation: Q = -A S0 A^{-1} S_sol on the joint register.
/// Requires a solvable instance with nonzero portfolio success probability.
double amplified_portfolio(const sat::SatInstance& instance,
                           std::span<const qsim::PhaseChoice> choices,
                           std::span<const std::complex<double>> weights, int rounds,
                           int guard = qsim::kDefaultQubitGuard);

/// Probabilities after 0, 1, ..., rounds_max iterations.
std::vector<double> amplified_portfolio_curve(const sat::SatInstance& instance,
                                              std::span<const qsim::PhaseChoice> choices,
                                              std::span<const std::complex<double>> weights,
                                              int rounds_max,
                                              int guard = qsim::kDefaultQubitGuard);

}  // namespace qp::portfolio
