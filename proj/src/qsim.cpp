#include "qp/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qp::qsim {

namespace {

constexpr double kPi = std::numbers::pi;

void check_qubits(int q, int guard) {
  if (q < 1) throw std::invalid_argument("state: qubit count must be >= 1");
  if (q > guard) {
    throw std::invalid_argument("state: qubit count " + std::to_string(q) +
                                " exceeds the guard " + std::to_string(guard));
  }
}

void check_block(std::span<const Amplitude> block, int n) {
  if (block.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("state/block length does not match qubit count");
  }
}

/// exp(i pi P(c/m)) for c = 0..m (single entry when m = 0).
std::vector<Amplitude> conflict_phase_table(int m, std::span<const double> rho) {
  std::vector<Amplitude> table(static_cast<std::size_t>(m) + 1);
  for (int c = 0; c <= m; ++c) {
    const double x = m > 0 ? static_cast<double>(c) / m : 0.0;
    table[static_cast<std::size_t>(c)] = std::polar(1.0, kPi * poly_eval(rho, x));
  }
  return table;
}

/// exp(i pi P(b/n)) for Walsh bit-weight b = 0..n.
std::vector<Amplitude> walsh_phase_table(int n, std::span<const double> tau) {
  std::vector<Amplitude> table(static_cast<std::size_t>(n) + 1);
  for (int b = 0; b <= n; ++b) {
    table[static_cast<std::size_t>(b)] =
        std::polar(1.0, kPi * poly_eval(tau, static_cast<double>(b) / n));
  }
  return table;
}

std::vector<double> negated(std::span<const double> coeffs) {
  std::vector<double> out(coeffs.begin(), coeffs.end());
  for (double& c : out) c = -c;
  return out;
}

void apply_walsh_diagonal(std::span<Amplitude> block, std::span<const Amplitude> table) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    block[i] *= table[static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(i)))];
  }
}

void mixing_step(std::span<Amplitude> block, std::span<const Amplitude> table) {
  fwht(block);
  apply_walsh_diagonal(block, table);
  fwht(block);
}

}  // namespace

PhaseChoice identity_choice() { return PhaseChoice{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1}; }

bool is_identity(const PhaseChoice& choice) {
  const auto all_zero = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
  };
  return all_zero(choice.rho) && all_zero(choice.tau);
}

double poly_eval(std::span<const double> coeffs, double x) {
  double value = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) value = value * x + coeffs[j];
  return value;
}

double norm(const StateVector& state) {
  double total = 0.0;
  for (const Amplitude& a : state.amps) total += std::norm(a);
  return std::sqrt(total);
}

StateVector zero_state(int q, int guard) {
  check_qubits(q, guard);
  StateVector state;
  state.qubits = q;
  state.amps.assign(std::size_t{1} << q, Amplitude{0.0, 0.0});
  state.amps[0] = Amplitude{1.0, 0.0};
  return state;
}

StateVector uniform_state(int q, int guard) {
  check_qubits(q, guard);
  StateVector state;
  state.qubits = q;
  state.amps.assign(std::size_t{1} << q, Amplitude{std::exp2(-0.5 * q), 0.0});
  return state;
}

void fwht(std::span<Amplitude> block) {
  const std::size_t size = block.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t base = 0; base < size; base += half << 1) {
      for (std::size_t i = base; i < base + half; ++i) {
        const Amplitude a = block[i];
        const Amplitude b = block[i + half];
        block[i] = a + b;
        block[i + half] = a - b;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (Amplitude& a : block) a *= scale;
}

void apply_conflict_phase(std::span<Amplitude> block,
                          std::span<const std::uint16_t> conflict_counts, int m,
                          std::span<const double> rho) {
  if (block.size() != conflict_counts.size()) {
    throw std::invalid_argument("apply_conflict_phase: state/instance size mismatch");
  }
  const std::vector<Amplitude> table = conflict_phase_table(m, rho);
  for (std::size_t i = 0; i < block.size(); ++i) {
    block[i] *= table[conflict_counts[i]];
  }
}

void apply_conflict_phase(StateVector& state, const sat::SatInstance& instance,
                          std::span<const double> rho) {
  if (state.qubits != instance.n()) {
    throw std::invalid_argument("apply_conflict_phase: state has " +
                                std::to_string(state.qubits) + " qubits, instance has " +
                                std::to_string(instance.n()) + " variables");
  }
  const std::vector<std::uint16_t> counts = sat::conflict_table(instance);
  apply_conflict_phase(std::span<Amplitude>(state.amps), counts, instance.num_clauses(),
                       rho);
}

void apply_hamming_mixing(std::span<Amplitude> block, std::span<const double> tau, int n) {
  check_block(block, n);
  const std::vector<Amplitude> table = walsh_phase_table(n, tau);
  mixing_step(block, table);
}

void apply_hamming_mixing(StateVector& state, std::span<const double> tau, int n) {
  if (state.qubits != n) {
    throw std::invalid_argument("apply_hamming_mixing: state/qubit mismatch");
  }
  apply_hamming_mixing(std::span<Amplitude>(state.amps), tau, n);
}

void apply_heuristic_steps(std::span<Amplitude> block,
                           std::span<const std::uint16_t> conflict_counts, int m,
                           const PhaseChoice& choice) {
  if (choice.steps < 1) throw std::invalid_argument("PhaseChoice: steps must be >= 1");
  if (block.size() != conflict_counts.size()) {
    throw std::invalid_argument("apply_heuristic_steps: conflict table size mismatch");
  }
  if (is_identity(choice)) return;  // exact identity, skip the rounding noise
  const int n = std::countr_zero(block.size());
  const std::vector<Amplitude> phase = conflict_phase_table(m, choice.rho);
  const std::vector<Amplitude> walsh = walsh_phase_table(n, choice.tau);
  for (int s = 0; s < choice.steps; ++s) {
    for (std::size_t i = 0; i < block.size(); ++i) block[i] *= phase[conflict_counts[i]];
    mixing_step(block, walsh);
  }
}

void apply_heuristic_steps_inverse(std::span<Amplitude> block,
                                   std::span<const std::uint16_t> conflict_counts,
                                   int m, const PhaseChoice& choice) {
  if (choice.steps < 1) throw std::invalid_argument("PhaseChoice: steps must be >= 1");
  if (block.size() != conflict_counts.size()) {
    throw std::invalid_argument("apply_heuristic_steps_inverse: conflict table size mismatch");
  }
  if (is_identity(choice)) return;
  const int n = std::countr_zero(block.size());
  const std::vector<double> rho_inv = negated(choice.rho);
  const std::vector<double> tau_inv = negated(choice.tau);
  const std::vector<Amplitude> phase = conflict_phase_table(m, rho_inv);
  const std::vector<Amplitude> walsh = walsh_phase_table(n, tau_inv);
  for (int s = 0; s < choice.steps; ++s) {
    mixing_step(block, walsh);
    for (std::size_t i = 0; i < block.size(); ++i) block[i] *= phase[conflict_counts[i]];
  }
}

StateVector heuristic_trial(std::span<const std::uint16_t> conflict_counts, int n, int m,
                            const PhaseChoice& choice, int guard) {
  if (conflict_counts.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("heuristic_trial: conflict table size mismatch");
  }
  StateVector state = uniform_state(n, guard);
  apply_heuristic_steps(std::span<Amplitude>(state.amps), conflict_counts, m, choice);
  return state;
}

StateVector heuristic_trial(const sat::SatInstance& instance, const PhaseChoice& choice,
                            int guard) {
  const std::vector<std::uint16_t> counts = sat::conflict_table(instance);
  return heuristic_trial(counts, instance.n(), instance.num_clauses(), choice, guard);
}

void grover_iterate(StateVector& state, std::span<const sat::Assignment> solutions) {
  for (sat::Assignment s : solutions) state.amps[s] = -state.amps[s];
  Amplitude mean{0.0, 0.0};
  for (const Amplitude& a : state.amps) mean += a;
  mean /= static_cast<double>(state.amps.size());
  for (Amplitude& a : state.amps) a = 2.0 * mean - a;
}

StateVector grover_trial(int n, std::span<const sat::Assignment> solutions, int t,
                         int guard) {
  if (solutions.empty()) {
    throw InfeasibleError("grover_trial: empty solution set (theta = 0)");
  }
  if (t < 0) throw std::invalid_argument("grover_trial: t must be >= 0");
  StateVector state = uniform_state(n, guard);
  for (sat::Assignment s : solutions) {
    if (s >= state.size()) throw std::invalid_argument("grover_trial: solution out of range");
  }
  for (int i = 0; i < t; ++i) grover_iterate(state, solutions);
  return state;
}

StateVector grover_trial(const sat::SatInstance& instance, int t, int guard) {
  const std::vector<sat::Assignment> solutions = sat::solutions_bruteforce(instance);
  return grover_trial(instance.n(), solutions, t, guard);
}

double success_probability(const StateVector& state,
                           std::span<const sat::Assignment> solutions,
                           int selector_qubits) {
  if (selector_qubits < 0 || selector_qubits >= state.qubits) {
    throw std::invalid_argument("success_probability: bad selector qubit count");
  }
  const int n = state.qubits - selector_qubits;
  const std::size_t block = std::size_t{1} << n;
  std::vector<std::uint64_t> bits((block + 63) / 64, 0);
  for (sat::Assignment s : solutions) {
    if (s >= block) throw std::invalid_argument("success_probability: solution out of range");
    bits[s >> 6] |= std::uint64_t{1} << (s & 63);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const std::size_t a = i & (block - 1);
    if (bits[a >> 6] >> (a & 63) & 1) total += std::norm(state.amps[i]);
  }
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace qp::qsim
