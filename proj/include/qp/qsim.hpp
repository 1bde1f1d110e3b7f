#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qp/errors.hpp"
#include "qp/sat.hpp"

namespace qp::qsim {

using Amplitude = std::complex<double>;

/// Memory guard: states above this qubit count are refused unless the caller
/// raises the guard explicitly.
inline constexpr int kDefaultQubitGuard = 26;

/// Dense amplitude vector over 2^qubits computational basis states.
struct StateVector {
  int qubits = 0;
  std::vector<Amplitude> amps;

  std::size_t size() const noexcept { return amps.size(); }
};

/// One parameterized heuristic: per step, conflict-count phase kicks followed
/// by Hamming-distance mixing. rho are polynomial coefficients in the
/// normalized conflict count c/m, tau in the normalized Walsh weight b/n, so a
/// choice applies unchanged to instances of any size.
struct PhaseChoice {
  std::vector<double> rho{0.0, 0.0, 0.0};
  std::vector<double> tau{0.0, 0.0, 0.0};
  int steps = 1;

  bool operator==(const PhaseChoice&) const = default;
};

/// The choice whose trial is the identity map: zero polynomials, one step.
PhaseChoice identity_choice();

/// True when every coefficient is zero, regardless of steps.
bool is_identity(const PhaseChoice& choice);

/// Coefficients -> value of sum_j coeffs[j] x^j.
double poly_eval(std::span<const double> coeffs, double x);

double norm(const StateVector& state);

/// |0...0> on q qubits.
StateVector zero_state(int q, int guard = kDefaultQubitGuard);

/// Uniform superposition: every amplitude 2^(-q/2).
StateVector uniform_state(int q, int guard = kDefaultQubitGuard);

/// In-place normalized Walsh-Hadamard transform of a length-2^n block.
void fwht(std::span<Amplitude> block);

/// Multiply amplitude i by exp(i pi P_rho(c(i)/m)) where c(i) is the conflict
/// count of assignment i. Norm-preserving.
void apply_conflict_phase(StateVector& state, const sat::SatInstance& instance,
                          std::span<const double> rho);
void apply_conflict_phase(std::span<Amplitude> block,
                          std::span<const std::uint16_t> conflict_counts, int m,
                          std::span<const double> rho);

/// Apply W D W: diagonal in the Walsh basis with entries exp(i pi P_tau(b/n))
/// for Walsh index of bit-weight b. Matrix elements between computational
/// states depend only on their Hamming distance. Cost O(n 2^n).
void apply_hamming_mixing(StateVector& state, std::span<const double> tau, int n);
void apply_hamming_mixing(std::span<Amplitude> block, std::span<const double> tau, int n);

/// `steps` repetitions of (conflict phase, Hamming mixing) on one block.
void apply_heuristic_steps(std::span<Amplitude> block,
                           std::span<const std::uint16_t> conflict_counts, int m,
                           const PhaseChoice& choice);

/// Exact inverse of apply_heuristic_steps: reversed order, negated polynomials.
void apply_heuristic_steps_inverse(std::span<Amplitude> block,
                                   std::span<const std::uint16_t> conflict_counts,
                                   int m, const PhaseChoice& choice);

/// Full trial: uniform start, then `steps` heuristic steps.
StateVector heuristic_trial(const sat::SatInstance& instance, const PhaseChoice& choice,
                            int guard = kDefaultQubitGuard);
StateVector heuristic_trial(std::span<const std::uint16_t> conflict_counts, int n, int m,
                            const PhaseChoice& choice, int guard = kDefaultQubitGuard);

/// t amplitude-amplification iterations (solution phase flip, inversion about
/// the mean) from the uniform state. Requires a nonempty solution set.
StateVector grover_trial(int n, std::span<const sat::Assignment> solutions, int t,
                         int guard = kDefaultQubitGuard);
StateVector grover_trial(const sat::SatInstance& instance, int t,
                         int guard = kDefaultQubitGuard);

/// One in-place iteration of the above on an existing state.
void grover_iterate(StateVector& state, std::span<const sat::Assignment> solutions);

/// Probability that measuring yields a solution on the assignment qubits,
/// marginalized over any selector qubits (state.qubits = n + selector_qubits).
double success_probability(const StateVector& state,
                           std::span<const sat::Assignment> solutions,
                           int selector_qubits = 0);

}  // namespace qp::qsim
