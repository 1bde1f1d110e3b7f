#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qp/errors.hpp"

namespace qp::sat {

/// Truth assignment packed as bits: bit i is the value of variable i.
using Assignment = std::uint32_t;

struct Literal {
  int var = 0;
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

/// One clause (an OR of literals). mask/violating cache the bit patterns used
/// by conflict counting: the clause is violated exactly by assignments a with
/// (a & mask) == violating.
struct Clause {
  std::vector<Literal> literals;
  std::uint32_t mask = 0;
  std::uint32_t violating = 0;

  bool operator==(const Clause& other) const { return literals == other.literals; }
};

/// Validates distinct variables in [0, n) and fills the bit caches.
Clause make_clause(std::vector<Literal> literals, int n);

inline constexpr int kMaxVariables = 30;
inline constexpr int kBruteForceLimit = 24;

/// An immutable propositional formula in CNF over n variables.
class SatInstance {
 public:
  SatInstance(int n, std::vector<Clause> clauses);

  int n() const noexcept { return n_; }
  int num_clauses() const noexcept { return static_cast<int>(clauses_.size()); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  std::uint32_t num_assignments() const noexcept { return 1u << n_; }

  bool operator==(const SatInstance& other) const {
    return n_ == other.n_ && clauses_ == other.clauses_;
  }

 private:
  int n_;
  std::vector<Clause> clauses_;
};

/// Random k-SAT instance (k = 3): m = round(ratio * n) clauses, each built from
/// k distinct variables drawn uniformly, each literal negated with probability
/// 1/2. Duplicate clauses are permitted. Deterministic in (n, ratio, seed).
SatInstance random_instance(int n, double ratio, std::uint64_t seed, int k = 3);

/// Number of clauses with every literal false under a.
int conflicts(const SatInstance& instance, Assignment a);

/// All satisfying assignments, by exhaustive enumeration. Requires n <= 24.
std::vector<Assignment> solutions_bruteforce(const SatInstance& instance);

/// Conflict counts for every assignment 0..2^n-1, via per-clause subcube sweeps.
std::vector<std::uint16_t> conflict_table(const SatInstance& instance);

/// DIMACS CNF text. Lines are LF-terminated; literals are signed and 1-based.
std::string write_dimacs(const SatInstance& instance);

/// Parse DIMACS CNF. Comment lines start with 'c'; the "p cnf n m" header must
/// precede the clauses; every clause ends with 0. When enforce_arity is set,
/// clauses of arity other than k are rejected.
SatInstance read_dimacs(const std::string& text, bool enforce_arity = true, int k = 3);

}  // namespace qp::sat
