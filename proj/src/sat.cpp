#include "qp/sat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qp/rng.hpp"

namespace qp::sat {

Clause make_clause(std::vector<Literal> literals, int n) {
  if (literals.empty()) throw std::invalid_argument("make_clause: empty clause");
  Clause clause;
  for (const Literal& lit : literals) {
    if (lit.var < 0 || lit.var >= n) {
      throw std::invalid_argument("make_clause: variable " + std::to_string(lit.var) +
                                  " out of range for n = " + std::to_string(n));
    }
    const std::uint32_t bit = 1u << lit.var;
    if (clause.mask & bit) {
      throw std::invalid_argument("make_clause: repeated variable " +
                                  std::to_string(lit.var));
    }
    clause.mask |= bit;
    // A positive literal is false when its bit is 0, a negated one when it is 1.
    if (lit.negated) clause.violating |= bit;
  }
  clause.literals = std::move(literals);
  return clause;
}

SatInstance::SatInstance(int n, std::vector<Clause> clauses) : n_(n) {
  if (n < 1 || n > kMaxVariables) {
    throw std::invalid_argument("SatInstance: n must lie in [1, " +
                                std::to_string(kMaxVariables) + "], got " +
                                std::to_string(n));
  }
  for (Clause& c : clauses) {
    // Re-derive the caches so instances built from raw clauses stay consistent.
    c = make_clause(std::move(c.literals), n);
  }
  clauses_ = std::move(clauses);
}

SatInstance random_instance(int n, double ratio, std::uint64_t seed, int k) {
  if (k < 1) throw std::invalid_argument("random_instance: k must be >= 1");
  if (n < k) {
    throw std::invalid_argument("random_instance: n = " + std::to_string(n) +
                                " is below the clause arity k = " + std::to_string(k));
  }
  if (!(ratio > 0.0)) throw std::invalid_argument("random_instance: ratio must be > 0");
  // Round half to even so the clause count is unambiguous at exact halves.
  const long m = std::lrint(ratio * n);
  if (m < 1) throw std::invalid_argument("random_instance: round(ratio*n) must be >= 1");

  CounterRng rng(seed);
  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(m));
  std::vector<int> vars(static_cast<std::size_t>(k));
  for (long j = 0; j < m; ++j) {
    // k distinct variables, uniform without replacement: draw from a shrinking
    // range and bump past the already-chosen values in ascending order.
    for (int i = 0; i < k; ++i) {
      int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
      std::vector<int> chosen(vars.begin(), vars.begin() + i);
      std::sort(chosen.begin(), chosen.end());
      for (int c : chosen) {
        if (v >= c) ++v;
      }
      vars[i] = v;
    }
    std::vector<Literal> literals(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      literals[i] = Literal{vars[i], rng.next_bool()};
    }
    clauses.push_back(make_clause(std::move(literals), n));
  }
  return SatInstance(n, std::move(clauses));
}

int conflicts(const SatInstance& instance, Assignment a) {
  if (a >= instance.num_assignments()) {
    throw std::invalid_argument("conflicts: assignment out of range");
  }
  int count = 0;
  for (const Clause& c : instance.clauses()) {
    if ((a & c.mask) == c.violating) ++count;
  }
  return count;
}

std::vector<Assignment> solutions_bruteforce(const SatInstance& instance) {
  if (instance.n() > kBruteForceLimit) {
    throw std::invalid_argument("solutions_bruteforce: n = " +
                                std::to_string(instance.n()) + " exceeds the limit " +
                                std::to_string(kBruteForceLimit));
  }
  std::vector<Assignment> solutions;
  const std::uint32_t total = instance.num_assignments();
  for (std::uint32_t a = 0; a < total; ++a) {
    bool satisfied = true;
    for (const Clause& c : instance.clauses()) {
      if ((a & c.mask) == c.violating) {
        satisfied = false;
        break;
      }
    }
    if (satisfied) solutions.push_back(a);
  }
  return solutions;
}

std::vector<std::uint16_t> conflict_table(const SatInstance& instance) {
  std::vector<std::uint16_t> counts(instance.num_assignments(), 0);
  const std::uint32_t full = instance.num_assignments() - 1;
  for (const Clause& c : instance.clauses()) {
    const std::uint32_t free_bits = full & ~c.mask;
    // The violating assignments of a clause form a subcube; walk its subsets.
    std::uint32_t sub = 0;
    while (true) {
      ++counts[sub | c.violating];
      if (sub == free_bits) break;
      sub = (sub - free_bits) & free_bits;
    }
  }
  return counts;
}

std::string write_dimacs(const SatInstance& instance) {
  std::ostringstream out;
  out << "p cnf " << instance.n() << ' ' << instance.num_clauses() << '\n';
  for (const Clause& c : instance.clauses()) {
    for (const Literal& lit : c.literals) {
      out << (lit.negated ? -(lit.var + 1) : lit.var + 1) << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

SatInstance read_dimacs(const std::string& text, bool enforce_arity, int k) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  long m = -1;
  std::vector<long> tokens;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (n >= 0) throw ParseError("read_dimacs: duplicate header");
      std::istringstream header(line);
      std::string p, fmt;
      header >> p >> fmt >> n >> m;
      if (header.fail() || fmt != "cnf") throw ParseError("read_dimacs: malformed header: " + line);
      if (n < 1 || n > kMaxVariables) {
        throw ParseError("read_dimacs: variable count " + std::to_string(n) +
                         " out of range");
      }
      if (m < 0) throw ParseError("read_dimacs: negative clause count");
      continue;
    }
    if (n < 0) throw ParseError("read_dimacs: clause data before header");
    std::istringstream body(line);
    long lit = 0;
    while (body >> lit) tokens.push_back(lit);
    if (!body.eof()) throw ParseError("read_dimacs: non-numeric token in: " + line);
  }
  if (n < 0) throw ParseError("read_dimacs: missing header");

  std::vector<Clause> clauses;
  std::vector<Literal> current;
  for (long lit : tokens) {
    if (lit == 0) {
      if (current.empty()) throw ParseError("read_dimacs: empty clause");
      if (enforce_arity && static_cast<int>(current.size()) != k) {
        throw ParseError("read_dimacs: clause arity " + std::to_string(current.size()) +
                         " differs from k = " + std::to_string(k));
      }
      try {
        clauses.push_back(make_clause(std::move(current), n));
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("read_dimacs: ") + e.what());
      }
      current.clear();
      continue;
    }
    const long var = std::abs(lit) - 1;
    if (var >= n) {
      throw ParseError("read_dimacs: literal " + std::to_string(lit) +
                       " out of range for n = " + std::to_string(n));
    }
    current.push_back(Literal{static_cast<int>(var), lit < 0});
  }
  if (!current.empty()) throw ParseError("read_dimacs: unterminated clause");
  if (static_cast<long>(clauses.size()) != m) {
    throw ParseError("read_dimacs: header declares " + std::to_string(m) +
                     " clauses but " + std::to_string(clauses.size()) + " were given");
  }
  return SatInstance(n, std::move(clauses));
}

}  // namespace qp::sat
