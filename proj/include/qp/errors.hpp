#pragma once

#include <stdexcept>

namespace qp {

/// A restart strategy whose success probability underflowed the configured floor.
struct DegenerateStrategyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested computation has no feasible answer (unsolvable instance,
/// zero success mass, empty result set).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text or file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qp
