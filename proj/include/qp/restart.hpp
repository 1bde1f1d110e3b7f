#pragma once

#include <cstdint>
#include <vector>

#include "qp/errors.hpp"

namespace qp::restart {

/// Geometry of an amplitude-amplification search: the fraction of basis states
/// that are solutions and the rotation angle theta it induces, sin^2(theta) = fraction.
class ProblemAngle {
 public:
  /// fraction = S/N, must lie in (0, 1].
  explicit ProblemAngle(double fraction);

  double fraction() const noexcept { return fraction_; }
  double theta() const noexcept { return theta_; }

 private:
  double fraction_;
  double theta_;
};

/// One restart strategy: measure after every t amplification iterations.
struct FrontierPoint {
  int t = 0;                  // iterations per trial
  double p = 0.0;             // success probability of one trial
  double mean = 0.0;          // expected iterations to solution, t/p
  double second_moment = 0.0; // E[(iterations to solution)^2]
  double std_dev = 0.0;       // (t/p) sqrt(1-p)
  double sharpe = 0.0;        // mean/std_dev; +inf inside the certainty window
  bool efficient = false;     // not dominated in (mean, std_dev)
};

/// Success probabilities below this floor signal a degenerate strategy.
inline constexpr double kProbabilityFloor = 1e-300;

/// When 1-p falls at or below this window the standard deviation is treated as
/// vanishing and the Sharpe ratio is reported as infinite.
inline constexpr double kCertaintyWindow = 1e-6;

/// sin^2((2t+1) theta), clamped to [0, 1]. Requires t >= 0.
double success_probability(std::int64_t t, const ProblemAngle& angle);

/// The integer t >= 1 bringing (2t+1) theta closest to pi/2, i.e. the trial
/// length whose measurement yields a solution with near certainty.
/// Requires fraction <= 1/2.
int certainty_iterations(const ProblemAngle& angle);

/// Expected iterations to solution for trial length t: t / p_t.
/// Throws DegenerateStrategyError when p_t < floor.
double expected_iterations(int t, const ProblemAngle& angle,
                           double floor = kProbabilityFloor);

/// E[(iterations to solution)^2] for trial length t at success probability p.
/// Equals t^2 (2 - 3p + p^2) / ((1-p) p^2), written in the form t^2 (2-p)/p^2
/// which stays finite at p = 1.
double second_moment(int t, double p);

/// (t/p) sqrt(1-p).
double std_dev(int t, double p);

/// mean/std_dev as a function of p alone: 1/sqrt(1-p), reported as +inf when
/// 1-p <= kCertaintyWindow.
double sharpe_from_p(double p);
double sharpe(const FrontierPoint& point);

/// All derived statistics for one trial length; the efficient flag is left false.
FrontierPoint make_point(int t, const ProblemAngle& angle,
                         double floor = kProbabilityFloor);

/// Points for every t in [1, t_max], ordered by t, with `efficient` set exactly
/// on the non-dominated (mean, std_dev) pairs.
std::vector<FrontierPoint> frontier(const ProblemAngle& angle, int t_max,
                                    double floor = kProbabilityFloor);

/// The point with minimal mean over t in [1, t_max] (ties: smaller t), with its
/// dominance flag computed against the full range.
/// Requires t_max >= certainty_iterations(angle).
FrontierPoint optimal_restart(const ProblemAngle& angle, int t_max,
                              double floor = kProbabilityFloor);

/// Root of tan(z/2) = z on (pi/2, pi), found by bisection to 1e-10. The
/// continuous-limit optimum satisfies (2t+1) theta ~ z/2.
double continuous_optimum_z();

}  // namespace qp::restart
