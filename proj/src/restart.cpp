#include "qp/restart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qp::restart {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ProblemAngle::ProblemAngle(double fraction) : fraction_(fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw std::invalid_argument("ProblemAngle: fraction must lie in (0, 1], got " +
                                std::to_string(fraction));
  }
  theta_ = std::asin(std::sqrt(fraction));
}

double success_probability(std::int64_t t, const ProblemAngle& angle) {
  if (t < 0) throw std::invalid_argument("success_probability: t must be >= 0");
  const double s = std::sin((2.0 * static_cast<double>(t) + 1.0) * angle.theta());
  return std::clamp(s * s, 0.0, 1.0);
}

int certainty_iterations(const ProblemAngle& angle) {
  if (angle.fraction() > 0.5) {
    throw std::invalid_argument(
        "certainty_iterations: fraction must be <= 1/2, got " +
        std::to_string(angle.fraction()));
  }
  // Real-valued minimizer of |(2t+1) theta - pi/2|.
  const double u = (kPi / (2.0 * angle.theta()) - 1.0) / 2.0;
  const auto candidate = [&](double v) {
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(v));
  };
  const std::int64_t lo = candidate(std::floor(u));
  const std::int64_t hi = candidate(std::ceil(u));
  const auto miss = [&](std::int64_t t) {
    return std::abs((2.0 * static_cast<double>(t) + 1.0) * angle.theta() - kPi / 2.0);
  };
  return static_cast<int>(miss(lo) <= miss(hi) ? lo : hi);
}

double expected_iterations(int t, const ProblemAngle& angle, double floor) {
  if (t < 1) throw std::invalid_argument("expected_iterations: t must be >= 1");
  const double p = success_probability(t, angle);
  if (p < floor) {
    throw DegenerateStrategyError("expected_iterations: p_t = " + std::to_string(p) +
                                  " underflows the floor at t = " + std::to_string(t));
  }
  return static_cast<double>(t) / p;
}

double second_moment(int t, double p) {
  const double td = static_cast<double>(t);
  return td * td * (2.0 - p) / (p * p);
}

double std_dev(int t, double p) {
  return static_cast<double>(t) / p * std::sqrt(1.0 - p);
}

double sharpe_from_p(double p) {
  if (1.0 - p <= kCertaintyWindow) return kInf;
  return 1.0 / std::sqrt(1.0 - p);
}

double sharpe(const FrontierPoint& point) { return sharpe_from_p(point.p); }

FrontierPoint make_point(int t, const ProblemAngle& angle, double floor) {
  FrontierPoint pt;
  pt.t = t;
  pt.p = success_probability(t, angle);
  if (pt.p < floor) {
    throw DegenerateStrategyError("make_point: p_t underflows the floor at t = " +
                                  std::to_string(t));
  }
  pt.mean = static_cast<double>(t) / pt.p;
  pt.second_moment = second_moment(t, pt.p);
  pt.std_dev = std_dev(t, pt.p);
  pt.sharpe = sharpe_from_p(pt.p);
  return pt;
}

std::vector<FrontierPoint> frontier(const ProblemAngle& angle, int t_max, double floor) {
  if (t_max < 1) throw std::invalid_argument("frontier: t_max must be >= 1");
  std::vector<FrontierPoint> points;
  points.reserve(static_cast<std::size_t>(t_max));
  for (int t = 1; t <= t_max; ++t) points.push_back(make_point(t, angle, floor));

  // A point is dominated iff some other point has (mean <=, std <=) with at
  // least one strict inequality. Sweep in (mean, std) order; within an
  // equal-mean group only a strictly smaller std dominates.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].mean != points[b].mean) return points[a].mean < points[b].mean;
    if (points[a].std_dev != points[b].std_dev) return points[a].std_dev < points[b].std_dev;
    return points[a].t < points[b].t;
  });

  double best_std_lower_mean = kInf;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    const double group_mean = points[order[i]].mean;
    double group_min_std = kInf;
    while (j < order.size() && points[order[j]].mean == group_mean) {
      group_min_std = std::min(group_min_std, points[order[j]].std_dev);
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) {
      FrontierPoint& pt = points[order[k]];
      const bool dominated =
          best_std_lower_mean <= pt.std_dev || group_min_std < pt.std_dev;
      pt.efficient = !dominated;
    }
    best_std_lower_mean = std::min(best_std_lower_mean, group_min_std);
    i = j;
  }
  return points;
}

FrontierPoint optimal_restart(const ProblemAngle& angle, int t_max, double floor) {
  const int t_star = certainty_iterations(angle);
  if (t_max < t_star) {
    throw std::invalid_argument("optimal_restart: t_max = " + std::to_string(t_max) +
                                " is below certainty_iterations = " +
                                std::to_string(t_star));
  }
  const std::vector<FrontierPoint> points = frontier(angle, t_max, floor);
  const FrontierPoint* best = &points.front();
  for (const FrontierPoint& pt : points) {
    if (pt.mean < best->mean) best = &pt;
  }
  return *best;
}

double continuous_optimum_z() {
  // f(z) = tan(z/2) - z is continuous and strictly increasing on (1.6, 3.1).
  double lo = 1.6, hi = 3.1;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (std::tan(mid / 2.0) - mid > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qp::restart
