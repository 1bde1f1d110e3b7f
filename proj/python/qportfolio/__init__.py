"""Quantum portfolios: restart analytics, 3-SAT heuristic simulation, and
portfolio construction over phase-parameterized quantum algorithms."""

import json as _json

from qportfolio._qportfolio import (
    __version__,
    DegenerateStrategyError,
    InfeasibleError,
    ParseError,
    phopt,
    portfolio,
    qsim,
    restart,
    sat,
)

# Convenience re-exports of the most used entry points.
ProblemAngle = restart.ProblemAngle
FrontierPoint = restart.FrontierPoint
certainty_iterations = restart.certainty_iterations
expected_iterations = restart.expected_iterations
optimal_restart = restart.optimal_restart
frontier = restart.frontier

SatInstance = sat.SatInstance
random_instance = sat.random_instance
conflicts = sat.conflicts
solutions_bruteforce = sat.solutions_bruteforce

PhaseChoice = qsim.PhaseChoice
identity_choice = qsim.identity_choice
heuristic_trial = qsim.heuristic_trial
grover_trial = qsim.grover_trial

SuccessDistribution = portfolio.SuccessDistribution
success_distribution = portfolio.success_distribution
single_choice_stats = portfolio.single_choice_stats
mixed_strategy_stats = portfolio.mixed_strategy_stats
jensen_gap = portfolio.jensen_gap
equivalence_check = portfolio.equivalence_check
amplified_portfolio = portfolio.amplified_portfolio

TrainingConfig = phopt.TrainingConfig
build_portfolio = phopt.build_portfolio


def cross_size_eval(portfolio_set, test_n, test_count, seed, ratio=4.25, portfolio_id=""):
    """Evaluate a trained portfolio on fresh instances; returns the report dict."""
    text = phopt.cross_size_eval_json(
        portfolio_set, test_n, test_count, seed, ratio, portfolio_id
    )
    return _json.loads(text)


__all__ = [
    "__version__",
    "DegenerateStrategyError",
    "InfeasibleError",
    "ParseError",
    "ProblemAngle",
    "FrontierPoint",
    "certainty_iterations",
    "expected_iterations",
    "optimal_restart",
    "frontier",
    "SatInstance",
    "random_instance",
    "conflicts",
    "solutions_bruteforce",
    "PhaseChoice",
    "identity_choice",
    "heuristic_trial",
    "grover_trial",
    "SuccessDistribution",
    "success_distribution",
    "single_choice_stats",
    "mixed_strategy_stats",
    "jensen_gap",
    "equivalence_check",
    "amplified_portfolio",
    "TrainingConfig",
    "build_portfolio",
    "cross_size_eval",
    "restart",
    "sat",
    "qsim",
    "portfolio",
    "phopt",
]
