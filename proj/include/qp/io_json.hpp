#pragma once

#include <string>

#include "qp/phase_opt.hpp"
#include "qp/qsim.hpp"

namespace qp::io {

inline constexpr const char* kPortfolioSchema = "qportfolio.portfolio.v1";
inline constexpr const char* kReportSchema = "qportfolio.report.v1";
inline constexpr const char* kHistogramSchema = "qportfolio.histogram.v1";
inline constexpr const char* kAmplifySchema = "qportfolio.amplify.v1";
inline constexpr const char* kManifestSchema = "qportfolio.manifest.v1";

/// {"rho": [...], "tau": [...], "steps": j} with an optional "provenance" block.
std::string choice_to_json(const qsim::PhaseChoice& choice);
qsim::PhaseChoice choice_from_json(const std::string& text);

/// Portfolio file: schema, portfolio_id, and the trained choices with provenance.
std::string portfolio_to_json(const phopt::PortfolioSet& set,
                              const std::string& portfolio_id);
phopt::PortfolioSet portfolio_from_json(const std::string& text);
std::string portfolio_id_from_json(const std::string& text);

/// Cross-size evaluation report: per-instance records plus the aggregate block.
std::string report_to_json(const phopt::EvalReport& report);

}  // namespace qp::io
