#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "feedsim/harness/experiment.hpp"

namespace feedsim::harness {

struct StatsSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1); 0 with std_defined = false for one value
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  bool std_defined = false;
};

/// Linear interpolation between order statistics at (n - 1) p.
double quantile(std::span<const double> sorted, double p);
/// Throws std::invalid_argument on empty input.
StatsSummary descriptive_stats(std::span<const double> values);

/// "-12.3456" from price-units, exact.
std::string format_dollars(Price units);
/// Inverse of format_dollars; throws std::invalid_argument.
Price parse_dollars(const std::string& text);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& in);

struct SummaryRow {
  Mode mode;
  std::string symbol;
  std::string agent;
  std::string phase;
  StatsSummary stats;
};

/// Groups by (mode, symbol, agent, phase) in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);
/// Per group, trial returns sorted ascending with their rank.
void write_distributions_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// results.csv, summary.csv, distributions.csv under `dir` (created).
void emit(const std::filesystem::path& dir, const std::vector<ResultRow>& rows);

}  // namespace feedsim::harness
