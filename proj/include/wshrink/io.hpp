#ifndef WSHRINK_IO_HPP
#define WSHRINK_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wshrink/experiments.hpp"

namespace wshrink {

/// 17 significant digits, '.' separator; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// Parses a full token as a double; throws std::invalid_argument otherwise.
double parse_double(std::string_view token);

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// One value per line; blank lines are skipped.
std::vector<double> parse_column(std::string_view text);
std::vector<double> read_column_csv(const std::filesystem::path& path);
std::string format_column(std::span<const double> values);
void write_column_csv(const std::filesystem::path& path, std::span<const double> values);

/// Fields: trial, n, delta, max_sq_err, mse, in_A (null when undefined),
/// exceed_count, seed.
std::string report_to_json(const TrialReport& report);
std::string reports_to_jsonl(std::span<const TrialReport> reports);

inline constexpr std::string_view kSummaryHeader = "n,delta,q50_max,q50_mse,p_within_envelope,p_A_hat,ci_lo,ci_hi";

std::string summaries_to_csv(std::span<const CellSummary> summaries);

/// Parses a CSV written by summaries_to_csv (header required).
std::vector<CellSummary> parse_summaries_csv(std::string_view text);

}  // namespace wshrink

#endif  // WSHRINK_IO_HPP
