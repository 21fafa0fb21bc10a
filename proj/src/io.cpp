#include "wshrink/io.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wshrink {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) token.remove_suffix(1);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::invalid_argument("not a number: '" + std::string(token) + "'");
  }
  return value;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_column(std::string_view text) {
  std::vector<double> values;
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const std::size_t eol = text.find('\n');
    std::string_view row = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (row.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      values.push_back(parse_double(row));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("line " + std::to_string(line) + ": not a number");
    }
  }
  return values;
}

std::vector<double> read_column_csv(const std::filesystem::path& path) { return parse_column(read_file(path)); }

std::string format_column(std::span<const double> values) {
  std::string out;
  for (double v : values) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

void write_column_csv(const std::filesystem::path& path, std::span<const double> values) {
  atomic_write(path, format_column(values));
}

std::string report_to_json(const TrialReport& r) {
  std::string s = "{\"trial\":" + std::to_string(r.trial);
  s += ",\"n\":" + std::to_string(r.n);
  s += ",\"delta\":" + format_double(r.delta);
  s += ",\"max_sq_err\":" + format_double(r.max_sq_err);
  s += ",\"mse\":" + format_double(r.mse);
  s += ",\"in_A\":";
  s += r.in_A ? (*r.in_A ? "true" : "false") : "null";
  s += ",\"exceed_count\":" + std::to_string(r.exceed_count);
  s += ",\"seed\":" + std::to_string(r.seed);
  s += "}";
  return s;
}

std::string reports_to_jsonl(std::span<const TrialReport> reports) {
  std::string out;
  for (const auto& r : reports) {
    out += report_to_json(r);
    out += '\n';
  }
  return out;
}

std::string summaries_to_csv(std::span<const CellSummary> summaries) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const auto& s : summaries) {
    out += std::to_string(s.n);
    for (double v : {s.delta, s.q50_max, s.q50_mse, s.p_within_envelope, s.p_A_hat, s.ci_lo, s.ci_hi}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<CellSummary> parse_summaries_csv(std::string_view text) {
  std::vector<CellSummary> out;
  bool header = true;
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const std::size_t eol = text.find('\n');
    std::string_view row = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty()) continue;
    if (header) {
      if (row != kSummaryHeader) throw std::invalid_argument("summary CSV header mismatch");
      header = false;
      continue;
    }
    std::vector<double> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = row.find(',', start);
      try {
        fields.push_back(parse_double(row.substr(start, comma - start)));
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("summary CSV line " + std::to_string(line) + ": bad number");
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 8) {
      throw std::invalid_argument("summary CSV line " + std::to_string(line) + ": expected 8 fields");
    }
    CellSummary s;
    s.n = static_cast<std::size_t>(fields[0]);
    s.delta = fields[1];
    s.q50_max = fields[2];
    s.q50_mse = fields[3];
    s.p_within_envelope = fields[4];
    s.p_A_hat = fields[5];
    s.ci_lo = fields[6];
    s.ci_hi = fields[7];
    out.push_back(s);
  }
  if (header) throw std::invalid_argument("summary CSV is empty");
  return out;
}

}  // namespace wshrink
