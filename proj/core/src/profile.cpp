#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "commscale/cost_model.hpp"

namespace commscale {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

ProfileError::ProfileError(std::vector<ProfileIssue> issues)
    : ParseError("profile", [&] {
        std::string msg = std::to_string(issues.size()) + " malformed line(s)";
        for (const auto& issue : issues) {
          msg += "\n  line " + std::to_string(issue.line) + ": " + issue.message;
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

std::vector<OperatorRecord> parse_profile(std::string_view csv) {
  std::vector<OperatorRecord> records;
  std::vector<ProfileIssue> issues;
  bool saw_header = false;
  std::size_t line_no = 0;

  while (!csv.empty()) {
    const auto eol = csv.find('\n');
    const auto raw = csv.substr(0, eol);
    csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
    ++line_no;

    auto line = trim(raw);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (!saw_header) {
      saw_header = true;
      if (fields.size() != 3 || fields[0] != "kind" || fields[1] != "size_metric" ||
          fields[2] != "time_s") {
        issues.push_back({line_no, "header must be 'kind,size_metric,time_s', got '" +
                                       std::string(line) + "'"});
        break;
      }
      continue;
    }
    if (fields.size() != 3) {
      issues.push_back({line_no, "expected 3 fields, got " + std::to_string(fields.size())});
      continue;
    }
    const auto kind = parse_operator_kind(fields[0]);
    if (!kind) {
      issues.push_back({line_no, "unknown operator kind '" + std::string(fields[0]) + "'"});
      continue;
    }
    const auto size = parse_number(fields[1]);
    const auto time = parse_number(fields[2]);
    if (!size || !time) {
      issues.push_back({line_no, "size_metric and time_s must be decimal numbers"});
      continue;
    }
    if (*size <= 0.0) {
      issues.push_back({line_no, "size_metric must be positive, got " + std::string(fields[1])});
      continue;
    }
    if (*time <= 0.0) {
      issues.push_back({line_no, "time_s must be positive, got " + std::string(fields[2])});
      continue;
    }
    records.push_back({*kind, *size, *time});
  }
  if (!saw_header && issues.empty()) {
    issues.push_back({line_no, "missing header 'kind,size_metric,time_s'"});
  }
  if (!issues.empty()) throw ProfileError(std::move(issues));
  return records;
}

}  // namespace commscale
