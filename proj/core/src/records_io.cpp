// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcorr/records_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<double> parse_optional(std::string_view text) {
  if (text.empty()) return std::nullopt;
  return parse_float(text);
}

}  // namespace

std::string format_float(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string format_float(const std::optional<double>& value) {
  return value ? format_float(*value) : std::string();
}

double parse_float(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw ArgumentError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_int(std::string_view text) {
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw ArgumentError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.n << ',' << r.m << ',' << format_float(r.alpha_nominal) << ','
        << format_float(r.alpha_actual) << ',' << r.trial << ',' << r.seed_path << ','
        << to_string(r.verdict) << ',' << r.certifier << ',' << format_float(r.linf_l2) << ','
        << format_float(r.chsh_max) << ',' << format_float(r.pi_norm) << ','
        << format_float(r.witness_value) << ',' << format_float(r.stat_threshold) << ','
        << format_float(r.wall_time_ms) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& s : rows) {
    out << s.n << ',' << format_float(s.alpha_nominal) << ',' << format_float(s.frac_local) << ','
        << format_float(s.frac_nonlocal) << ',' << format_float(s.frac_statistical) << ','
        << format_float(s.frac_undecided) << ',' << s.trials << '\n';
  }
}

std::vector<TrialRecord> parse_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw ArgumentError("records.csv: unexpected header");
  }
  std::vector<TrialRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 14) {
      throw ArgumentError("records.csv line " + std::to_string(line_no) + ": expected 14 fields");
    }
    TrialRecord r;
    try {
      r.n = static_cast<int>(parse_int(f[0]));
      r.m = static_cast<int>(parse_int(f[1]));
      r.alpha_nominal = parse_float(f[2]);
      r.alpha_actual = parse_float(f[3]);
      r.trial = static_cast<int>(parse_int(f[4]));
      r.seed_path = std::string(f[5]);
      const auto verdict = parse_verdict(f[6]);
      if (!verdict) throw ArgumentError("unknown verdict '" + std::string(f[6]) + "'");
      r.verdict = *verdict;
      r.certifier = std::string(f[7]);
      r.linf_l2 = parse_optional(f[8]);
      r.chsh_max = parse_optional(f[9]);
      r.pi_norm = parse_optional(f[10]);
      r.witness_value = parse_optional(f[11]);
      r.stat_threshold = parse_optional(f[12]);
      r.wall_time_ms = parse_optional(f[13]);
    } catch (const ArgumentError& e) {
      throw ArgumentError("records.csv line " + std::to_string(line_no) + ": " + e.what());
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace qcorr
