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

#ifndef QCORR_RECORDS_IO_HPP_
#define QCORR_RECORDS_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/experiments.hpp"

namespace qcorr {

inline constexpr std::string_view kRecordsHeader =
    "n,m,alpha_nominal,alpha_actual,trial,seed_path,verdict,certifier,linf_l2,chsh_max,"
    "pi_norm,witness_value,stat_threshold,wall_time_ms";
inline constexpr std::string_view kSummaryHeader =
    "n,alpha_nominal,frac_local,frac_nonlocal,frac_statistical,frac_undecided,trials";

// 12 significant digits, '.' separator, independent of the global locale.
std::string format_float(double value);
// Empty string for nullopt.
std::string format_float(const std::optional<double>& value);

// Locale-independent; throws ArgumentError unless the whole string parses.
double parse_float(std::string_view text);
long long parse_int(std::string_view text);

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Inverse of write_records_csv for the CSV columns. Throws ArgumentError on a
// malformed header or row.
std::vector<TrialRecord> parse_records_csv(std::istream& in);

}  // namespace qcorr

#endif  // QCORR_RECORDS_IO_HPP_
