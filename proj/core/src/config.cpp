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

#include "qcorr/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qcorr/errors.hpp"
#include "qcorr/records_io.hpp"

namespace qcorr {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string valid_key_list() {
  std::string out;
  for (const auto& key : config_keys()) {
    if (!out.empty()) out += ", ";
    out += key.name;
  }
  return out;
}

void check_key(std::string_view key, std::string_view where) {
  const auto& keys = config_keys();
  const bool known = std::any_of(keys.begin(), keys.end(),
                                 [&](const ConfigKey& k) { return k.name == key; });
  if (!known) {
    throw ConfigError(std::string(where) + ": unknown key '" + std::string(key) +
                      "'; valid keys: " + valid_key_list());
  }
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& key, std::string_view text, F&& parse_one) {
  std::vector<T> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    const auto item = trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (item.empty()) throw ConfigError(key + ": empty list item");
    out.push_back(parse_one(item));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + std::string(v) + "'");
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"n_grid", "comma-separated matrix sizes n"},
      {"alpha_grid", "comma-separated ratios alpha = m/n in (0, 4]"},
      {"trials", "trials per (n, alpha) cell"},
      {"seed", "master seed (unsigned 64-bit)"},
      {"mode", "independent | coupled | bernoulli"},
      {"n_exact", "largest n for the exact pi-norm stage (<= 20)"},
      {"chsh_mode", "auto | full | sampled"},
      {"chsh_samples", "quadruples drawn by the sampled CHSH scan"},
      {"chsh_full_limit", "auto mode scans exhaustively up to this n"},
      {"margin_chsh", "CHSH value must exceed 2 + margin"},
      {"margin_local", "pi-norm <= 1 + margin certifies locality"},
      {"margin_nonlocal", "pi-norm > 1 + margin certifies nonlocality"},
      {"margin_witness", "relative margin on the statistical threshold"},
      {"threshold_mode", "asymptotic | finite_n"},
      {"pi_max_cuts", "cut limit for the exact pi-norm (0 = 50 n^2)"},
      {"audit", "cross-check cheap certificates with the exact pi-norm at small n"},
      {"record_timing", "fill wall_time_ms (makes records.csv run-dependent)"},
      {"threads", "worker threads (0 = hardware concurrency)"},
  };
  return keys;
}

ConfigMap parse_config_text(std::string_view text, std::string_view source) {
  ConfigMap out;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    check_key(key, where);
    if (!out.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return out;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void apply_override(ConfigMap& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "': expected key=value");
  }
  const std::string key(trim(assignment.substr(0, eq)));
  check_key(key, "override");
  config[key] = std::string(trim(assignment.substr(eq + 1)));
}

ExperimentConfig to_experiment_config(const ConfigMap& config) {
  ExperimentConfig out;
  for (const auto& [key, value] : config) {
    check_key(key, "config");
    try {
      if (key == "n_grid") {
        out.n_grid = parse_list<int>(key, value, [](std::string_view s) {
          return static_cast<int>(parse_int(s));
        });
      } else if (key == "alpha_grid") {
        out.alpha_grid = parse_list<double>(key, value, parse_float);
      } else if (key == "trials") {
        out.trials_per_cell = static_cast<int>(parse_int(value));
      } else if (key == "seed") {
        const long long seed = parse_int(value);
        if (seed < 0) throw ConfigError("seed must be nonnegative");
        out.master_seed = static_cast<std::uint64_t>(seed);
      } else if (key == "mode") {
        const auto mode = parse_sampling_mode(value);
        if (!mode) throw ConfigError("expected independent, coupled or bernoulli");
        out.mode = *mode;
      } else if (key == "n_exact") {
        out.n_exact = static_cast<int>(parse_int(value));
      } else if (key == "chsh_mode") {
        if (value == "auto") {
          out.chsh_mode = ChshOptions::Mode::kAuto;
        } else if (value == "full") {
          out.chsh_mode = ChshOptions::Mode::kFull;
        } else if (value == "sampled") {
          out.chsh_mode = ChshOptions::Mode::kSampled;
        } else {
          throw ConfigError("expected auto, full or sampled");
        }
      } else if (key == "chsh_samples") {
        out.chsh_samples = parse_int(value);
      } else if (key == "chsh_full_limit") {
        out.chsh_full_limit = static_cast<int>(parse_int(value));
      } else if (key == "margin_chsh") {
        out.margins.chsh = parse_float(value);
      } else if (key == "margin_local") {
        out.margins.pi_local = parse_float(value);
      } else if (key == "margin_nonlocal") {
        out.margins.pi_nonlocal = parse_float(value);
      } else if (key == "margin_witness") {
        out.margins.witness = parse_float(value);
      } else if (key == "threshold_mode") {
        if (value == "asymptotic") {
          out.threshold_mode = ThresholdMode::kAsymptotic;
        } else if (value == "finite_n") {
          out.threshold_mode = ThresholdMode::kFiniteN;
        } else {
          throw ConfigError("expected asymptotic or finite_n");
        }
      } else if (key == "pi_max_cuts") {
        out.pi_max_cuts = static_cast<int>(parse_int(value));
      } else if (key == "audit") {
        out.audit = parse_bool(key, value);
      } else if (key == "record_timing") {
        out.record_timing = parse_bool(key, value);
      } else if (key == "threads") {
        out.threads = static_cast<int>(parse_int(value));
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
  try {
    out.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  return out;
}

}  // namespace qcorr
