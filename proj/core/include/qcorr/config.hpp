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

#ifndef QCORR_CONFIG_HPP_
#define QCORR_CONFIG_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/experiments.hpp"

namespace qcorr {

// Bad config file contents or override.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

// Every accepted key with a one-line description.
const std::vector<ConfigKey>& config_keys();

using ConfigMap = std::map<std::string, std::string>;

// Flat "key = value" lines; '#' starts a comment, blank lines are ignored.
// Unknown or repeated keys throw ConfigError; the message lists valid keys.
ConfigMap parse_config_text(std::string_view text, std::string_view source = "<config>");

// Throws ConfigError if the file cannot be read, naming the path.
ConfigMap read_config_file(const std::string& path);

// "key=value" override; later calls win.
void apply_override(ConfigMap& config, std::string_view assignment);

// Builds and validates an ExperimentConfig; missing keys keep their defaults.
ExperimentConfig to_experiment_config(const ConfigMap& config);

}  // namespace qcorr

#endif  // QCORR_CONFIG_HPP_
