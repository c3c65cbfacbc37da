// Copyright 2026 The ronmf Authors. All Rights Reserved.
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

#ifndef RONMF_TOOLS_CONFIG_HPP_
#define RONMF_TOOLS_CONFIG_HPP_

// Run configuration for the command-line tool.
//
// A configuration is a flat JSON object. Keys mirror HyperParams plus a few
// run-level settings; see config_keys() for the full list. Values given on
// the command line replace values from the file.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ronmf/encode.hpp"
#include "ronmf/types.hpp"

namespace ronmf::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class KeyType { kReal, kInt, kString, kBool };

struct ConfigKey {
  std::string name;
  KeyType type;
  std::string help;
};

/// Every accepted configuration key, in echo order.
const std::vector<ConfigKey>& config_keys();

struct RunConfig {
  HyperParams params;
  InitMode h_init = InitMode::kZeros;
  /// Requested encode threads before the RONMF_THREADS cap.
  unsigned threads = 1;
  Index max_outer = 200;
  double tol = 1e-4;
  Index replicate = 1;
  bool shuffle = false;
  bool normalize = false;
  /// Whether tau came from the configuration or from the rule of thumb.
  bool tau_explicit = false;
};

/// Parses a configuration file. Syntax errors carry the line and column.
nlohmann::json load_config_file(const std::filesystem::path& path);

/// Overlays `overrides` on `base`; keys in `overrides` win.
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& overrides);

/// Converts a flag value to the JSON type of `key`.
nlohmann::json parse_flag_value(const ConfigKey& key, const std::string& text);

/// Validates keys, types and ranges and fills in defaults. F and N are the
/// data dimensions; the default tau is the mini-batch rule of thumb for N.
RunConfig resolve_config(const nlohmann::json& merged, Index F, Index N);

/// The fully resolved configuration with lambda made explicit for F.
nlohmann::json to_json(const RunConfig& cfg, Index F);

/// Encode threads after applying the RONMF_THREADS cap.
unsigned effective_threads(const RunConfig& cfg);

}  // namespace ronmf::cli

#endif  // RONMF_TOOLS_CONFIG_HPP_
