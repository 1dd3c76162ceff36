// Copyright 2026 The LID Authors.
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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lid/core/importance.hpp"

namespace lid::report {

nlohmann::json to_json(const ForestParams& params);

/// Provenance of one run. The digest covers everything here except the
/// artifact list, so artifacts can embed it and still be listed by hash.
/// Thread count and output location are deliberately absent.
struct RunManifest {
  std::string tool_version;
  std::map<std::string, std::string> inputs;  // source name -> sha256 of file
  std::string polygon_digest;
  std::string catalog_version;
  std::string catalog_digest;
  nlohmann::json config;  // effective configuration, defaults resolved
  ForestParams params;
  std::uint64_t master_seed = 0;
  std::optional<std::string> timestamp;  // SOURCE_DATE_EPOCH or config, never the clock

  nlohmann::json core() const;
  std::string digest() const;

  /// core() plus the digest and the artifact hashes (relative path -> sha256).
  std::string serialize(const std::map<std::string, std::string>& artifacts) const;
};

/// Timestamp from SOURCE_DATE_EPOCH as ISO-8601 UTC, if set.
std::optional<std::string> source_date_epoch();

}  // namespace lid::report
