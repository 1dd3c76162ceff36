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

#include "lid/report/manifest.hpp"

#include <chrono>
#include <cstdlib>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "lid/util/io.hpp"

namespace lid::report {

using nlohmann::json;

json to_json(const ForestParams& params) {
  json j;
  j["n_trees"] = params.n_trees;
  j["mtry"] = params.mtry ? json(*params.mtry) : json(nullptr);
  j["min_samples_split"] = params.min_samples_split;
  j["max_depth"] = params.max_depth ? json(*params.max_depth) : json(nullptr);
  j["bootstrap"] = params.bootstrap;
  j["n_seeds"] = params.n_seeds;
  j["criterion"] = "variance";
  return j;
}

json RunManifest::core() const {
  json j;
  j["format"] = "lid-manifest v1";
  j["tool_version"] = tool_version;
  j["inputs"] = inputs;
  j["polygon_digest"] = polygon_digest;
  j["catalog"] = {{"version", catalog_version}, {"sha256", catalog_digest}};
  j["config"] = config;
  j["forest"] = to_json(params);
  // As a string: JSON numbers lose precision above 2^53 in many readers.
  j["master_seed"] = std::to_string(master_seed);
  j["timestamp"] = timestamp ? json(*timestamp) : json(nullptr);
  return j;
}

std::string RunManifest::digest() const { return sha256_hex(core().dump()); }

std::string RunManifest::serialize(const std::map<std::string, std::string>& artifacts) const {
  auto j = core();
  j["digest"] = digest();
  j["artifacts"] = artifacts;
  return j.dump(2) + "\n";
}

std::optional<std::string> source_date_epoch() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const long long secs = std::strtoll(env, &end, 10);
  if (*end != '\0') return std::nullopt;
  const std::chrono::sys_seconds t{std::chrono::seconds{secs}};
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", t);
}

}  // namespace lid::report
