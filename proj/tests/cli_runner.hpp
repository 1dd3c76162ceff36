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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "support.hpp"

namespace lid::test {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Runs the built `lid` binary with `args` (already quoted where needed).
inline CliResult run_cli(const std::string& args, const TempDir& scratch) {
  const auto out = scratch / "cli.stdout";
  const auto err = scratch / "cli.stderr";
  const std::string cmd = shell_quote(LID_CLI_PATH) + " " + args + " >" + shell_quote(out.string()) +
                          " 2>" + shell_quote(err.string());
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

/// Fixture config rewritten into `dir` with absolute source paths, then
/// patched by `edit`.
template <typename Edit>
std::filesystem::path fixture_config(const TempDir& dir, Edit edit) {
  const auto src = pipeline_fixture();
  auto j = nlohmann::json::parse(read_file(src / "config.json"));
  auto absolute = [&](nlohmann::json& v) { v = (src / v.template get<std::string>()).string(); };
  for (auto& path : j.at("sources")) {
    if (path.is_string()) {
      absolute(path);
    } else {
      for (auto& p : path) absolute(p);
    }
  }
  absolute(j.at("polygons"));
  edit(j);
  return dir.write("config.json", j.dump(2));
}

inline std::filesystem::path fixture_config(const TempDir& dir) {
  return fixture_config(dir, [](nlohmann::json&) {});
}

/// Relative path -> bytes for every file under `root`.
inline std::map<std::string, std::string> tree_bytes(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  if (!std::filesystem::exists(root)) return out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return out;
}

}  // namespace lid::test
