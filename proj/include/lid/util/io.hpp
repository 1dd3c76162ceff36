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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace lid {

std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temp file and renames, so readers never see a
/// half-written artifact.
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

/// Shortest representation that parses back to the same double.
std::string format_exact(double value);

/// Fixed-point with `decimals` places.
std::string format_fixed(double value, int decimals);

/// Whole-token double parse; nullopt for empty, "NA", or junk.
std::optional<double> parse_double(std::string_view text);

}  // namespace lid
