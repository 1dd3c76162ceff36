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

#include "lid/core/zone.hpp"

#include <algorithm>

#include "lid/core/error.hpp"

namespace lid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidZone: return "InvalidZone";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kDuplicateZone: return "DuplicateZone";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kNetworkUnavailable: return "NetworkUnavailable";
    case ErrorCode::kCacheCorrupt: return "CacheCorrupt";
    case ErrorCode::kDegenerateRing: return "DegenerateRing";
    case ErrorCode::kInvalidGeometry: return "InvalidGeometry";
    case ErrorCode::kNoCensus: return "NoCensus";
    case ErrorCode::kLagMismatch: return "LagMismatch";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDegenerateReport: return "DegenerateReport";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

bool is_zone_code(std::string_view code) noexcept {
  return code.size() == 5 &&
         std::all_of(code.begin(), code.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_state_tag(std::string_view state) noexcept {
  return state.size() == 2 &&
         std::all_of(state.begin(), state.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

ZoneId::ZoneId(std::string_view code, std::string_view state) : code_(code), state_(state) {
  if (!is_zone_code(code)) {
    throw Error(ErrorCode::kInvalidZone, "zone code '" + std::string(code) + "' is not 5 digits");
  }
  if (!is_state_tag(state)) {
    throw Error(ErrorCode::kInvalidZone, "state tag '" + std::string(state) + "' for zone " +
                                             std::string(code));
  }
}

}  // namespace lid
