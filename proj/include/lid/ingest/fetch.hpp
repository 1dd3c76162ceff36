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

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lid/ingest/records.hpp"

namespace lid::ingest {

struct BoundingBox {
  double south = 0.0;
  double west = 0.0;
  double north = 0.0;
  double east = 0.0;
};

/// One POI kind over one box. Innovation spaces are searched by name, one
/// query per keyword; other kinds ignore `keywords`.
struct QuerySpec {
  BoundingBox bbox;
  PoiKind kind = PoiKind::kCafe;
  std::vector<std::string> keywords;
};

/// Overpass QL text for `kind`, or for a name search when `keyword` is set.
std::string overpass_query(const BoundingBox& bbox, PoiKind kind,
                           const std::optional<std::string>& keyword = std::nullopt);

struct OverpassResult {
  std::vector<PoiRecord> records;
  std::vector<std::string> element_ids;  // "node/123", aligned to records
  std::size_t skipped = 0;               // unusable elements
};

/// Elements of an Overpass JSON body. Ways carrying `geometry` get a
/// computed area; parks and squares without one are skipped.
OverpassResult parse_overpass(const std::string& body, PoiKind kind,
                              const std::optional<std::string>& keyword = std::nullopt);

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  /// POSTs the query and returns the response body; throws on failure.
  virtual std::string post(const std::string& query) = 0;
  virtual std::string endpoint() const = 0;
};

/// Talks to an Overpass-style endpoint such as
/// "https://overpass-api.de/api/interpreter".
class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(std::string url, int timeout_seconds = 180);
  std::string post(const std::string& query) override;
  std::string endpoint() const override { return url_; }

 private:
  std::string url_;
  int timeout_seconds_;
};

/// Refuses every request with NetworkUnavailable.
class OfflineTransport final : public HttpTransport {
 public:
  std::string post(const std::string& query) override;
  std::string endpoint() const override { return "offline"; }
};

/// Record-and-replay client. Each query body is stored verbatim as
/// <digest>.body next to <digest>.meta.json; the network is touched only on
/// a cache miss. Writes are serialized within a client.
class PoiFetchClient {
 public:
  PoiFetchClient(std::filesystem::path cache_dir, std::shared_ptr<HttpTransport> transport);

  std::vector<PoiRecord> fetch(const QuerySpec& spec);

  /// Cached or freshly fetched body for one query text.
  std::string body_for(const std::string& query);

  std::size_t network_requests() const noexcept { return network_requests_; }
  std::size_t cache_hits() const noexcept { return cache_hits_; }

  static std::string cache_key(const std::string& query);

 private:
  std::filesystem::path cache_dir_;
  std::shared_ptr<HttpTransport> transport_;
  std::mutex write_mutex_;
  std::size_t network_requests_ = 0;
  std::size_t cache_hits_ = 0;
};

/// Convenience wrapper: offline unless a transport is supplied.
std::vector<PoiRecord> fetch_poi_live(const QuerySpec& spec, const std::filesystem::path& cache_dir,
                                      std::shared_ptr<HttpTransport> transport = nullptr);

}  // namespace lid::ingest
