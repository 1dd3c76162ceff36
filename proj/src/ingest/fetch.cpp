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

#include "lid/ingest/fetch.hpp"

#include <set>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "lid/core/error.hpp"
#include "lid/spatial/geometry.hpp"
#include "lid/util/io.hpp"

namespace lid::ingest {

using nlohmann::json;

namespace {

std::string tag_filter(PoiKind kind) {
  switch (kind) {
    case PoiKind::kSchool: return R"(["amenity"="school"])";
    case PoiKind::kUniversity: return R"(["amenity"="university"])";
    case PoiKind::kCafe: return R"(["amenity"="cafe"])";
    case PoiKind::kPark: return R"(["leisure"="park"])";
    case PoiKind::kSquare: return R"(["place"="square"])";
    case PoiKind::kBusStop: return R"(["highway"="bus_stop"])";
    case PoiKind::kInnovationSpace: return "";
  }
  return "";
}

std::string quote_regex(const std::string& keyword) {
  std::string out;
  for (char c : keyword) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string overpass_query(const BoundingBox& bbox, PoiKind kind,
                           const std::optional<std::string>& keyword) {
  std::string filter = keyword ? "[\"name\"~\"" + quote_regex(*keyword) + "\",i]" : tag_filter(kind);
  if (filter.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "innovation-space queries need a keyword");
  }
  const std::string box = "(" + format_exact(bbox.south) + "," + format_exact(bbox.west) + "," +
                          format_exact(bbox.north) + "," + format_exact(bbox.east) + ")";
  std::string q = "[out:json][timeout:180];\n(\n";
  for (const char* type : {"node", "way", "relation"}) q += std::string("  ") + type + filter + box + ";\n";
  q += ");\nout geom;\n";
  return q;
}

OverpassResult parse_overpass(const std::string& body, PoiKind kind,
                              const std::optional<std::string>& keyword) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRow, std::string("overpass body: ") + e.what());
  }
  OverpassResult out;
  if (!doc.contains("elements")) return out;
  for (const auto& el : doc.at("elements")) {
    const std::string type = el.value("type", "");
    const std::string id = type + "/" + (el.contains("id") ? el.at("id").dump() : "?");
    PoiRecord poi;
    poi.kind = kind;
    if (el.contains("tags")) poi.name = el.at("tags").value("name", "");
    if (keyword) poi.matched_keyword = *keyword;

    std::optional<Point> where;
    if (el.contains("lat") && el.contains("lon")) {
      where = Point(el.at("lon").get<double>(), el.at("lat").get<double>());
    } else if (el.contains("geometry") && el.at("geometry").is_array() && !el.at("geometry").empty()) {
      Ring ring;
      for (const auto& v : el.at("geometry")) {
        ring.vertices.emplace_back(v.at("lon").get<double>(), v.at("lat").get<double>());
      }
      const bool closed = ring.vertices.size() >= 4 && ring.vertices.front() == ring.vertices.back();
      const std::size_t distinct = closed ? ring.vertices.size() - 1 : ring.vertices.size();
      Point sum = Point::Zero();
      for (std::size_t i = 0; i < distinct; ++i) sum += ring.vertices[i];
      where = sum / static_cast<double>(distinct);
      if (closed) {
        ZonePolygon shape;
        shape.rings.push_back(std::move(ring));
        poi.area_m2 = spatial::polygon_area_m2(shape);
      }
    } else if (el.contains("bounds")) {
      const auto& b = el.at("bounds");
      where = Point((b.at("minlon").get<double>() + b.at("maxlon").get<double>()) / 2.0,
                    (b.at("minlat").get<double>() + b.at("maxlat").get<double>()) / 2.0);
    }
    if (!where || !where->allFinite()) {
      ++out.skipped;
      continue;
    }
    poi.location = *where;
    if (has_area(kind) != poi.area_m2.has_value()) {
      if (has_area(kind)) {
        ++out.skipped;
        continue;
      }
      poi.area_m2.reset();
    }
    out.records.push_back(std::move(poi));
    out.element_ids.push_back(id);
  }
  return out;
}

HttplibTransport::HttplibTransport(std::string url, int timeout_seconds)
    : url_(std::move(url)), timeout_seconds_(timeout_seconds) {}

std::string HttplibTransport::post(const std::string& query) {
  const auto scheme_end = url_.find("://");
  const auto path_start = url_.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  const std::string host = url_.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url_.substr(path_start);

  httplib::Client client(host);
  client.set_connection_timeout(timeout_seconds_);
  client.set_read_timeout(timeout_seconds_);
  httplib::Params params{{"data", query}};
  auto res = client.Post(path, params);
  if (!res) {
    throw Error(ErrorCode::kNetworkUnavailable, url_ + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kNetworkUnavailable, url_ + ": HTTP " + std::to_string(res->status));
  }
  return res->body;
}

std::string OfflineTransport::post(const std::string&) {
  throw Error(ErrorCode::kNetworkUnavailable, "cache miss while offline");
}

PoiFetchClient::PoiFetchClient(std::filesystem::path cache_dir,
                               std::shared_ptr<HttpTransport> transport)
    : cache_dir_(std::move(cache_dir)),
      transport_(transport ? std::move(transport) : std::make_shared<OfflineTransport>()) {}

std::string PoiFetchClient::cache_key(const std::string& query) { return sha256_hex(query); }

std::string PoiFetchClient::body_for(const std::string& query) {
  const auto key = cache_key(query);
  const auto body_path = cache_dir_ / (key + ".body");
  const auto meta_path = cache_dir_ / (key + ".meta.json");

  if (std::filesystem::exists(body_path)) {
    if (!std::filesystem::exists(meta_path)) {
      throw Error(ErrorCode::kCacheCorrupt, key + ": metadata sidecar missing");
    }
    json meta;
    try {
      meta = json::parse(read_file(meta_path));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kCacheCorrupt, key + ": " + e.what());
    }
    auto body = read_file(body_path);
    if (meta.value("body_sha256", "") != sha256_hex(body)) {
      throw Error(ErrorCode::kCacheCorrupt, key + ": body digest mismatch");
    }
    ++cache_hits_;
    return body;
  }

  std::lock_guard lock(write_mutex_);
  ++network_requests_;
  auto body = transport_->post(query);
  json meta;
  meta["query"] = query;
  meta["query_sha256"] = key;
  meta["endpoint"] = transport_->endpoint();
  meta["body_sha256"] = sha256_hex(body);
  meta["body_bytes"] = body.size();
  write_file(body_path, body);
  write_file(meta_path, meta.dump(2) + "\n");
  return body;
}

std::vector<PoiRecord> PoiFetchClient::fetch(const QuerySpec& spec) {
  std::vector<PoiRecord> out;
  if (spec.kind != PoiKind::kInnovationSpace) {
    const auto body = body_for(overpass_query(spec.bbox, spec.kind));
    return parse_overpass(body, spec.kind).records;
  }
  // An element matching several keywords is credited to the first one.
  std::set<std::string> seen;
  const auto& keywords = spec.keywords.empty() ? innovation_keywords() : spec.keywords;
  for (const auto& kw : keywords) {
    const auto body = body_for(overpass_query(spec.bbox, spec.kind, kw));
    auto parsed = parse_overpass(body, spec.kind, kw);
    for (std::size_t i = 0; i < parsed.records.size(); ++i) {
      if (seen.insert(parsed.element_ids[i]).second) out.push_back(std::move(parsed.records[i]));
    }
  }
  return out;
}

std::vector<PoiRecord> fetch_poi_live(const QuerySpec& spec, const std::filesystem::path& cache_dir,
                                      std::shared_ptr<HttpTransport> transport) {
  PoiFetchClient client(cache_dir, std::move(transport));
  return client.fetch(spec);
}

}  // namespace lid::ingest
