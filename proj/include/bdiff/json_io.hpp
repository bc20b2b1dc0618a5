#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bdiff/core.hpp"

namespace bdiff {

inline nlohmann::ordered_json to_json(const EditAction& a) {
  nlohmann::ordered_json j;
  j["type"] = std::string(to_string(a.kind));
  if (a.kind != EditKind::LA) j["src"] = a.src;
  if (a.kind != EditKind::LD) j["dst"] = a.dst;
  if (is_block_kind(a.kind)) {
    j["indentDelta"] = a.indent_delta;
    auto inner = nlohmann::ordered_json::array();
    for (auto [s, d] : a.inner_updates) inner.push_back({s, d});
    j["innerUpdates"] = std::move(inner);
  }
  return j;
}

inline nlohmann::ordered_json to_json(const EditScript& es) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& a : es.actions) arr.push_back(to_json(a));
  return arr;
}

inline std::string es_to_json_string(const EditScript& es, int indent = 2) {
  return to_json(es).dump(indent);
}

// Parses the script array. Line counts are not part of the format, so the
// caller supplies them. Replay text is not carried and comes back empty.
// Throws EsError on a malformed document.
template <typename Json>
EditScript es_from_json(const Json& j, int left_line_count, int right_line_count) {
  if (!j.is_array()) throw EsError("edit script JSON must be an array");
  EditScript es;
  es.left_line_count = left_line_count;
  es.right_line_count = right_line_count;
  try {
    for (const auto& item : j) {
      EditAction a;
      a.kind = parse_edit_kind(item.at("type").template get<std::string>());
      if (item.contains("src")) a.src = item.at("src").template get<std::vector<int>>();
      if (item.contains("dst")) a.dst = item.at("dst").template get<std::vector<int>>();
      if (item.contains("indentDelta")) a.indent_delta = item.at("indentDelta").template get<int>();
      if (item.contains("innerUpdates")) {
        for (const auto& p : item.at("innerUpdates")) {
          if (!p.is_array() || p.size() != 2) throw EsError("inner update must be a [src,dst] pair");
          a.inner_updates.emplace_back(p[0].template get<int>(), p[1].template get<int>());
        }
      }
      es.actions.push_back(std::move(a));
    }
  } catch (const std::invalid_argument& e) {
    throw EsError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw EsError(std::string("malformed edit script JSON: ") + e.what());
  }
  return es;
}

inline EditScript es_from_json_string(const std::string& text, int left_line_count,
                                      int right_line_count) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw EsError(std::string("malformed edit script JSON: ") + e.what());
  }
  return es_from_json(j, left_line_count, right_line_count);
}

}  // namespace bdiff
