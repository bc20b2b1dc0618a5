#pragma once

#include <charconv>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bdiff/core.hpp"

namespace bdiff {

inline std::vector<std::string> split_csv(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    out.emplace_back(trim(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

namespace detail {

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  const std::string_view v = trim(value);
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw std::invalid_argument("invalid value for " + std::string(key) + ": '" +
                                std::string(value) + "'");
  }
  return out;
}

}  // namespace detail

inline BaseAlgorithm parse_algorithm(std::string_view s) {
  if (s == "myers") return BaseAlgorithm::kMyers;
  if (s == "histogram") return BaseAlgorithm::kHistogram;
  throw std::invalid_argument("unknown algorithm: " + std::string(s));
}

inline KindSet parse_disabled(std::string_view csv) {
  KindSet set = KindSet::all();
  for (const auto& item : split_csv(csv)) {
    if (item.empty()) continue;
    set.erase(parse_edit_kind(item));
  }
  return set;
}

// Applies one setting given by its command-line flag name without dashes,
// e.g. "tab-size". Throws std::invalid_argument on unknown keys or values.
inline void apply_setting(Config& cfg, std::string_view key, std::string_view value) {
  if (key == "algorithm") {
    cfg.base_algorithm = parse_algorithm(trim(value));
  } else if (key == "tab-size") {
    cfg.tab_size = detail::parse_number<int>(key, value);
  } else if (key == "ctx-len") {
    cfg.ctx_len = detail::parse_number<int>(key, value);
  } else if (key == "line-weight") {
    cfg.line_wgt = detail::parse_number<double>(key, value);
  } else if (key == "sim-threshold") {
    cfg.sim_thres = detail::parse_number<double>(key, value);
  } else if (key == "block-line-sim") {
    cfg.block_line_sim_thres = detail::parse_number<double>(key, value);
  } else if (key == "max-split") {
    cfg.max_split_attempts = detail::parse_number<int>(key, value);
  } else if (key == "min-bm") {
    cfg.min_bm = detail::parse_number<int>(key, value);
  } else if (key == "min-bc") {
    cfg.min_bc = detail::parse_number<int>(key, value);
  } else if (key == "stop-words") {
    std::set<std::string> words{""};
    for (auto& w : split_csv(value)) words.insert(std::move(w));
    cfg.stop_words = std::move(words);
  } else if (key == "disable") {
    cfg.enabled = parse_disabled(value);
  } else {
    throw std::invalid_argument("unknown setting: " + std::string(key));
  }
}

// Reads "key = value" lines; blank lines and lines starting with '#' are
// ignored. Errors name the offending line.
inline void apply_config_text(Config& cfg, std::string_view text) {
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(start, nl - start));
    start = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    }
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace bdiff
