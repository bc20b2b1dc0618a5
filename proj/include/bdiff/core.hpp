#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bdiff {

// One physical line of a file version. Line numbers are 1-based.
struct SourceLine {
  int index = 0;
  std::string raw;
  int indent = 0;    // columns of leading whitespace after tab expansion
  std::string body;  // raw without its leading whitespace
};

using Lines = std::vector<SourceLine>;

enum class EditKind : std::uint8_t { LD, LA, LU, LS, LM, BM, BC };

inline constexpr std::array<EditKind, 7> kAllEditKinds = {
    EditKind::LD, EditKind::LA, EditKind::LU, EditKind::LS,
    EditKind::LM, EditKind::BM, EditKind::BC};

constexpr std::string_view to_string(EditKind k) {
  switch (k) {
    case EditKind::LD: return "LD";
    case EditKind::LA: return "LA";
    case EditKind::LU: return "LU";
    case EditKind::LS: return "LS";
    case EditKind::LM: return "LM";
    case EditKind::BM: return "BM";
    case EditKind::BC: return "BC";
  }
  return "?";
}

inline EditKind parse_edit_kind(std::string_view s) {
  for (EditKind k : kAllEditKinds) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown edit action kind: " + std::string(s));
}

constexpr bool is_block_kind(EditKind k) {
  return k == EditKind::BM || k == EditKind::BC;
}

// Set of enabled edit-action kinds.
class KindSet {
 public:
  constexpr KindSet() = default;
  static constexpr KindSet all() {
    KindSet s;
    s.bits_ = 0x7f;
    return s;
  }
  constexpr bool contains(EditKind k) const {
    return (bits_ >> static_cast<unsigned>(k)) & 1u;
  }
  constexpr void insert(EditKind k) { bits_ |= 1u << static_cast<unsigned>(k); }
  constexpr void erase(EditKind k) { bits_ &= ~(1u << static_cast<unsigned>(k)); }
  constexpr bool operator==(const KindSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

enum class BaseAlgorithm : std::uint8_t { kMyers, kHistogram };

inline std::set<std::string> default_stop_words() {
  return {"", "{", "}", "(", ")", ";", "[", "]", "{}", "();"};
}

struct Config {
  int tab_size = 4;
  int ctx_len = 4;
  double line_wgt = 0.6;
  double sim_thres = 0.5;
  double block_line_sim_thres = 0.6;
  int max_split_attempts = 8;
  int min_bm = 2;
  int min_bc = 2;
  std::set<std::string> stop_words = default_stop_words();
  KindSet enabled = KindSet::all();
  BaseAlgorithm base_algorithm = BaseAlgorithm::kHistogram;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const {
    auto fail = [](const std::string& what) {
      throw std::invalid_argument("invalid configuration: " + what);
    };
    if (tab_size < 1) fail("tab size must be positive");
    if (ctx_len < 0) fail("context length must be non-negative");
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(line_wgt)) fail("line weight must lie in [0,1]");
    if (!unit(sim_thres)) fail("similarity threshold must lie in [0,1]");
    if (!unit(block_line_sim_thres)) fail("block line similarity must lie in [0,1]");
    if (max_split_attempts < 1) fail("max split attempts must be positive");
    if (min_bm < 2) fail("minimal BM length must be at least 2");
    if (min_bc < 2) fail("minimal BC length must be at least 2");
    if (!enabled.contains(EditKind::LD) || !enabled.contains(EditKind::LA)) {
      fail("LD and LA cannot be disabled");
    }
  }
};

// Leading-whitespace width under tab stops of `tab_size`, and the remainder.
inline std::pair<int, std::string> expand_indent(std::string_view raw, int tab_size) {
  int col = 0;
  std::size_t i = 0;
  for (; i < raw.size(); ++i) {
    if (raw[i] == ' ') {
      ++col;
    } else if (raw[i] == '\t') {
      col += tab_size - col % tab_size;
    } else {
      break;
    }
  }
  return {col, std::string(raw.substr(i))};
}

inline bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
  });
}

inline std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Shifts the indentation of `raw` by `delta` columns. Blank lines are
// returned unchanged. A pure-tab prefix whose target width is a multiple of
// the tab size stays tab-indented; every other prefix is rendered as spaces.
inline std::string reindent(std::string_view raw, int delta, int tab_size) {
  if (is_blank(raw)) return std::string(raw);
  std::size_t ws = raw.find_first_not_of(" \t");
  if (ws == std::string_view::npos) ws = raw.size();
  std::string_view prefix = raw.substr(0, ws);
  if (delta == 0) return std::string(raw);
  auto [width, body] = expand_indent(raw, tab_size);
  int target = std::max(0, width + delta);
  bool tabs = !prefix.empty() &&
              prefix.find_first_not_of('\t') == std::string_view::npos &&
              target % tab_size == 0;
  std::string out = tabs ? std::string(static_cast<std::size_t>(target / tab_size), '\t')
                         : std::string(static_cast<std::size_t>(target), ' ');
  out += body;
  return out;
}

inline Lines make_lines(std::span<const std::string> raw, int tab_size) {
  Lines out;
  out.reserve(raw.size());
  int index = 1;
  for (const auto& r : raw) {
    auto [indent, body] = expand_indent(r, tab_size);
    out.push_back(SourceLine{index++, r, indent, std::move(body)});
  }
  return out;
}

// A file split into lines, with enough terminator detail to render it back.
struct TextFile {
  std::vector<std::string> lines;
  std::string eol = "\n";
  bool final_newline = true;
};

inline TextFile split_text(std::string_view text) {
  TextFile f;
  std::size_t crlf = 0, lf = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      f.lines.emplace_back(text.substr(start));
      f.final_newline = false;
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
      ++crlf;
    } else {
      ++lf;
    }
    f.lines.emplace_back(line);
    start = nl + 1;
  }
  if (text.empty()) f.final_newline = false;
  f.eol = crlf > lf ? "\r\n" : "\n";
  return f;
}

inline std::string join_text(const TextFile& f) {
  std::string out;
  for (std::size_t i = 0; i < f.lines.size(); ++i) {
    out += f.lines[i];
    if (i + 1 < f.lines.size() || f.final_newline) out += f.eol;
  }
  return out;
}

// One typed edit action. `src`/`dst` hold 1-based line numbers in the left
// and right versions. `text` carries replay payload that line numbers alone
// cannot express: the new line for LA/LU, each destination line for LS, and
// one entry per inner update for BM/BC. It is not part of the JSON schema.
struct EditAction {
  EditKind kind = EditKind::LD;
  std::vector<int> src;
  std::vector<int> dst;
  int indent_delta = 0;
  std::vector<std::pair<int, int>> inner_updates;
  std::vector<std::string> text;

  bool operator==(const EditAction&) const = default;
};

struct EditScript {
  std::vector<EditAction> actions;
  int left_line_count = 0;
  int right_line_count = 0;

  bool operator==(const EditScript&) const = default;
};

// Number of actions plus the LUs nested inside block actions.
inline std::size_t es_size(const EditScript& es) {
  std::size_t n = es.actions.size();
  for (const auto& a : es.actions) n += a.inner_updates.size();
  return n;
}

class EsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool contiguous(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] != v[i - 1] + 1) return false;
  }
  return true;
}

}  // namespace detail

// Checks the shape of every action and the ownership rules: a right line is
// the destination of at most one action, and a left line is the source of
// at most one action other than BC. Throws EsError naming the first problem.
inline void validate_es(const EditScript& es) {
  std::vector<int> left_owner(static_cast<std::size_t>(es.left_line_count) + 1, -1);
  std::vector<int> right_owner(static_cast<std::size_t>(es.right_line_count) + 1, -1);
  auto where = [](std::size_t i, const EditAction& a) {
    return "action #" + std::to_string(i) + " (" + std::string(to_string(a.kind)) + ")";
  };
  for (std::size_t i = 0; i < es.actions.size(); ++i) {
    const EditAction& a = es.actions[i];
    const std::size_t ns = a.src.size(), nd = a.dst.size();
    bool ok = true;
    switch (a.kind) {
      case EditKind::LD: ok = ns >= 1 && nd == 0; break;
      case EditKind::LA: ok = ns == 0 && nd >= 1; break;
      case EditKind::LU: ok = ns == 1 && nd == 1; break;
      case EditKind::LS: ok = ns == 1 && nd >= 2; break;
      case EditKind::LM: ok = ns >= 2 && nd == 1; break;
      case EditKind::BM:
      case EditKind::BC: ok = ns == nd && ns >= 2; break;
    }
    if (!ok) throw EsError(where(i, a) + ": malformed line ranges");
    if (!detail::contiguous(a.src) || !detail::contiguous(a.dst)) {
      throw EsError(where(i, a) + ": line ranges must be contiguous");
    }
    if (!is_block_kind(a.kind) && (!a.inner_updates.empty() || a.indent_delta != 0)) {
      throw EsError(where(i, a) + ": only block actions carry inner updates or indentation");
    }
    for (auto [s, d] : a.inner_updates) {
      auto it = std::find(a.src.begin(), a.src.end(), s);
      if (it == a.src.end() || a.dst[static_cast<std::size_t>(it - a.src.begin())] != d) {
        throw EsError(where(i, a) + ": inner update (" + std::to_string(s) + "," +
                      std::to_string(d) + ") is not a positional pair of the block");
      }
    }
    for (int s : a.src) {
      if (s < 1 || s > es.left_line_count) {
        throw EsError(where(i, a) + ": left line " + std::to_string(s) + " out of range");
      }
      if (a.kind == EditKind::BC) continue;
      auto& owner = left_owner[static_cast<std::size_t>(s)];
      if (owner >= 0) {
        throw EsError("left line " + std::to_string(s) + " claimed by " +
                      where(static_cast<std::size_t>(owner), es.actions[static_cast<std::size_t>(owner)]) +
                      " and " + where(i, a));
      }
      owner = static_cast<int>(i);
    }
    for (int d : a.dst) {
      if (d < 1 || d > es.right_line_count) {
        throw EsError(where(i, a) + ": right line " + std::to_string(d) + " out of range");
      }
      auto& owner = right_owner[static_cast<std::size_t>(d)];
      if (owner >= 0) {
        throw EsError("right line " + std::to_string(d) + " claimed by " +
                      where(static_cast<std::size_t>(owner), es.actions[static_cast<std::size_t>(owner)]) +
                      " and " + where(i, a));
      }
      owner = static_cast<int>(i);
    }
  }
}

}  // namespace bdiff
