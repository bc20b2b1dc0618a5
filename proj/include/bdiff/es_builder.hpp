#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "bdiff/base_diff.hpp"
#include "bdiff/block_analysis.hpp"
#include "bdiff/core.hpp"
#include "bdiff/hunk_analysis.hpp"
#include "bdiff/matching.hpp"

namespace bdiff {

namespace detail {

inline std::vector<int> range_lines(LineRange r) { return r.lines(); }

inline const std::string& right_text(const Lines& right, int line) {
  return right[static_cast<std::size_t>(line - 1)].raw;
}

}  // namespace detail

// Sorts actions by destination line; an LD sorts before the right line its
// deletion precedes in the base diff.
inline void sort_actions(EditScript& es, const BaseDiffResult& base) {
  const DiffTimeline timeline(base);
  auto key = [&](const EditAction& a) {
    if (a.kind == EditKind::LD) {
      const int pos = timeline.left_position(a.src.front());
      return std::make_tuple(timeline.right_lines_before(pos) + 1, 0, a.src.front());
    }
    const int s = a.src.empty() ? 0 : a.src.front();
    return std::make_tuple(a.dst.front(), 1, s);
  };
  std::stable_sort(es.actions.begin(), es.actions.end(),
                   [&](const EditAction& a, const EditAction& b) { return key(a) < key(b); });
}

// Turns committed split/merge actions and the selected mappings into an edit
// script. Deleted lines not consumed by a non-copy source become LDs and
// added lines without a producer become LAs. Throws EsError when a line is
// claimed twice.
inline EditScript deduce_es(std::span<const SplitMergeAction> split_merges,
                            std::span<const CandidateMapping> mappings,
                            const BaseDiffResult& base, const Lines& left, const Lines& right) {
  EditScript es;
  es.left_line_count = static_cast<int>(left.size());
  es.right_line_count = static_cast<int>(right.size());
  std::vector<char> left_used(left.size() + 1, 0);
  std::vector<char> right_used(right.size() + 1, 0);
  auto claim_left = [&](int l) {
    if (l < 1 || l > es.left_line_count) {
      throw EsError("left line " + std::to_string(l) + " out of range");
    }
    if (left_used[static_cast<std::size_t>(l)]) {
      throw EsError("left line " + std::to_string(l) + " claimed twice");
    }
    left_used[static_cast<std::size_t>(l)] = 1;
  };
  auto claim_right = [&](int r) {
    if (r < 1 || r > es.right_line_count) {
      throw EsError("right line " + std::to_string(r) + " out of range");
    }
    if (right_used[static_cast<std::size_t>(r)]) {
      throw EsError("right line " + std::to_string(r) + " claimed twice");
    }
    right_used[static_cast<std::size_t>(r)] = 1;
  };

  for (const auto& sm : split_merges) {
    EditAction a;
    a.kind = sm.kind;
    a.src = sm.src;
    a.dst = sm.dst;
    for (int l : a.src) claim_left(l);
    for (int r : a.dst) claim_right(r);
    if (a.kind == EditKind::LS) {
      for (int r : a.dst) a.text.push_back(detail::right_text(right, r));
    }
    es.actions.push_back(std::move(a));
  }

  for (const auto& m : mappings) {
    EditAction a;
    if (const auto* lu = std::get_if<LuCandidate>(&m)) {
      a.kind = EditKind::LU;
      a.src = {lu->src_line};
      a.dst = {lu->dst_line};
      a.text = {detail::right_text(right, lu->dst_line)};
    } else {
      const auto& b = std::get<BlockCandidate>(m);
      a.kind = b.kind;
      a.src = detail::range_lines(b.src);
      a.dst = detail::range_lines(b.dst);
      a.indent_delta = b.indent_delta;
      a.inner_updates = b.inner_updates;
      std::sort(a.inner_updates.begin(), a.inner_updates.end());
      for (auto [s, d] : a.inner_updates) a.text.push_back(detail::right_text(right, d));
    }
    if (a.kind != EditKind::BC) {
      for (int l : a.src) claim_left(l);
    }
    for (int r : a.dst) claim_right(r);
    es.actions.push_back(std::move(a));
  }

  for (int l : base.deleted) {
    if (left_used[static_cast<std::size_t>(l)]) continue;
    EditAction a;
    a.kind = EditKind::LD;
    a.src = {l};
    es.actions.push_back(std::move(a));
  }
  for (int r : base.added) {
    if (right_used[static_cast<std::size_t>(r)]) continue;
    EditAction a;
    a.kind = EditKind::LA;
    a.dst = {r};
    a.text = {detail::right_text(right, r)};
    es.actions.push_back(std::move(a));
  }
  sort_actions(es, base);
  return es;
}

// Rebuilds the right version from the left version and a script. Each right
// line comes from the action that owns it; lines owned by no action are
// filled, in order, from the left lines that no non-copy action consumed.
inline std::vector<std::string> apply_es(std::span<const std::string> left, const EditScript& es,
                                         int tab_size = 4) {
  if (es.left_line_count != static_cast<int>(left.size())) {
    throw EsError("script expects " + std::to_string(es.left_line_count) +
                  " left lines but the input has " + std::to_string(left.size()));
  }
  validate_es(es);
  const auto nr = static_cast<std::size_t>(es.right_line_count);
  std::vector<std::string> out(nr);
  std::vector<char> filled(nr + 1, 0);
  std::vector<char> consumed(left.size() + 1, 0);
  auto src_text = [&](int l) -> const std::string& { return left[static_cast<std::size_t>(l - 1)]; };
  auto put = [&](int r, std::string s) {
    out[static_cast<std::size_t>(r - 1)] = std::move(s);
    filled[static_cast<std::size_t>(r)] = 1;
  };
  auto need_text = [](const EditAction& a, std::size_t n) {
    if (a.text.size() != n) {
      throw EsError(std::string(to_string(a.kind)) + " action at right line " +
                    std::to_string(a.dst.empty() ? 0 : a.dst.front()) +
                    " lacks its replacement text");
    }
  };

  for (const auto& a : es.actions) {
    if (a.kind != EditKind::BC) {
      for (int l : a.src) consumed[static_cast<std::size_t>(l)] = 1;
    }
    switch (a.kind) {
      case EditKind::LD:
        break;
      case EditKind::LA:
      case EditKind::LU:
        need_text(a, a.dst.size());
        for (std::size_t i = 0; i < a.dst.size(); ++i) put(a.dst[i], a.text[i]);
        break;
      case EditKind::LS: {
        need_text(a, a.dst.size());
        std::string joined;
        for (const auto& t : a.text) {
          if (!is_blank(t)) joined += t;
        }
        if (joined != src_text(a.src.front())) {
          throw EsError("LS fragments do not concatenate to left line " +
                        std::to_string(a.src.front()));
        }
        for (std::size_t i = 0; i < a.dst.size(); ++i) put(a.dst[i], a.text[i]);
        break;
      }
      case EditKind::LM: {
        std::string joined;
        for (int l : a.src) {
          if (!is_blank(src_text(l))) joined += src_text(l);
        }
        put(a.dst.front(), std::move(joined));
        break;
      }
      case EditKind::BM:
      case EditKind::BC: {
        need_text(a, a.inner_updates.size());
        for (std::size_t i = 0; i < a.src.size(); ++i) {
          const int s = a.src[i];
          const int d = a.dst[i];
          auto it = std::find(a.inner_updates.begin(), a.inner_updates.end(), std::pair(s, d));
          if (it != a.inner_updates.end()) {
            put(d, a.text[static_cast<std::size_t>(it - a.inner_updates.begin())]);
          } else {
            put(d, reindent(src_text(s), a.indent_delta, tab_size));
          }
        }
        break;
      }
    }
  }

  std::size_t next_left = 1;
  for (std::size_t r = 1; r <= nr; ++r) {
    if (filled[r]) continue;
    while (next_left <= left.size() && consumed[next_left]) ++next_left;
    if (next_left > left.size()) {
      throw EsError("right line " + std::to_string(r) + " has no producer");
    }
    out[r - 1] = left[next_left - 1];
    ++next_left;
  }
  while (next_left <= left.size() && consumed[next_left]) ++next_left;
  if (next_left <= left.size()) {
    throw EsError("left line " + std::to_string(next_left) +
                  " is neither consumed nor carried into the right version");
  }
  return out;
}

namespace detail {

inline std::string join_numbers(const std::vector<int>& v) {
  if (v.empty()) return "-";
  if (v.size() == 1) return std::to_string(v.front());
  return std::to_string(v.front()) + "-" + std::to_string(v.back());
}

}  // namespace detail

// One action per line: LD and LA read like a unified diff, the others list
// their line ranges and any indentation shift or inner updates.
inline std::string render_text(const EditScript& es, std::span<const std::string> left) {
  std::string out;
  for (const auto& a : es.actions) {
    switch (a.kind) {
      case EditKind::LD:
        out += "-" + std::to_string(a.src.front()) + "\t" +
               left[static_cast<std::size_t>(a.src.front() - 1)] + "\n";
        break;
      case EditKind::LA:
        out += "+" + std::to_string(a.dst.front()) + "\t" + (a.text.empty() ? "" : a.text.front()) +
               "\n";
        break;
      default: {
        out += std::string(to_string(a.kind)) + " " + detail::join_numbers(a.src) + " -> " +
               detail::join_numbers(a.dst);
        if (a.indent_delta != 0) {
          out += " indent " + std::string(a.indent_delta > 0 ? "+" : "") +
                 std::to_string(a.indent_delta);
        }
        for (auto [s, d] : a.inner_updates) {
          out += " ~" + std::to_string(s) + ":" + std::to_string(d);
        }
        if (a.kind == EditKind::LU && !a.text.empty()) out += "\t" + a.text.front();
        out += "\n";
        break;
      }
    }
  }
  return out;
}

}  // namespace bdiff
