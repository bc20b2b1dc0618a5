#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bdiff/core.hpp"

namespace bdiff {

inline std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace detail {

inline constexpr std::string_view kHtmlStyle = R"(
body { margin: 0; font-family: sans-serif; font-size: 13px; }
.layout { display: flex; align-items: flex-start; }
.sidebar { width: 260px; padding: 8px; position: sticky; top: 0; max-height: 100vh; overflow: auto;
  border-right: 1px solid #ccc; }
.sidebar ol { padding-left: 20px; }
.panes { display: flex; flex: 1; }
.pane { flex: 1; border-collapse: collapse; font-family: monospace; white-space: pre; }
.pane td { padding: 0 6px; vertical-align: top; }
.pane td.ln { color: #888; text-align: right; user-select: none; }
.k-LD { background: #fdd; }
.k-LA { background: #dfd; }
.k-LU { background: #ffe9b3; }
.k-LS, .k-LM { background: #e6d9ff; }
.k-BM { background: #cfe5ff; }
.k-BC { background: #d2f4f0; }
.bc-src td.ln { border-left: 3px solid #2a9d8f; }
a.pair { text-decoration: none; font-weight: bold; margin-right: 4px; }
)";

inline std::string range_label(const std::vector<int>& v) {
  if (v.empty()) return "";
  if (v.size() == 1) return std::to_string(v.front());
  return std::to_string(v.front()) + "-" + std::to_string(v.back());
}

struct PaneLine {
  std::vector<std::string> classes;
  std::string anchors;  // markup placed before the line text
};

inline void add_class(PaneLine& p, std::string c) {
  for (const auto& x : p.classes) {
    if (x == c) return;
  }
  p.classes.push_back(std::move(c));
}

inline void render_pane(std::string& out, std::string_view side,
                        std::span<const std::string> lines, const std::vector<PaneLine>& meta) {
  out += "<table class=\"pane ";
  out += side;
  out += "\">\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const PaneLine& m = meta[i];
    out += "<tr id=\"";
    out += side == "left" ? "L" : "R";
    out += std::to_string(i + 1) + "\"";
    if (!m.classes.empty()) {
      out += " class=\"";
      for (std::size_t k = 0; k < m.classes.size(); ++k) {
        if (k) out += ' ';
        out += m.classes[k];
      }
      out += "\"";
    }
    out += "><td class=\"ln\">" + std::to_string(i + 1) + "</td><td class=\"code\">";
    out += m.anchors;
    out += html_escape(lines[i]);
    out += "</td></tr>\n";
  }
  out += "</table>\n";
}

}  // namespace detail

// Static side-by-side page: left and right panes with per-kind colouring and
// a sidebar listing every action. Each block move or copy gets one anchor on
// its first source line and one on its first destination line, each linking
// to the other; the sidebar entry links to both.
inline std::string render_html(const EditScript& es, std::span<const std::string> left,
                               std::span<const std::string> right,
                               std::string_view title = "bdiff") {
  std::vector<detail::PaneLine> lmeta(left.size()), rmeta(right.size());
  std::string sidebar;
  for (std::size_t n = 0; n < es.actions.size(); ++n) {
    const EditAction& a = es.actions[n];
    const std::string kind(to_string(a.kind));
    const std::string cls = "k-" + kind;
    const std::string entry = "ea-" + std::to_string(n + 1);
    for (int s : a.src) {
      auto& m = lmeta[static_cast<std::size_t>(s - 1)];
      detail::add_class(m, a.kind == EditKind::BC ? "bc-src" : cls);
    }
    for (int d : a.dst) detail::add_class(rmeta[static_cast<std::size_t>(d - 1)], cls);

    sidebar += "<li id=\"" + entry + "\" class=\"" + cls + "\">" + kind + " ";
    if (is_block_kind(a.kind)) {
      const std::string src_id = "a" + std::to_string(n + 1) + "-src";
      const std::string dst_id = "a" + std::to_string(n + 1) + "-dst";
      lmeta[static_cast<std::size_t>(a.src.front() - 1)].anchors +=
          "<a class=\"pair\" id=\"" + src_id + "\" href=\"#" + dst_id + "\" title=\"" + kind +
          " #" + std::to_string(n + 1) + "\">&#8594;</a>";
      rmeta[static_cast<std::size_t>(a.dst.front() - 1)].anchors +=
          "<a class=\"pair\" id=\"" + dst_id + "\" href=\"#" + src_id + "\" title=\"" + kind +
          " #" + std::to_string(n + 1) + "\">&#8592;</a>";
      sidebar += "<a href=\"#" + src_id + "\">" + detail::range_label(a.src) + "</a> &#8594; <a href=\"#" +
                 dst_id + "\">" + detail::range_label(a.dst) + "</a>";
      if (a.indent_delta != 0) {
        sidebar += " (indent " + std::string(a.indent_delta > 0 ? "+" : "") +
                   std::to_string(a.indent_delta) + ")";
      }
      if (!a.inner_updates.empty()) {
        sidebar += " (" + std::to_string(a.inner_updates.size()) + " updated)";
      }
    } else {
      if (!a.src.empty()) {
        sidebar += "<a href=\"#L" + std::to_string(a.src.front()) + "\">" +
                   detail::range_label(a.src) + "</a>";
      }
      if (!a.src.empty() && !a.dst.empty()) sidebar += " &#8594; ";
      if (!a.dst.empty()) {
        sidebar += "<a href=\"#R" + std::to_string(a.dst.front()) + "\">" +
                   detail::range_label(a.dst) + "</a>";
      }
    }
    sidebar += "</li>\n";
  }

  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>";
  out += html_escape(title);
  out += "</title>\n<style>";
  out += detail::kHtmlStyle;
  out += "</style>\n</head>\n<body>\n<div class=\"layout\">\n<nav class=\"sidebar\">\n<h2>Edit actions (";
  out += std::to_string(es.actions.size());
  out += ")</h2>\n<ol>\n";
  out += sidebar;
  out += "</ol>\n</nav>\n<main class=\"panes\">\n";
  detail::render_pane(out, "left", left, lmeta);
  detail::render_pane(out, "right", right, rmeta);
  out += "</main>\n</div>\n</body>\n</html>\n";
  return out;
}

}  // namespace bdiff
