#pragma once

// Hand-rolled generators for property tests. Everything is driven by an
// explicit seed so failures can be replayed.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fuzz {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

using Text = std::vector<std::string>;

// Lines drawn from a small vocabulary so that equal lines recur, which is
// where diff algorithms disagree.
inline Text random_lines(Gen& g, int count, int vocabulary) {
  Text out;
  for (int i = 0; i < count; ++i) {
    const int v = g.uniform(0, vocabulary - 1);
    switch (v % 4) {
      case 0: out.push_back("line " + std::to_string(v)); break;
      case 1: out.push_back(""); break;
      case 2: out.push_back(std::string(static_cast<std::size_t>(v % 3) * 2, ' ') + "x" + std::to_string(v)); break;
      default: out.push_back("\tvalue = " + std::to_string(v) + ";"); break;
    }
  }
  return out;
}

// Point edits of `base`: deletions, insertions and replacements.
inline Text perturb(Gen& g, const Text& base, int vocabulary, double rate) {
  Text out;
  for (const auto& line : base) {
    if (g.chance(rate)) {
      const int op = g.uniform(0, 2);
      if (op == 0) continue;
      if (op == 1) {
        out.push_back(line);
        auto extra = random_lines(g, g.uniform(1, 3), vocabulary);
        out.insert(out.end(), extra.begin(), extra.end());
        continue;
      }
      out.push_back(random_lines(g, 1, vocabulary).front());
      continue;
    }
    out.push_back(line);
  }
  if (g.chance(rate)) {
    auto extra = random_lines(g, g.uniform(1, 3), vocabulary);
    out.insert(out.begin(), extra.begin(), extra.end());
  }
  return out;
}

inline std::pair<Text, Text> random_text_pair(Gen& g, int max_lines = 60) {
  const int vocab = g.uniform(2, 30);
  Text left = random_lines(g, g.uniform(0, max_lines), vocab);
  Text right = g.chance(0.1) ? random_lines(g, g.uniform(0, max_lines), vocab)
                             : perturb(g, left, vocab, g.real(0.05, 0.5));
  return {std::move(left), std::move(right)};
}

inline std::string identifier(Gen& g) {
  static const char* kWords[] = {"count", "total", "item", "node", "buffer", "index", "value",
                                 "result", "config", "state", "line", "offset", "name", "size"};
  std::string s = kWords[g.uniform(0, 13)];
  if (g.chance(0.4)) s += std::string("_") + kWords[g.uniform(0, 13)];
  return s;
}

inline std::string code_statement(Gen& g) {
  switch (g.uniform(0, 6)) {
    case 0: return identifier(g) + " = " + identifier(g) + " + " + std::to_string(g.uniform(0, 99)) + ";";
    case 1: return "if (" + identifier(g) + " > " + std::to_string(g.uniform(0, 9)) + ") {";
    case 2: return "}";
    case 3: return "return " + identifier(g) + ";";
    case 4: return identifier(g) + "." + identifier(g) + "(" + identifier(g) + ");";
    case 5: return "";
    default: return "for (int i = 0; i < " + identifier(g) + "; ++i) {";
  }
}

// Indented statements with mostly distinct lines.
inline Text code_lines(Gen& g, int count) {
  Text out;
  int depth = 1;
  for (int i = 0; i < count; ++i) {
    std::string s = code_statement(g);
    if (s == "}") depth = std::max(1, depth - 1);
    const bool tabs = g.chance(0.1);
    std::string prefix = s.empty() ? "" : (tabs ? std::string(static_cast<std::size_t>(depth), '\t')
                                                : std::string(static_cast<std::size_t>(depth) * 4, ' '));
    out.push_back(prefix + s);
    if (!s.empty() && s.back() == '{') depth = std::min(6, depth + 1);
  }
  return out;
}

// Block-level and line-level edits applied directly (not through the
// mutation harness): moves, copies, re-indents, splits, merges and updates.
inline Text code_edit(Gen& g, Text t) {
  const int edits = g.uniform(0, 6);
  for (int e = 0; e < edits && !t.empty(); ++e) {
    const int n = static_cast<int>(t.size());
    const int at = g.uniform(0, n - 1);
    switch (g.uniform(0, 6)) {
      case 0: {  // move a block, maybe re-indented
        const int len = std::min(n - at, g.uniform(2, 6));
        Text block(t.begin() + at, t.begin() + at + len);
        t.erase(t.begin() + at, t.begin() + at + len);
        if (g.chance(0.5)) {
          for (auto& l : block) {
            if (!l.empty()) l = "    " + l;
          }
        }
        const int to = g.uniform(0, static_cast<int>(t.size()));
        t.insert(t.begin() + to, block.begin(), block.end());
        break;
      }
      case 1: {  // copy a block
        const int len = std::min(n - at, g.uniform(2, 6));
        Text block(t.begin() + at, t.begin() + at + len);
        const int to = g.uniform(0, n);
        t.insert(t.begin() + to, block.begin(), block.end());
        break;
      }
      case 2: {  // split a line
        const std::string& l = t[static_cast<std::size_t>(at)];
        if (l.size() < 4) break;
        const auto cut = static_cast<std::size_t>(g.uniform(1, static_cast<int>(l.size()) - 1));
        std::string a = l.substr(0, cut), b = l.substr(cut);
        t[static_cast<std::size_t>(at)] = a;
        t.insert(t.begin() + at + 1, b);
        break;
      }
      case 3: {  // merge two lines
        if (at + 1 >= n) break;
        t[static_cast<std::size_t>(at)] += t[static_cast<std::size_t>(at) + 1];
        t.erase(t.begin() + at + 1);
        break;
      }
      case 4: {  // update a line
        std::string& l = t[static_cast<std::size_t>(at)];
        l += g.chance(0.5) ? " // " + identifier(g) : std::string("x");
        break;
      }
      case 5:
        t.erase(t.begin() + at);
        break;
      default:
        t.insert(t.begin() + at, code_statement(g));
        break;
    }
  }
  return t;
}

inline std::pair<Text, Text> code_pair(Gen& g, int max_lines = 80) {
  Text left = code_lines(g, g.uniform(1, max_lines));
  Text right = code_edit(g, left);
  return {std::move(left), std::move(right)};
}

}  // namespace fuzz
