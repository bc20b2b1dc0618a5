#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace bdiff {

// Unit-cost Levenshtein distance over bytes.
//
// Bit-parallel column recurrence (Myers 1999, blocked as in Hyyro 2003): the
// shorter string is the pattern, one 64-bit word per 64 pattern rows, and
// every text byte advances all words with the horizontal carry chained
// between them. O(ceil(m/64) * n) time.
inline std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0) return n;

  const std::size_t words = (m + 63) / 64;
  std::vector<std::uint64_t> peq(words * 256, 0);
  for (std::size_t i = 0; i < m; ++i) {
    auto c = static_cast<unsigned char>(a[i]);
    peq[(i / 64) * 256 + c] |= std::uint64_t{1} << (i % 64);
  }

  std::vector<std::uint64_t> pv(words, ~std::uint64_t{0});
  std::vector<std::uint64_t> mv(words, 0);
  const unsigned last_bit = static_cast<unsigned>((m - 1) % 64);
  constexpr unsigned kHigh = 63;
  std::size_t score = m;

  for (std::size_t j = 0; j < n; ++j) {
    auto c = static_cast<unsigned char>(b[j]);
    int hin = 1;  // top row: D[0][j] - D[0][j-1] = +1
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t eq = peq[w * 256 + c];
      const std::uint64_t p = pv[w];
      const std::uint64_t mm = mv[w];
      const std::uint64_t hin_neg = hin < 0 ? 1 : 0;
      const std::uint64_t hin_pos = hin > 0 ? 1 : 0;
      const std::uint64_t xv = eq | mm;
      eq |= hin_neg;
      const std::uint64_t xh = (((eq & p) + p) ^ p) | eq;
      std::uint64_t ph = mm | ~(xh | p);
      std::uint64_t mh = p & xh;
      const unsigned bit = (w + 1 == words) ? last_bit : kHigh;
      int hout = static_cast<int>((ph >> bit) & 1) - static_cast<int>((mh >> bit) & 1);
      ph = (ph << 1) | hin_pos;
      mh = (mh << 1) | hin_neg;
      pv[w] = mh | ~(xv | ph);
      mv[w] = ph & xv;
      hin = hout;
    }
    score = static_cast<std::size_t>(static_cast<long long>(score) + hin);
  }
  return score;
}

// 1 - D(a,b) / max(|a|,|b|); 1 when both are empty.
inline double levenshtein_ratio(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein_distance(a, b)) / static_cast<double>(longest);
}

// Byte-histogram signature folded into 64 buckets. The L1 gap between two
// signatures bounds the edit distance from below, which lets callers skip
// the full computation for pairs that cannot reach a similarity threshold.
class CharProfile {
 public:
  CharProfile() = default;
  explicit CharProfile(std::string_view s) : size_(s.size()) {
    for (char ch : s) ++counts_[static_cast<unsigned char>(ch) & 63u];
  }

  std::size_t size() const { return size_; }

  std::size_t distance_lower_bound(const CharProfile& o) const {
    std::size_t excess_a = 0, excess_b = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] > o.counts_[i]) {
        excess_a += counts_[i] - o.counts_[i];
      } else {
        excess_b += o.counts_[i] - counts_[i];
      }
    }
    return std::max(excess_a, excess_b);
  }

  // Upper bound on levenshtein_ratio for the underlying strings.
  double ratio_upper_bound(const CharProfile& o) const {
    const std::size_t longest = std::max(size_, o.size_);
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(distance_lower_bound(o)) / static_cast<double>(longest);
  }

 private:
  std::array<std::uint32_t, 64> counts_{};
  std::size_t size_ = 0;
};

}  // namespace bdiff
