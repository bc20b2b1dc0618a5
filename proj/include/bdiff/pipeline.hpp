#pragma once

#include <span>
#include <string>
#include <vector>

#include "bdiff/base_diff.hpp"
#include "bdiff/block_analysis.hpp"
#include "bdiff/core.hpp"
#include "bdiff/es_builder.hpp"
#include "bdiff/hunk_analysis.hpp"
#include "bdiff/matching.hpp"

namespace bdiff {

struct DiffOutcome {
  Lines left;
  Lines right;
  BaseDiffResult base;
  std::vector<SplitMergeAction> split_merges;
  std::vector<CandidateMapping> candidates;
  std::vector<CandidateMapping> mappings;
  EditScript es;
};

// Full pipeline: base diff, splits and merges, line-update candidates,
// block candidates, iterative matching, and script deduction. Kinds that
// cfg.enabled leaves out are never proposed, so their lines fall through to
// deletions and additions.
inline DiffOutcome run_pipeline(std::span<const std::string> left_raw,
                                std::span<const std::string> right_raw, const Config& cfg) {
  cfg.validate();
  DiffOutcome out;
  out.left = make_lines(left_raw, cfg.tab_size);
  out.right = make_lines(right_raw, cfg.tab_size);
  out.base = base_diff(left_raw, right_raw, cfg.base_algorithm);

  std::vector<Hunk> hunks = out.base.hunks;
  for (Hunk& h : hunks) {
    if (cfg.enabled.contains(EditKind::LS)) {
      auto splits = detect_splits(h, out.left, out.right, cfg);
      remove_consumed(h, splits);
      out.split_merges.insert(out.split_merges.end(), splits.begin(), splits.end());
    }
    if (cfg.enabled.contains(EditKind::LM)) {
      auto merges = detect_merges(h, out.left, out.right, cfg);
      remove_consumed(h, merges);
      out.split_merges.insert(out.split_merges.end(), merges.begin(), merges.end());
    }
  }

  std::vector<int> deleted, added;
  for (const Hunk& h : hunks) {
    deleted.insert(deleted.end(), h.deleted.begin(), h.deleted.end());
    added.insert(added.end(), h.added.begin(), h.added.end());
    if (cfg.enabled.contains(EditKind::LU)) {
      for (const auto& c : remove_max_intersections(candidate_lus(h, out.left, out.right, cfg))) {
        out.candidates.emplace_back(c);
      }
    }
  }
  const auto deleted_runs = to_runs(deleted);
  const auto added_runs = to_runs(added);
  if (cfg.enabled.contains(EditKind::BM)) {
    for (auto& c : find_bm_candidates(deleted_runs, added_runs, out.left, out.right, cfg)) {
      out.candidates.emplace_back(std::move(c));
    }
  }
  if (cfg.enabled.contains(EditKind::BC)) {
    for (auto& c : find_bc_candidates(out.left, added_runs, out.right, cfg)) {
      out.candidates.emplace_back(std::move(c));
    }
  }

  const MatchingContext ctx(out.left, out.right, cfg, out.base);
  out.mappings = iterative_km(out.candidates, ctx);
  out.es = deduce_es(out.split_merges, out.mappings, out.base, out.left, out.right);
  return out;
}

inline EditScript compute_edit_script(std::span<const std::string> left,
                                      std::span<const std::string> right,
                                      const Config& cfg = {}) {
  return run_pipeline(left, right, cfg).es;
}

}  // namespace bdiff
