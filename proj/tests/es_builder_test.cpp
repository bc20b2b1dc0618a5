#include "bdiff/es_builder.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "bdiff/pipeline.hpp"

namespace bdiff {
namespace {

using Text = std::vector<std::string>;

EditScript empty_script(int nl, int nr) {
  EditScript es;
  es.left_line_count = nl;
  es.right_line_count = nr;
  return es;
}

TEST(DeduceEs, PureInsertionIsAllAdds) {
  const Text left, right = {"a", "b", "c"};
  const auto base = myers_diff(left, right);
  const auto es = deduce_es({}, {}, base, make_lines(left, 4), make_lines(right, 4));
  ASSERT_EQ(es.actions.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(es.actions[static_cast<std::size_t>(i)].kind, EditKind::LA);
    EXPECT_EQ(es.actions[static_cast<std::size_t>(i)].dst, std::vector<int>{i + 1});
  }
  EXPECT_EQ(apply_es(left, es), right);
}

TEST(DeduceEs, DoubleClaimNamesTheLine) {
  const Text left = {"a", "b"}, right = {"c", "d"};
  const auto base = myers_diff(left, right);
  const std::vector<CandidateMapping> m = {LuCandidate{1, 1, 0.9, 0}, LuCandidate{2, 1, 0.9, 0}};
  try {
    deduce_es({}, m, base, make_lines(left, 4), make_lines(right, 4));
    FAIL() << "expected EsError";
  } catch (const EsError& e) {
    EXPECT_NE(std::string(e.what()).find("right line 1"), std::string::npos) << e.what();
  }
}

TEST(DeduceEs, CopySourceOverDeletionKeepsTheDeletion) {
  const Text left = {"x", "alpha();", "beta();", "y", "z", "w"};
  const Text right = {"x", "y", "z", "w", "alpha();", "beta();"};
  const auto base = myers_diff(left, right);
  ASSERT_EQ(base.deleted, (std::vector<int>{2, 3}));
  BlockCandidate bc;
  bc.kind = EditKind::BC;
  bc.src = {2, 2};
  bc.dst = {5, 2};
  bc.effective_len = 2;
  const std::vector<CandidateMapping> m = {bc};
  const auto es = deduce_es({}, m, base, make_lines(left, 4), make_lines(right, 4));
  int lds = 0;
  for (const auto& a : es.actions) lds += a.kind == EditKind::LD;
  EXPECT_EQ(lds, 2);
  EXPECT_EQ(apply_es(left, es), right);
}

TEST(SortActions, DeletionBeforeFollowingRightLine) {
  const Text left = {"a", "gone", "b"};
  const Text right = {"a", "b", "new"};
  const auto es = compute_edit_script(left, right);
  ASSERT_EQ(es.actions.size(), 2u);
  EXPECT_EQ(es.actions[0].kind, EditKind::LD);
  EXPECT_EQ(es.actions[1].kind, EditKind::LA);
}

TEST(ApplyEs, EmptyScriptIsIdentity) {
  const Text left = {"a", "b"};
  EXPECT_EQ(apply_es(left, empty_script(2, 2)), left);
}

TEST(ApplyEs, SingleDeletion) {
  const Text left = {"1", "2", "3", "4", "5"};
  EditScript es = empty_script(5, 4);
  es.actions.push_back({EditKind::LD, {3}, {}, 0, {}, {}});
  EXPECT_EQ(apply_es(left, es), (Text{"1", "2", "4", "5"}));
}

TEST(ApplyEs, BlockMoveWithShiftAndUpdate) {
  const Text left = {"a();", "b();", "c();", "tail"};
  EditScript es = empty_script(4, 4);
  es.actions.push_back({EditKind::BM, {1, 2, 3}, {2, 3, 4}, 4, {{2, 3}}, {"    bb();"}});
  EXPECT_EQ(apply_es(left, es), (Text{"tail", "    a();", "    bb();", "    c();"}));
}

TEST(ApplyEs, SplitAndMerge) {
  const Text left = {"int x = 1;", "a", "b"};
  EditScript es = empty_script(3, 3);
  es.actions.push_back({EditKind::LS, {1}, {1, 2}, 0, {}, {"int x", " = 1;"}});
  es.actions.push_back({EditKind::LM, {2, 3}, {3}, 0, {}, {}});
  EXPECT_EQ(apply_es(left, es), (Text{"int x", " = 1;", "ab"}));
}

TEST(ApplyEs, Errors) {
  const Text left = {"a", "b"};
  EditScript out_of_range = empty_script(2, 2);
  out_of_range.actions.push_back({EditKind::LD, {5}, {}, 0, {}, {}});
  EXPECT_THROW(apply_es(left, out_of_range), EsError);

  EXPECT_THROW(apply_es(left, empty_script(3, 3)), EsError);

  EditScript no_text = empty_script(2, 3);
  no_text.actions.push_back({EditKind::LA, {}, {3}, 0, {}, {}});
  EXPECT_THROW(apply_es(left, no_text), EsError);

  EditScript bad_split = empty_script(2, 3);
  bad_split.actions.push_back({EditKind::LS, {1}, {1, 2}, 0, {}, {"x", "y"}});
  EXPECT_THROW(apply_es(left, bad_split), EsError);

  EditScript leftover = empty_script(2, 1);
  EXPECT_THROW(apply_es(left, leftover), EsError);
}

TEST(RenderText, Format) {
  const Text left = {"old", "a();", "b();"};
  EditScript es = empty_script(3, 4);
  es.actions.push_back({EditKind::LD, {1}, {}, 0, {}, {}});
  es.actions.push_back({EditKind::LA, {}, {1}, 0, {}, {"new"}});
  es.actions.push_back({EditKind::BM, {2, 3}, {3, 4}, 4, {{3, 4}}, {"    bb();"}});
  const std::string text = render_text(es, left);
  EXPECT_EQ(text, "-1\told\n+1\tnew\nBM 2-3 -> 3-4 indent +4 ~3:4\n");
}

}  // namespace
}  // namespace bdiff
