#include "parity_gauss/moves.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "parity_gauss/core.hpp"
#include "parity_gauss/parity.hpp"

namespace parity_gauss {
namespace {

MarkedDiagram parse_line(const std::string& code) {
  return parse_gauss_code(code, Ambient::line);
}

int count_kind(const std::vector<MoveInstance>& v, MoveKind k) {
  int n = 0;
  for (const auto& mi : v)
    if (mi.kind == k) ++n;
  return n;
}

// Every instance must restrict to the same marked diagram on both contexts,
// carry the right affected sizes, and survive reversal.
void expect_instance_wellformed(const MoveInstance& mi) {
  ASSERT_EQ(mi.context_lhs.size(), mi.context_rhs.size());
  EXPECT_EQ(to_gauss_code(restrict_to(mi.lhs, mi.context_lhs)),
            to_gauss_code(restrict_to(mi.rhs, mi.context_rhs)));
  std::size_t a = mi.affected_lhs.size(), b = mi.affected_rhs.size();
  switch (mi.kind) {
    case MoveKind::r1:
      EXPECT_TRUE((a == 1 && b == 0) || (a == 0 && b == 1));
      break;
    case MoveKind::r2:
      EXPECT_TRUE((a == 2 && b == 0) || (a == 0 && b == 2));
      break;
    case MoveKind::r3:
      EXPECT_EQ(a, 3u);
      EXPECT_EQ(b, 3u);
      // Corresponding slide arrows keep sign and mark.
      for (int t = 0; t < 3; ++t) {
        EXPECT_EQ(mi.lhs.d.arrows[mi.affected_lhs[t]].sign,
                  mi.rhs.d.arrows[mi.affected_rhs[t]].sign);
        EXPECT_EQ(mi.lhs.marks[mi.affected_lhs[t]], mi.rhs.marks[mi.affected_rhs[t]]);
      }
      break;
  }
  // Both sides are genuine diagrams.
  EXPECT_NO_THROW(parse_gauss_code(to_gauss_code(mi.lhs), mi.lhs.d.ambient));
  EXPECT_NO_THROW(parse_gauss_code(to_gauss_code(mi.rhs), mi.rhs.d.ambient));
  MoveInstance rev = reversed(mi);
  EXPECT_EQ(to_gauss_code(restrict_to(rev.lhs, rev.context_lhs)),
            to_gauss_code(restrict_to(rev.rhs, rev.context_rhs)));
}

TEST(Moves, EmptyLineOffersFourKinksAndEightSlides) {
  MarkedDiagram empty;
  empty.d.ambient = Ambient::line;
  auto moves = enumerate_moves(empty);
  EXPECT_EQ(moves.size(), 12u);
  EXPECT_EQ(count_kind(moves, MoveKind::r1), 4);
  EXPECT_EQ(count_kind(moves, MoveKind::r2), 8);
  std::set<std::string> results;
  for (const auto& mi : moves) {
    EXPECT_EQ(to_gauss_code(mi.lhs), "");
    results.insert(to_gauss_code(mi.rhs));
    expect_instance_wellformed(mi);
  }
  // All twelve insertions land on distinct diagrams.
  EXPECT_EQ(results.size(), 12u);
  EXPECT_TRUE(results.count("O1+ U1+"));
  EXPECT_TRUE(results.count("U1- O1-"));
  EXPECT_TRUE(results.count("O1+ O2- U1+ U2-"));
  EXPECT_TRUE(results.count("O1+ O2- U2- U1+"));
}

TEST(Moves, KinkRemovalReachesEmptyDiagram) {
  auto moves = enumerate_moves(parse_line("O1+ U1+"));
  // 1 removal + 3 gaps * 4 kinks + 6 gap pairs * 8 slides.
  EXPECT_EQ(moves.size(), 61u);
  int removals = 0;
  for (const auto& mi : moves) {
    expect_instance_wellformed(mi);
    if (mi.rhs.d.arrows.empty()) {
      ++removals;
      EXPECT_EQ(mi.kind, MoveKind::r1);
    }
  }
  EXPECT_EQ(removals, 1);
}

TEST(Moves, PairRemovalNeedsAdjacentEndsAndOppositeSigns) {
  // Crossed and nested cancelling pairs disappear...
  for (const char* code : {"O1+ O2- U1+ U2-", "O1+ O2- U2- U1+"}) {
    auto moves = enumerate_moves(parse_line(code));
    int r2_removals = 0;
    for (const auto& mi : moves)
      if (mi.kind == MoveKind::r2 && mi.rhs.d.arrows.empty()) ++r2_removals;
    EXPECT_EQ(r2_removals, 1) << code;
  }
  // ...same-sign pairs do not.
  auto moves = enumerate_moves(parse_line("O1+ O2+ U1+ U2+"));
  for (const auto& mi : moves)
    if (mi.kind == MoveKind::r2)
      EXPECT_GT(mi.rhs.d.arrows.size(), mi.lhs.d.arrows.size());
}

TEST(Moves, PairRemovalWrapsAroundLoopBasepoint) {
  // Tails sit at positions 3 and 0, heads at 1 and 2: adjacency is cyclic.
  MarkedDiagram md = parse_gauss_code("O1- U2+ U1- O2+", Ambient::loop);
  int r2_removals = 0;
  for (const auto& mi : enumerate_moves(md))
    if (mi.kind == MoveKind::r2 && mi.rhs.d.arrows.empty()) ++r2_removals;
  EXPECT_EQ(r2_removals, 1);
}

TEST(Moves, SlideTableIsFrozen) {
  // Generated from the planar move: 6 stackings x 8 orientations, deduped
  // as unordered side pairs modulo block order and arrow names.
  EXPECT_EQ(detail::r3_patterns().size(), 8u);
  EXPECT_EQ(detail::r3_side_canon_set().size(), 16u);
  for (const auto& pat : detail::r3_patterns()) {
    EXPECT_EQ(detail::transpose_side(pat.lhs), pat.rhs);
    for (int s : pat.sign) EXPECT_TRUE(s == 1 || s == -1);
  }
}

TEST(Moves, WorkedTriangleSlides) {
  // Stacking a over b over c, all strands forward, blocks in strand order.
  MarkedDiagram lhs = parse_line("O1+ O2- U1+ O3- U3- U2-");
  std::vector<std::string> slide_results;
  for (const auto& mi : enumerate_moves(lhs)) {
    expect_instance_wellformed(mi);
    if (mi.kind == MoveKind::r3) slide_results.push_back(to_gauss_code(mi.rhs));
  }
  ASSERT_EQ(slide_results.size(), 1u);
  EXPECT_EQ(slide_results[0], "O1- O2+ O3- U2+ U1- U3-");
  // The slide is reversible: the result slides straight back.
  MarkedDiagram rhs = parse_line(slide_results[0]);
  bool found_back = false;
  for (const auto& mi : enumerate_moves(rhs))
    if (mi.kind == MoveKind::r3 && to_gauss_code(mi.rhs) == to_gauss_code(lhs))
      found_back = true;
  EXPECT_TRUE(found_back);
}

TEST(Moves, GeneratedSlidesAreDetectedOnTheirOwnSides) {
  // Placement and detection must agree: every placed slide instance is
  // rediscovered by enumerate_moves on its lhs, landing on the same rhs.
  MarkedDiagram empty;
  empty.d.ambient = Ambient::line;
  std::vector<MarkedDiagram> contexts = {empty, parse_line("O1+ U1+"),
                                         parse_line("U1- O1-")};
  const int npat = static_cast<int>(detail::r3_patterns().size());
  for (const MarkedDiagram& ctx : contexts)
    for (int pi = 0; pi < npat; ++pi)
      for (int perm = 0; perm < 6; ++perm) {
        const int g = gap_count(ctx.d);
        for (int g1 = 0; g1 < g; ++g1)
          for (int g2 = g1; g2 < g; ++g2)
            for (int g3 = g2; g3 < g; ++g3) {
              MoveInstance placed =
                  make_r3_instance(ctx, pi, perm, {g1, g2, g3}, {1, 1, 1});
              bool found = false;
              for (const auto& mi : enumerate_moves(placed.lhs))
                if (mi.kind == MoveKind::r3 &&
                    to_gauss_code(mi.rhs) == to_gauss_code(placed.rhs))
                  found = true;
              EXPECT_TRUE(found) << "pattern " << pi << " perm " << perm;
            }
      }
}

TEST(Moves, SlidesPreserveTheIndex) {
  // Pattern-table validation: contexts keep their index across a slide and
  // corresponding slide arrows keep theirs.
  move_instance_pairs(4, Ambient::line, MarkMode::unmarked, [](const MoveInstance& mi) {
    if (mi.kind != MoveKind::r3) return;
    auto il = index_vector(mi.lhs.d);
    auto ir = index_vector(mi.rhs.d);
    for (std::size_t t = 0; t < mi.context_lhs.size(); ++t)
      ASSERT_EQ(il[mi.context_lhs[t]], ir[mi.context_rhs[t]]);
    for (int t = 0; t < 3; ++t)
      ASSERT_EQ(il[mi.affected_lhs[t]], ir[mi.affected_rhs[t]]);
  });
}

TEST(Moves, InstancePairsAtMaxOneAreKinksOnly) {
  std::vector<MoveInstance> got;
  move_instance_pairs(1, Ambient::line, MarkMode::unmarked,
                      [&](const MoveInstance& mi) { got.push_back(mi); });
  EXPECT_EQ(got.size(), 4u);
  for (const auto& mi : got) {
    EXPECT_EQ(mi.kind, MoveKind::r1);
    EXPECT_EQ(mi.lhs.d.arrows.size(), 1u);
    EXPECT_TRUE(mi.rhs.d.arrows.empty());
    expect_instance_wellformed(mi);
  }
}

TEST(Moves, InstancePairsRespectAdmissibleMarks) {
  // all_ones: contexts stay 1, the kink arrow is forced even, pairs agree.
  std::map<MoveKind, int> counts;
  std::set<std::pair<int, int>> pair_labels;
  move_instance_pairs(2, Ambient::line, MarkMode::all_ones, [&](const MoveInstance& mi) {
    ++counts[mi.kind];
    for (int c : mi.context_lhs) EXPECT_EQ(mi.lhs.marks[c], 1);
    if (mi.kind == MoveKind::r1) EXPECT_EQ(mi.lhs.marks[mi.affected_lhs[0]], 0);
    if (mi.kind == MoveKind::r2)
      pair_labels.insert({mi.lhs.marks[mi.affected_lhs[0]],
                          mi.lhs.marks[mi.affected_lhs[1]]});
  });
  // Kinks: empty context (1 gap) + one-arrow contexts (4 diagrams, 3 gaps).
  EXPECT_EQ(counts[MoveKind::r1], 4 + 4 * 3 * 4);
  // Pairs: empty context only, 8 variants, two admissible labellings.
  EXPECT_EQ(counts[MoveKind::r2], 16);
  EXPECT_EQ(pair_labels, (std::set<std::pair<int, int>>{{0, 0}, {1, 1}}));
}

TEST(Moves, InstancePairsLabelSlidesWithEvenTotals) {
  std::set<std::array<int, 3>> labels;
  std::set<int> context_mark_values;
  int slides = 0;
  move_instance_pairs(3, Ambient::line, MarkMode::parity_labeled,
                      [&](const MoveInstance& mi) {
                        for (int c : mi.context_lhs)
                          context_mark_values.insert(mi.lhs.marks[c]);
                        if (mi.kind != MoveKind::r3) return;
                        ++slides;
                        labels.insert({mi.lhs.marks[mi.affected_lhs[0]],
                                       mi.lhs.marks[mi.affected_lhs[1]],
                                       mi.lhs.marks[mi.affected_lhs[2]]});
                      });
  // Slides at max 3 have empty contexts: 8 patterns x 6 block orders x 1
  // gap triple x 4 admissible labellings.
  EXPECT_EQ(slides, 192);
  EXPECT_EQ(labels.size(), 4u);
  for (const auto& l : labels) EXPECT_EQ((l[0] + l[1] + l[2]) % 2, 0);
  // parity_labeled contexts range over both mark values.
  EXPECT_EQ(context_mark_values, (std::set<int>{0, 1}));
}

TEST(Moves, SlideLayoutCountsMatchTheStarsAndBarsOracle) {
  // Placing three ordered blocks into g gaps admits binom(g+2,3)*6 layouts:
  // 60 for the one-arrow line, 210 for the two-arrow line.
  auto count_for_context = [&](int max_arrows, const std::string& code) {
    int found = 0;
    move_instance_pairs(max_arrows, Ambient::line, MarkMode::unmarked,
                        [&](const MoveInstance& mi) {
                          if (mi.kind != MoveKind::r3) return;
                          if (to_gauss_code(restrict_to(mi.lhs, mi.context_lhs)) == code)
                            ++found;
                        });
    return found;
  };
  const int npat = static_cast<int>(detail::r3_patterns().size());
  EXPECT_EQ(count_for_context(4, "O1+ U1+"), 60 * npat);
  EXPECT_EQ(count_for_context(5, "O1+ O2+ U1+ U2+"), 210 * npat);
}

TEST(Moves, WalkIsDeterministicAndKeepsDiagramsValid) {
  GaussDiagram start = parse_gauss_code_unmarked("O1+ U1+", Ambient::line);
  WalkResult a = apply_random_walk(start, 15, 20260816);
  WalkResult b = apply_random_walk(start, 15, 20260816);
  EXPECT_EQ(to_gauss_code(a.diagram), to_gauss_code(b.diagram));
  EXPECT_EQ(a.stalled, b.stalled);
  EXPECT_FALSE(a.stalled);
  EXPECT_EQ(a.steps_taken, 15);
  EXPECT_NO_THROW(parse_gauss_code_unmarked(to_gauss_code(a.diagram), Ambient::line));
  WalkResult c = apply_random_walk(start, 15, 1);
  EXPECT_EQ(c.steps_taken, 15);
}

TEST(Moves, WalkHonoursZeroIndexConstraint) {
  GaussDiagram empty;
  empty.ambient = Ambient::line;
  WalkResult r = apply_random_walk(empty, 12, 7, WalkConstraint::zero_index);
  EXPECT_FALSE(r.stalled);
  EXPECT_TRUE(zero_index_check(r.diagram));
  GaussDiagram loop;
  loop.ambient = Ambient::loop;
  EXPECT_THROW(apply_random_walk(loop, 3, 7, WalkConstraint::zero_index), domain_error);
  WalkResult lw = apply_random_walk(loop, 10, 99);
  EXPECT_EQ(lw.diagram.ambient, Ambient::loop);
  EXPECT_NO_THROW(parse_gauss_code_unmarked(to_gauss_code(lw.diagram), Ambient::loop));
}

TEST(Moves, LoopAmbientInstancesAreWellFormed) {
  move_instance_pairs(3, Ambient::loop, MarkMode::unmarked, [](const MoveInstance& mi) {
    expect_instance_wellformed(mi);
    EXPECT_EQ(mi.lhs.d.ambient, Ambient::loop);
  });
}

}  // namespace
}  // namespace parity_gauss
