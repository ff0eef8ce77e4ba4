#include "parity_gauss/enumerate.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>

using namespace parity_gauss;

static int count_diagrams(Ambient a, int m, bool all_signs) {
  int n = 0;
  enumerate_diagrams(a, m, all_signs, [&](const GaussDiagram&) { ++n; });
  return n;
}

// Reference counts, worked out by hand from (2m-1)!! matchings x directions
// x signs (and Burnside over the 2m rotations for the loop).
TEST(Enumerate, LineCounts) {
  EXPECT_EQ(count_diagrams(Ambient::line, 0, true), 1);
  EXPECT_EQ(count_diagrams(Ambient::line, 1, true), 4);
  EXPECT_EQ(count_diagrams(Ambient::line, 2, true), 48);
  EXPECT_EQ(count_diagrams(Ambient::line, 3, true), 960);
  EXPECT_EQ(count_diagrams(Ambient::line, 2, false), 12);
}

TEST(Enumerate, LoopCounts) {
  EXPECT_EQ(count_diagrams(Ambient::loop, 0, true), 1);
  EXPECT_EQ(count_diagrams(Ambient::loop, 1, true), 2);
  EXPECT_EQ(count_diagrams(Ambient::loop, 2, true), 14);
  EXPECT_EQ(count_diagrams(Ambient::loop, 1, false), 1);
  EXPECT_EQ(count_diagrams(Ambient::loop, 2, false), 4);
}

TEST(Enumerate, EmittedDiagramsAreCanonicalAndDistinct) {
  for (Ambient a : {Ambient::line, Ambient::loop}) {
    std::set<std::string> keys;
    enumerate_diagrams(a, 2, true, [&](const GaussDiagram& d) {
      EXPECT_EQ(to_gauss_code(d), canonical_key(d));
      EXPECT_TRUE(keys.insert(canonical_key(d)).second) << "duplicate " << canonical_key(d);
    });
  }
}

TEST(Enumerate, LoopClassesCoverAllRotations) {
  // every raw loop diagram's canonical key appears among the emitted reps
  std::set<std::string> emitted;
  enumerate_diagrams(Ambient::loop, 2, true,
                     [&](const GaussDiagram& d) { emitted.insert(canonical_key(d)); });
  enumerate_diagrams(Ambient::line, 2, true, [&](const GaussDiagram& d) {
    GaussDiagram as_loop = d;
    as_loop.ambient = Ambient::loop;
    EXPECT_TRUE(emitted.count(canonical_key(as_loop)))
        << "missing class of " << to_gauss_code(d);
  });
}

TEST(Enumerate, UpToIncludesAllSizes) {
  int n = 0;
  enumerate_diagrams_up_to(Ambient::line, 2, true, [&](const GaussDiagram&) { ++n; });
  EXPECT_EQ(n, 1 + 4 + 48);
}
