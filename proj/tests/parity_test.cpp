#include "parity_gauss/parity.hpp"

#include <gtest/gtest.h>

#include "parity_gauss/enumerate.hpp"

using namespace parity_gauss;

namespace {

GaussDiagram line(const std::string& code) {
  return parse_gauss_code_unmarked(code, Ambient::line);
}

// k-arrow fan: all tails first, then all heads, everything positive.
GaussDiagram fan(int k) {
  GaussDiagram d;
  d.ambient = Ambient::line;
  for (int i = 0; i < k; ++i) d.arrows.push_back(Arrow{i, k + i, +1});
  return d;
}

}  // namespace

TEST(Index, TwoCrossingExample) {
  auto d = line("O1+ O2+ U1+ U2+");
  EXPECT_EQ(arrow_index(d, 0), -1);
  EXPECT_EQ(arrow_index(d, 1), 1);
}

TEST(Index, FanFormula) {
  // in the all-plus fan the i-th arrow (1-based) has index 2i - k - 1
  for (int k = 1; k <= 6; ++k) {
    auto d = fan(k);
    for (int i = 0; i < k; ++i)
      EXPECT_EQ(arrow_index(d, i), 2 * (i + 1) - k - 1) << "k=" << k << " i=" << i;
  }
  EXPECT_EQ(index_vector(fan(3)), (std::vector<int>{-2, 0, 2}));
}

TEST(Index, ZeroIndexDetection) {
  EXPECT_TRUE(zero_index_check(line("O1+ U1+ O2+ U2+")));
  EXPECT_TRUE(zero_index_check(line("")));
  EXPECT_FALSE(zero_index_check(line("O1+ O2+ U1+ U2+")));
  EXPECT_THROW(arrow_index(parse_gauss_code_unmarked("O1+ O2+ U1+ U2+", Ambient::loop), 0),
               domain_error);
}

TEST(Index, IsolatedArrowHasIndexZero) {
  // an isolated arrow links nothing, so its index vanishes identically
  enumerate_diagrams(Ambient::line, 3, true, [](const GaussDiagram& d) {
    for (int i = 0; i < d.size(); ++i)
      if (is_isolated_arrow(d, i)) ASSERT_EQ(arrow_index(d, i), 0);
  });
}

TEST(Hierarchy, LevelZeroIsDegreeParity) {
  EXPECT_EQ(hierarchy_parity(line("O1+ O2+ U1+ U2+"), 0), (std::vector<std::uint8_t>{1, 1}));
  EXPECT_EQ(hierarchy_parity(fan(3), 0), (std::vector<std::uint8_t>{0, 0, 0}));
  // level 0 works on the loop as well
  auto l = parse_gauss_code_unmarked("O1+ O2+ U1+ U2+", Ambient::loop);
  EXPECT_EQ(hierarchy_parity(l, 0), (std::vector<std::uint8_t>{1, 1}));
  EXPECT_THROW(hierarchy_parity(l, 1), domain_error);
}

TEST(Hierarchy, LevelOneRefinesTheFan) {
  // fan(3) is Gaussian-even with indices (-2, 0, 2); -2 and 2 are 2 mod 4
  EXPECT_EQ(hierarchy_parity(fan(3), 1), (std::vector<std::uint8_t>{1, 0, 1}));
  // with an odd arrow present, level 1 inherits the Gaussian marks
  EXPECT_EQ(hierarchy_parity(line("O1+ O2+ U1+ U2+"), 1), (std::vector<std::uint8_t>{1, 1}));
}

TEST(Hierarchy, AllLevelsVanishOnZeroIndex) {
  auto d = line("O1+ U1+ O2+ U2+");
  for (int t = 0; t <= 4; ++t)
    EXPECT_EQ(hierarchy_parity(d, t), (std::vector<std::uint8_t>{0, 0}));
}

TEST(Hierarchy, SwitchInvariance) {
  // switching any one crossing preserves every level: degrees are unchanged
  // and the index at most flips sign, which mod 2^{t+1} cannot cross 2^t
  enumerate_diagrams(Ambient::line, 3, true, [](const GaussDiagram& d) {
    for (int i = 0; i < d.size(); ++i) {
      GaussDiagram s = switch_crossing(d, i);
      for (int t = 0; t <= 2; ++t)
        ASSERT_EQ(hierarchy_parity(s, t), hierarchy_parity(d, t))
            << to_gauss_code(d) << " switch " << i << " level " << t;
    }
  });
}

TEST(Projection, DeletesOddArrows) {
  auto rule = gaussian_parity();
  EXPECT_EQ(to_gauss_code(functorial_map_f(line("O1+ O2+ U1+ U2+"), rule)), "");
  EXPECT_EQ(to_gauss_code(functorial_map_f(fan(3), rule)), to_gauss_code(fan(3)));
}

TEST(Projection, FixpointIteratesPastFreshOddArrows) {
  // path-shaped intersection graph a-b-c-d: one pass deletes the ends,
  // the second pass deletes the middle pair
  auto d = line("O1+ O2+ U1+ O3+ U2+ O4+ U3+ U4+");
  auto rule = gaussian_parity();
  EXPECT_EQ(to_gauss_code(functorial_map_f(d, rule)), "O1+ O2+ U1+ U2+");
  EXPECT_EQ(to_gauss_code(f_fixpoint(d, rule)), "");
}

TEST(Projection, NonzeroIndexRuleLandsOnZeroIndex) {
  auto rule = nonzero_index_parity();
  EXPECT_EQ(to_gauss_code(functorial_map_f(fan(3), rule)), "O1+ U1+");
  enumerate_diagrams(Ambient::line, 3, true, [&](const GaussDiagram& d) {
    ASSERT_TRUE(zero_index_check(f_fixpoint(d, rule))) << to_gauss_code(d);
  });
}
