#include "parity_gauss/formal_sum.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

namespace pg = parity_gauss;
using pg::Int;

namespace {

pg::GaussDiagram random_diagram(std::mt19937& rng, int max_arrows, pg::Ambient ambient) {
  int m = static_cast<int>(rng() % (max_arrows + 1));
  std::vector<int> pts(2 * m);
  std::iota(pts.begin(), pts.end(), 0);
  std::shuffle(pts.begin(), pts.end(), rng);
  pg::GaussDiagram d;
  d.ambient = ambient;
  for (int i = 0; i < m; ++i)
    d.arrows.push_back(
        pg::Arrow{pts[2 * i], pts[2 * i + 1], rng() % 2 == 0 ? 1 : -1});
  return d;
}

TEST(FormalSum, EmptyDiagramExpandsToTheEmptyKey) {
  pg::GaussDiagram d;
  auto marked = pg::expand_I(d, pg::gaussian_parity(), -1);
  ASSERT_EQ(marked.terms.size(), 1u);
  EXPECT_EQ(marked.terms.at(""), 1);
  auto plain = pg::expand_I_gpv(d, -1);
  ASSERT_EQ(plain.terms.size(), 1u);
  EXPECT_EQ(plain.terms.at(""), 1);
}

TEST(FormalSum, IsolatedArrowIsEvenInItsOwnExpansion) {
  auto md = pg::parse_gauss_code("O1+ U1+", pg::Ambient::line);
  auto sum = pg::expand_I(md.d, pg::gaussian_parity(), -1);
  std::string even_key =
      pg::canonical_key(pg::MarkedDiagram{md.d, {0}});
  ASSERT_EQ(sum.terms.size(), 2u);
  EXPECT_EQ(sum.terms.at(""), 1);
  EXPECT_EQ(sum.terms.at(even_key), 1);
}

// Marks are assigned on the whole diagram before restricting: a single
// linked arrow stays odd even though it would be even on its own.
TEST(FormalSum, CrossedPairKeepsWholeDiagramMarks) {
  auto d = pg::parse_gauss_code_unmarked("O1+ O2+ U1+ U2+", pg::Ambient::line);
  auto sum = pg::expand_I(d, pg::gaussian_parity(), -1);
  std::string odd_single =
      pg::canonical_key(pg::parse_gauss_code("O1+ U1+", pg::Ambient::line));
  std::string full = pg::canonical_key(pg::parse_gauss_code("O1+ O2+ U1+ U2+", pg::Ambient::line));
  ASSERT_EQ(sum.terms.size(), 3u);
  EXPECT_EQ(sum.terms.at(""), 1);
  EXPECT_EQ(sum.terms.at(odd_single), 2);  // both one-arrow subdiagrams, mark 1
  EXPECT_EQ(sum.terms.at(full), 1);
  Int total = 0;
  for (const auto& [k, c] : sum.terms) total += c;
  EXPECT_EQ(total, 4);  // all four arrow subsets
}

TEST(FormalSum, MaxSizeTruncatesTheExpansion) {
  auto d = pg::parse_gauss_code_unmarked("O1+ O2+ U1+ U2+", pg::Ambient::line);
  auto sum = pg::expand_I_gpv(d, 1);
  ASSERT_EQ(sum.terms.size(), 2u);
  EXPECT_EQ(sum.terms.at(""), 1);
  EXPECT_EQ(sum.terms.at("O1+ U1+"), 2);
}

TEST(FormalSum, InverseUndoesTheExpansionOnOneArrow) {
  auto d = pg::parse_gauss_code_unmarked("O1+ U1+", pg::Ambient::line);
  auto expanded = pg::expand_I_gpv(d, -1);
  ASSERT_EQ(expanded.terms.size(), 2u);
  auto back = pg::inverse_I_gpv(expanded);
  ASSERT_EQ(back.terms.size(), 1u);
  EXPECT_EQ(back.terms.at("O1+ U1+"), 1);
}

TEST(FormalSum, InverseUndoesTheExpansionOnSeededDiagrams) {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 60; ++trial) {
    pg::Ambient ambient = trial % 2 == 0 ? pg::Ambient::line : pg::Ambient::loop;
    pg::GaussDiagram d = random_diagram(rng, 5, ambient);
    auto back = pg::inverse_I_gpv(pg::expand_I_gpv(d, -1));
    ASSERT_EQ(back.terms.size(), 1u) << pg::to_gauss_code(d);
    EXPECT_EQ(back.terms.at(pg::canonical_key(d)), 1) << pg::to_gauss_code(d);
  }
}

TEST(FormalSum, PairingMatchesSharedKeysOnly) {
  pg::FormalSum a{pg::Ambient::line, {}};
  pg::FormalSum b{pg::Ambient::line, {}};
  EXPECT_EQ(pg::pairing(a, b), 0);
  pg::add_term(a, "O1+ U1+", Int(2));
  pg::add_term(a, "O1- U1-", Int(5));
  pg::add_term(b, "O1+ U1+", Int(3));
  EXPECT_EQ(pg::pairing(a, b), 6);
  EXPECT_EQ(pg::pairing(b, a), 6);
  pg::FormalSum c{pg::Ambient::loop, {}};
  EXPECT_THROW(pg::pairing(a, c), pg::domain_error);
}

TEST(FormalSum, AddTermCancelsToNothing) {
  pg::FormalSum s{pg::Ambient::line, {}};
  pg::add_term(s, "O1+ U1+", Int(1));
  pg::add_term(s, "O1+ U1+", Int(-1));
  EXPECT_TRUE(s.terms.empty());
  pg::add_term(s, "O1+ U1+", Int(0));
  EXPECT_TRUE(s.terms.empty());
}

}  // namespace
