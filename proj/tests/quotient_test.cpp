#include "parity_gauss/quotient.hpp"

#include <gtest/gtest.h>

namespace pg = parity_gauss;
using pg::Ambient;
using pg::Int;
using pg::QuotientKind;

namespace {

TEST(QuotientRegistry, OrderOneAllOddLineColumns) {
  auto cols = pg::quotient_registry(1, 1, Ambient::line, QuotientKind::O);
  EXPECT_EQ(cols, (std::vector<std::string>{"O1+ U1+", "O1- U1-", "U1+ O1+",
                                            "U1- O1-"}));
}

TEST(QuotientRegistry, CurledDiagramsStayOut) {
  // Order-2 unmarked line registry: the empty diagram plus the sixteen
  // crossed two-arrow shapes; every one-arrow diagram is a curl.
  auto cols = pg::quotient_registry(2, 0, Ambient::line, QuotientKind::GPV);
  ASSERT_EQ(cols.size(), 17u);
  EXPECT_EQ(cols.front(), "");
  for (const auto& key : cols) {
    if (key.empty()) continue;
    auto d = pg::parse_gauss_code_unmarked(key, Ambient::line);
    ASSERT_EQ(d.size(), 2);
    for (int i = 0; i < d.size(); ++i) EXPECT_FALSE(pg::is_isolated_arrow(d, i));
  }
  // The all-even registry is the same geometry with even marks.
  auto even = pg::quotient_registry(2, 0, Ambient::line, QuotientKind::E);
  EXPECT_EQ(even.size(), 17u);
  for (const auto& key : even)
    if (!key.empty()) EXPECT_NE(key.find(":0"), std::string::npos);
}

// The order-one all-odd system on the line, fully by hand: four variables
// (right/left times plus/minus), and the pair insertions force the two rows
// w + x = 0 and y + z = 0.  The kernel is spanned by the direction counts.
TEST(RelationMatrix, OrderOneAllOddLineSystemIsExact) {
  auto rm = pg::generate_relation_matrix(1, 1, Ambient::line, QuotientKind::O);
  ASSERT_EQ(rm.columns.size(), 4u);
  ASSERT_EQ(rm.matrix.rows.size(), 2u);
  EXPECT_EQ(rm.matrix.rows[0], (pg::SparseRow{{0, Int(1)}, {1, Int(1)}}));
  EXPECT_EQ(rm.matrix.rows[1], (pg::SparseRow{{2, Int(1)}, {3, Int(1)}}));
  EXPECT_EQ(rm.row_source.size(), 2u);

  auto basis = pg::formula_basis(1, 1, Ambient::line, QuotientKind::O);
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_EQ(basis[0].sum.terms, (std::map<std::string, Int>{
                                    {"U1+ O1+", Int(1)}, {"U1- O1-", Int(-1)}}));
  EXPECT_EQ(basis[1].sum.terms, (std::map<std::string, Int>{
                                    {"O1+ U1+", Int(1)}, {"O1- U1-", Int(-1)}}));
}

TEST(RelationMatrix, OrderOneLoopKeepsOnlyTheWritheDifference) {
  auto basis = pg::formula_basis(1, 1, Ambient::loop, QuotientKind::O);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0].sum.terms, (std::map<std::string, Int>{
                                    {"O1+ U1+", Int(1)}, {"O1- U1-", Int(-1)}}));
}

TEST(RelationMatrix, ParameterValidation) {
  EXPECT_THROW(pg::generate_relation_matrix(1, 2, Ambient::line, QuotientKind::O),
               pg::domain_error);
  EXPECT_THROW(pg::generate_relation_matrix(2, 0, Ambient::line, QuotientKind::O),
               pg::domain_error);
  EXPECT_THROW(pg::reduced_on1_matrix(0, Ambient::line), pg::domain_error);
}

TEST(Dimensions, SmallAllOddTableEntries) {
  EXPECT_EQ(pg::dimension(2, 1, Ambient::line, QuotientKind::O), 5);
  EXPECT_EQ(pg::dimension(2, 2, Ambient::line, QuotientKind::O), 11);
  EXPECT_EQ(pg::dimension(1, 1, Ambient::loop, QuotientKind::O), 1);
  EXPECT_EQ(pg::dimension(2, 1, Ambient::loop, QuotientKind::O), 2);
}

TEST(Dimensions, EvenAndUnmarkedQuotientsAgree) {
  for (Ambient ambient : {Ambient::line, Ambient::loop})
    for (int n = 0; n <= 2; ++n)
      EXPECT_EQ(pg::dimension(n, 0, ambient, QuotientKind::E),
                pg::dimension(n, 0, ambient, QuotientKind::GPV))
          << pg::ambient_name(ambient) << " n=" << n;
  EXPECT_EQ(pg::dimension(2, 0, Ambient::line, QuotientKind::GPV), 3);
}

TEST(Dimensions, UnmarkedBasisContainsTheConstant) {
  auto basis = pg::formula_basis(2, 0, Ambient::line, QuotientKind::GPV);
  bool constant_seen = false;
  for (const auto& f : basis)
    if (f.sum.terms.size() == 1 && f.sum.terms.count(""))
      constant_seen = true;
  EXPECT_TRUE(constant_seen);
}

TEST(ReducedSystem, MatchesTheGenericPathAtSmallOrders) {
  for (int n = 1; n <= 3; ++n) {
    auto rm = pg::reduced_on1_matrix(n, Ambient::line);
    int dim = static_cast<int>(rm.columns.size()) - pg::rank(rm.matrix);
    EXPECT_EQ(dim, pg::dimension(n, 1, Ambient::line, QuotientKind::O)) << n;
  }
  for (int n = 1; n <= 2; ++n) {
    auto rm = pg::reduced_on1_matrix(n, Ambient::loop);
    int dim = static_cast<int>(rm.columns.size()) - pg::rank(rm.matrix);
    EXPECT_EQ(dim, pg::dimension(n, 1, Ambient::loop, QuotientKind::O)) << n;
  }
}

TEST(ReducedSystem, CommutativityRowsCarrySyntheticProvenance) {
  auto rm = pg::reduced_on1_matrix(2, Ambient::line);
  bool synthetic = false;
  for (long long src : rm.row_source)
    if (src == -1) synthetic = true;
  EXPECT_TRUE(synthetic);
}

// The top-degree all-plus reduction trades variables for implied sign
// bookkeeping; the kernel dimension must not move.
TEST(Dimensions, TopAllPlusReductionPreservesDimensions) {
  for (auto [n, k] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    auto plain = pg::generate_relation_matrix(n, k, Ambient::line, QuotientKind::O);
    auto reduced =
        pg::generate_relation_matrix(n, k, Ambient::line, QuotientKind::O, true);
    EXPECT_LT(reduced.columns.size(), plain.columns.size());
    EXPECT_EQ(pg::kernel_basis(reduced.matrix).size(),
              pg::kernel_basis(plain.matrix).size())
        << "n=" << n << " k=" << k;
  }
}

TEST(Evaluate, MatchesTheHandComputedExamples) {
  pg::Formula left_count;
  left_count.quotient = QuotientKind::O;
  left_count.n = 1;
  left_count.k = 1;
  left_count.sum.ambient = Ambient::line;
  left_count.sum.terms = {{"U1+ O1+", Int(1)}, {"U1- O1-", Int(-1)}};

  pg::GaussDiagram empty;
  EXPECT_EQ(pg::evaluate(left_count, pg::gaussian_parity(), empty), 0);

  auto lone = pg::parse_gauss_code_unmarked("U1+ O1+", Ambient::line);
  EXPECT_EQ(pg::evaluate(left_count, pg::gaussian_parity(), lone), 0);

  auto linked_pair = pg::parse_gauss_code_unmarked("U1+ U2+ O1+ O2+", Ambient::line);
  EXPECT_EQ(pg::evaluate(left_count, pg::gaussian_parity(), linked_pair), 2);
}

}  // namespace
