#include "relk2/report.hpp"

#include <gtest/gtest.h>

namespace relk2 {
namespace {

TEST(K2, BothRoutesOnSmallGroups) {
  const std::vector<std::pair<GroupSpec, std::string>> cases{
      {GroupSpec(2, {1, 1}), "Z/2 x Z/2"}, {GroupSpec(3, {1}), "Z/3"}, {GroupSpec(2, {2}), "Z/2"}, {GroupSpec(2, {1, 2}), "Z/2 x Z/2"}};
  for (const auto& [spec, text] : cases) {
    auto rep = k2_relative_structure(spec, Route::both);
    EXPECT_EQ(rep.structure.to_string(), text);
    ASSERT_TRUE(rep.agreement);
    EXPECT_TRUE(*rep.agreement);
    EXPECT_TRUE(rep.warnings.empty());
    EXPECT_EQ(rep.basis.size(), spec.rank());
  }
}

TEST(K2, BasisNames) {
  auto rep = k2_relative_structure(GroupSpec(2, {1, 1}), Route::tensor);
  EXPECT_EQ(rep.basis, (std::vector<std::string>{"<x1|x1*x2>", "<x2|x1*x2>"}));
  EXPECT_EQ(basis_symbol_text(GroupSpec(3, {1, 1}), 1), "<x2|x1^2*x2^2>");
}

TEST(K2, TensorRouteOnLargerGroups) {
  for (const auto& spec : {GroupSpec(3, {1, 1}), GroupSpec(5, {1, 1}), GroupSpec(2, {1, 1, 1})}) {
    auto rep = k2_relative_structure(spec, Route::tensor);
    EXPECT_EQ(rep.structure, AbelianGroupStructure::elementary(spec.p(), spec.rank()));
  }
}

TEST(K2, OrderTwoNeedsOracle) {
  EXPECT_THROW(k2_relative_structure(GroupSpec(2, {1}), Route::tensor), HypothesisError);
  EXPECT_THROW(k2_relative_structure(GroupSpec(2, {1}), Route::both), HypothesisError);
  EXPECT_TRUE(k2_relative_structure(GroupSpec(2, {1}), Route::oracle).structure.is_trivial());
}

TEST(K2, OracleOverBudget) {
  EXPECT_THROW(k2_relative_structure(GroupSpec(3, {1, 1}), Route::oracle, PresentationMode::full, 4096), BudgetError);
  EXPECT_EQ(k2_relative_structure(GroupSpec(3, {1, 1}), Route::oracle, PresentationMode::reduced).structure.to_string(), "Z/3 x Z/3");
}

TEST(K2, RouteParsing) {
  EXPECT_EQ(parse_route("both"), Route::both);
  EXPECT_THROW(parse_route("neither"), std::invalid_argument);
  EXPECT_EQ(parse_mode("reduced"), PresentationMode::reduced);
}

TEST(K2, JsonRoundTrip) {
  auto rep = k2_relative_structure(GroupSpec(2, {1, 2}), Route::both);
  Json j = to_json(rep);
  EXPECT_EQ(to_json(k2_report_from_json(j)).dump(), j.dump());
  EXPECT_EQ(j["invariant_factors"], Json::array({2, 2}));
  EXPECT_EQ(j["agreement"], true);
}

TEST(Theorem, GroupRingInstances) {
  for (const auto& spec : {GroupSpec(2, {1, 1}), GroupSpec(2, {1, 2})}) {
    auto t = theorem1_group_ring(spec);
    EXPECT_TRUE(t.ok()) << spec.name();
    ASSERT_TRUE(t.oracle);
    EXPECT_EQ(*t.oracle, AbelianGroupStructure::elementary(2, 2));
  }
  EXPECT_THROW(theorem1_group_ring(GroupSpec(3, {1})), HypothesisError);
}

TEST(Theorem, SkipsOracleOverBudget) {
  auto t = theorem1_group_ring(GroupSpec(3, {1, 1}), PresentationMode::full, 4096);
  EXPECT_FALSE(t.oracle);
  EXPECT_FALSE(t.warnings.empty());
  EXPECT_TRUE(t.agree());
}

TEST(Theorem, NonGroupRingInstance) {
  // A = F_2[x, y]/(x^2, y^2), I = 0, J = (xy), b = (x, y)
  PresentedAlgebra a(2, {"x", "y"}, {Polynomial::variable(2, 2, 0, 2), Polynomial::variable(2, 2, 1, 2)});
  ModVec x = a.variable(0), y = a.variable(1);
  auto t = theorem1_check(a, {}, {a.algebra()->mul(x, y)}, {x, y});
  EXPECT_TRUE(t.ok());
  EXPECT_EQ(t.tensor_over_a_mod_i, AbelianGroupStructure::elementary(2, 2));
  // b_i J must land in I
  EXPECT_THROW(theorem1_check(a, {}, {x}, {x, y}), HypothesisError);
}

TEST(Excision, SmallRanks) {
  auto e1 = excision_check(GroupSpec(2, {1}));
  EXPECT_TRUE(e1.integral.is_trivial());
  EXPECT_TRUE(e1.ok());
  auto e2 = excision_check(GroupSpec(2, {1, 1}));
  EXPECT_EQ(e2.integral, AbelianGroupStructure::elementary(2, 2));
  EXPECT_EQ(e2.ring_size_i, 32);
  EXPECT_EQ(e2.ring_size_j, 16);
  EXPECT_TRUE(e2.ok());
  EXPECT_THROW(excision_check(GroupSpec(3, {1})), ScopeError);
  EXPECT_THROW(excision_check(GroupSpec(2, {1, 1, 1})), BudgetError);
}

TEST(Square, ConcreteAndSymbolic) {
  auto s = cartesian_square(GroupSpec(2, {1, 1}));
  EXPECT_TRUE(s.commutes.value_or(false));
  EXPECT_TRUE(s.pullback.value_or(false));
  EXPECT_EQ(s.top_left.size, BigInt(32));
  auto t = cartesian_square(GroupSpec(3, {1, 1}));
  EXPECT_FALSE(t.top_left.concrete);
  EXPECT_EQ(t.bottom_left.fp_dim, 9u);
  EXPECT_EQ(t.bottom_right.fp_dim, 8u);
  EXPECT_FALSE(t.commutes);
}

TEST(Decomposition, StatementMentionsFactors) {
  auto rep = k2_relative_structure(GroupSpec(3, {1, 1}), Route::tensor);
  EXPECT_NE(decomposition_statement(rep).find("Z/3"), std::string::npos);
}

}  // namespace
}  // namespace relk2
