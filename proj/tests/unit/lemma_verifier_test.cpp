#include "ffgeom/indices.hpp"
#include "ffgeom/lemma_verifier.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ffgeom;

namespace {

using R = Rational;

R get(const CounterexampleReport& r, const std::string& name) {
  for (const auto& [key, value] : r.witness) {
    if (key == name) return value;
  }
  ADD_FAILURE() << "no witness " << name;
  return R(0);
}

std::string dump(const std::vector<CounterexampleReport>& reports) {
  std::ostringstream out;
  write_counterexamples_csv(out, reports);
  return out.str();
}

}  // namespace

TEST(GridValues, ClosedAndHalfOpen) {
  EXPECT_EQ(grid_values(R(0), R(1), R(1, 4)).size(), 5u);
  const auto open = grid_values(R(0), R(1), R(1, 4), true);
  ASSERT_EQ(open.size(), 4u);
  EXPECT_EQ(open.front(), R(1, 4));
  EXPECT_EQ(grid_values(R(1, 3), R(1), R(1, 4)).front(), R(1, 2));
}

TEST(RecursionF1, HoldsOnGrid) {
  EXPECT_TRUE(check_recursion_f1(2, R(1, 4)).empty());
  EXPECT_TRUE(check_recursion_f1(3, R(1, 6)).empty());
}

TEST(RecursionF1, NegativeControlFires) {
  EXPECT_FALSE(check_recursion_f1(2, R(1, 4), {R(1, 10), false}).empty());
}

TEST(RecursionF2, HoldsOnGrid) {
  EXPECT_TRUE(check_recursion_f2(4, 2, R(1, 4)).empty());
  EXPECT_TRUE(check_recursion_f2(5, 3, R(1, 3)).empty());
  EXPECT_FALSE(check_recursion_f2(4, 2, R(1, 4), {R(1, 10), false}).empty());
}

TEST(RecursionM, HoldsOnGridAndControlFires) {
  EXPECT_TRUE(check_recursion_m(4, 2, R(1, 4)).empty());
  EXPECT_TRUE(check_recursion_m(5, 3, R(1, 4)).empty());
  EXPECT_FALSE(check_recursion_m(4, 2, R(1, 4), {R(0), true}).empty());
}

TEST(RecursionM, CounterexamplesReproduceThroughIndices) {
  const auto reports = check_recursion_m(4, 2, R(1, 4), {R(0), true});
  ASSERT_FALSE(reports.empty());
  for (const auto& r : reports) {
    const R a = get(r, "a");
    const R s = get(r, "s");
    const R a1 = get(r, "a1");
    const R s1 = get(r, "s1");
    EXPECT_EQ(r.rhs, marstrand_index(a, s, 4, 2));
    EXPECT_EQ(r.lhs, marstrand_index(a1, s1, 3, 2) + marstrand_index(s1 + a - a1, s, 3, 2));
  }
}

TEST(RecursionF2, CounterexamplesReproduceThroughIndices) {
  const auto reports = check_recursion_f2(4, 2, R(1, 4), {R(1, 10), false});
  for (const auto& r : reports) {
    const R s = get(r, "s");
    const R s1 = get(r, "s1");
    const R top = furstenberg_index(s, get(r, "t2"), 3, 2).value();
    EXPECT_EQ(r.rhs, furstenberg_index(s, get(r, "t"), 4, 2));
    EXPECT_EQ(r.lhs, furstenberg_index(s1, get(r, "t1"), 3, 2) + ExactExponent(std::max(top - s1, R(0))));
  }
}

TEST(IndexProperties, HoldOnGrid) {
  const auto reports = check_index_properties(GridSpec{R(1, 6), {{2, 1}, {3, 1}, {3, 2}, {4, 2}}});
  EXPECT_TRUE(reports.empty()) << dump(reports);
}

TEST(IndexProperties, UnclampedNegativeControlFires) {
  const auto reports = check_index_properties(GridSpec{R(1, 6), {{2, 1}}}, unclamped_type3_functions());
  EXPECT_FALSE(reports.empty());
}

TEST(ClosedForm2d, HoldsAtTwelfths) {
  EXPECT_TRUE(check_closed_form_2d(R(1, 12)).empty());
  EXPECT_FALSE(check_closed_form_2d(R(1, 12), unclamped_type3_functions()).empty());
}

TEST(Checks, DeterministicAcrossJobCounts) {
  const auto one = check_recursion_m(4, 2, R(1, 4), {R(0), true}, 1);
  const auto four = check_recursion_m(4, 2, R(1, 4), {R(0), true}, 4);
  EXPECT_EQ(dump(one), dump(four));
  const GridSpec grid{R(1, 6), {{3, 1}, {4, 2}}};
  EXPECT_EQ(dump(check_index_properties(grid, unclamped_type3_functions(), 1)),
            dump(check_index_properties(grid, unclamped_type3_functions(), 3)));
}

TEST(Checks, CsvFormat) {
  CounterexampleReport r;
  r.lemma = "recursion_m";
  r.n = 4;
  r.k = 2;
  r.witness = {{"a", R(1, 2)}, {"s", R(1)}};
  r.lhs = ExactExponent::negative_infinity();
  r.rhs = ExactExponent(R(1));
  std::ostringstream out;
  write_counterexamples_csv(out, {r});
  EXPECT_NE(out.str().find("a=1/2 s=1/1"), std::string::npos);
  EXPECT_EQ(out.str().rfind("lemma,n,k,witness,lhs,rhs,deficit\n", 0), 0u);
}

TEST(Checks, RejectBadArguments) {
  EXPECT_THROW(check_recursion_f1(1, R(1, 4)), DomainError);
  EXPECT_THROW(check_recursion_m(3, 2, R(1, 4)), DomainError);
  EXPECT_THROW(check_recursion_f2(4, 2, R(0)), DomainError);
}
