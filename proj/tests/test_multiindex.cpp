#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "cpd/errors.hpp"
#include "cpd/multiindex.hpp"

namespace {

using cpd::binomial;
using cpd::CpdError;
using cpd::Errc;
using cpd::IndexFamily;
using cpd::IndexKind;

TEST(Binomial, KnownValues) {
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 5), 1);
  EXPECT_EQ(binomial(5, 3), 10);
  EXPECT_EQ(binomial(9, 6), 84);
  EXPECT_EQ(binomial(10, 5), 252);
  EXPECT_EQ(binomial(52, 5), 2598960);
  EXPECT_EQ(binomial(4, 7), 0);  // k > n
}

TEST(Binomial, PascalIdentity) {
  for (int n = 1; n <= 30; ++n) {
    for (int k = 1; k <= n; ++k) {
      EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k))
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(Binomial, RejectsNegativeArguments) {
  try {
    binomial(-1, 2);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::InvalidDims);
  }
  try {
    binomial(3, -2);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::InvalidDims);
  }
}

TEST(Binomial, OverflowDetected) {
  // C(70, 35) ~ 1.1e20 does not fit in a signed 64-bit integer.
  try {
    binomial(70, 35);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::Overflow);
    EXPECT_TRUE(e.is_input_error());
  }
}

TEST(IndexFamilyTest, StrictTwoOfTwo) {
  const auto fam = IndexFamily::enumerate(IndexKind::Strict, 2, 2);
  ASSERT_EQ(fam.size(), 1);
  EXPECT_EQ(fam.tuple(1), (std::vector<int>{1, 2}));
  EXPECT_EQ(fam.rank({1, 2}), 1);
}

TEST(IndexFamilyTest, NonDecreasingTwoOfTwo) {
  const auto fam = IndexFamily::enumerate(IndexKind::NonDecreasing, 2, 2);
  ASSERT_EQ(fam.size(), 3);
  EXPECT_EQ(fam.tuple(1), (std::vector<int>{1, 1}));
  EXPECT_EQ(fam.tuple(2), (std::vector<int>{1, 2}));
  EXPECT_EQ(fam.tuple(3), (std::vector<int>{2, 2}));
}

TEST(IndexFamilyTest, AllTwoOfTwo) {
  const auto fam = IndexFamily::enumerate(IndexKind::All, 2, 2);
  ASSERT_EQ(fam.size(), 4);
  EXPECT_EQ(fam.tuple(1), (std::vector<int>{1, 1}));
  EXPECT_EQ(fam.tuple(2), (std::vector<int>{1, 2}));
  EXPECT_EQ(fam.tuple(3), (std::vector<int>{2, 1}));
  EXPECT_EQ(fam.tuple(4), (std::vector<int>{2, 2}));
}

TEST(IndexFamilyTest, SizesMatchCountingFormulas) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= 4; ++k) {
      EXPECT_EQ(IndexFamily::enumerate(IndexKind::Strict, k, n).size(),
                binomial(n, k));
      EXPECT_EQ(IndexFamily::enumerate(IndexKind::NonDecreasing, k, n).size(),
                binomial(n + k - 1, k));
      long long power = 1;
      for (int p = 0; p < k; ++p) power *= n;
      EXPECT_EQ(IndexFamily::enumerate(IndexKind::All, k, n).size(), power);
    }
  }
}

TEST(IndexFamilyTest, StrictThreeOfFiveOrderAndRanks) {
  const auto fam = IndexFamily::enumerate(IndexKind::Strict, 3, 5);
  ASSERT_EQ(fam.size(), 10);
  EXPECT_EQ(fam.tuple(1), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(fam.tuple(2), (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(fam.tuple(10), (std::vector<int>{3, 4, 5}));
  // Rank/unrank are mutually inverse across the whole family.
  for (long long i = 1; i <= fam.size(); ++i) {
    EXPECT_EQ(fam.rank(fam.tuple(i)), i);
  }
  // Lexicographic ordering is strict.
  for (long long i = 2; i <= fam.size(); ++i) {
    EXPECT_TRUE(std::lexicographical_compare(
        fam.tuple(i - 1).begin(), fam.tuple(i - 1).end(),
        fam.tuple(i).begin(), fam.tuple(i).end()));
  }
}

TEST(IndexFamilyTest, NonDecreasingThreeOfFour) {
  // The column family of an order-3 detecting matrix over four slices.
  const auto fam = IndexFamily::enumerate(IndexKind::NonDecreasing, 3, 4);
  ASSERT_EQ(fam.size(), 20);
  EXPECT_EQ(fam.tuple(1), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(fam.tuple(2), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(fam.tuple(6), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(fam.tuple(20), (std::vector<int>{4, 4, 4}));
  EXPECT_EQ(fam.rank({2, 3, 4}), 15);
  EXPECT_TRUE(fam.contains({1, 4, 4}));
  EXPECT_FALSE(fam.contains({4, 1, 4}));
}

TEST(IndexFamilyTest, RejectsNonMembers) {
  const auto fam = IndexFamily::enumerate(IndexKind::Strict, 3, 5);
  try {
    fam.rank({2, 1, 3});  // not increasing
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::NotMember);
  }
  EXPECT_THROW(fam.rank({1, 2}), CpdError);        // wrong length
  EXPECT_THROW(fam.rank({0, 1, 2}), CpdError);     // entry below range
  EXPECT_THROW(fam.rank({1, 2, 6}), CpdError);     // entry above range
  EXPECT_THROW(fam.tuple(0), CpdError);            // rank below range
  EXPECT_THROW(fam.tuple(11), CpdError);           // rank above range
}

TEST(IndexFamilyTest, StrictWithLengthBeyondGroundIsEmpty) {
  const auto fam = IndexFamily::enumerate(IndexKind::Strict, 4, 3);
  EXPECT_EQ(fam.size(), 0);
}

TEST(IndexFamilyTest, RejectsBadParameters) {
  EXPECT_THROW(IndexFamily::enumerate(IndexKind::Strict, 0, 3), CpdError);
  EXPECT_THROW(IndexFamily::enumerate(IndexKind::All, 2, 0), CpdError);
  try {
    IndexFamily::enumerate(IndexKind::All, 9, 8);  // 8^9 > 50e6
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

TEST(MultisetPermutations, DistinctEntries) {
  const auto perms = cpd::multiset_permutations({1, 2, 3});
  ASSERT_EQ(perms.size(), 6u);
  std::vector<std::vector<int>> sorted = perms;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_TRUE(std::adjacent_find(sorted.begin(), sorted.end()) ==
              sorted.end());
  for (const auto& p : perms) {
    EXPECT_EQ(cpd::sort_tuple(p), (std::vector<int>{1, 2, 3}));
  }
}

TEST(MultisetPermutations, RepeatedEntriesKeepMultiplicity) {
  // Position permutations are not deduplicated: 3! = 6 entries, each of
  // the 3 distinct arrangements appearing twice.
  const auto perms = cpd::multiset_permutations({1, 2, 2});
  ASSERT_EQ(perms.size(), 6u);
  auto count = [&perms](const std::vector<int>& t) {
    return std::count(perms.begin(), perms.end(), t);
  };
  EXPECT_EQ(count({1, 2, 2}), 2);
  EXPECT_EQ(count({2, 1, 2}), 2);
  EXPECT_EQ(count({2, 2, 1}), 2);
}

TEST(MultisetPermutations, LengthLimits) {
  EXPECT_THROW(cpd::multiset_permutations({}), CpdError);
  EXPECT_THROW(
      cpd::multiset_permutations({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}),
      CpdError);
  EXPECT_EQ(cpd::multiset_permutations({7}).size(), 1u);
}

TEST(SortTuple, SortsCopy) {
  const std::vector<int> t{3, 1, 2, 1};
  EXPECT_EQ(cpd::sort_tuple(t), (std::vector<int>{1, 1, 2, 3}));
  EXPECT_EQ(t, (std::vector<int>{3, 1, 2, 1}));
}

}  // namespace
