#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "cpd/cpdalg.hpp"
#include "cpd/errors.hpp"
#include "cpd/generate.hpp"
#include "cpd/golden.hpp"
#include "cpd/linalg.hpp"
#include "cpd/multiindex.hpp"
#include "cpd/rng.hpp"
#include "cpd/tensor.hpp"
#include "cpd/verify.hpp"

namespace {

using cpd::Algorithm;
using cpd::compose;
using cpd::Cpd;
using cpd::CpdError;
using cpd::CpdOptions;
using cpd::decompose;
using cpd::DiagnosticError;
using cpd::Errc;
using cpd::FMatrix;
using cpd::KcVerdict;
using cpd::Tensor3;

/// Worst |cos| over a greedy best-first bijective matching of the columns
/// of est onto the columns of ref; 0 when no bijection exists.
double column_alignment(const Eigen::MatrixXd& est,
                        const Eigen::MatrixXd& ref) {
  if (est.cols() != ref.cols()) return 0.0;
  const int n = static_cast<int>(ref.cols());
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  double worst = 1.0;
  for (int r = 0; r < n; ++r) {
    int best = -1;
    double best_cos = -1.0;
    for (int e = 0; e < n; ++e) {
      if (used[static_cast<std::size_t>(e)]) continue;
      const double c = cpd::abs_cosine(est.col(e), ref.col(r));
      if (c > best_cos) {
        best_cos = c;
        best = e;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    worst = std::min(worst, best_cos);
  }
  return worst;
}

Eigen::MatrixXd fit_third_factor(const Tensor3& t, const Eigen::MatrixXd& a,
                                 const Eigen::MatrixXd& b) {
  return cpd::lstsq(cpd::khatri_rao(a, b), cpd::matricize(t)).transpose();
}

TEST(Phase1, GoldenMinorVectorRecovery) {
  const Tensor3 t = cpd::golden::worked_tensor();
  const auto [f, report] = cpd::phase1_find_f(t, 5, 17);
  EXPECT_EQ(f.body.rows(), 4);
  EXPECT_EQ(f.body.cols(), 10);
  EXPECT_EQ(f.rank_target, 5);
  EXPECT_EQ(report.kernel_dim_found, 10);
  EXPECT_EQ(report.kernel_dim_expected, 10);
  EXPECT_EQ(report.kc_verdict, KcVerdict::EqualsK);
  EXPECT_TRUE(report.compound_kr_full_rank);
  EXPECT_GE(report.singular_value_gap, 1e8);
  const Eigen::MatrixXd expected =
      cpd::normalize_columns(cpd::golden::worked_f());
  EXPECT_GT(column_alignment(f.body, expected), 1.0 - 1e-10);
}

TEST(Phase1, SquareThirdFactorOracle) {
  // With K = R the third factor is square and the null-space directions
  // are exactly the minor vectors of C.
  const Cpd ref = cpd::generate_instance({5, 5, 4, 4, 61, {}});
  const Tensor3 t = compose(ref);
  const auto [f, report] = cpd::phase1_find_f(t, 4, 3);
  EXPECT_EQ(report.kc_verdict, KcVerdict::EqualsK);
  const Eigen::MatrixXd expected =
      cpd::normalize_columns(cpd::minor_vector_matrix(ref.C));
  EXPECT_GT(column_alignment(f.body, expected), 1.0 - 1e-8);
}

TEST(Phase1, WrongRankIsDiagnosed) {
  const Tensor3 t = cpd::golden::worked_tensor();
  try {
    cpd::phase1_find_f(t, 4, 1);  // true rank is 5
    FAIL() << "expected DiagnosticError";
  } catch (const DiagnosticError& e) {
    EXPECT_EQ(e.code(), Errc::KernelDimMismatch);
    EXPECT_EQ(e.report().kernel_dim_expected, 4);  // C(4, 3)
    EXPECT_NE(e.report().kernel_dim_found, e.report().kernel_dim_expected);
    EXPECT_EQ(e.report().kc_verdict, KcVerdict::Violated);
  }
}

TEST(Phase2, TinyHandInstance) {
  // K = 2: minor vectors are the 90-degree rotations of the columns of C,
  // and the subset scan inverts the rotation.
  Eigen::MatrixXd c(2, 3);
  c << 1, 0, 1,
       0, 1, 1;
  FMatrix f;
  f.body = cpd::normalize_columns(cpd::minor_vector_matrix(c));
  f.rank_target = 3;
  const Eigen::MatrixXd cols = cpd::phase2_columns_of_c(f, 3);
  ASSERT_EQ(cols.rows(), 2);
  ASSERT_EQ(cols.cols(), 3);
  EXPECT_GT(column_alignment(cols, c), 1.0 - 1e-12);
}

TEST(Phase2, GoldenDirections) {
  FMatrix f;
  f.body = cpd::normalize_columns(cpd::golden::worked_f());
  f.rank_target = 5;
  const Eigen::MatrixXd cols = cpd::phase2_columns_of_c(f, 5);
  ASSERT_EQ(cols.cols(), 5);
  EXPECT_GT(column_alignment(cols, cpd::golden::worked_factors().C),
            1.0 - 1e-10);
}

TEST(Phase2, RejectsWrongColumnCount) {
  FMatrix f;
  f.body = cpd::normalize_columns(cpd::golden::worked_f()).leftCols(9);
  f.rank_target = 5;
  try {
    cpd::phase2_columns_of_c(f, 5);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::ColumnMismatch);
  }
}

TEST(Phase3, GoldenFirstTwoFactors) {
  const Tensor3 t = cpd::golden::worked_tensor();
  const Cpd ref = cpd::golden::worked_factors();
  const auto [a, b] = cpd::phase3_ab_given_c(t, ref.C, 23);
  const Eigen::MatrixXd c_fit = fit_third_factor(t, a, b);
  EXPECT_LT(cpd::residual(t, {a, b, c_fit}), 1e-10);
  // Output columns stay aligned with the given third-factor columns.
  for (int r = 0; r < 5; ++r) {
    EXPECT_GT(cpd::abs_cosine(c_fit.col(r), ref.C.col(r)), 1.0 - 1e-8)
        << "column " << r;
  }
  const auto match = cpd::match_factors({a, b, c_fit}, ref);
  EXPECT_LT(match.max_column_error, 1e-8);
}

TEST(Algo2, GoldenPairScan) {
  const Tensor3 t = cpd::golden::worked_tensor();
  const Cpd ref = cpd::golden::worked_factors();
  const auto [f, report] = cpd::phase1_find_f(t, 5, 17);
  const auto result = cpd::algo2_find_ab(t, f, 5, 3);
  // Pairs whose minor-vector index sets share K - 2 = 2 slots:
  // C(5, 2) * C(3, 2) = 30 of them, every one solvable on exact data.
  EXPECT_EQ(result.pair_set.size(), 30u);
  EXPECT_EQ(result.pairs_solved, 30);
  ASSERT_EQ(result.cluster_sizes.size(), 5u);
  for (int size : result.cluster_sizes) EXPECT_EQ(size, 18);
  const Eigen::MatrixXd c_fit = fit_third_factor(t, result.a, result.b);
  const auto match = cpd::match_factors({result.a, result.b, c_fit}, ref);
  EXPECT_LT(match.max_column_error, 1e-8);
  EXPECT_LT(cpd::residual(t, {result.a, result.b, c_fit}), 1e-10);
}

TEST(Algo2, StopAtCoverageStopsEarly) {
  const Tensor3 t = cpd::golden::worked_tensor();
  const Cpd ref = cpd::golden::worked_factors();
  const auto [f, report] = cpd::phase1_find_f(t, 5, 17);
  const auto result = cpd::algo2_find_ab(t, f, 5, 3, {}, true);
  EXPECT_EQ(result.pair_set.size(), 30u);  // the scan itself is unchanged
  EXPECT_LT(result.pairs_solved, 30);
  const Eigen::MatrixXd c_fit = fit_third_factor(t, result.a, result.b);
  const auto match = cpd::match_factors({result.a, result.b, c_fit}, ref);
  EXPECT_LT(match.max_column_error, 1e-8);
}

TEST(Decompose, GoldenAutoUsesSubsetScan) {
  const Tensor3 t = cpd::golden::worked_tensor();
  const auto result = decompose(t, 5, {});
  EXPECT_EQ(result.algorithm_used, Algorithm::Alg1);
  EXPECT_FALSE(result.algo2.has_value());
  EXPECT_EQ(result.reduced_k, 4);
  EXPECT_FALSE(result.mixture.has_value());
  EXPECT_EQ(result.report.kc_verdict, KcVerdict::EqualsK);
  EXPECT_LE(result.final_residual, 1e-10);
  const auto match =
      cpd::match_factors(result.cpd, cpd::golden::worked_factors());
  EXPECT_LT(match.max_column_error, 1e-8);
}

TEST(Decompose, GoldenForcedPairScan) {
  const Tensor3 t = cpd::golden::worked_tensor();
  CpdOptions opt;
  opt.algorithm = Algorithm::Alg2;
  opt.seed = 5;
  const auto result = decompose(t, 5, opt);
  EXPECT_EQ(result.algorithm_used, Algorithm::Alg2);
  ASSERT_TRUE(result.algo2.has_value());
  EXPECT_EQ(result.algo2->pair_set.size(), 30u);
  ASSERT_EQ(result.algo2->cluster_sizes.size(), 5u);
  for (int size : result.algo2->cluster_sizes) EXPECT_EQ(size, 18);
  EXPECT_LE(result.final_residual, 1e-10);
  const auto match =
      cpd::match_factors(result.cpd, cpd::golden::worked_factors());
  EXPECT_LT(match.max_column_error, 1e-8);
}

TEST(Decompose, GenericSubsetScanInstance) {
  // C(R, K-1) = C(5, 3) = 10 <= 20 keeps Auto on the subset scan.
  const Cpd ref = cpd::generate_instance({5, 5, 4, 5, 62, {}});
  const Tensor3 t = compose(ref);
  CpdOptions opt;
  opt.seed = 4;
  const auto result = decompose(t, 5, opt);
  EXPECT_EQ(result.algorithm_used, Algorithm::Alg1);
  const auto match = cpd::match_factors(result.cpd, ref);
  EXPECT_LT(match.max_column_error, 1e-8);
  EXPECT_LE(result.final_residual, 1e-8);
}

TEST(Decompose, AutoSwitchesToPairScanWhenSubsetsExplode) {
  // C(9, 6) = 84 > 20: Auto must take the pair scan, and the full scan
  // accepts exactly C(9, 4) * C(4, 2) = 756 pairs.
  const Cpd ref = cpd::generate_instance({6, 6, 7, 9, 1, {}});
  const Tensor3 t = compose(ref);
  CpdOptions opt;
  opt.seed = cpd::derive_seed(1, 99);
  const auto result = decompose(t, 9, opt);
  EXPECT_EQ(result.algorithm_used, Algorithm::Alg2);
  ASSERT_TRUE(result.algo2.has_value());
  EXPECT_EQ(result.algo2->pair_set.size(), 756u);
  const auto match = cpd::match_factors(result.cpd, ref);
  EXPECT_LT(match.max_column_error, 1e-6);
  EXPECT_LE(result.final_residual, 1e-8);
}

TEST(Decompose, DeclaredKcMixesSlices) {
  // Third factor 8 x 6 with column rank 5 and k-rank 4: the driver first
  // reduces the third mode to 5, then mixes down to the declared k-rank.
  cpd::GenSpec spec{6, 6, 8, 6, 2, 4};
  const Cpd ref = cpd::generate_instance(spec);
  const Tensor3 t = compose(ref);
  CpdOptions opt;
  opt.seed = cpd::derive_seed(2, 77);
  opt.kc = 4;
  const auto result = decompose(t, 6, opt);
  EXPECT_EQ(result.reduced_k, 5);
  ASSERT_TRUE(result.mixture.has_value());
  EXPECT_EQ(result.mixture->rows(), 4);
  EXPECT_EQ(result.mixture->cols(), 5);
  EXPECT_EQ(result.algorithm_used, Algorithm::Alg1);
  const auto match = cpd::match_factors(result.cpd, ref);
  EXPECT_LT(match.max_column_error, 1e-6);
}

TEST(Decompose, RankTooHighIsDiagnosed) {
  const Tensor3 t = cpd::golden::worked_tensor();
  try {
    decompose(t, 4, {});  // true rank is 5
    FAIL() << "expected DiagnosticError";
  } catch (const DiagnosticError& e) {
    EXPECT_EQ(e.code(), Errc::KernelDimMismatch);
  }
}

TEST(Decompose, DeterministicPerSeed) {
  const Cpd ref = cpd::generate_instance({5, 5, 4, 5, 63, {}});
  const Tensor3 t = compose(ref);
  CpdOptions opt;
  opt.seed = 11;
  const auto one = decompose(t, 5, opt);
  const auto two = decompose(t, 5, opt);
  EXPECT_EQ((one.cpd.A - two.cpd.A).norm(), 0.0);
  EXPECT_EQ((one.cpd.B - two.cpd.B).norm(), 0.0);
  EXPECT_EQ((one.cpd.C - two.cpd.C).norm(), 0.0);
  EXPECT_EQ(one.final_residual, two.final_residual);
}

TEST(Decompose, RejectsBadArguments) {
  const Tensor3 t = cpd::golden::worked_tensor();
  EXPECT_THROW(decompose(t, 1, {}), CpdError);
  Tensor3 tiny(2, 2, 2);
  EXPECT_THROW(decompose(tiny, 5, {}), CpdError);  // R > I*J
  CpdOptions opt;
  opt.kc = 1;
  try {
    decompose(t, 5, opt);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::InvalidDims);
    EXPECT_TRUE(e.is_input_error());
  }
  opt.kc = 5;  // above the reduced third dimension
  EXPECT_THROW(decompose(t, 5, opt), CpdError);
}

}  // namespace
