#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "cpd/errors.hpp"
#include "cpd/generate.hpp"
#include "cpd/gevd.hpp"
#include "cpd/rng.hpp"
#include "cpd/tensor.hpp"
#include "cpd/verify.hpp"

namespace {

using cpd::compose;
using cpd::Cpd;
using cpd::cpd_gevd;
using cpd::CpdError;
using cpd::Errc;
using cpd::Rng;
using cpd::Tensor3;

TEST(PencilCpd, TinyExactInstance) {
  Cpd ref;
  ref.A = Eigen::MatrixXd::Identity(2, 2);
  ref.B = Eigen::MatrixXd::Identity(2, 2);
  ref.C.resize(2, 2);
  ref.C << 1, 1, 1, 2;
  const Tensor3 t = compose(ref);
  const Cpd est = cpd_gevd(t, 2, 5);
  const auto match = cpd::match_factors(est, ref);
  EXPECT_LT(match.max_column_error, 1e-10);
  EXPECT_LT(cpd::residual(t, est), 1e-12);
}

TEST(PencilCpd, SweepOverShapesAndRanks) {
  // Shapes drawn over I, J in 4..8, K in 2..6, R <= min(I, J); exact
  // instances must come back with tight factors and residuals.
  Rng shape_rng(2024);
  for (int inst = 0; inst < 60; ++inst) {
    const int i = 4 + static_cast<int>(shape_rng.raw() % 5);
    const int j = 4 + static_cast<int>(shape_rng.raw() % 5);
    const int k = 2 + static_cast<int>(shape_rng.raw() % 5);
    const int r =
        2 + static_cast<int>(shape_rng.raw() %
                             static_cast<std::uint64_t>(std::min(i, j) - 1));
    cpd::GenSpec spec;
    spec.i = i;
    spec.j = j;
    spec.k = k;
    spec.r = r;
    spec.seed = cpd::derive_seed(7000, static_cast<std::uint64_t>(inst));
    const Cpd ref = cpd::generate_instance(spec);
    const Tensor3 t = compose(ref);
    const Cpd est = cpd_gevd(t, r, spec.seed);
    const auto match = cpd::match_factors(est, ref);
    EXPECT_LT(match.max_column_error, 1e-8)
        << "inst=" << inst << " shape " << i << "x" << j << "x" << k
        << " rank " << r;
    EXPECT_LT(cpd::residual(t, est), 1e-10) << "inst=" << inst;
  }
}

TEST(PencilCpd, DeterministicPerSeed) {
  cpd::GenSpec spec;
  spec.i = 5;
  spec.j = 6;
  spec.k = 4;
  spec.r = 4;
  spec.seed = 31337;
  const Tensor3 t = compose(cpd::generate_instance(spec));
  const Cpd one = cpd_gevd(t, 4, 99);
  const Cpd two = cpd_gevd(t, 4, 99);
  EXPECT_EQ((one.A - two.A).norm(), 0.0);
  EXPECT_EQ((one.B - two.B).norm(), 0.0);
  EXPECT_EQ((one.C - two.C).norm(), 0.0);
}

TEST(PencilCpd, OutputColumnConvention) {
  cpd::GenSpec spec;
  spec.i = 4;
  spec.j = 5;
  spec.k = 3;
  spec.r = 3;
  spec.seed = 4242;
  const Tensor3 t = compose(cpd::generate_instance(spec));
  const Cpd est = cpd_gevd(t, 3, 11);
  for (int col = 0; col < 3; ++col) {
    EXPECT_NEAR(est.A.col(col).norm(), 1.0, 1e-12);
    EXPECT_NEAR(est.B.col(col).norm(), 1.0, 1e-12);
    int arg_a = 0, arg_b = 0;
    est.A.col(col).cwiseAbs().maxCoeff(&arg_a);
    est.B.col(col).cwiseAbs().maxCoeff(&arg_b);
    EXPECT_GT(est.A(arg_a, col), 0.0);
    EXPECT_GT(est.B(arg_b, col), 0.0);
  }
}

TEST(PencilCpd, RejectsInvalidRank) {
  const Tensor3 t = compose(cpd::generate_instance({4, 4, 3, 3, 77, {}}));
  EXPECT_THROW(cpd_gevd(t, 0, 1), CpdError);
  try {
    cpd_gevd(t, 5, 1);  // > min(I, J)
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::InvalidDims);
    EXPECT_TRUE(e.is_input_error());
  }
}

TEST(PencilCpd, DetectsRankMismatch) {
  // A rank-2 tensor requested at rank 3: the compressions cannot reach
  // numerical rank 3.
  const Cpd ref = cpd::generate_instance({5, 5, 4, 2, 123, {}});
  const Tensor3 t = compose(ref);
  try {
    cpd_gevd(t, 3, 1);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::RankMismatch);
    EXPECT_FALSE(e.is_input_error());
  }
}

TEST(PencilCpd, DetectsRepeatedThirdFactorColumn) {
  // Two equal columns of C make the pencil eigenvalue tuples collide for
  // every mixture; the decomposition is not unique and must be refused.
  Rng rng(314);
  Cpd ref;
  ref.A = rng.normal_matrix(4, 3);
  ref.B = rng.normal_matrix(4, 3);
  ref.C = rng.normal_matrix(3, 3);
  ref.C.col(2) = ref.C.col(0);
  const Tensor3 t = compose(ref);
  try {
    cpd_gevd(t, 3, 5);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::ComplexEigenvalues);
  }
}

TEST(PencilCpd, RefusesNoiseTensor) {
  // An unstructured tensor has no exact rank-4 decomposition; the solver
  // must fail rather than return a bad fit.
  Rng rng(2718);
  Tensor3 t(4, 4, 3);
  for (int k = 0; k < 3; ++k) t.set_slice(k, rng.normal_matrix(4, 4));
  try {
    cpd_gevd(t, 4, 3);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_FALSE(e.is_input_error());
    EXPECT_TRUE(e.code() == Errc::ResidualTooLarge ||
                e.code() == Errc::ComplexEigenvalues)
        << "got " << cpd::errc_name(e.code());
  }
}

TEST(PencilCpd, ScaleConventionLeavesMagnitudeInC) {
  cpd::GenSpec spec;
  spec.i = 5;
  spec.j = 5;
  spec.k = 4;
  spec.r = 4;
  spec.seed = 808;
  const Cpd ref = cpd::generate_instance(spec);
  Tensor3 t = compose(ref);
  // Rescale the whole tensor; A and B stay unit, C carries the factor.
  const Cpd base = cpd_gevd(t, 4, 21);
  Tensor3 scaled = t;
  for (int k = 0; k < 4; ++k) scaled.set_slice(k, 10.0 * t.slice(k));
  const Cpd est = cpd_gevd(scaled, 4, 21);
  // The triple with a 10x third factor composes the scaled tensor...
  const auto match = cpd::match_factors(
      est, {base.A, base.B, Eigen::MatrixXd(10.0 * base.C)});
  EXPECT_LT(match.max_column_error, 1e-8);
  // ...while A and B keep their unit-column convention.
  for (int col = 0; col < 4; ++col) {
    EXPECT_NEAR(est.A.col(col).norm(), 1.0, 1e-12);
    EXPECT_NEAR(est.B.col(col).norm(), 1.0, 1e-12);
  }
  EXPECT_NEAR(est.C.norm() / base.C.norm(), 10.0, 1e-6);
}

}  // namespace
