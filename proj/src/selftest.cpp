#include "cpd/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cpd/compound.hpp"
#include "cpd/cpdalg.hpp"
#include "cpd/errors.hpp"
#include "cpd/generate.hpp"
#include "cpd/golden.hpp"
#include "cpd/linalg.hpp"
#include "cpd/multiindex.hpp"
#include "cpd/polarize.hpp"
#include "cpd/rng.hpp"
#include "cpd/verify.hpp"

namespace cpd {

namespace {

constexpr std::uint64_t kSuiteSeedBase = 0x5EED5EEDULL;

double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(1.0, b.norm());
  return (a - b).norm() / scale;
}

/// Helper collecting the first failure message of a suite.
struct Failure {
  bool failed = false;
  std::string detail;

  void check(bool ok, const std::string& message) {
    if (!ok && !failed) {
      failed = true;
      detail = message;
    }
  }
};

SuiteResult suite_compound_transpose_diag(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 100 + inst));
    const int n = 3 + inst % 4;
    const int m = 1 + inst % std::min(3, n);
    const Eigen::MatrixXd a = rng.normal_matrix(n, n + inst % 2);
    f.check(rel_diff(compound(a.transpose(), m),
                     compound(a, m).transpose()) < 1e-12,
            "transpose law failed");
    const Eigen::VectorXd d = rng.normal_matrix(n, 1);
    const Eigen::MatrixXd cd =
        compound(Eigen::MatrixXd(d.asDiagonal()), m);
    f.check(rel_diff(cd, Eigen::MatrixXd(
                             diag_compound_vector(d, m).asDiagonal())) < 1e-12,
            "diagonal law failed");
    f.check(rel_diff(compound(Eigen::MatrixXd::Identity(n, n), m),
                     Eigen::MatrixXd::Identity(binomial(n, m),
                                               binomial(n, m))) == 0.0,
            "identity law failed");
  }
  return {"compound_transpose_diag", !f.failed, f.detail};
}

SuiteResult suite_compound_product(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 200 + inst));
    const int n = 3 + inst % 3;
    const int p = n + inst % 2;
    const int q = 3 + (inst / 2) % 3;
    const int m = 1 + inst % std::min({3, n, p, q});
    const Eigen::MatrixXd a = rng.normal_matrix(n, p);
    const Eigen::MatrixXd b = rng.normal_matrix(p, q);
    f.check(rel_diff(compound(a * b, m), compound(a, m) * compound(b, m)) <
                1e-10,
            "product law failed");
  }
  return {"compound_product", !f.failed, f.detail};
}

SuiteResult suite_symmetrizer_selector(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 300 + inst));
    const int n = 2 + inst % 3;
    const int m = 2 + inst % 3;
    const Eigen::MatrixXd g = symmetrizer(n, m);
    const Eigen::MatrixXd h = selector(n, m);
    f.check(rel_diff(h * g, Eigen::MatrixXd::Identity(g.cols(), g.cols())) <
                1e-13,
            "selector times symmetrizer is not the identity");
    const Eigen::MatrixXd projector = g * h;
    f.check(rel_diff(projector * projector, projector) < 1e-12,
            "symmetric projector is not idempotent");
    Eigen::VectorXd v = rng.normal_matrix(static_cast<int>(g.rows()), 1);
    f.check(rel_diff(projector * v, sym_project(v, n, m)) < 1e-12,
            "projector disagrees with position averaging");
    const int r = m + 1;
    const Eigen::MatrixXd c = rng.normal_matrix(n, r);
    const Eigen::MatrixXd all_rows =
        permanental_compound(c, m, IndexKind::All);
    const Eigen::MatrixXd nondec_rows =
        permanental_compound(c, m, IndexKind::NonDecreasing);
    f.check(rel_diff(all_rows.transpose() * g, nondec_rows.transpose()) <
                1e-11,
            "symmetrizer does not reduce repeated-row permanents");
  }
  return {"symmetrizer_selector", !f.failed, f.detail};
}

SuiteResult suite_null_basis_kr_power_rank(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 400 + inst));
    const int k = 3 + inst % 2;
    const int r = k + 1 + inst % 2;
    const Eigen::MatrixXd c = rng.normal_matrix(k, r);
    const Eigen::MatrixXd b = minor_vector_matrix(c);
    const Eigen::VectorXd norms = b.colwise().norm();
    f.check(norms.minCoeff() > 1e-9 * std::max(1.0, norms.maxCoeff()),
            "zero minor-vector column on a generic factor");
    for (Eigen::Index c1 = 0; c1 < b.cols() && !f.failed; ++c1) {
      for (Eigen::Index c2 = c1 + 1; c2 < b.cols(); ++c2) {
        f.check(!collinear(b.col(c1), b.col(c2), 1e-6),
                "collinear minor-vector columns on a generic factor");
      }
    }
    const int m = r - k + 2;
    Eigen::MatrixXd power = b;
    for (int l = 1; l < m - 1; ++l) power = khatri_rao(b, power);
    f.check(numerical_rank(power, 1e-9) == static_cast<int>(b.cols()),
            "power factor lost full column rank");
  }
  return {"null_basis_kr_power_rank", !f.failed, f.detail};
}

SuiteResult suite_permanental_stack_kernel(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    const int k = 3 + inst % 2;
    const int r = k + 1 + inst % 2;
    GenSpec spec;
    spec.i = 6;
    spec.j = 6;
    spec.k = k;
    spec.r = r;
    spec.seed = derive_seed(kSuiteSeedBase, 500 + inst);
    const Cpd cpd = generate_instance(spec);
    const Tensor3 t = compose(cpd);
    const int m = r - k + 2;
    const SvdAnalysis analysis =
        svd_analysis(build_detecting(t, m), 1e-9);
    const long long kernel_dim =
        build_detecting(t, m).cols() - analysis.rank;
    f.check(kernel_dim == binomial(r, k - 1),
            "kernel dimension differs from C(R, K-1)");
    f.check(analysis.gap >= 1e6, "kernel spectral gap below 1e6");
  }
  return {"permanental_stack_kernel", !f.failed, f.detail};
}

SuiteResult suite_null_basis_orthogonality(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 600 + inst));
    const int k = 3 + inst % 3;
    const int r = k + inst % 2;  // includes the square case
    const Eigen::MatrixXd c = rng.normal_matrix(k, r);
    const BcCheckResult res = check_bc_properties(c);
    f.check(res.generator_orthogonality, "generator orthogonality failed");
    f.check(res.normals_match, "subset normals do not match columns");
    f.check(res.square_mirror_identity, "square mirror identity failed");
  }
  return {"null_basis_orthogonality", !f.failed, f.detail};
}

SuiteResult suite_null_basis_zero_pattern(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 700 + inst));
    const int k = 3 + inst % 2;
    const int r = k + 1 + inst % 2;
    const Eigen::MatrixXd c = rng.normal_matrix(k, r);
    const BcCheckResult res = check_bc_properties(c);
    f.check(res.row_zero_pattern, "row zero pattern failed");
    if (res.recoverable_direction_count.has_value()) {
      f.check(*res.recoverable_direction_count == r,
              "orthogonality scan found a direction count != R");
    }
  }
  return {"null_basis_zero_pattern", !f.failed, f.detail};
}

SuiteResult suite_polarized_compound_laws(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 800 + inst));
    const int m = 2 + inst % 2;
    const int rows = m + 1 + inst % 2;
    const int cols = m + 1 + (inst / 2) % 2;
    std::vector<Eigen::MatrixXd> args;
    for (int l = 0; l < m; ++l) args.push_back(rng.normal_matrix(rows, cols));

    double factorial = 1.0;
    for (int l = 2; l <= m; ++l) factorial *= l;
    const std::vector<Eigen::MatrixXd> repeated(
        static_cast<std::size_t>(m), args[0]);
    f.check(rel_diff(polarized_compound(repeated),
                     factorial * compound(args[0], m)) < 1e-11,
            "repeated-argument law failed");

    // Multilinearity in the first argument.
    const double alpha = rng.normal();
    const double beta = rng.normal();
    const Eigen::MatrixXd extra = rng.normal_matrix(rows, cols);
    std::vector<Eigen::MatrixXd> mixed = args;
    mixed[0] = alpha * args[0] + beta * extra;
    std::vector<Eigen::MatrixXd> other = args;
    other[0] = extra;
    f.check(rel_diff(polarized_compound(mixed),
                     alpha * polarized_compound(args) +
                         beta * polarized_compound(other)) < 1e-10,
            "multilinearity failed");

    // Symmetry under swapping two arguments.
    if (m >= 2) {
      std::vector<Eigen::MatrixXd> swapped = args;
      std::swap(swapped[0], swapped[1]);
      f.check(rel_diff(polarized_compound(swapped),
                       polarized_compound(args)) < 1e-11,
              "argument symmetry failed");
    }

    // Diagonal arguments: entries are permanents of the column bundle.
    const int n = m + 2;
    Eigen::MatrixXd bundle(n, m);
    std::vector<Eigen::MatrixXd> diags;
    for (int l = 0; l < m; ++l) {
      const Eigen::VectorXd d = rng.normal_matrix(n, 1);
      bundle.col(l) = d;
      diags.push_back(Eigen::MatrixXd(d.asDiagonal()));
    }
    const Eigen::MatrixXd phi = polarized_compound(diags);
    const Eigen::MatrixXd expected_diag =
        permanental_compound(bundle, m, IndexKind::Strict);
    f.check(rel_diff(phi, Eigen::MatrixXd(Eigen::VectorXd(expected_diag.col(0))
                                              .asDiagonal())) < 1e-11,
            "diagonal-argument law failed");
  }
  return {"polarized_compound_laws", !f.failed, f.detail};
}

SuiteResult suite_polarized_product_rule(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 900 + inst));
    const int m = 2 + inst % 2;
    const int i = m + 1 + inst % 2;
    const int j = m + 1 + (inst / 2) % 2;
    const int r = m + 1 + (inst / 3) % 2;
    const Eigen::MatrixXd a = rng.normal_matrix(i, r);
    const Eigen::MatrixXd b = rng.normal_matrix(j, r);
    Eigen::MatrixXd bundle(r, m);
    std::vector<Eigen::MatrixXd> slices;
    for (int l = 0; l < m; ++l) {
      const Eigen::VectorXd d = rng.normal_matrix(r, 1);
      bundle.col(l) = d;
      slices.push_back(a * d.asDiagonal() * b.transpose());
    }
    const Eigen::VectorXd perms =
        permanental_compound(bundle, m, IndexKind::Strict).col(0);
    const Eigen::MatrixXd factored =
        compound(a, m) * perms.asDiagonal() * compound(b, m).transpose();
    f.check(rel_diff(polarized_compound(slices), factored) < 1e-10,
            "factored form of the polarized compound failed");
  }
  return {"polarized_product_rule", !f.failed, f.detail};
}

SuiteResult suite_detecting_factorization(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    Rng rng(derive_seed(kSuiteSeedBase, 1000 + inst));
    const int m = 2 + inst % 2;
    const int i = m + 2;
    const int j = m + 1 + inst % 2;
    const int k = 2 + inst % 3;
    const int r = m + 1 + (inst / 2) % 2;
    Cpd cpd;
    cpd.A = rng.normal_matrix(i, r);
    cpd.B = rng.normal_matrix(j, r);
    cpd.C = rng.normal_matrix(k, r);
    const Tensor3 t = compose(cpd);
    const Eigen::MatrixXd kr =
        khatri_rao(compound(cpd.B, m), compound(cpd.A, m));
    f.check(
        rel_diff(build_detecting(t, m),
                 kr * permanental_compound(cpd.C, m, IndexKind::NonDecreasing)
                          .transpose()) < 1e-11,
        "detecting matrix does not match its factored form");
    f.check(
        rel_diff(build_detecting(t, m, IndexKind::All),
                 kr * permanental_compound(cpd.C, m, IndexKind::All)
                          .transpose()) < 1e-11,
        "redundant detecting matrix does not match its factored form");
    f.check(rel_diff(build_detecting(t, m, IndexKind::All) *
                         symmetrizer(k, m),
                     build_detecting(t, m)) < 1e-11,
            "symmetrizing the redundant columns does not reduce them");
  }
  return {"detecting_factorization", !f.failed, f.detail};
}

SuiteResult suite_pair_rank_union(int instances) {
  Failure f;
  for (int inst = 0; inst < instances && !f.failed; ++inst) {
    const int k = 3 + inst % 2;
    const int r = k + 1;
    const int m = r - k + 2;  // always 3
    GenSpec spec;
    spec.i = 5;
    spec.j = 5;
    spec.k = k;
    spec.r = r;
    spec.seed = derive_seed(kSuiteSeedBase, 1100 + inst);
    const Cpd cpd = generate_instance(spec);
    const Tensor3 t = compose(cpd);
    const Eigen::MatrixXd f_true =
        normalize_columns(minor_vector_matrix(cpd.C));
    const int n_cols = static_cast<int>(f_true.cols());
    const Eigen::MatrixXd mixed = matricize(t) * f_true;

    std::vector<std::pair<int, int>> accepted;
    int disagreement = 0;
    for (int a = 0; a < n_cols; ++a) {
      for (int b = a + 1; b < n_cols; ++b) {
        // Test (a): zero rows of [C'f_a, C'f_b].
        const Eigen::VectorXd ya = cpd.C.transpose() * f_true.col(a);
        const Eigen::VectorXd yb = cpd.C.transpose() * f_true.col(b);
        int zero_rows = 0;
        for (int row = 0; row < r; ++row) {
          if (std::abs(ya(row)) < 1e-9 && std::abs(yb(row)) < 1e-9) {
            ++zero_rows;
          }
        }
        const bool test_rows = (zero_rows == k - 2);
        // Test (b): both stacked matrices have rank m.
        Eigen::MatrixXd va = Eigen::Map<const Eigen::Matrix<
            double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            Eigen::VectorXd(mixed.col(a)).data(), 5, 5);
        Eigen::MatrixXd vb = Eigen::Map<const Eigen::Matrix<
            double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            Eigen::VectorXd(mixed.col(b)).data(), 5, 5);
        Eigen::MatrixXd wide(5, 10);
        wide << va, vb;
        Eigen::MatrixXd tall(10, 5);
        tall << va, vb;
        const bool test_ranks = numerical_rank(wide, 1e-9) == m &&
                                numerical_rank(tall, 1e-9) == m;
        if (test_rows != test_ranks) ++disagreement;
        if (test_ranks) accepted.emplace_back(a, b);
      }
    }
    f.check(disagreement == 0,
            "zero-row and rank pair tests disagree on some pair");
    f.check(static_cast<long long>(accepted.size()) ==
                binomial(r, m) * binomial(m, 2),
            "accepted pair count differs from C(R, m) * C(m, 2)");

    // Test (c): accepted pairs are solvable at rank m, a rejected pair is
    // not (it exceeds rank m).
    int solved = 0;
    for (std::size_t idx = 0; idx < accepted.size() && solved < 3; ++idx) {
      Tensor3 pair_tensor(5, 5, 2);
      pair_tensor.set_slice(
          0, Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                            Eigen::Dynamic, Eigen::RowMajor>>(
                 Eigen::VectorXd(mixed.col(accepted[idx].first)).data(), 5, 5));
      pair_tensor.set_slice(
          1, Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                            Eigen::Dynamic, Eigen::RowMajor>>(
                 Eigen::VectorXd(mixed.col(accepted[idx].second)).data(), 5,
                 5));
      try {
        const Cpd sol = cpd_gevd(pair_tensor, m,
                                 derive_seed(spec.seed, 50 + idx));
        f.check(residual(pair_tensor, sol) <= 1e-8,
                "accepted pair solved with a large residual");
        ++solved;
      } catch (const CpdError& e) {
        f.check(false, std::string("accepted pair failed to solve: ") +
                           e.what());
      }
    }
    // One rejected pair must fail the rank-m pencil (when any exists).
    for (int a = 0; a < n_cols && !f.failed; ++a) {
      bool found = false;
      for (int b = a + 1; b < n_cols; ++b) {
        if (std::find(accepted.begin(), accepted.end(),
                      std::make_pair(a, b)) == accepted.end()) {
          Tensor3 pair_tensor(5, 5, 2);
          pair_tensor.set_slice(
              0,
              Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                             Eigen::Dynamic, Eigen::RowMajor>>(
                  Eigen::VectorXd(mixed.col(a)).data(), 5, 5));
          pair_tensor.set_slice(
              1,
              Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                             Eigen::Dynamic, Eigen::RowMajor>>(
                  Eigen::VectorXd(mixed.col(b)).data(), 5, 5));
          bool failed_as_expected = false;
          try {
            cpd_gevd(pair_tensor, m, derive_seed(spec.seed, 99));
          } catch (const CpdError&) {
            failed_as_expected = true;
          }
          f.check(failed_as_expected,
                  "a rejected pair still solved at rank m");
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  return {"pair_rank_union", !f.failed, f.detail};
}

}  // namespace

std::vector<SuiteResult> run_property_suites(int instances_per_suite) {
  const int n = instances_per_suite;
  return {
      suite_compound_transpose_diag(n),
      suite_compound_product(n),
      suite_symmetrizer_selector(n),
      suite_null_basis_kr_power_rank(n),
      suite_permanental_stack_kernel(n),
      suite_null_basis_orthogonality(n),
      suite_null_basis_zero_pattern(n),
      suite_polarized_compound_laws(n),
      suite_polarized_product_rule(n),
      suite_detecting_factorization(n),
      suite_pair_rank_union(n),
  };
}

namespace {

SuiteResult frozen_reference_checks() {
  Failure f;
  const Tensor3 t = golden::worked_tensor();
  const Cpd ref = golden::worked_factors();
  f.check(residual(t, ref) < 1e-14, "reference factors do not compose");
  f.check(rel_diff(build_detecting(t, 3), golden::worked_detecting()) < 1e-12,
          "detecting matrix differs from the frozen reference");
  f.check((golden::worked_detecting() * golden::worked_kernel()).norm() <
              1e-12,
          "frozen kernel basis is not annihilated");
  try {
    for (const Algorithm algorithm : {Algorithm::Alg1, Algorithm::Alg2}) {
      CpdOptions options;
      options.algorithm = algorithm;
      options.seed = 7;
      options.tol.residual = 1e-9;
      const CpdResult result = decompose(t, 5, options);
      const MatchResult match = match_factors(result.cpd, ref);
      f.check(match.max_column_error <= 1e-8,
              "end-to-end factor recovery error above 1e-8");
      f.check(result.final_residual <= 1e-10,
              "end-to-end residual above 1e-10");
    }
  } catch (const CpdError& e) {
    f.check(false, std::string("end-to-end run failed: ") + e.what());
  }
  return {"frozen_reference_end_to_end", !f.failed, f.detail};
}

}  // namespace

bool run_selftest(bool full, std::ostream& out) {
  const int instances = full ? 40 : 20;
  std::vector<SuiteResult> results = run_property_suites(instances);
  if (full) results.push_back(frozen_reference_checks());
  bool all = true;
  for (const SuiteResult& result : results) {
    out << (result.passed ? "PASS " : "FAIL ") << result.name;
    if (!result.passed) out << "  (" << result.detail << ")";
    out << '\n';
    all = all && result.passed;
  }
  out << (all ? "selftest: all suites passed"
              : "selftest: at least one suite failed")
      << '\n';
  return all;
}

}  // namespace cpd
