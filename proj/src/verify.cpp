#include "cpd/verify.hpp"

#include <algorithm>
#include <cmath>

#include "cpd/compound.hpp"
#include "cpd/errors.hpp"
#include "cpd/linalg.hpp"
#include "cpd/multiindex.hpp"

namespace cpd {

MatchResult match_factors(const Cpd& est, const Cpd& ref,
                          double min_similarity) {
  if (est.A.cols() != est.B.cols() || est.A.cols() != est.C.cols() ||
      ref.A.cols() != ref.B.cols() || ref.A.cols() != ref.C.cols()) {
    throw CpdError(Errc::ColumnMismatch, "factor column counts differ");
  }
  if (est.A.cols() != ref.A.cols() || est.A.rows() != ref.A.rows() ||
      est.B.rows() != ref.B.rows() || est.C.rows() != ref.C.rows()) {
    throw CpdError(Errc::BadShape, "estimate and reference shapes differ");
  }
  const int r = est.rank();

  Eigen::MatrixXd similarity(r, r);
  for (int e = 0; e < r; ++e) {
    for (int t = 0; t < r; ++t) {
      similarity(e, t) = abs_cosine(est.A.col(e), ref.A.col(t)) *
                         abs_cosine(est.B.col(e), ref.B.col(t)) *
                         abs_cosine(est.C.col(e), ref.C.col(t));
    }
  }

  MatchResult out;
  out.permutation.assign(static_cast<std::size_t>(r), -1);
  std::vector<bool> taken(static_cast<std::size_t>(r), false);
  for (int step = 0; step < r; ++step) {
    double best = -1.0;
    int best_e = -1;
    int best_t = -1;
    for (int e = 0; e < r; ++e) {
      if (out.permutation[static_cast<std::size_t>(e)] >= 0) continue;
      for (int t = 0; t < r; ++t) {
        if (taken[static_cast<std::size_t>(t)]) continue;
        if (similarity(e, t) > best) {
          best = similarity(e, t);
          best_e = e;
          best_t = t;
        }
      }
    }
    if (best < min_similarity) {
      throw CpdError(Errc::NoBijection,
                     "no column bijection reaches the similarity threshold");
    }
    out.permutation[static_cast<std::size_t>(best_e)] = best_t;
    taken[static_cast<std::size_t>(best_t)] = true;
    out.min_similarity = std::min(out.min_similarity, best);
  }

  for (int e = 0; e < r; ++e) {
    const int t = out.permutation[static_cast<std::size_t>(e)];
    const auto fit_scale = [](const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y) {
      const double denom = x.squaredNorm();
      return denom > 0.0 ? x.dot(y) / denom : 0.0;
    };
    const double sa = fit_scale(est.A.col(e), ref.A.col(t));
    const double sb = fit_scale(est.B.col(e), ref.B.col(t));
    // The triple scaling must multiply to one; pin C's scale to the others.
    const double sc = (sa != 0.0 && sb != 0.0) ? 1.0 / (sa * sb) : 0.0;
    const auto rel_err = [](const Eigen::VectorXd& scaled,
                            const Eigen::VectorXd& target) {
      const double norm = target.norm();
      const double err = (scaled - target).norm();
      return norm > 0.0 ? err / norm : err;
    };
    out.max_column_error = std::max(
        {out.max_column_error, rel_err(sa * est.A.col(e), ref.A.col(t)),
         rel_err(sb * est.B.col(e), ref.B.col(t)),
         rel_err(sc * est.C.col(e), ref.C.col(t))});
  }
  return out;
}

Eigen::MatrixXd minor_vector_matrix(const Eigen::MatrixXd& c) {
  const int k = static_cast<int>(c.rows());
  const int r = static_cast<int>(c.cols());
  if (k < 2 || r < k - 1) {
    throw CpdError(Errc::InvalidDims,
                   "minor_vector_matrix requires K >= 2 and R >= K - 1");
  }
  return mirror_matrix(k) * compound(c, k - 1);
}

BcCheckResult check_bc_properties(const Eigen::MatrixXd& c, double tol) {
  const int k = static_cast<int>(c.rows());
  const int r = static_cast<int>(c.cols());
  const Eigen::MatrixXd b = minor_vector_matrix(c);
  const IndexFamily subsets = IndexFamily::enumerate(IndexKind::Strict, k - 1, r);
  BcCheckResult out;

  // Each column of b is orthogonal to the generating columns of C.
  const Eigen::MatrixXd products = c.transpose() * b;  // R x C(R, K-1)
  for (long long s = 1; s <= subsets.size(); ++s) {
    for (int j : subsets.tuple(s)) {
      if (std::abs(products(j - 1, s - 1)) >
          tol * std::max(1.0, c.col(j - 1).norm() * b.col(s - 1).norm())) {
        out.generator_orthogonality = false;
      }
    }
  }

  // Full-rank subsets: the unit normal of span{c_j : j in S} is collinear
  // with column S of b.
  for (long long s = 1; s <= subsets.size(); ++s) {
    Eigen::MatrixXd chosen(k, k - 1);
    for (int l = 0; l < k - 1; ++l) {
      chosen.col(l) = c.col(subsets.tuple(s)[static_cast<std::size_t>(l)] - 1);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(chosen, Eigen::ComputeFullU);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-9 * sv(0))) continue;  // degenerate subset
    const Eigen::VectorXd normal = svd.matrixU().col(k - 1);
    if (b.col(s - 1).norm() <= tol) {
      out.normals_match = false;  // full-rank subset must give a nonzero column
      continue;
    }
    if (abs_cosine(normal, b.col(s - 1)) < 1.0 - 1e-9) {
      out.normals_match = false;
    }
  }

  // Row r of C' b vanishes exactly at the C(R-1, K-2) subsets containing r.
  for (int row = 1; row <= r; ++row) {
    long long zeros = 0;
    for (long long s = 1; s <= subsets.size(); ++s) {
      const bool contains =
          std::find(subsets.tuple(s).begin(), subsets.tuple(s).end(), row) !=
          subsets.tuple(s).end();
      const bool is_zero =
          std::abs(products(row - 1, s - 1)) <=
          tol * std::max(1.0, c.col(row - 1).norm() * b.col(s - 1).norm());
      if (contains && !is_zero) out.row_zero_pattern = false;
      if (is_zero) ++zeros;
    }
    if (zeros != binomial(r - 1, k - 2)) out.row_zero_pattern = false;
  }

  // Square case: C' b = det(C) * mirror.
  if (k == r) {
    const Eigen::MatrixXd expected =
        c.determinant() * mirror_matrix(k);
    const double scale = std::max(1.0, expected.cwiseAbs().maxCoeff());
    if (((products - expected).cwiseAbs().maxCoeff()) > 1e3 * tol * scale) {
      out.square_mirror_identity = false;
    }
  }

  // Exhaustive orthogonality scan (the phase-2 rule applied to the exact
  // minor-vector matrix) when cheap: counts distinct accepted directions.
  const long long n_cols = subsets.size();
  bool cheap = true;
  long long combos = 1;
  for (int l = 0; l < k - 1; ++l) {
    combos *= (n_cols - l);
    combos /= (l + 1);
    if (combos > 5000) {
      cheap = false;
      break;
    }
  }
  if (cheap) {
    const Eigen::MatrixXd bn = normalize_columns(b);
    const long long quota = binomial(r - 1, k - 2);
    std::vector<Eigen::VectorXd> accepted;
    std::vector<int> subset(static_cast<std::size_t>(k - 1));
    for (int l = 0; l < k - 1; ++l) subset[static_cast<std::size_t>(l)] = l;
    while (true) {
      Eigen::MatrixXd chosen(k, k - 1);
      for (int l = 0; l < k - 1; ++l) {
        chosen.col(l) = bn.col(subset[static_cast<std::size_t>(l)]);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(chosen, Eigen::ComputeFullU);
      const Eigen::VectorXd& sv = svd.singularValues();
      if (sv(sv.size() - 1) > 1e-9 * sv(0)) {
        const Eigen::VectorXd x = svd.matrixU().col(k - 1);
        long long hits = 0;
        for (long long cc = 0; cc < n_cols; ++cc) {
          if (std::abs(x.dot(bn.col(cc))) <= 1e-9) ++hits;
        }
        if (hits >= quota) {
          bool duplicate = false;
          for (const Eigen::VectorXd& u : accepted) {
            if (std::abs(x.dot(u)) >= 1.0 - 1e-6) {
              duplicate = true;
              break;
            }
          }
          if (!duplicate) accepted.push_back(x);
        }
      }
      int pos = k - 2;
      while (pos >= 0 && subset[static_cast<std::size_t>(pos)] ==
                             n_cols - (k - 1) + pos) {
        --pos;
      }
      if (pos < 0) break;
      ++subset[static_cast<std::size_t>(pos)];
      for (int l = pos + 1; l < k - 1; ++l) {
        subset[static_cast<std::size_t>(l)] =
            subset[static_cast<std::size_t>(l - 1)] + 1;
      }
    }
    out.recoverable_direction_count = static_cast<long long>(accepted.size());
  }
  return out;
}

}  // namespace cpd
