#include "cpd/linalg.hpp"

#include <cmath>
#include <limits>

#include "cpd/errors.hpp"

namespace cpd {

namespace {

// BDCSVD is preferred for anything larger than a handful of rows/cols;
// JacobiSVD is more accurate on tiny problems.
constexpr int kJacobiLimit = 16;

Eigen::VectorXd all_singular_values(const Eigen::MatrixXd& m) {
  if (std::min(m.rows(), m.cols()) <= kJacobiLimit) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  }
  return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
}

int rank_from_values(const Eigen::VectorXd& sv, double tau) {
  if (sv.size() == 0) return 0;
  const double top = sv(0);
  if (!(top > 0.0)) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tau * top) ++rank;
  }
  return rank;
}

double gap_from_values(const Eigen::VectorXd& sv, int rank) {
  if (rank == 0 || rank >= sv.size()) {
    return std::numeric_limits<double>::infinity();
  }
  const double below = sv(rank);
  if (!(below > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(rank - 1) / below;
}

}  // namespace

int numerical_rank(const Eigen::MatrixXd& matrix, double tau) {
  return rank_from_values(all_singular_values(matrix), tau);
}

std::pair<int, double> rank_and_gap(const Eigen::MatrixXd& matrix, double tau) {
  const Eigen::VectorXd sv = all_singular_values(matrix);
  const int rank = rank_from_values(sv, tau);
  return {rank, gap_from_values(sv, rank)};
}

SvdAnalysis svd_analysis(const Eigen::MatrixXd& matrix, double tau) {
  SvdAnalysis out;
  const unsigned options = Eigen::ComputeFullU | Eigen::ComputeFullV;
  Eigen::MatrixXd u, v;
  if (std::min(matrix.rows(), matrix.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix, options);
    out.singular_values = svd.singularValues();
    u = svd.matrixU();
    v = svd.matrixV();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix, options);
    out.singular_values = svd.singularValues();
    u = svd.matrixU();
    v = svd.matrixV();
  }
  out.rank = rank_from_values(out.singular_values, tau);
  out.gap = gap_from_values(out.singular_values, out.rank);
  out.kernel = v.rightCols(matrix.cols() - out.rank);
  out.left_null = u.rightCols(matrix.rows() - out.rank);
  return out;
}

Eigen::MatrixXd pinv(const Eigen::MatrixXd& matrix) {
  return matrix.completeOrthogonalDecomposition().pseudoInverse();
}

Eigen::MatrixXd lstsq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) {
    throw CpdError(Errc::BadShape, "lstsq: row counts differ");
  }
  return a.completeOrthogonalDecomposition().solve(b);
}

Eigen::MatrixXd khatri_rao(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() != y.cols()) {
    throw CpdError(Errc::ColumnMismatch,
                   "khatri_rao: factors must have equal column counts");
  }
  Eigen::MatrixXd result(x.rows() * y.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.cols(); ++r) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      result.col(r).segment(i * y.rows(), y.rows()) = x(i, r) * y.col(r);
    }
  }
  return result;
}

Eigen::MatrixXd normalize_columns(const Eigen::MatrixXd& matrix) {
  Eigen::MatrixXd out = matrix;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const double norm = out.col(c).norm();
    if (norm < 1e-300) continue;
    Eigen::Index pivot = 0;
    out.col(c).cwiseAbs().maxCoeff(&pivot);
    const double sign = out(pivot, c) < 0.0 ? -1.0 : 1.0;
    out.col(c) *= sign / norm;
  }
  return out;
}

Eigen::VectorXd normalize_vector(const Eigen::VectorXd& v) {
  return normalize_columns(v);
}

double abs_cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu < 1e-300 || nv < 1e-300) return 0.0;
  return std::min(1.0, std::abs(u.dot(v)) / (nu * nv));
}

bool collinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double tol) {
  return abs_cosine(u, v) >= 1.0 - tol;
}

bool split_rank1(const Eigen::MatrixXd& m, double tol_collinear,
                 Eigen::VectorXd& a, Eigen::VectorXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0)) return false;
  if (sv.size() > 1 && sv(1) > tol_collinear * sv(0)) return false;
  a = normalize_vector(svd.matrixU().col(0));
  // Orient b so that a' M b >= 0; M ~ sigma_1 u v' makes M' a ~ +/- sigma_1 v.
  b = m.transpose() * a;
  const double norm = b.norm();
  if (norm < 1e-300) return false;
  b /= norm;
  return true;
}

Eigen::MatrixXd mirror_matrix(int size) {
  if (size < 1) {
    throw CpdError(Errc::InvalidDims, "mirror_matrix requires size >= 1");
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(size, size);
  for (int j = 1; j <= size; ++j) {
    l(size - j, j - 1) = (j % 2 == 1) ? 1.0 : -1.0;
  }
  return l;
}

int nnz_count(const Eigen::VectorXd& v, double tol) {
  if (v.size() == 0) return 0;
  const double top = v.cwiseAbs().maxCoeff();
  if (!(top > 0.0)) return 0;
  int count = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol * top) ++count;
  }
  return count;
}

}  // namespace cpd
