#ifndef CPD_LINALG_HPP
#define CPD_LINALG_HPP

#include <vector>

#include <Eigen/Dense>

namespace cpd {

/// Result of a full singular-value analysis of a matrix.
struct SvdAnalysis {
  Eigen::VectorXd singular_values;   ///< all min(rows, cols) values
  int rank = 0;                      ///< values with sigma_i > tau * sigma_1
  double gap = 0.0;                  ///< sigma_rank / sigma_rank+1 (inf if full)
  Eigen::MatrixXd kernel;            ///< orthonormal basis of the null space
  Eigen::MatrixXd left_null;         ///< orthonormal basis of the left null space
};

/// Numerical rank: number of singular values sigma_i > tau * sigma_1.
int numerical_rank(const Eigen::MatrixXd& matrix, double tau);

/// Rank plus the spectral gap sigma_rank / sigma_rank+1 at the cut
/// (infinity when nothing is discarded).
std::pair<int, double> rank_and_gap(const Eigen::MatrixXd& matrix, double tau);

/// Full SVD analysis: rank, gap, kernel basis (right null space), and left
/// null basis, using the same threshold rule.
SvdAnalysis svd_analysis(const Eigen::MatrixXd& matrix, double tau);

/// Moore-Penrose pseudoinverse via complete orthogonal decomposition.
Eigen::MatrixXd pinv(const Eigen::MatrixXd& matrix);

/// Minimum-norm least-squares solution X of A X = B.
Eigen::MatrixXd lstsq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Khatri-Rao (column-wise Kronecker) product: column r is x_r (outer index,
/// slow) Kronecker y_r, so row (i, j) of the result sits at i * Y.rows() + j.
Eigen::MatrixXd khatri_rao(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// Scales every column to unit norm and flips its sign so the entry of
/// largest magnitude (first such index) is positive.  Columns with norm
/// below 1e-300 are left untouched.
Eigen::MatrixXd normalize_columns(const Eigen::MatrixXd& matrix);

/// Applies the normalize_columns convention to a single vector.
Eigen::VectorXd normalize_vector(const Eigen::VectorXd& v);

/// |cos angle(u, v)| in [0, 1]; zero if either vector is numerically zero.
double abs_cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// True when |cos angle(u, v)| >= 1 - tol.
bool collinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double tol);

/// Best rank-one factorization M ~ a b' with unit a (sign-canonical) and
/// unit b oriented so that a' M b >= 0.  Fails (returns false) when
/// sigma_2 > tol_collinear * sigma_1, i.e. when M is not numerically rank one.
bool split_rank1(const Eigen::MatrixXd& m, double tol_collinear,
                 Eigen::VectorXd& a, Eigen::VectorXd& b);

/// Mirror matrix L of size K x K: L(i, j) = (-1)^(j-1) when i = K + 1 - j,
/// zero elsewhere (indices 1-based in this formula).
Eigen::MatrixXd mirror_matrix(int size);

/// Number of entries with |v_i| > tol * max_j |v_j| (0 for a zero vector).
int nnz_count(const Eigen::VectorXd& v, double tol);

}  // namespace cpd

#endif  // CPD_LINALG_HPP
