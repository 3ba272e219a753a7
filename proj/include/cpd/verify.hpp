#ifndef CPD_VERIFY_HPP
#define CPD_VERIFY_HPP

#include <optional>
#include <vector>

#include "cpd/tensor.hpp"

namespace cpd {

/// \brief Alignment of an estimated factor triple with a reference triple.
struct MatchResult {
  std::vector<int> permutation;  ///< reference column for each estimate column
  double max_column_error = 0.0; ///< worst relative column error after scaling
  double min_similarity = 1.0;   ///< smallest matched |cos| product
};

/// \brief Matches est to ref up to the inherent column permutation and
/// scaling ambiguity.
///
/// Similarity of a column pair is the product over the three factors of
/// |cos angle|; pairs are matched greedily best-first.  A best available
/// similarity below min_similarity raises CpdError(NoBijection).  Scalings
/// for A and B columns are least-squares fits; the C scaling is forced to
/// keep the per-column triple product at exactly one.
MatchResult match_factors(const Cpd& est, const Cpd& ref,
                          double min_similarity = 0.5);

/// Minor-vector matrix of C: mirror(K) times the (K-1)-th compound of C,
/// K x C(R, K-1), column for each (K-1)-subset of columns of C in
/// lexicographic order.  Requires K >= 2 and R >= K - 1.
Eigen::MatrixXd minor_vector_matrix(const Eigen::MatrixXd& c);

/// \brief Structural checks tying minor_vector_matrix(C) to C.
struct BcCheckResult {
  bool generator_orthogonality = true;  ///< column S is orthogonal to c_j, j in S
  bool normals_match = true;            ///< full-rank subsets reproduce columns
  bool row_zero_pattern = true;         ///< row r of C' B has the right zeros
  bool square_mirror_identity = true;   ///< K = R case: C' B = det(C) mirror
  /// Number of distinct directions found by the exhaustive orthogonality
  /// scan over (K-1)-subsets of the minor-vector columns (R for a k-rank-K
  /// factor); only computed when C(C(R, K-1), K-1) <= 5000.
  std::optional<long long> recoverable_direction_count;
};

/// Verifies the defining properties on a given C (K x R, k-rank K assumed
/// for the positive checks); tolerance is an absolute comparison threshold
/// on unit-scale quantities.
BcCheckResult check_bc_properties(const Eigen::MatrixXd& c, double tol = 1e-9);

}  // namespace cpd

#endif  // CPD_VERIFY_HPP
