#ifndef CPD_COMPOUND_HPP
#define CPD_COMPOUND_HPP

#include <Eigen/Dense>

#include "cpd/multiindex.hpp"

namespace cpd {

/// \brief m-th compound matrix: all m x m minors of A.
///
/// Rows are indexed by strictly increasing m-tuples of row indices of A,
/// columns by strictly increasing m-tuples of column indices, both in
/// lexicographic order; entry (S, T) = det A(S, T).  Requires
/// 1 <= m <= min(rows, cols); throws CpdError(InvalidDims) otherwise.
Eigen::MatrixXd compound(const Eigen::MatrixXd& a, int m);

/// Vector of products prod_{i in S} d_i over strictly increasing m-subsets
/// S in lexicographic order; equals the diagonal of compound(Diag(d), m).
Eigen::VectorXd diag_compound_vector(const Eigen::VectorXd& d, int m);

/// Permanent of a square matrix by Ryser's inclusion-exclusion formula with
/// Gray-code updates, O(2^n * n).  Throws CpdError(TooLarge) for n > 20 and
/// CpdError(BadShape) for non-square input.  The permanent of an empty
/// matrix is 1.
double permanent(const Eigen::MatrixXd& m);

/// \brief Permanental analogue of the compound matrix.
///
/// Entry (S, T) = perm C(S, T) where S runs over the length-m row-index
/// tuples of the given kind (Strict, NonDecreasing, or All; repeated row
/// indices repeat rows of C) and T runs over strictly increasing m-tuples
/// of column indices, both lexicographic.  Requires m >= 1, m <= rows when
/// rows_kind is Strict, and m <= cols always.
Eigen::MatrixXd permanental_compound(const Eigen::MatrixXd& c, int m,
                                     IndexKind rows_kind = IndexKind::Strict);

/// \brief Symmetrization and selection maps between tuple orderings.
///
/// Rows/columns over all m-tuples use the lexicographic (base-n positional)
/// order; the reduced side uses non-decreasing tuples in lexicographic order.
///
/// symmetrizer(n, m): the n^m x C(n+m-1, m) matrix G whose column for the
/// non-decreasing tuple q places weight 1/m! on each of the m! position
/// permutations of q (weights at a repeated arrangement accumulate).
///
/// selector(n, m): the C(n+m-1, m) x n^m matrix H with H(q, p) = 1 exactly
/// when sorting p gives q.  These satisfy H G = identity, and G H is the
/// orthogonal projection onto symmetric coefficient vectors.
Eigen::MatrixXd symmetrizer(int n, int m);
Eigen::MatrixXd selector(int n, int m);

/// Averages v (length n^m, indexed by all m-tuples over {1..n}) over
/// position permutations: the orthogonal projection onto symmetric tensors.
Eigen::VectorXd sym_project(const Eigen::VectorXd& v, int n, int m);

}  // namespace cpd

#endif  // CPD_COMPOUND_HPP
