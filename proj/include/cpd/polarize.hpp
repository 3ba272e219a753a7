#ifndef CPD_POLARIZE_HPP
#define CPD_POLARIZE_HPP

#include <vector>

#include <Eigen/Dense>

#include "cpd/multiindex.hpp"
#include "cpd/tensor.hpp"

namespace cpd {

/// \brief Mixed discriminant (unnormalized) of m square matrices of size m.
///
/// D(T_1, ..., T_m) = sum_{k=1}^{m} (-1)^(m-k) *
///                    sum_{i_1 < ... < i_k} det(T_{i_1} + ... + T_{i_k}).
/// With this scaling D(T, ..., T) = m! det(T).
double mixed_discriminant(const std::vector<Eigen::MatrixXd>& ts);

/// \brief Polarized compound: the multilinear symmetric extension of the
/// m-th compound matrix to m matrix arguments.
///
/// Same inclusion-exclusion as the mixed discriminant with the m-th
/// compound in place of the determinant; arguments are I x J matrices
/// (m <= min(I, J)) and the result is C(I, m) x C(J, m).  Satisfies
/// Phi(T, ..., T) = m! * compound(T, m).
Eigen::MatrixXd polarized_compound(const std::vector<Eigen::MatrixXd>& ts);

/// \brief Stacked-evaluation matrix of the polarized compound over slice
/// tuples of a tensor ("detecting matrix").
///
/// Column for the tuple (j_1, ..., j_m) is the column-stacked
/// vectorization of polarized_compound(T_{j_1}, ..., T_{j_m}); tuples run
/// over the given kind (NonDecreasing by default, All for the redundant
/// variant) in lexicographic order.  Requires 2 <= m <= min(I, J).
Eigen::MatrixXd build_detecting(const Tensor3& t, int m,
                                IndexKind columns_kind = IndexKind::NonDecreasing);

}  // namespace cpd

#endif  // CPD_POLARIZE_HPP
