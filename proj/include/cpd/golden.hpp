#ifndef CPD_GOLDEN_HPP
#define CPD_GOLDEN_HPP

#include "cpd/tensor.hpp"

namespace cpd {
namespace golden {

/// Frozen reference instance: a 4 x 4 x 4 tensor of rank 5 whose third
/// factor has k-rank 4 while no factor has full column rank, together with
/// hand-checked intermediate values of the decomposition pipeline.  Used by
/// unit tests, the acceptance suite, and the full self-test.

/// The tensor (frontal slices listed in golden.cpp).
Tensor3 worked_tensor();

/// Factors composing worked_tensor exactly (A, B: 4 x 5; C: 4 x 5).
Cpd worked_factors();

/// Its order-3 detecting matrix, 16 x 20 (columns over non-decreasing
/// slice triples, lexicographic).
Eigen::MatrixXd worked_detecting();

/// An exact basis of the 10-dimensional kernel of worked_detecting(),
/// 20 x 10 (integer entries, not orthonormal).
Eigen::MatrixXd worked_kernel();

/// The minor-vector matrix recovered in phase 1, 4 x 10, in its
/// reference column order and scaling.
Eigen::MatrixXd worked_f();

}  // namespace golden
}  // namespace cpd

#endif  // CPD_GOLDEN_HPP
