#ifndef CPD_GEVD_HPP
#define CPD_GEVD_HPP

#include <cstdint>

#include "cpd/tensor.hpp"
#include "cpd/tolerances.hpp"

namespace cpd {

/// \brief Exact CPD of a tensor whose first two factors have full column
/// rank and whose third factor has k-rank >= 2, via a generalized
/// eigenvalue decomposition of a two-mixture pencil.
///
/// Draws two unit-norm random slice mixtures Y1, Y2; compresses to R x R
/// using rank-R bases of [Y1 Y2] (left) and [Y1; Y2] (right); reads the
/// first factor off the eigenvectors of Yhat1 * inv(Yhat2); recovers B
/// column-wise from the rank-one row stacks of pinv(A) * T_k; recovers C
/// by least squares.  Deterministic given the seed.
///
/// Returned A and B columns have unit norm with the entry of largest
/// magnitude positive; the scale sits in C.  Column order is arbitrary.
///
/// Errors:
///  - InvalidDims when R < 1 or R > min(I, J);
///  - RankMismatch when a compression has numerical rank != R;
///  - DegeneratePencil when the compressed Y2 stays singular for three draws;
///  - ComplexEigenvalues when eigenvalues stay complex (or collide closer
///    than 1e-8 relative) after one redraw;
///  - ResidualTooLarge when the reconstruction misses tol.residual.
Cpd cpd_gevd(const Tensor3& t, int r, std::uint64_t seed,
             const ToleranceConfig& tol = {});

}  // namespace cpd

#endif  // CPD_GEVD_HPP
