#ifndef CPD_TOLERANCES_HPP
#define CPD_TOLERANCES_HPP

#include "cpd/errors.hpp"

namespace cpd {

/// \brief All numerical thresholds used by the decomposition pipeline.
///
/// Every field must lie strictly inside (0, 1).
///  - rank:      singular values sigma_i are kept while sigma_i > rank * sigma_1
///               (numerical rank, kernel extraction, dimensionality reduction).
///  - zero:      |x' f| <= zero * ||f|| counts as an orthogonality hit when
///               scanning recovered null-space columns.
///  - collinear: two unit vectors are the same direction when
///               |cos angle| >= 1 - collinear; also bounds sigma_2/sigma_1 in
///               rank-one splits.
///  - imag:      an eigenvalue is accepted as real when |Im| <= imag * (1 + |lambda|).
///  - residual:  relative Frobenius reconstruction error accepted as exact.
struct ToleranceConfig {
  double rank = 1e-9;
  double zero = 1e-9;
  double collinear = 1e-6;
  double imag = 1e-7;
  double residual = 1e-8;

  /// Throws CpdError(InvalidTolerance) unless every field is in (0, 1).
  void validate() const {
    const double v[] = {rank, zero, collinear, imag, residual};
    const char* names[] = {"rank", "zero", "collinear", "imag", "residual"};
    for (int i = 0; i < 5; ++i) {
      if (!(v[i] > 0.0) || !(v[i] < 1.0)) {
        throw CpdError(Errc::InvalidTolerance,
                       std::string("tolerance '") + names[i] +
                           "' must lie in (0, 1)");
      }
    }
  }
};

}  // namespace cpd

#endif  // CPD_TOLERANCES_HPP
