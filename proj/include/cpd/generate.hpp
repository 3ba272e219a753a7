#ifndef CPD_GENERATE_HPP
#define CPD_GENERATE_HPP

#include <cstdint>
#include <optional>

#include "cpd/tensor.hpp"

namespace cpd {

/// \brief Specification of a synthetic exact-rank instance.
struct GenSpec {
  int i = 0;
  int j = 0;
  int k = 0;
  int r = 0;
  std::uint64_t seed = 0;
  /// Target k-rank of the third factor.  Defaults to min(K, R) (generic).
  /// When smaller, the last column of C is replaced by the sum of the
  /// first kc columns, which pins the k-rank to exactly kc while keeping
  /// the column rank at min(K, R-1 + (kc==min)) generically.
  std::optional<int> kc;
};

/// Draws seeded standard-normal factors (independent streams for A, B, C)
/// and applies the kc column adjustment.  Throws CpdError(InvalidDims)
/// when R > I*J or when kc lies outside [1, min(K, R)].
Cpd generate_instance(const GenSpec& spec);

}  // namespace cpd

#endif  // CPD_GENERATE_HPP
