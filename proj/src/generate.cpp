#include "cpd/generate.hpp"

#include <algorithm>

#include "cpd/errors.hpp"
#include "cpd/rng.hpp"

namespace cpd {

Cpd generate_instance(const GenSpec& spec) {
  if (spec.i < 1 || spec.j < 1 || spec.k < 1 || spec.r < 1) {
    throw CpdError(Errc::InvalidDims, "extents and rank must be positive");
  }
  if (static_cast<long long>(spec.r) >
      static_cast<long long>(spec.i) * spec.j) {
    throw CpdError(Errc::InvalidDims,
                   "rank exceeds I*J; no identifiable instance exists");
  }
  const int kc_cap = std::min(spec.k, spec.r);
  const int kc = spec.kc.value_or(kc_cap);
  if (kc < 1 || kc > kc_cap) {
    throw CpdError(Errc::InvalidDims,
                   "target k-rank must lie in [1, min(K, R)]");
  }

  Cpd cpd;
  cpd.A = Rng(derive_seed(spec.seed, 1)).normal_matrix(spec.i, spec.r);
  cpd.B = Rng(derive_seed(spec.seed, 2)).normal_matrix(spec.j, spec.r);
  cpd.C = Rng(derive_seed(spec.seed, 3)).normal_matrix(spec.k, spec.r);
  if (kc < kc_cap) {
    // Dependency among kc+1 columns while every kc-subset stays generic.
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(spec.k);
    for (int col = 0; col < kc; ++col) sum += cpd.C.col(col);
    cpd.C.col(spec.r - 1) = sum;
  }
  return cpd;
}

}  // namespace cpd
