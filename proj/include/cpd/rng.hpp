#ifndef CPD_RNG_HPP
#define CPD_RNG_HPP

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace cpd {

/// \brief Seeded, portable random number source.
///
/// All randomness in the library flows through this class so that results
/// are reproducible across platforms from a single 64-bit seed.  The
/// generator is std::mt19937_64; uniforms map the top 53 bits of one draw
/// to [0, 1); normal variates use the Box-Muller transform (pairs cached).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1): (x >> 11) * 2^-53.
  double uniform01();

  /// Standard normal variate via Box-Muller.
  double normal();

  /// I x J matrix of i.i.d. standard normals, filled row by row.
  Eigen::MatrixXd normal_matrix(int rows, int cols);

  /// Unit-norm vector of i.i.d. normals (redrawn if the norm underflows).
  Eigen::VectorXd unit_vector(int size);

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Derives an independent stream seed from (seed, salt) with the splitmix64
/// finalizer; used to give each internal stage its own generator.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace cpd

#endif  // CPD_RNG_HPP
