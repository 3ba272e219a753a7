#ifndef CPD_TENSOR_HPP
#define CPD_TENSOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cpd {

/// \brief Dense third-order real tensor of size I x J x K.
///
/// Storage is slice-major (frontal slice index k outermost), row-major
/// within a slice: entry (i, j, k) lives at flat position (k*I + i)*J + j.
/// Values are immutable after construction apart from set_slice, which is
/// only used while building.
class Tensor3 {
 public:
  Tensor3(int i, int j, int k);

  static Tensor3 from_slices(const std::vector<Eigen::MatrixXd>& slices);

  int extent1() const { return i_; }
  int extent2() const { return j_; }
  int extent3() const { return k_; }

  double at(int i, int j, int k) const;
  void set(int i, int j, int k, double value);

  /// Frontal slice k as an I x J matrix.
  Eigen::MatrixXd slice(int k) const;
  void set_slice(int k, const Eigen::MatrixXd& values);

  double frobenius_norm() const;

  const Eigen::VectorXd& data() const { return data_; }

 private:
  int i_, j_, k_;
  Eigen::VectorXd data_;
};

/// \brief Rank-R factor triple (A: I x R, B: J x R, C: K x R).
struct Cpd {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;

  int rank() const { return static_cast<int>(A.cols()); }
};

/// Unfolding: the IJ x K matrix whose column k is the row-major
/// vectorization of slice k (entry ((i-1)J + j, k) = t_ijk, 1-based).
Eigen::MatrixXd matricize(const Tensor3& t);

/// Inverse of matricize: folds an IJ x K matrix back into an I x J x K
/// tensor.  Throws CpdError(BadShape) when rows != I*J.
Tensor3 tensorize(const Eigen::MatrixXd& unfolded, int i, int j);

/// Evaluates the factor triple: slice k = A Diag(row k of C) B'.
Tensor3 compose(const Cpd& cpd);

/// Relative reconstruction error |T - compose(cpd)|_F / |T|_F
/// (absolute error when T is the zero tensor).
double residual(const Tensor3& t, const Cpd& cpd);

/// \brief Third-mode dimensionality reduction.
///
/// Returns (T_red, V) where the columns of V (K x K') are an orthonormal
/// basis of the row space of matricize(T), K' its numerical rank at
/// threshold tau, and matricize(T_red) = matricize(T) * V.  A third factor
/// recovered against T_red lifts back as C = V * C_red.
std::pair<Tensor3, Eigen::MatrixXd> reduce_third_mode(const Tensor3& t,
                                                      double tau = 1e-9);

/// Replaces the K slices by K_target random mixtures: returns (T_bar, X)
/// with X a seeded K_target x K standard-normal matrix and
/// matricize(T_bar) = matricize(T) * X'.  Requires K_target <= K.
std::pair<Tensor3, Eigen::MatrixXd> random_slice_mixture(const Tensor3& t,
                                                         int k_target,
                                                         std::uint64_t seed);

/// Deterministic variant used by tests: applies a caller-supplied mixing
/// matrix X (K_target x K) instead of drawing one.
Tensor3 apply_slice_mixture(const Tensor3& t, const Eigen::MatrixXd& x);

/// Reorders modes: result mode l is input mode p_l, so the result has
/// extents (d_{p1}, d_{p2}, d_{p3}) and result(i_{p1}, i_{p2}, i_{p3}) =
/// input(i_1, i_2, i_3).  (p1, p2, p3) must be a permutation of (1, 2, 3).
Tensor3 permute_modes(const Tensor3& t, int p1, int p2, int p3);

}  // namespace cpd

#endif  // CPD_TENSOR_HPP
