#include "cpd/tensor.hpp"

#include "cpd/errors.hpp"
#include "cpd/linalg.hpp"
#include "cpd/rng.hpp"

namespace cpd {

Tensor3::Tensor3(int i, int j, int k) : i_(i), j_(j), k_(k) {
  if (i < 1 || j < 1 || k < 1) {
    throw CpdError(Errc::InvalidDims, "tensor extents must be positive");
  }
  data_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(i) * j * k);
}

Tensor3 Tensor3::from_slices(const std::vector<Eigen::MatrixXd>& slices) {
  if (slices.empty()) {
    throw CpdError(Errc::InvalidDims, "from_slices requires at least one slice");
  }
  Tensor3 t(static_cast<int>(slices[0].rows()),
            static_cast<int>(slices[0].cols()), static_cast<int>(slices.size()));
  for (std::size_t k = 0; k < slices.size(); ++k) {
    t.set_slice(static_cast<int>(k), slices[k]);
  }
  return t;
}

double Tensor3::at(int i, int j, int k) const {
  if (i < 0 || i >= i_ || j < 0 || j >= j_ || k < 0 || k >= k_) {
    throw CpdError(Errc::InvalidDims, "tensor index out of range");
  }
  return data_((static_cast<Eigen::Index>(k) * i_ + i) * j_ + j);
}

void Tensor3::set(int i, int j, int k, double value) {
  if (i < 0 || i >= i_ || j < 0 || j >= j_ || k < 0 || k >= k_) {
    throw CpdError(Errc::InvalidDims, "tensor index out of range");
  }
  data_((static_cast<Eigen::Index>(k) * i_ + i) * j_ + j) = value;
}

Eigen::MatrixXd Tensor3::slice(int k) const {
  if (k < 0 || k >= k_) {
    throw CpdError(Errc::InvalidDims, "slice index out of range");
  }
  Eigen::MatrixXd s(i_, j_);
  for (int i = 0; i < i_; ++i) {
    for (int j = 0; j < j_; ++j) {
      s(i, j) = data_((static_cast<Eigen::Index>(k) * i_ + i) * j_ + j);
    }
  }
  return s;
}

void Tensor3::set_slice(int k, const Eigen::MatrixXd& values) {
  if (k < 0 || k >= k_) {
    throw CpdError(Errc::InvalidDims, "slice index out of range");
  }
  if (values.rows() != i_ || values.cols() != j_) {
    throw CpdError(Errc::BadShape, "slice dimensions do not match tensor");
  }
  for (int i = 0; i < i_; ++i) {
    for (int j = 0; j < j_; ++j) {
      data_((static_cast<Eigen::Index>(k) * i_ + i) * j_ + j) = values(i, j);
    }
  }
}

double Tensor3::frobenius_norm() const { return data_.norm(); }

Eigen::MatrixXd matricize(const Tensor3& t) {
  const Eigen::Index ij =
      static_cast<Eigen::Index>(t.extent1()) * t.extent2();
  Eigen::MatrixXd m(ij, t.extent3());
  // Storage within a slice is already row-major, which is exactly the
  // required vectorization order, so each column is a contiguous copy.
  for (int k = 0; k < t.extent3(); ++k) {
    m.col(k) = t.data().segment(k * ij, ij);
  }
  return m;
}

Tensor3 tensorize(const Eigen::MatrixXd& unfolded, int i, int j) {
  if (i < 1 || j < 1 ||
      unfolded.rows() != static_cast<Eigen::Index>(i) * j) {
    throw CpdError(Errc::BadShape, "tensorize: row count must equal I*J");
  }
  Tensor3 t(i, j, static_cast<int>(unfolded.cols()));
  for (int k = 0; k < t.extent3(); ++k) {
    for (int a = 0; a < i; ++a) {
      for (int b = 0; b < j; ++b) {
        t.set(a, b, k, unfolded(static_cast<Eigen::Index>(a) * j + b, k));
      }
    }
  }
  return t;
}

Tensor3 compose(const Cpd& cpd) {
  if (cpd.A.cols() != cpd.B.cols() || cpd.A.cols() != cpd.C.cols()) {
    throw CpdError(Errc::ColumnMismatch,
                   "compose: factors must share the column count");
  }
  Tensor3 t(static_cast<int>(cpd.A.rows()), static_cast<int>(cpd.B.rows()),
            static_cast<int>(cpd.C.rows()));
  for (int k = 0; k < t.extent3(); ++k) {
    t.set_slice(k,
                cpd.A * cpd.C.row(k).asDiagonal() * cpd.B.transpose());
  }
  return t;
}

double residual(const Tensor3& t, const Cpd& cpd) {
  const Tensor3 rebuilt = compose(cpd);
  if (rebuilt.extent1() != t.extent1() || rebuilt.extent2() != t.extent2() ||
      rebuilt.extent3() != t.extent3()) {
    throw CpdError(Errc::BadShape, "residual: factor shapes do not match T");
  }
  const double ref = t.frobenius_norm();
  const double err = (t.data() - rebuilt.data()).norm();
  return ref > 0.0 ? err / ref : err;
}

std::pair<Tensor3, Eigen::MatrixXd> reduce_third_mode(const Tensor3& t,
                                                      double tau) {
  const Eigen::MatrixXd m = matricize(t);
  // Row space of m = column space of m'; an SVD of m gives it as the
  // leading right singular vectors.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > tau * sv(0)) ++rank;
    }
  }
  if (rank == 0) rank = 1;  // keep a valid tensor for the all-zero edge case
  const Eigen::MatrixXd v = svd.matrixV().leftCols(rank);
  return {tensorize(m * v, t.extent1(), t.extent2()), v};
}

std::pair<Tensor3, Eigen::MatrixXd> random_slice_mixture(const Tensor3& t,
                                                         int k_target,
                                                         std::uint64_t seed) {
  if (k_target < 1 || k_target > t.extent3()) {
    throw CpdError(Errc::BadShape,
                   "random_slice_mixture requires 1 <= K_target <= K");
  }
  Rng rng(seed);
  const Eigen::MatrixXd x = rng.normal_matrix(k_target, t.extent3());
  return {apply_slice_mixture(t, x), x};
}

Tensor3 apply_slice_mixture(const Tensor3& t, const Eigen::MatrixXd& x) {
  if (x.cols() != t.extent3()) {
    throw CpdError(Errc::BadShape,
                   "apply_slice_mixture: mixing matrix needs K columns");
  }
  return tensorize(matricize(t) * x.transpose(), t.extent1(), t.extent2());
}

Tensor3 permute_modes(const Tensor3& t, int p1, int p2, int p3) {
  const int p[3] = {p1, p2, p3};
  bool seen[3] = {false, false, false};
  for (int l = 0; l < 3; ++l) {
    if (p[l] < 1 || p[l] > 3 || seen[p[l] - 1]) {
      throw CpdError(Errc::InvalidDims,
                     "permute_modes requires a permutation of (1,2,3)");
    }
    seen[p[l] - 1] = true;
  }
  const int d[3] = {t.extent1(), t.extent2(), t.extent3()};
  Tensor3 out(d[p1 - 1], d[p2 - 1], d[p3 - 1]);
  int idx[3];
  for (idx[0] = 0; idx[0] < d[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < d[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < d[2]; ++idx[2]) {
        out.set(idx[p1 - 1], idx[p2 - 1], idx[p3 - 1],
                t.at(idx[0], idx[1], idx[2]));
      }
    }
  }
  return out;
}

}  // namespace cpd
