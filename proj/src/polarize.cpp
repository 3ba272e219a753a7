#include "cpd/polarize.hpp"

#include "cpd/compound.hpp"
#include "cpd/errors.hpp"

namespace cpd {

namespace {

void check_same_shape(const std::vector<Eigen::MatrixXd>& ts) {
  if (ts.empty()) {
    throw CpdError(Errc::InvalidDims, "at least one matrix argument required");
  }
  for (const Eigen::MatrixXd& t : ts) {
    if (t.rows() != ts[0].rows() || t.cols() != ts[0].cols()) {
      throw CpdError(Errc::BadShape, "matrix arguments must share their shape");
    }
  }
}

/// Runs the inclusion-exclusion sum_{S nonempty} (-1)^(m-|S|) f(sum_{i in S} T_i)
/// shared by the mixed discriminant and the polarized compound.
template <typename Eval, typename Result>
Result inclusion_exclusion(const std::vector<Eigen::MatrixXd>& ts, Eval eval,
                           Result zero) {
  const int m = static_cast<int>(ts.size());
  Result total = zero;
  const std::uint32_t count = 1u << m;
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    Eigen::MatrixXd sum =
        Eigen::MatrixXd::Zero(ts[0].rows(), ts[0].cols());
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) sum += ts[static_cast<std::size_t>(i)];
    }
    const int popcount = __builtin_popcount(mask);
    const double sign = ((m - popcount) % 2 == 0) ? 1.0 : -1.0;
    total += sign * eval(sum);
  }
  return total;
}

}  // namespace

double mixed_discriminant(const std::vector<Eigen::MatrixXd>& ts) {
  check_same_shape(ts);
  const int m = static_cast<int>(ts.size());
  if (ts[0].rows() != m || ts[0].cols() != m) {
    throw CpdError(Errc::BadShape,
                   "mixed discriminant needs m square matrices of size m");
  }
  if (m > 20) {
    throw CpdError(Errc::TooLarge, "mixed discriminant limited to m <= 20");
  }
  return inclusion_exclusion(
      ts, [](const Eigen::MatrixXd& s) { return s.determinant(); }, 0.0);
}

Eigen::MatrixXd polarized_compound(const std::vector<Eigen::MatrixXd>& ts) {
  check_same_shape(ts);
  const int m = static_cast<int>(ts.size());
  if (m > 20) {
    throw CpdError(Errc::TooLarge, "polarized compound limited to m <= 20");
  }
  if (m > ts[0].rows() || m > ts[0].cols()) {
    throw CpdError(Errc::InvalidDims,
                   "polarized compound requires m <= min(rows, cols)");
  }
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(
      binomial(static_cast<int>(ts[0].rows()), m),
      binomial(static_cast<int>(ts[0].cols()), m));
  return inclusion_exclusion(
      ts, [m](const Eigen::MatrixXd& s) { return compound(s, m); }, zero);
}

Eigen::MatrixXd build_detecting(const Tensor3& t, int m,
                                IndexKind columns_kind) {
  if (m < 2) {
    throw CpdError(Errc::InvalidDims, "detecting matrix requires m >= 2");
  }
  if (m > t.extent1() || m > t.extent2()) {
    throw CpdError(Errc::InvalidDims,
                   "detecting matrix requires m <= min(I, J)");
  }
  const IndexFamily columns =
      IndexFamily::enumerate(columns_kind, m, t.extent3());
  std::vector<Eigen::MatrixXd> slices;
  slices.reserve(static_cast<std::size_t>(t.extent3()));
  for (int k = 0; k < t.extent3(); ++k) slices.push_back(t.slice(k));

  const Eigen::Index rows =
      binomial(t.extent1(), m) * binomial(t.extent2(), m);
  Eigen::MatrixXd result(rows, columns.size());
  std::vector<Eigen::MatrixXd> args(static_cast<std::size_t>(m));
  for (long long c = 1; c <= columns.size(); ++c) {
    const std::vector<int>& tuple = columns.tuple(c);
    for (int l = 0; l < m; ++l) {
      args[static_cast<std::size_t>(l)] =
          slices[static_cast<std::size_t>(tuple[l] - 1)];
    }
    const Eigen::MatrixXd phi = polarized_compound(args);
    result.col(c - 1) =
        Eigen::Map<const Eigen::VectorXd>(phi.data(), phi.size());
  }
  return result;
}

}  // namespace cpd
