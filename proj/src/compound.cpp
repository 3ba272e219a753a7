#include "cpd/compound.hpp"

#include <cmath>

#include "cpd/errors.hpp"

namespace cpd {

namespace {

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& a, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  Eigen::MatrixXd block(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      block(i, j) = a(rows[i] - 1, cols[j] - 1);
    }
  }
  return block;
}

double minor_det(const Eigen::MatrixXd& a, const std::vector<int>& rows,
                 const std::vector<int>& cols) {
  const int m = static_cast<int>(rows.size());
  // Hand-rolled formulas for the tiny orders dominate the workload.
  if (m == 1) return a(rows[0] - 1, cols[0] - 1);
  if (m == 2) {
    const double x00 = a(rows[0] - 1, cols[0] - 1);
    const double x01 = a(rows[0] - 1, cols[1] - 1);
    const double x10 = a(rows[1] - 1, cols[0] - 1);
    const double x11 = a(rows[1] - 1, cols[1] - 1);
    return x00 * x11 - x01 * x10;
  }
  if (m == 3) {
    const double x00 = a(rows[0] - 1, cols[0] - 1);
    const double x01 = a(rows[0] - 1, cols[1] - 1);
    const double x02 = a(rows[0] - 1, cols[2] - 1);
    const double x10 = a(rows[1] - 1, cols[0] - 1);
    const double x11 = a(rows[1] - 1, cols[1] - 1);
    const double x12 = a(rows[1] - 1, cols[2] - 1);
    const double x20 = a(rows[2] - 1, cols[0] - 1);
    const double x21 = a(rows[2] - 1, cols[1] - 1);
    const double x22 = a(rows[2] - 1, cols[2] - 1);
    return x00 * (x11 * x22 - x12 * x21) - x01 * (x10 * x22 - x12 * x20) +
           x02 * (x10 * x21 - x11 * x20);
  }
  return submatrix(a, rows, cols).determinant();
}

}  // namespace

Eigen::MatrixXd compound(const Eigen::MatrixXd& a, int m) {
  if (m < 1 || m > a.rows() || m > a.cols()) {
    throw CpdError(Errc::InvalidDims,
                   "compound requires 1 <= m <= min(rows, cols)");
  }
  const IndexFamily row_sets =
      IndexFamily::enumerate(IndexKind::Strict, m, static_cast<int>(a.rows()));
  const IndexFamily col_sets =
      IndexFamily::enumerate(IndexKind::Strict, m, static_cast<int>(a.cols()));
  Eigen::MatrixXd result(row_sets.size(), col_sets.size());
  for (long long i = 1; i <= row_sets.size(); ++i) {
    for (long long j = 1; j <= col_sets.size(); ++j) {
      result(i - 1, j - 1) = minor_det(a, row_sets.tuple(i), col_sets.tuple(j));
    }
  }
  return result;
}

Eigen::VectorXd diag_compound_vector(const Eigen::VectorXd& d, int m) {
  if (m < 1 || m > d.size()) {
    throw CpdError(Errc::InvalidDims,
                   "diag_compound_vector requires 1 <= m <= length");
  }
  const IndexFamily sets =
      IndexFamily::enumerate(IndexKind::Strict, m, static_cast<int>(d.size()));
  Eigen::VectorXd result(sets.size());
  for (long long i = 1; i <= sets.size(); ++i) {
    double prod = 1.0;
    for (int idx : sets.tuple(i)) prod *= d(idx - 1);
    result(i - 1) = prod;
  }
  return result;
}

double permanent(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw CpdError(Errc::BadShape, "permanent requires a square matrix");
  }
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  if (n > 20) {
    throw CpdError(Errc::TooLarge, "permanent limited to n <= 20");
  }
  // Ryser: perm = sum over nonempty column subsets S of
  //   (-1)^(n - |S|) * prod_i sum_{j in S} a_ij,
  // visiting subsets in Gray-code order so each step updates the running
  // row sums with a single column.
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(n);
  double total = 0.0;
  std::uint64_t gray_prev = 0;
  const std::uint64_t count = 1ULL << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const std::uint64_t diff = gray ^ gray_prev;
    int bit = 0;
    while (!((diff >> bit) & 1ULL)) ++bit;
    if (gray & diff) {
      row_sums += m.col(bit);
    } else {
      row_sums -= m.col(bit);
    }
    gray_prev = gray;
    const int popcount = __builtin_popcountll(gray);
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= row_sums(i);
    total += ((n - popcount) % 2 == 0) ? prod : -prod;
  }
  return total;
}

Eigen::MatrixXd permanental_compound(const Eigen::MatrixXd& c, int m,
                                     IndexKind rows_kind) {
  if (m < 1 || m > c.cols() ||
      (rows_kind == IndexKind::Strict && m > c.rows())) {
    throw CpdError(Errc::InvalidDims,
                   "permanental_compound: tuple length out of range");
  }
  const IndexFamily row_sets =
      IndexFamily::enumerate(rows_kind, m, static_cast<int>(c.rows()));
  const IndexFamily col_sets =
      IndexFamily::enumerate(IndexKind::Strict, m, static_cast<int>(c.cols()));
  Eigen::MatrixXd result(row_sets.size(), col_sets.size());
  Eigen::MatrixXd block(m, m);
  for (long long i = 1; i <= row_sets.size(); ++i) {
    const std::vector<int>& rows = row_sets.tuple(i);
    for (long long j = 1; j <= col_sets.size(); ++j) {
      const std::vector<int>& cols = col_sets.tuple(j);
      for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s) {
          block(r, s) = c(rows[r] - 1, cols[s] - 1);
        }
      }
      result(i - 1, j - 1) = permanent(block);
    }
  }
  return result;
}

Eigen::MatrixXd symmetrizer(int n, int m) {
  const IndexFamily full = IndexFamily::enumerate(IndexKind::All, m, n);
  const IndexFamily reduced =
      IndexFamily::enumerate(IndexKind::NonDecreasing, m, n);
  double factorial = 1.0;
  for (int i = 2; i <= m; ++i) factorial *= i;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(full.size(), reduced.size());
  for (long long q = 1; q <= reduced.size(); ++q) {
    for (const std::vector<int>& p : multiset_permutations(reduced.tuple(q))) {
      g(full.rank(p) - 1, q - 1) += 1.0 / factorial;
    }
  }
  return g;
}

Eigen::MatrixXd selector(int n, int m) {
  const IndexFamily full = IndexFamily::enumerate(IndexKind::All, m, n);
  const IndexFamily reduced =
      IndexFamily::enumerate(IndexKind::NonDecreasing, m, n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(reduced.size(), full.size());
  for (long long p = 1; p <= full.size(); ++p) {
    h(reduced.rank(sort_tuple(full.tuple(p))) - 1, p - 1) = 1.0;
  }
  return h;
}

Eigen::VectorXd sym_project(const Eigen::VectorXd& v, int n, int m) {
  const IndexFamily full = IndexFamily::enumerate(IndexKind::All, m, n);
  if (v.size() != full.size()) {
    throw CpdError(Errc::BadLength, "sym_project: vector length must be n^m");
  }
  double factorial = 1.0;
  for (int i = 2; i <= m; ++i) factorial *= i;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (long long p = 1; p <= full.size(); ++p) {
    double acc = 0.0;
    for (const std::vector<int>& s : multiset_permutations(full.tuple(p))) {
      acc += v(full.rank(s) - 1);
    }
    out(p - 1) = acc / factorial;
  }
  return out;
}

}  // namespace cpd
