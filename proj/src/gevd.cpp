#include "cpd/gevd.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "cpd/errors.hpp"
#include "cpd/linalg.hpp"
#include "cpd/rng.hpp"

namespace cpd {

namespace {

// Pair couplings above this (relative to the diagonal scale) get a
// Jacobi update during joint-diagonalization sweeps.
constexpr double kCouplingProcess = 1e-11;
// Pair couplings still above this after the sweeps mean the pair could
// not be separated by any slice: the spectrum is genuinely degenerate.
constexpr double kCouplingResolved = 1e-7;
// Two components whose eigenvalues agree in every slice to this relative
// precision are indistinguishable (duplicate eigenvalue tuples), even when
// nothing couples them; the decomposition is then not unique.
constexpr double kTupleCollision = 1e-9;
constexpr int kJointSweeps = 8;

/// Converts the complex eigenvector matrix of a real eigenproblem into a
/// real basis of the same invariant subspaces: real eigenvectors are phase
/// realized and a conjugate pair (v, v̄) contributes its real and imaginary
/// parts, which span the pair's two-dimensional real invariant subspace.
Eigen::MatrixXd realize_initial(const Eigen::MatrixXcd& vectors,
                                const Eigen::VectorXcd& values) {
  const Eigen::Index n = vectors.cols();
  Eigen::MatrixXd real = Eigen::MatrixXd::Zero(n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    used[static_cast<std::size_t>(i)] = true;
    Eigen::Index pivot = 0;
    vectors.col(i).cwiseAbs().maxCoeff(&pivot);
    const std::complex<double> phase =
        vectors(pivot, i) / std::abs(vectors(pivot, i));
    const Eigen::VectorXcd rotated = vectors.col(i) * std::conj(phase);
    if (std::abs(values(i).imag()) <= 1e-12 * (1.0 + std::abs(values(i)))) {
      Eigen::VectorXd col = rotated.real();
      const double norm = col.norm();
      real.col(i) = norm > 1e-300 ? Eigen::VectorXd(col / norm) : col;
      continue;
    }
    // Complex eigenvalue: locate the unused conjugate partner.
    Eigen::Index partner = -1;
    double best = std::numeric_limits<double>::max();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(values(j) - std::conj(values(i)));
      if (d < best) {
        best = d;
        partner = j;
      }
    }
    Eigen::VectorXd re = rotated.real();
    Eigen::VectorXd im = rotated.imag();
    const double re_norm = re.norm();
    const double im_norm = im.norm();
    real.col(i) = re_norm > 1e-300 ? Eigen::VectorXd(re / re_norm) : re;
    if (partner >= 0) {
      used[static_cast<std::size_t>(partner)] = true;
      real.col(partner) = im_norm > 1e-300 ? Eigen::VectorXd(im / im_norm) : im;
    }
  }
  return real;
}

/// One Jacobi update: diagonalizes the 2x2 principal block (i, j) of the
/// slice that separates the pair best, applies the similarity to every
/// slice and accumulates it into the basis.  Returns false when no slice
/// exhibits a usable real spectral gap for this pair.
bool update_pair(std::vector<Eigen::MatrixXd>& g, Eigen::MatrixXd& v,
                 Eigen::Index i, Eigen::Index j) {
  // Rank slices by the real discriminant of their (i, j) block.
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double h11 = g[k](i, i), h12 = g[k](i, j);
    const double h21 = g[k](j, i), h22 = g[k](j, j);
    const double disc = (h11 - h22) * (h11 - h22) + 4.0 * h12 * h21;
    if (disc > 0.0) order.emplace_back(disc, k);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  Eigen::Matrix2d t;
  bool have_t = false;
  for (const auto& [disc, k] : order) {
    const double h11 = g[k](i, i), h12 = g[k](i, j);
    const double h21 = g[k](j, i), h22 = g[k](j, j);
    const double root = std::sqrt(disc);
    const double lambda1 = 0.5 * ((h11 + h22) + root);
    const double lambda2 = 0.5 * ((h11 + h22) - root);
    const auto eigvec = [&](double lambda) {
      Eigen::Vector2d a(h12, lambda - h11);
      Eigen::Vector2d b(lambda - h22, h21);
      Eigen::Vector2d pick = a.norm() >= b.norm() ? a : b;
      const double norm = pick.norm();
      return norm > 1e-300 ? Eigen::Vector2d(pick / norm) : pick;
    };
    t.col(0) = eigvec(lambda1);
    t.col(1) = eigvec(lambda2);
    const double det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
    if (std::abs(det) >= 1e-3) {
      have_t = true;
      break;
    }
  }
  if (!have_t) return false;
  const double det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
  Eigen::Matrix2d tinv;
  tinv << t(1, 1), -t(0, 1), -t(1, 0), t(0, 0);
  tinv /= det;
  for (auto& gk : g) {
    // Columns first, then rows: G <- T_ext^{-1} G T_ext.
    Eigen::MatrixXd cols(gk.rows(), 2);
    cols.col(0) = gk.col(i);
    cols.col(1) = gk.col(j);
    cols = cols * t;
    gk.col(i) = cols.col(0);
    gk.col(j) = cols.col(1);
    Eigen::MatrixXd rows(2, gk.cols());
    rows.row(0) = gk.row(i);
    rows.row(1) = gk.row(j);
    rows = tinv * rows;
    gk.row(i) = rows.row(0);
    gk.row(j) = rows.row(1);
  }
  Eigen::MatrixXd vcols(v.rows(), 2);
  vcols.col(0) = v.col(i);
  vcols.col(1) = v.col(j);
  vcols = vcols * t;
  v.col(i) = vcols.col(0).normalized();
  v.col(j) = vcols.col(1).normalized();
  // Keep G consistent with the renormalization of V's columns.
  const double s0 = vcols.col(0).norm();
  const double s1 = vcols.col(1).norm();
  if (s0 > 1e-300 && s1 > 1e-300) {
    for (auto& gk : g) {
      gk.col(i) /= s0;
      gk.row(i) *= s0;
      gk.col(j) /= s1;
      gk.row(j) *= s1;
    }
  }
  return true;
}

double diagonal_scale(const std::vector<Eigen::MatrixXd>& g) {
  double scale = 0.0;
  for (const auto& gk : g) {
    scale = std::max(scale, gk.diagonal().cwiseAbs().maxCoeff());
  }
  return scale;
}

/// Recomputes the transformed family G_k = V^{-1} F_k V from scratch.
/// Returns false when V is numerically singular.
bool transform_family(const std::vector<Eigen::MatrixXd>& family,
                      const Eigen::MatrixXd& v,
                      std::vector<Eigen::MatrixXd>& g) {
  Eigen::PartialPivLU<Eigen::MatrixXd> v_lu(v);
  if (!(v_lu.rcond() > 1e-14)) return false;
  g.clear();
  g.reserve(family.size());
  for (const auto& fk : family) g.push_back(v_lu.solve(fk * v));
  return true;
}

/// Jacobi-style joint diagonalization of the compressed slice family
/// sharing one eigenbasis.  Works pair by pair, always picking the slice
/// that separates the pair's eigenvalues best, so a near collision in one
/// slice is disambiguated by the others.  Returns true when every
/// off-diagonal coupling is resolved.
bool joint_diagonalize(const std::vector<Eigen::MatrixXd>& family,
                       Eigen::MatrixXd& v) {
  const Eigen::Index n = v.cols();
  std::vector<Eigen::MatrixXd> g;
  if (!transform_family(family, v, g)) return false;
  if (n < 2) return true;
  for (int sweep = 0; sweep < kJointSweeps; ++sweep) {
    // Refresh G from the accumulated basis: thousands of incremental 2x2
    // updates would otherwise let roundoff drift G away from V^{-1} F V.
    if (sweep > 0 && !transform_family(family, v, g)) return false;
    const double scale = diagonal_scale(g);
    if (!(scale > 0.0)) return false;
    bool any = false;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        double off = 0.0;
        for (const auto& gk : g) {
          off = std::max({off, std::abs(gk(i, j)), std::abs(gk(j, i))});
        }
        if (off <= kCouplingProcess * scale) continue;
        if (update_pair(g, v, i, j)) any = true;
      }
    }
    if (!any) break;
  }
  if (!transform_family(family, v, g)) return false;
  const double scale = diagonal_scale(g);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double off = 0.0;
      double sep = 0.0;
      for (const auto& gk : g) {
        off = std::max({off, std::abs(gk(i, j)), std::abs(gk(j, i))});
        sep = std::max(sep, std::abs(gk(i, i) - gk(j, j)));
      }
      if (off > kCouplingResolved * scale) return false;
      if (sep <= kTupleCollision * (1.0 + scale)) return false;
    }
  }
  return true;
}

}  // namespace

Cpd cpd_gevd(const Tensor3& t, int r, std::uint64_t seed,
             const ToleranceConfig& tol) {
  tol.validate();
  const int i_dim = t.extent1();
  const int j_dim = t.extent2();
  const int k_dim = t.extent3();
  if (r < 1 || r > i_dim || r > j_dim) {
    throw CpdError(Errc::InvalidDims, "cpd_gevd requires 1 <= R <= min(I, J)");
  }

  std::vector<Eigen::MatrixXd> slices;
  slices.reserve(static_cast<std::size_t>(k_dim));
  for (int k = 0; k < k_dim; ++k) slices.push_back(t.slice(k));

  Rng rng(seed);
  Eigen::MatrixXd a_vectors;  // R x R eigenbasis in U-coordinates
  Eigen::MatrixXd u_basis;
  int complex_failures = 0;
  constexpr int kMaxDraws = 3;
  for (int attempt = 1;; ++attempt) {
    // Two unit-norm random mixtures of the frontal slices.
    const Eigen::VectorXd x = rng.unit_vector(k_dim);
    const Eigen::VectorXd y = rng.unit_vector(k_dim);
    Eigen::MatrixXd y1 = Eigen::MatrixXd::Zero(i_dim, j_dim);
    Eigen::MatrixXd y2 = Eigen::MatrixXd::Zero(i_dim, j_dim);
    for (int k = 0; k < k_dim; ++k) {
      y1 += x(k) * slices[static_cast<std::size_t>(k)];
      y2 += y(k) * slices[static_cast<std::size_t>(k)];
    }

    // Rank-R compression bases from the stacked pencils.
    Eigen::MatrixXd wide(i_dim, 2 * j_dim);
    wide << y1, y2;
    Eigen::MatrixXd tall(2 * i_dim, j_dim);
    tall << y1, y2;
    Eigen::BDCSVD<Eigen::MatrixXd> wide_svd(
        wide, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::BDCSVD<Eigen::MatrixXd> tall_svd(
        tall, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto rank_of = [&](const Eigen::VectorXd& sv) {
      int rank = 0;
      if (sv.size() > 0 && sv(0) > 0.0) {
        for (Eigen::Index l = 0; l < sv.size(); ++l) {
          if (sv(l) > tol.rank * sv(0)) ++rank;
        }
      }
      return rank;
    };
    if (rank_of(wide_svd.singularValues()) != r ||
        rank_of(tall_svd.singularValues()) != r) {
      throw CpdError(Errc::RankMismatch,
                     "pencil compression rank differs from requested rank");
    }
    const Eigen::MatrixXd u = wide_svd.matrixU().leftCols(r);
    const Eigen::MatrixXd w = tall_svd.matrixV().leftCols(r);
    const Eigen::MatrixXd y1_hat = u.transpose() * y1 * w;
    const Eigen::MatrixXd y2_hat = u.transpose() * y2 * w;

    // Reject a singular compressed Y2 (up to three draws).
    Eigen::JacobiSVD<Eigen::MatrixXd> y2_svd(y2_hat);
    const Eigen::VectorXd& y2_sv = y2_svd.singularValues();
    if (!(y2_sv(y2_sv.size() - 1) > tol.rank * y2_sv(0))) {
      if (attempt >= kMaxDraws) {
        throw CpdError(Errc::DegeneratePencil,
                       "compressed pencil stayed singular for three draws");
      }
      continue;
    }

    // All compressed slices share the eigenbasis of the mixture pencil:
    // U' T_k W (Y2hat)^{-1} = Atilde Diag(...) Atilde^{-1} for every k.
    const Eigen::PartialPivLU<Eigen::MatrixXd> y2_lu(y2_hat);
    std::vector<Eigen::MatrixXd> family;
    family.reserve(static_cast<std::size_t>(k_dim));
    for (int k = 0; k < k_dim; ++k) {
      family.push_back(u.transpose() * slices[static_cast<std::size_t>(k)] *
                       w * y2_lu.inverse());
    }
    const Eigen::MatrixXd pencil = y1_hat * y2_lu.inverse();
    Eigen::EigenSolver<Eigen::MatrixXd> eigen(pencil);

    // Initial basis from the mixture pencil, then joint Jacobi sweeps over
    // the whole slice family to resolve eigenvalue near collisions that a
    // single pencil cannot separate.
    Eigen::MatrixXd v = realize_initial(eigen.eigenvectors(),
                                        eigen.eigenvalues());
    const bool resolved = joint_diagonalize(family, v);
    if (!resolved) {
      // One redraw is allowed; a spectrum degenerate in every slice stays
      // unresolvable and signals violated preconditions.
      ++complex_failures;
      if (complex_failures >= 2 || attempt >= kMaxDraws) {
        throw CpdError(Errc::ComplexEigenvalues,
                       "pencil eigenvalues complex or colliding after redraw");
      }
      continue;
    }
    u_basis = u;
    a_vectors = v;
    break;
  }

  Cpd result;
  result.A = normalize_columns(u_basis * a_vectors);

  // B column r: rows r of pinv(A) * T_k stacked over k form the rank-one
  // matrix c_r b_r'; its dominant right singular direction is b_r.
  const Eigen::MatrixXd a_pinv = pinv(result.A);
  std::vector<Eigen::MatrixXd> projected;
  projected.reserve(static_cast<std::size_t>(k_dim));
  for (int k = 0; k < k_dim; ++k) {
    projected.push_back(a_pinv * slices[static_cast<std::size_t>(k)]);
  }
  result.B.resize(j_dim, r);
  for (int col = 0; col < r; ++col) {
    Eigen::MatrixXd stack(k_dim, j_dim);
    for (int k = 0; k < k_dim; ++k) {
      stack.row(k) = projected[static_cast<std::size_t>(k)].row(col);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeThinV);
    result.B.col(col) = svd.matrixV().col(0);
  }
  result.B = normalize_columns(result.B);

  result.C = lstsq(khatri_rao(result.A, result.B), matricize(t)).transpose();

  if (residual(t, result) > tol.residual) {
    throw CpdError(Errc::ResidualTooLarge,
                   "pencil-based factors do not reconstruct the tensor");
  }
  return result;
}

}  // namespace cpd
