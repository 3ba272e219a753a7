#include "cpd/cpdalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cpd/compound.hpp"
#include "cpd/errors.hpp"
#include "cpd/linalg.hpp"
#include "cpd/multiindex.hpp"
#include "cpd/polarize.hpp"
#include "cpd/rng.hpp"

namespace cpd {

namespace {

// Pair-scan rank tests with a spectral gap below this are ambiguous.
constexpr double kAmbiguousGap = 1e3;
// Rank-threshold floor for the pair scan.  Mixed slices inherit the error
// of the estimated null-space columns, which can sit well above machine
// epsilon, so singular values below this relative level count as noise.
constexpr double kPairRankFloor = 1e-6;
// Phase 2 scans subsets exhaustively up to this many candidates.
constexpr long long kExhaustiveSubsetLimit = 200000;
// Auto picks the pair-scan algorithm when C(R, K-1) exceeds this.
constexpr long long kAutoAlg2Threshold = 20;

Eigen::MatrixXd reshape_row_major(const Eigen::VectorXd& v, int rows,
                                  int cols) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(v.data(), rows,
                                                          cols);
}

Eigen::VectorXd kron_vector(const Eigen::VectorXd& a,
                            const Eigen::VectorXd& b) {
  Eigen::VectorXd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

/// A few alternating least-squares sweeps against the original tensor.
/// The recovery phases solve intermediate problems whose data carries the
/// candidate directions' small numerical error; for an exactly decomposable
/// tensor the factors themselves are the fixed point of these sweeps, so a
/// couple of iterations remove that systematic bias.  Monotone: keeps the
/// best iterate and stops at the first non-improving sweep.
void als_polish(const Tensor3& t, const Eigen::MatrixXd& unfolded, Cpd& cpd,
                double& resid, double target) {
  const int i_dim = t.extent1();
  const int j_dim = t.extent2();
  const int k_dim = t.extent3();
  Eigen::MatrixXd hstack(i_dim, static_cast<Eigen::Index>(j_dim) * k_dim);
  Eigen::MatrixXd tstack(j_dim, static_cast<Eigen::Index>(i_dim) * k_dim);
  for (int k = 0; k < k_dim; ++k) {
    hstack.middleCols(static_cast<Eigen::Index>(k) * j_dim, j_dim) =
        t.slice(k);
    tstack.middleCols(static_cast<Eigen::Index>(k) * i_dim, i_dim) =
        t.slice(k).transpose();
  }
  constexpr int kPolishSweeps = 6;
  Cpd cur = cpd;
  for (int sweep = 0; sweep < kPolishSweeps && resid > target; ++sweep) {
    cur.A = lstsq(khatri_rao(cur.C, cur.B), hstack.transpose()).transpose();
    cur.B = lstsq(khatri_rao(cur.C, cur.A), tstack.transpose()).transpose();
    cur.A = normalize_columns(cur.A);
    cur.B = normalize_columns(cur.B);
    cur.C = lstsq(khatri_rao(cur.A, cur.B), unfolded).transpose();
    const double swept = residual(t, cur);
    if (swept >= resid) break;
    cpd = cur;
    resid = swept;
  }
}

}  // namespace

const char* kc_verdict_name(KcVerdict v) {
  switch (v) {
    case KcVerdict::AtLeastKminus1: return "AtLeastKminus1";
    case KcVerdict::EqualsK: return "EqualsK";
    case KcVerdict::Violated: return "Violated";
  }
  return "Unknown";
}

std::pair<FMatrix, DiagnosticsReport> phase1_find_f(const Tensor3& t, int r,
                                                    std::uint64_t seed,
                                                    const ToleranceConfig& tol) {
  tol.validate();
  const int k_dim = t.extent3();
  if (k_dim < 2 || r < k_dim) {
    throw CpdError(Errc::InvalidDims, "phase 1 requires 2 <= K <= R");
  }
  const int m = r - k_dim + 2;
  if (m > t.extent1() || m > t.extent2()) {
    throw CpdError(Errc::InvalidDims,
                   "phase 1 requires R - K + 2 <= min(I, J)");
  }
  const long long expected = binomial(r, k_dim - 1);

  const Eigen::MatrixXd detecting = build_detecting(t, m);
  const SvdAnalysis analysis = svd_analysis(detecting, tol.rank);

  DiagnosticsReport report;
  report.kernel_dim_expected = expected;
  report.kernel_dim_found = detecting.cols() - analysis.rank;
  report.singular_value_gap = analysis.gap;
  report.compound_kr_full_rank = (report.kernel_dim_found == expected);
  if (report.kernel_dim_found != expected) {
    report.kc_verdict = KcVerdict::Violated;
    throw DiagnosticError(
        Errc::KernelDimMismatch, report,
        "detecting-matrix kernel has dimension " +
            std::to_string(report.kernel_dim_found) + ", expected " +
            std::to_string(expected));
  }
  report.kc_verdict = KcVerdict::AtLeastKminus1;

  // Symmetrize the kernel basis and fold each column into a K x K^(m-1)
  // slice; the resulting tensor has the block structure
  // [minor-vector matrix, its (m-1)-fold power, mixing] and is solvable by
  // the pencil method once the wide power factor is moved up front.
  const Eigen::MatrixXd g = symmetrizer(k_dim, m);
  const Eigen::MatrixXd folded = g * analysis.kernel;
  long long power = 1;
  for (int l = 0; l < m - 1; ++l) power *= k_dim;
  Tensor3 w(k_dim, static_cast<int>(power), static_cast<int>(expected));
  for (int n = 0; n < static_cast<int>(expected); ++n) {
    w.set_slice(n, Eigen::Map<const Eigen::MatrixXd>(
                       folded.col(n).data(), k_dim, power));
  }
  const Tensor3 w_permuted = permute_modes(w, 2, 3, 1);

  // The candidate directions only steer the downstream column selection,
  // which re-derives every factor from the original tensor and applies its
  // own residual gate, so the intermediate reconstruction may be looser.
  // Minor-vector columns can pass within ~1e-4 of each other for valid
  // inputs, which caps the eigenvector accuracy attainable here.
  ToleranceConfig inner_tol = tol;
  inner_tol.residual = std::max(tol.residual, 1e-6);
  Eigen::MatrixXd f_body;
  try {
    const Cpd inner =
        cpd_gevd(w_permuted, static_cast<int>(expected),
                 derive_seed(seed, 17), inner_tol);
    f_body = normalize_columns(inner.C);
  } catch (const CpdError& error) {
    if (error.is_input_error()) throw;
    throw DiagnosticError(
        Errc::WCpdFailed, report,
        std::string("null-space tensor decomposition failed (") +
            error.what() + ")");
  }

  // A valid recovery has no zero column and no two collinear columns.
  const Eigen::VectorXd norms = f_body.colwise().norm();
  const double top = norms.maxCoeff();
  for (Eigen::Index c = 0; c < f_body.cols(); ++c) {
    if (norms(c) <= tol.zero * top) {
      throw DiagnosticError(Errc::WCpdFailed, report,
                            "recovered null-space matrix has a zero column");
    }
  }
  // Distinct minor-vector directions may legitimately come very close
  // (they are many vectors in a low-dimensional space), so only reject
  // machine-precision duplicates; genuine degeneracies already surface as
  // unresolvable eigenvalue collisions above.
  constexpr double kDuplicateDirection = 1e-12;
  for (Eigen::Index c1 = 0; c1 < f_body.cols(); ++c1) {
    for (Eigen::Index c2 = c1 + 1; c2 < f_body.cols(); ++c2) {
      if (collinear(f_body.col(c1), f_body.col(c2), kDuplicateDirection)) {
        throw DiagnosticError(
            Errc::WCpdFailed, report,
            "recovered null-space matrix has collinear columns");
      }
    }
  }

  report.kc_verdict = KcVerdict::EqualsK;
  FMatrix f;
  f.body = f_body;
  f.rank_target = r;
  return {f, report};
}

Eigen::MatrixXd phase2_columns_of_c(const FMatrix& f, int r,
                                    const ToleranceConfig& tol) {
  tol.validate();
  const int k_dim = static_cast<int>(f.body.rows());
  const int n_cols = static_cast<int>(f.body.cols());
  if (k_dim < 2 || r < k_dim) {
    throw CpdError(Errc::InvalidDims, "phase 2 requires 2 <= K <= R");
  }
  if (n_cols != binomial(r, k_dim - 1)) {
    throw CpdError(Errc::ColumnMismatch,
                   "phase 2 needs C(R, K-1) candidate columns");
  }
  const long long quota = binomial(r - 1, k_dim - 2);
  const long long subset_count = binomial(n_cols, k_dim - 1);
  const bool exhaustive = subset_count <= kExhaustiveSubsetLimit;

  std::vector<Eigen::VectorXd> accepted;
  std::vector<int> subset(static_cast<std::size_t>(k_dim - 1));
  for (int l = 0; l < k_dim - 1; ++l) subset[static_cast<std::size_t>(l)] = l;
  while (true) {
    Eigen::MatrixXd chosen(k_dim, k_dim - 1);
    for (int l = 0; l < k_dim - 1; ++l) {
      chosen.col(l) = f.body.col(subset[static_cast<std::size_t>(l)]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(chosen, Eigen::ComputeFullU);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(sv.size() - 1) > tol.rank * sv(0)) {
      const Eigen::VectorXd x = svd.matrixU().col(k_dim - 1);
      long long hits = 0;
      for (int c = 0; c < n_cols; ++c) {
        if (std::abs(x.dot(f.body.col(c))) <=
            tol.zero * f.body.col(c).norm()) {
          ++hits;
        }
      }
      if (hits >= quota) {
        bool duplicate = false;
        for (const Eigen::VectorXd& u : accepted) {
          if (std::abs(x.dot(u)) >= 1.0 - tol.collinear) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) {
          accepted.push_back(normalize_vector(x));
          if (static_cast<int>(accepted.size()) > r) {
            throw CpdError(Errc::TooManyColumns,
                           "more than R orthogonality directions pass; the "
                           "null-space matrix is degenerate");
          }
          if (!exhaustive && static_cast<int>(accepted.size()) == r) break;
        }
      }
    }
    // Advance to the next strictly increasing subset (0-based, lex).
    int pos = k_dim - 2;
    while (pos >= 0 &&
           subset[static_cast<std::size_t>(pos)] ==
               n_cols - (k_dim - 1) + pos) {
      --pos;
    }
    if (pos < 0) break;
    ++subset[static_cast<std::size_t>(pos)];
    for (int l = pos + 1; l < k_dim - 1; ++l) {
      subset[static_cast<std::size_t>(l)] =
          subset[static_cast<std::size_t>(l - 1)] + 1;
    }
  }

  if (static_cast<int>(accepted.size()) < r) {
    throw CpdError(Errc::NotEnoughColumns,
                   "only " + std::to_string(accepted.size()) +
                       " third-factor directions found, need " +
                       std::to_string(r));
  }
  Eigen::MatrixXd c(k_dim, r);
  for (int col = 0; col < r; ++col) {
    c.col(col) = accepted[static_cast<std::size_t>(col)];
  }
  return c;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> phase3_ab_given_c(
    const Tensor3& t, const Eigen::MatrixXd& c, std::uint64_t seed,
    const ToleranceConfig& tol) {
  tol.validate();
  const int i_dim = t.extent1();
  const int j_dim = t.extent2();
  const int k_dim = t.extent3();
  const int r = static_cast<int>(c.cols());
  if (c.rows() != k_dim) {
    throw CpdError(Errc::BadShape, "third factor must have K rows");
  }
  if (k_dim < 2 || r < k_dim) {
    throw CpdError(Errc::InvalidDims, "phase 3 requires 2 <= K <= R");
  }
  const int m = r - k_dim + 2;
  if (m > i_dim || m > j_dim) {
    throw CpdError(Errc::InvalidDims,
                   "phase 3 requires R - K + 2 <= min(I, J)");
  }

  // Mix slices so the third factor becomes D = [I_K, D2].
  const Eigen::MatrixXd x = c.leftCols(k_dim);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(x);
  if (!lu.isInvertible()) {
    throw CpdError(Errc::AlignmentFailed,
                   "leading third-factor columns are singular");
  }
  const Eigen::MatrixXd x_inv = lu.inverse();
  const Eigen::MatrixXd d = x_inv * c;
  const Eigen::MatrixXd z = matricize(t) * x_inv.transpose();

  // The first two mixed slices carry only components {1, 2, K+1, ..., R}.
  std::vector<int> slots;
  slots.push_back(0);
  slots.push_back(1);
  for (int col = k_dim; col < r; ++col) slots.push_back(col);

  const Tensor3 two_slice = tensorize(z.leftCols(2), i_dim, j_dim);
  Eigen::MatrixXd known_c(2, m);
  for (int l = 0; l < m; ++l) {
    known_c.col(l) = d.block(0, slots[static_cast<std::size_t>(l)], 2, 1);
  }

  const Cpd inner = cpd_gevd(two_slice, m, derive_seed(seed, 23), tol);

  // Greedy bijection between recovered and known two-row columns.
  std::vector<int> match(static_cast<std::size_t>(m), -1);
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  for (int step = 0; step < m; ++step) {
    double best = -1.0;
    int best_est = -1;
    int best_known = -1;
    for (int e = 0; e < m; ++e) {
      if (match[static_cast<std::size_t>(e)] >= 0) continue;
      for (int k = 0; k < m; ++k) {
        if (taken[static_cast<std::size_t>(k)]) continue;
        const double cos = abs_cosine(inner.C.col(e), known_c.col(k));
        if (cos > best) {
          best = cos;
          best_est = e;
          best_known = k;
        }
      }
    }
    if (best < 1.0 - tol.collinear) {
      throw CpdError(Errc::AlignmentFailed,
                     "pencil components do not align with the known "
                     "third-factor columns");
    }
    match[static_cast<std::size_t>(best_est)] = best_known;
    taken[static_cast<std::size_t>(best_known)] = true;
  }

  Eigen::MatrixXd a(i_dim, r);
  Eigen::MatrixXd b(j_dim, r);
  Eigen::MatrixXd known_s = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(i_dim) * j_dim, m);
  for (int e = 0; e < m; ++e) {
    const int known_idx = match[static_cast<std::size_t>(e)];
    const int slot = slots[static_cast<std::size_t>(known_idx)];
    a.col(slot) = inner.A.col(e);
    b.col(slot) = inner.B.col(e);
    const Eigen::VectorXd est = inner.C.col(e);
    const Eigen::VectorXd ref = known_c.col(known_idx);
    // est carries the component's full magnitude, ref only its known
    // two-row weights: est = scale * ref, so fit scale onto ref.
    const double denom = ref.squaredNorm();
    const double scale = denom > 0.0 ? est.dot(ref) / denom : 0.0;
    // Column order must follow the slot list so the subtraction below pairs
    // each rank-one vectorization with its own third-factor column.
    known_s.col(known_idx) =
        scale * kron_vector(inner.A.col(e), inner.B.col(e));
  }

  // Remove the identified components; the identity block of D leaves the
  // remaining rank-one vectorizations sitting in columns 3..K.
  Eigen::MatrixXd d_known(k_dim, m);
  for (int l = 0; l < m; ++l) {
    d_known.col(l) = d.col(slots[static_cast<std::size_t>(l)]);
  }
  const Eigen::MatrixXd remainder = z - known_s * d_known.transpose();
  for (int col = 2; col < k_dim; ++col) {
    const Eigen::MatrixXd block =
        reshape_row_major(remainder.col(col), i_dim, j_dim);
    Eigen::VectorXd a_col, b_col;
    if (!split_rank1(block, tol.collinear, a_col, b_col)) {
      throw CpdError(Errc::Rank1SplitFailed,
                     "residual slice component is not rank one");
    }
    a.col(col) = a_col;
    b.col(col) = b_col;
  }
  return {a, b};
}

Algo2Result algo2_find_ab(const Tensor3& t, const FMatrix& f, int r,
                          std::uint64_t seed, const ToleranceConfig& tol,
                          bool stop_at_coverage) {
  tol.validate();
  const int i_dim = t.extent1();
  const int j_dim = t.extent2();
  const int k_dim = t.extent3();
  const int n_cols = static_cast<int>(f.body.cols());
  if (f.body.rows() != k_dim) {
    throw CpdError(Errc::BadShape, "null-space matrix must have K rows");
  }
  if (k_dim < 2 || r < k_dim) {
    throw CpdError(Errc::InvalidDims, "pair scan requires 2 <= K <= R");
  }
  if (n_cols != binomial(r, k_dim - 1)) {
    throw CpdError(Errc::ColumnMismatch,
                   "pair scan needs C(R, K-1) null-space columns");
  }
  const int m = r - k_dim + 2;
  if (m > i_dim || m > j_dim) {
    throw CpdError(Errc::InvalidDims,
                   "pair scan requires R - K + 2 <= min(I, J)");
  }

  // Mixed slices: V_n = sum_k F(k, n) T_k drops K - 2 of the R components.
  const Eigen::MatrixXd mixed = matricize(t) * f.body;
  std::vector<Eigen::MatrixXd> v_slices;
  v_slices.reserve(static_cast<std::size_t>(n_cols));
  for (int n = 0; n < n_cols; ++n) {
    v_slices.push_back(reshape_row_major(mixed.col(n), i_dim, j_dim));
  }

  Algo2Result result;
  const double pair_rank_tol = std::max(tol.rank, kPairRankFloor);
  for (int i = 0; i < n_cols; ++i) {
    for (int j = i + 1; j < n_cols; ++j) {
      Eigen::MatrixXd wide(i_dim, 2 * j_dim);
      wide << v_slices[static_cast<std::size_t>(i)],
          v_slices[static_cast<std::size_t>(j)];
      Eigen::MatrixXd tall(2 * i_dim, j_dim);
      tall << v_slices[static_cast<std::size_t>(i)],
          v_slices[static_cast<std::size_t>(j)];
      const auto [rank_w, gap_w] = rank_and_gap(wide, pair_rank_tol);
      const auto [rank_t, gap_t] = rank_and_gap(tall, pair_rank_tol);
      if (gap_w < kAmbiguousGap || gap_t < kAmbiguousGap) continue;
      if (rank_w == m && rank_t == m) {
        result.pair_set.emplace_back(i, j);
      }
    }
  }
  if (result.pair_set.empty()) {
    throw CpdError(Errc::PairScanEmpty,
                   "no slice pair passes the rank-m test");
  }

  std::vector<Eigen::VectorXd> leaders;
  std::vector<std::vector<Eigen::VectorXd>> bundles;
  std::vector<bool> covered(static_cast<std::size_t>(n_cols), false);
  int covered_count = 0;
  std::uint64_t pair_index = 0;
  for (const auto& [i, j] : result.pair_set) {
    ++pair_index;
    if (stop_at_coverage && covered_count == n_cols &&
        static_cast<int>(leaders.size()) == r) {
      break;
    }
    Tensor3 pair_tensor(i_dim, j_dim, 2);
    pair_tensor.set_slice(0, v_slices[static_cast<std::size_t>(i)]);
    pair_tensor.set_slice(1, v_slices[static_cast<std::size_t>(j)]);
    Cpd inner;
    try {
      inner = cpd_gevd(pair_tensor, m, derive_seed(seed, 1000 + pair_index),
                       tol);
    } catch (const CpdError&) {
      continue;  // this pair is uninformative; others cover its components
    }
    ++result.pairs_solved;
    for (int col = 0; col < m; ++col) {
      const Eigen::VectorXd direction = normalize_vector(
          kron_vector(inner.A.col(col), inner.B.col(col)));
      bool placed = false;
      for (std::size_t l = 0; l < leaders.size(); ++l) {
        if (collinear(direction, leaders[l], tol.collinear)) {
          bundles[l].push_back(direction);
          placed = true;
          break;
        }
      }
      if (!placed) {
        leaders.push_back(direction);
        bundles.push_back({direction});
      }
    }
    for (int idx : {i, j}) {
      if (!covered[static_cast<std::size_t>(idx)]) {
        covered[static_cast<std::size_t>(idx)] = true;
        ++covered_count;
      }
    }
  }

  if (static_cast<int>(leaders.size()) != r) {
    throw CpdError(Errc::ClusterCountMismatch,
                   "pair solutions form " + std::to_string(leaders.size()) +
                       " direction clusters, expected " + std::to_string(r));
  }

  result.a.resize(i_dim, r);
  result.b.resize(j_dim, r);
  for (int cluster = 0; cluster < r; ++cluster) {
    const auto& bundle = bundles[static_cast<std::size_t>(cluster)];
    Eigen::MatrixXd stack(static_cast<Eigen::Index>(i_dim) * j_dim,
                          static_cast<Eigen::Index>(bundle.size()));
    for (std::size_t col = 0; col < bundle.size(); ++col) {
      stack.col(static_cast<Eigen::Index>(col)) = bundle[col];
    }
    Eigen::VectorXd center;
    if (stack.cols() == 1) {
      center = stack.col(0);
    } else {
      Eigen::BDCSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeThinU);
      center = svd.matrixU().col(0);
    }
    center = normalize_vector(center);
    Eigen::VectorXd a_col, b_col;
    if (!split_rank1(reshape_row_major(center, i_dim, j_dim), tol.collinear,
                     a_col, b_col)) {
      throw CpdError(Errc::Rank1SplitFailed,
                     "cluster center is not a rank-one vectorization");
    }
    result.a.col(cluster) = a_col;
    result.b.col(cluster) = b_col;
    result.cluster_sizes.push_back(static_cast<int>(bundle.size()));
  }
  return result;
}

CpdResult decompose(const Tensor3& t, int r, const CpdOptions& options) {
  options.tol.validate();
  const int i_dim = t.extent1();
  const int j_dim = t.extent2();
  if (r < 2 || static_cast<long long>(r) >
                   static_cast<long long>(i_dim) * j_dim) {
    throw CpdError(Errc::InvalidDims, "rank must satisfy 2 <= R <= I*J");
  }
  const Eigen::MatrixXd unfolded = matricize(t);

  auto [t_work, v] = reduce_third_mode(t, options.tol.rank);
  const int k_prime = static_cast<int>(v.cols());
  if (r < k_prime) {
    throw CpdError(Errc::InvalidDims,
                   "rank is below the third-mode row-space rank");
  }

  CpdResult result;
  result.reduced_k = k_prime;
  int k_eff = k_prime;
  if (options.kc.has_value()) {
    const int kc = *options.kc;
    if (kc < 2 || kc > k_prime) {
      throw CpdError(Errc::InvalidDims,
                     "declared k-rank must lie in [2, K']");
    }
    if (kc < k_prime) {
      auto [t_mixed, x] = random_slice_mixture(
          t_work, kc, derive_seed(options.seed, 0xA11CE));
      t_work = t_mixed;
      result.mixture = x;
      k_eff = kc;
    }
  }

  auto [f, report] =
      phase1_find_f(t_work, r, derive_seed(options.seed, 1), options.tol);
  result.report = report;

  Algorithm algorithm = options.algorithm;
  if (algorithm == Algorithm::Auto) {
    algorithm = binomial(r, k_eff - 1) > kAutoAlg2Threshold ? Algorithm::Alg2
                                                            : Algorithm::Alg1;
  }
  result.algorithm_used = algorithm;

  Eigen::MatrixXd a, b;
  if (algorithm == Algorithm::Alg1) {
    const Eigen::MatrixXd c_work =
        phase2_columns_of_c(f, r, options.tol);
    std::tie(a, b) = phase3_ab_given_c(t_work, c_work,
                                       derive_seed(options.seed, 2),
                                       options.tol);
  } else {
    Algo2Result algo2 =
        algo2_find_ab(t_work, f, r, derive_seed(options.seed, 3),
                      options.tol, options.stop_at_coverage);
    a = algo2.a;
    b = algo2.b;
    result.algo2 = std::move(algo2);
  }

  // Final third factor against the original unfolding; this also undoes the
  // reduction and any slice mixture.
  result.cpd.A = a;
  result.cpd.B = b;
  result.cpd.C = lstsq(khatri_rao(a, b), unfolded).transpose();
  result.final_residual = residual(t, result.cpd);
  if (result.final_residual > 0.1 * options.tol.residual) {
    als_polish(t, unfolded, result.cpd, result.final_residual,
               0.1 * options.tol.residual);
  }
  if (result.final_residual > options.tol.residual) {
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "final reconstruction residual %.3e exceeds tolerance %.3e",
                  result.final_residual, options.tol.residual);
    throw DiagnosticError(Errc::ResidualTooLarge, result.report, detail);
  }
  return result;
}

}  // namespace cpd
