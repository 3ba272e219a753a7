#ifndef CPD_CPDALG_HPP
#define CPD_CPDALG_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cpd/gevd.hpp"
#include "cpd/tensor.hpp"
#include "cpd/tolerances.hpp"

namespace cpd {

/// \brief Recovered null-space direction matrix.
///
/// body is K x C(R, K-1); every column is unit-norm and sign-canonical,
/// no column is zero, and no two columns are collinear (k-rank >= 2).
/// Columns are an unknown permutation/scaling of the minor-vector matrix
/// of the third factor.
struct FMatrix {
  Eigen::MatrixXd body;
  int rank_target = 0;  ///< R used to produce it
};

/// Verdict on the k-rank of the third factor implied by the diagnostics.
enum class KcVerdict { AtLeastKminus1, EqualsK, Violated };

const char* kc_verdict_name(KcVerdict v);

/// \brief Working-condition diagnostics gathered while recovering F.
struct DiagnosticsReport {
  long long kernel_dim_found = 0;
  long long kernel_dim_expected = 0;  ///< C(R, K-1)
  KcVerdict kc_verdict = KcVerdict::Violated;
  /// Inferred from the kernel dimension: the stacked minor-vector system
  /// can only reach the expected kernel when the paired compound columns
  /// are independent.
  bool compound_kr_full_rank = false;
  /// sigma_rank / sigma_rank+1 at the kernel cut (inf if nothing discarded).
  double singular_value_gap = 0.0;
};

/// \brief Failure that carries the diagnostics gathered before the stop.
class DiagnosticError : public CpdError {
 public:
  DiagnosticError(Errc code, const DiagnosticsReport& report,
                  const std::string& message)
      : CpdError(code, message), report_(report) {}

  const DiagnosticsReport& report() const { return report_; }

 private:
  DiagnosticsReport report_;
};

/// \brief Phase 1: recover F (the column-scaled minor-vector matrix of the
/// third factor) from the order-m null space of the detecting matrix.
///
/// m = R - K + 2; requires 2 <= K <= R and m <= min(I, J).  The kernel of
/// the detecting matrix must have dimension exactly C(R, K-1)
/// (DiagnosticError(KernelDimMismatch) otherwise, verdict Violated); its
/// symmetrized basis folds into a K x K^(m-1) x C(R,K-1) tensor whose CPD
/// (solved with the pencil method after putting the wide power factor
/// first) yields F.  Any inner solver failure or a degenerate F column
/// pattern raises DiagnosticError(WCpdFailed) with verdict AtLeastKminus1.
std::pair<FMatrix, DiagnosticsReport> phase1_find_f(
    const Tensor3& t, int r, std::uint64_t seed,
    const ToleranceConfig& tol = {});

/// \brief Phase 2: read the third-factor columns off F.
///
/// Scans (K-1)-column subsets of F in lexicographic order; a full-rank
/// subset contributes its unit left-null direction, accepted when it is
/// orthogonal (within tol.zero) to at least C(R-1, K-2) columns of F and
/// not collinear with a previously accepted direction.  The scan is
/// exhaustive when C(N, K-1) <= 200000, otherwise it stops at R accepted
/// directions.  Errors: NotEnoughColumns / TooManyColumns when the count
/// of accepted directions is not exactly R; ColumnMismatch on a malformed F.
Eigen::MatrixXd phase2_columns_of_c(const FMatrix& f, int r,
                                    const ToleranceConfig& tol = {});

/// \brief Phase 3: recover A and B given the full third factor.
///
/// Mixes slices so the third factor becomes [I_K D2]; the first two mixed
/// slices form a rank-(R-K+2) subtensor solved with the pencil method;
/// its components are matched back to known third-factor columns
/// (AlignmentFailed when matching breaks down) and the remaining rank-one
/// blocks are read directly off the mixed unfolding and split
/// (Rank1SplitFailed when a block is not rank one).  Returns (A, B) with
/// unit sign-canonical columns aligned with the columns of c.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> phase3_ab_given_c(
    const Tensor3& t, const Eigen::MatrixXd& c, std::uint64_t seed,
    const ToleranceConfig& tol = {});

/// \brief Pair-scan alternative to phases 2-3 for large C(R, K-1).
struct Algo2Result {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  std::vector<std::pair<int, int>> pair_set;  ///< accepted (i, j), 0-based
  int pairs_solved = 0;
  std::vector<int> cluster_sizes;
};

/// Builds the mixed tensor V = unfold(T) * F, scans slice pairs whose two
/// stacked matrices both have numerical rank m = R - K + 2 (pairs whose
/// rank test has spectral gap < 1e3 are skipped as ambiguous;
/// PairScanEmpty when no pair survives), solves each accepted pair with
/// the pencil method, pools the resulting unit rank-one directions, and
/// clusters them greedily at the collinearity tolerance.  Exactly R
/// clusters must emerge (ClusterCountMismatch otherwise); cluster centers
/// split into the columns of A and B.  When stop_at_coverage is true the
/// pair loop exits early once every F column index has appeared in a
/// solved pair and R clusters exist.
Algo2Result algo2_find_ab(const Tensor3& t, const FMatrix& f, int r,
                          std::uint64_t seed, const ToleranceConfig& tol = {},
                          bool stop_at_coverage = false);

enum class Algorithm { Auto, Alg1, Alg2 };

struct CpdOptions {
  Algorithm algorithm = Algorithm::Auto;
  ToleranceConfig tol{};
  std::uint64_t seed = 0;
  /// Declared k-rank of the third factor.  Never estimated from data:
  /// defaults to the reduced third dimension K'; when smaller, the slices
  /// are first compressed to kc random mixtures.
  std::optional<int> kc;
  bool stop_at_coverage = false;
};

struct CpdResult {
  Cpd cpd;                     ///< factors against the original tensor
  DiagnosticsReport report;
  Algorithm algorithm_used = Algorithm::Alg1;
  std::optional<Algo2Result> algo2;
  int reduced_k = 0;           ///< K' after dimensionality reduction
  std::optional<Eigen::MatrixXd> mixture;  ///< slice-mixing matrix if used
  double final_residual = 0.0;
};

/// \brief Top-level driver: reduction, optional slice mixture, phase 1,
/// then either phases 2-3 (alg1) or the pair scan (alg2), and a final
/// least-squares third factor against the original unfolding.
///
/// Auto picks alg2 exactly when C(R, K_eff - 1) > 20.  Requires R >= 2,
/// R <= I*J, and R >= K' (InvalidDims otherwise; likewise for a declared
/// kc outside [2, K']).  ResidualTooLarge if the final reconstruction
/// misses tol.residual.
CpdResult decompose(const Tensor3& t, int r, const CpdOptions& options = {});

}  // namespace cpd

#endif  // CPD_CPDALG_HPP
