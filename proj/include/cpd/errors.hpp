#ifndef CPD_ERRORS_HPP
#define CPD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cpd {

/// Error codes for every failure mode of the library.  Codes up to and
/// including InvalidTolerance signal invalid input (bad shapes, bad
/// arguments, bad files); the remaining codes signal numerical or
/// diagnostic failures detected while running the decomposition.
enum class Errc {
  // input / validation
  InvalidDims,
  NotMember,
  Overflow,
  TooLarge,
  BadLength,
  ColumnMismatch,
  BadShape,
  IoError,
  FormatError,
  InvalidTolerance,
  // numerical / diagnostic
  ComplexEigenvalues,
  DegeneratePencil,
  RankMismatch,
  ResidualTooLarge,
  KernelDimMismatch,
  WCpdFailed,
  NotEnoughColumns,
  TooManyColumns,
  AlignmentFailed,
  Rank1SplitFailed,
  PairScanEmpty,
  ClusterCountMismatch,
  NoBijection,
};

/// Stable text name of an error code (matches the enumerator spelling).
const char* errc_name(Errc code);

/// \brief Exception carrying an Errc; thrown by all library entry points.
class CpdError : public std::runtime_error {
 public:
  CpdError(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

  /// True for codes that indicate invalid input rather than a numerical
  /// or diagnostic failure.
  bool is_input_error() const {
    return static_cast<int>(code_) <= static_cast<int>(Errc::InvalidTolerance);
  }

 private:
  Errc code_;
};

}  // namespace cpd

#endif  // CPD_ERRORS_HPP
