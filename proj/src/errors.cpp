#include "cpd/errors.hpp"

namespace cpd {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidDims: return "InvalidDims";
    case Errc::NotMember: return "NotMember";
    case Errc::Overflow: return "Overflow";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadLength: return "BadLength";
    case Errc::ColumnMismatch: return "ColumnMismatch";
    case Errc::BadShape: return "BadShape";
    case Errc::IoError: return "IoError";
    case Errc::FormatError: return "FormatError";
    case Errc::InvalidTolerance: return "InvalidTolerance";
    case Errc::ComplexEigenvalues: return "ComplexEigenvalues";
    case Errc::DegeneratePencil: return "DegeneratePencil";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::ResidualTooLarge: return "ResidualTooLarge";
    case Errc::KernelDimMismatch: return "KernelDimMismatch";
    case Errc::WCpdFailed: return "WCpdFailed";
    case Errc::NotEnoughColumns: return "NotEnoughColumns";
    case Errc::TooManyColumns: return "TooManyColumns";
    case Errc::AlignmentFailed: return "AlignmentFailed";
    case Errc::Rank1SplitFailed: return "Rank1SplitFailed";
    case Errc::PairScanEmpty: return "PairScanEmpty";
    case Errc::ClusterCountMismatch: return "ClusterCountMismatch";
    case Errc::NoBijection: return "NoBijection";
  }
  return "UnknownError";
}

}  // namespace cpd
