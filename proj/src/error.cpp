#include "quadmorph/error.hpp"

namespace quadmorph {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::AnticommutationViolated: return "AnticommutationViolated";
    case ErrorKind::UnbalancedEigenspaces: return "UnbalancedEigenspaces";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::NotHarmonic: return "NotHarmonic";
    case ErrorKind::NotHorizontallyConformal: return "NotHorizontallyConformal";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::SampleDisagreement: return "SampleDisagreement";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::OddRank: return "OddRank";
    case ErrorKind::AsymmetricSpectrum: return "AsymmetricSpectrum";
    case ErrorKind::QSingular: return "QSingular";
    case ErrorKind::SharedKernelViolated: return "SharedKernelViolated";
    case ErrorKind::AlreadyRangeMaximal: return "AlreadyRangeMaximal";
    case ErrorKind::NotDomainMinimal: return "NotDomainMinimal";
    case ErrorKind::NotExtendable: return "NotExtendable";
    case ErrorKind::NotUmbilical: return "NotUmbilical";
    case ErrorKind::IncompatibleKind: return "IncompatibleKind";
    case ErrorKind::Format: return "Format";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::vector<std::size_t> indices, double residual)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      indices_(std::move(indices)),
      residual_(residual) {}

bool Error::is_format_error() const noexcept {
  switch (kind_) {
    case ErrorKind::Format:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotSquare:
    case ErrorKind::InvalidTolerance:
    case ErrorKind::IncompatibleKind:
    case ErrorKind::BadIndices:
      return true;
    default:
      return false;
  }
}

}  // namespace quadmorph
