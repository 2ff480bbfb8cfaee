#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quadmorph {

enum class ErrorKind {
  InvalidTolerance,
  NotSymmetric,
  NoConvergence,
  ShapeMismatch,
  DimensionMismatch,
  ArityMismatch,
  OddDimension,
  AnticommutationViolated,
  UnbalancedEigenspaces,
  NotOrthogonal,
  BadIndices,
  NotSquare,
  UnsupportedDimension,
  NotHarmonic,
  NotHorizontallyConformal,
  Degenerate,
  SampleDisagreement,
  RankMismatch,
  OddRank,
  AsymmetricSpectrum,
  QSingular,
  SharedKernelViolated,
  AlreadyRangeMaximal,
  NotDomainMinimal,
  NotExtendable,
  NotUmbilical,
  IncompatibleKind,
  Format,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `indices()` carries the offending
/// member indices (1-based, as in the mathematical statements) and
/// `residual()` the measured defect when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::size_t> indices = {}, double residual = 0.0);

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  double residual() const noexcept { return residual_; }

  /// True for errors caused by malformed input rather than by the
  /// mathematics rejecting a well-formed object.
  bool is_format_error() const noexcept;

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
  double residual_;
};

}  // namespace quadmorph
