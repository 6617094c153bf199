#pragma once

#include <stdexcept>
#include <string>

namespace fredproj {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shapes of vectors/matrices/spaces do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt found a vector with post-orthogonalization norm below tolerance.
class DependentConstraintError : public Error {
 public:
  DependentConstraintError(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// The k vectors are linearly dependent (Gram determinant below threshold).
class DependentKError : public Error {
 public:
  using Error::Error;
};

/// A vector violates the biorthogonality/unit/orthogonality conditions it must satisfy.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// The operator fed to a Neumann-series routine has norm >= 1.
class ContractionError : public Error {
 public:
  using Error::Error;
};

/// Series accumulation hit the term cap before the tail bound was met.
class SeriesNotConverged : public Error {
 public:
  using Error::Error;
};

/// Dense solve requested on a (numerically) singular system.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// An operator family was supplied without a summable norm bound.
class UnsummableFamilyError : public Error {
 public:
  using Error::Error;
};

/// Kernel evaluation produced a non-finite value.
class KernelEvalError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration (unknown corpus name, malformed config file, invalid setting).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fredproj
