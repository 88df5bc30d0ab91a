#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projglue {

enum class ErrorKind {
  kInvalidInput,
  kInvalidWord,
  kSingularConjugator,
  kDegenerate,
  kDegenerateCuspShape,
  kNotARepresentation,
  kInvalidPeripheral,
  kUndefinedBasis,
  kInvalidShape,
  kInvalidPair,
  kNotDiagonalizable,
  kDegeneratePencil,
  kDegenerateSpectrum,
  kDistinguishedLineUnspecified,
  kInvalidGluingMap,
  kAmbiguousSide,
  kIncompatibleEdge,
  kPrecondition,
  kIoError,
};

// Stable kebab-case name, used in JSON error objects.
std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace projglue
