#include "projglue/errors.hpp"

namespace projglue {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kInvalidWord: return "invalid-word";
    case ErrorKind::kSingularConjugator: return "singular-conjugator";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kDegenerateCuspShape: return "degenerate-cusp-shape";
    case ErrorKind::kNotARepresentation: return "not-a-representation";
    case ErrorKind::kInvalidPeripheral: return "invalid-peripheral";
    case ErrorKind::kUndefinedBasis: return "undefined-basis";
    case ErrorKind::kInvalidShape: return "invalid-shape";
    case ErrorKind::kInvalidPair: return "invalid-pair";
    case ErrorKind::kNotDiagonalizable: return "not-diagonalizable";
    case ErrorKind::kDegeneratePencil: return "degenerate-pencil";
    case ErrorKind::kDegenerateSpectrum: return "degenerate-spectrum";
    case ErrorKind::kDistinguishedLineUnspecified:
      return "distinguished-line-unspecified";
    case ErrorKind::kInvalidGluingMap: return "invalid-gluing-map";
    case ErrorKind::kAmbiguousSide: return "ambiguous-side";
    case ErrorKind::kIncompatibleEdge: return "incompatible-edge";
    case ErrorKind::kPrecondition: return "precondition-failed";
    case ErrorKind::kIoError: return "io-error";
  }
  return "unknown";
}

}  // namespace projglue
