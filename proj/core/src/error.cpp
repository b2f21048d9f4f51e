#include "supergeom/error.hpp"

namespace supergeom {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DuplicateIndex: return "DuplicateIndex";
    case ErrorKind::UnsortedIndex: return "UnsortedIndex";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::ZeroBody: return "ZeroBody";
    case ErrorKind::FlavorMismatch: return "FlavorMismatch";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::MixedParity: return "MixedParity";
    case ErrorKind::NotEven: return "NotEven";
    case ErrorKind::LambdaNotIso: return "LambdaNotIso";
    case ErrorKind::ParityPattern: return "ParityPattern";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::InvalidReduction: return "InvalidReduction";
    case ErrorKind::NerveMismatch: return "NerveMismatch";
    case ErrorKind::UnknownChart: return "UnknownChart";
    case ErrorKind::InvalidNerve: return "InvalidNerve";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace supergeom
