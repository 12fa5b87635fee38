#pragma once

#include <stdexcept>
#include <string>

namespace turb {

enum class ErrorCode {
  DuplicateId,
  DanglingHalfEdge,
  BadPartition,
  FringeInClasses,
  IsolatedVertex,
  UnknownEdge,
  NotIdle,
  NotAString,
  ImprimitiveBand,
  NotClosed,
  NotAcyclic,
  TooLarge,
  NotCovered,
  DegenerateBundle,
  NoOversizedClass,
  BadSplitIndex,
  EdgeAlreadySteep,
  NotSubFull,
  NotSteepEverywhere,
  BandNotSteep,
  NotGentle,
  InvalidAlgebra,
  BadNetflow,
  ClassesNotSeparated,
  DimensionTooHigh,
  SyntaxError,
  SchemaError,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingHalfEdge: return "DanglingHalfEdge";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::FringeInClasses: return "FringeInClasses";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::NotIdle: return "NotIdle";
    case ErrorCode::NotAString: return "NotAString";
    case ErrorCode::ImprimitiveBand: return "ImprimitiveBand";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::DegenerateBundle: return "DegenerateBundle";
    case ErrorCode::NoOversizedClass: return "NoOversizedClass";
    case ErrorCode::BadSplitIndex: return "BadSplitIndex";
    case ErrorCode::EdgeAlreadySteep: return "EdgeAlreadySteep";
    case ErrorCode::NotSubFull: return "NotSubFull";
    case ErrorCode::NotSteepEverywhere: return "NotSteepEverywhere";
    case ErrorCode::BandNotSteep: return "BandNotSteep";
    case ErrorCode::NotGentle: return "NotGentle";
    case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorCode::BadNetflow: return "BadNetflow";
    case ErrorCode::ClassesNotSeparated: return "ClassesNotSeparated";
    case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace turb
