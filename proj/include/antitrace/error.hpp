#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace antitrace {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI) can branch on the kind of failure without parsing messages.
enum class ErrorCode {
  SelfLoop,
  Digon,
  VertexOutOfRange,
  DuplicateArc,
  TooLarge,
  MalformedHeader,
  MalformedPayload,
  TruncatedPayload,
  DigonInPayload,
  NotPrime,
  WrongResidueClass,
  EvenOrder,
  ArityMismatch,
  BadParameters,
  InfeasibleFilter,
  KTooLarge,
  Overflow,
  Not3AT,
  NoCycle,
  WrongSubsetSize,
  NotKAT,
  EmptySide,
  Overlap,
  PreconditionDegree,
  Stuck,
  NoMatching,
  PairFailure,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::Digon: return "Digon";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedPayload: return "MalformedPayload";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::DigonInPayload: return "DigonInPayload";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::WrongResidueClass: return "WrongResidueClass";
    case ErrorCode::EvenOrder: return "EvenOrder";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::InfeasibleFilter: return "InfeasibleFilter";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Not3AT: return "Not3AT";
    case ErrorCode::NoCycle: return "NoCycle";
    case ErrorCode::WrongSubsetSize: return "WrongSubsetSize";
    case ErrorCode::NotKAT: return "NotKAT";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::Overlap: return "Overlap";
    case ErrorCode::PreconditionDegree: return "PreconditionDegree";
    case ErrorCode::Stuck: return "Stuck";
    case ErrorCode::NoMatching: return "NoMatching";
    case ErrorCode::PairFailure: return "PairFailure";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace antitrace
