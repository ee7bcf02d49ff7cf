#ifndef ERGOPT_ERROR_HPP
#define ERGOPT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ergopt {

enum class ErrorCode {
  ParseError,
  NumericOverflow,
  InvalidArgument,
  NotFinitelyPrimitive,
  EmptyShift,
  BeyondExplicitRegion,
  DisallowedWord,
  NoCycle,
  NotStronglyConnected,
  PositiveCycle,
  InvalidSubAction,
  UnsupportedEdge,
  EmptyCritical,
  CharacterizationViolation,
  ExplicitRegionTooSmall,
  NoCoerciveTail,
  PlateauViolation,
  NoThreshold,
  TooLarge,
  ValidationFailed,
  InternalCheckFailed,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NumericOverflow: return "NumericOverflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotFinitelyPrimitive: return "NotFinitelyPrimitive";
    case ErrorCode::EmptyShift: return "EmptyShift";
    case ErrorCode::BeyondExplicitRegion: return "BeyondExplicitRegion";
    case ErrorCode::DisallowedWord: return "DisallowedWord";
    case ErrorCode::NoCycle: return "NoCycle";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::PositiveCycle: return "PositiveCycle";
    case ErrorCode::InvalidSubAction: return "InvalidSubAction";
    case ErrorCode::UnsupportedEdge: return "UnsupportedEdge";
    case ErrorCode::EmptyCritical: return "EmptyCritical";
    case ErrorCode::CharacterizationViolation: return "CharacterizationViolation";
    case ErrorCode::ExplicitRegionTooSmall: return "ExplicitRegionTooSmall";
    case ErrorCode::NoCoerciveTail: return "NoCoerciveTail";
    case ErrorCode::PlateauViolation: return "PlateauViolation";
    case ErrorCode::NoThreshold: return "NoThreshold";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "UnknownError";
}

}  // namespace ergopt

#endif  // ERGOPT_ERROR_HPP
