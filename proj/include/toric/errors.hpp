#pragma once

#include <stdexcept>
#include <string>

namespace toric {

enum class Errc {
  BadShape,
  NegativeEntry,
  RankDeficient,
  DimensionTooLarge,
  NotIntegrable,
  SingularGram,
  NotConverged,
  ResonantParameters,
  StencilOutOfRange,
  BadSettings,
  ConfigError,
};

inline const char* to_string(Errc c) {
  switch (c) {
    case Errc::BadShape: return "BadShape";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::NotIntegrable: return "NotIntegrable";
    case Errc::SingularGram: return "SingularGram";
    case Errc::NotConverged: return "NotConverged";
    case Errc::ResonantParameters: return "ResonantParameters";
    case Errc::StencilOutOfRange: return "StencilOutOfRange";
    case Errc::BadSettings: return "BadSettings";
    case Errc::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

/// Library-wide exception carrying a machine-checkable error code.
class ToricError : public std::runtime_error {
 public:
  ToricError(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw ToricError(code, what);
}

}  // namespace toric
