#pragma once

#include <stdexcept>
#include <string>

namespace burgers {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidGrid : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct IntegrationFailure : Error { using Error::Error; };
struct NonFiniteState : Error { using Error::Error; };
struct EmptySnapshotSet : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct InvalidThreshold : Error { using Error::Error; };
struct NonPositiveGains : Error { using Error::Error; };
struct EmptySpectrum : Error { using Error::Error; };
struct TimeGridMismatch : Error { using Error::Error; };
struct NonFiniteCost : Error { using Error::Error; };
struct EqualFrequencies : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace burgers
