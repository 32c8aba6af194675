#pragma once

#include <stdexcept>
#include <string>

namespace manetsim {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchedulingInPast : SimError {
  using SimError::SimError;
};

struct ZeroDistance : SimError {
  using SimError::SimError;
};

struct NotPerfectSquare : SimError {
  using SimError::SimError;
};

struct TruncatedFile : SimError {
  using SimError::SimError;
};

struct BadDimensions : SimError {
  using SimError::SimError;
};

struct DimensionMismatch : SimError {
  using SimError::SimError;
};

struct InconsistentLogs : SimError {
  using SimError::SimError;
};

struct BadConfig : SimError {
  using SimError::SimError;
};

struct IoError : SimError {
  using SimError::SimError;
};

}  // namespace manetsim
