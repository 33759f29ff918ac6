#pragma once

#include <stdexcept>
#include <string>

namespace beamtrain {

/// Budget too small for the requested number of beams (N < L_R).
class InsufficientBudget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The optimal beam is tied with another one, so every gap-based quantity is undefined.
class DegenerateProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation requested on an object that has not reached a valid state yet.
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Too few usable data points for a fit.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace beamtrain
