#ifndef NASH_SENS_ERRORS_H_
#define NASH_SENS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace nash_sens {

// Invalid user-supplied configuration: grid specs, experiment configs,
// generator arguments. The message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An argument outside the mathematical domain of an operation, e.g. a
// profile outside the strategy boxes or sets living on different grids.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A feasibility correspondence returned no grid point.
class InfeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nash_sens

#endif  // NASH_SENS_ERRORS_H_
