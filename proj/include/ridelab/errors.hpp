#pragma once

#include <stdexcept>
#include <string>

namespace ridelab {

// Price or rate outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument of an inverse outside the image of the forward map.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Exact (beta > 0) evaluation requested for a beta = 0 platform.
class UnsupportedRegime : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Product-form series did not meet its tail bound before the hard cap.
class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A QoS curve handed to the Wardrop solver is not strictly increasing.
class AssumptionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simulation window contained no passenger arrivals.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ridelab
