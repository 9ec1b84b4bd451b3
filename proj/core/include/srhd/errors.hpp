//! \file errors.hpp
//! Error hierarchy. Everything the solver can throw derives from Error so the
//! driver can map failures onto exit-code categories.

#ifndef SRHD_ERRORS_HPP_
#define SRHD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace srhd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad physical input: non-admissible state, gamma out of range, |v| >= 1, ...
struct DomainError : Error {
  using Error::Error;
};

// iterative solve did not reach tolerance
struct ConvergenceError : Error {
  using Error::Error;
};

// a PCP precondition failed: the time step was too large for the current state
struct CflError : Error {
  using Error::Error;
};

// invalid configuration (bad key, bad value, inconsistent options)
struct ConfigError : Error {
  using Error::Error;
};

// file system / serialization failure
struct IoError : Error {
  using Error::Error;
};

}  // namespace srhd

#endif  // SRHD_ERRORS_HPP_
