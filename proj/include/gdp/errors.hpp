// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gdp {

//! Malformed input: bad parameters, invalid grids, schema violations.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

//! Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

//! Moment-based operation asked to work with a base whose moments diverge.
class HeavyTailError : public DomainError {
 public:
  using DomainError::DomainError;
};

//! Data configuration or feature combination outside what is implemented.
class UnsupportedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

//! Quadrature or other numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace gdp
