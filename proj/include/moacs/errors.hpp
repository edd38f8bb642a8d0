// SPDX-FileCopyrightText: Copyright (c) 2026 The moacs-vmc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOACS_ERRORS_HPP
#define MOACS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace moacs {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identifier (PM, VM) that does not exist in the problem.
class IdentifierError : public Error {
 public:
  using Error::Error;
};

/// An argument outside its mathematical domain (zero counts, bad ranges).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A plan or placement that overloads a machine or moves a VM illegally.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// Workload generation could not produce a feasible initial placement.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Statistics on a sample where every paired difference is zero.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/// Malformed problem, plan, config or CSV input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace moacs

#endif  // MOACS_ERRORS_HPP
