// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file error.h
/// Exception hierarchy shared by every redvote library.

#ifndef REDVOTE_ERROR_H_
#define REDVOTE_ERROR_H_

#include <stdexcept>
#include <string>

namespace redvote {

/// Base of all errors raised by redvote.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model, workflow, or parameter record violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A solver could not produce a result (zero-probability evidence,
/// malformed chain class structure, non-finite intermediate values).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace redvote

#endif  // REDVOTE_ERROR_H_
