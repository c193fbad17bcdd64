// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file cli.h
/// The `redvote` command-line driver, callable in-process for tests.

#ifndef REDVOTE_CLI_CLI_H_
#define REDVOTE_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace redvote::cli {

/// Process exit codes. No other value is ever returned.
enum ExitCode : int {
  kOk = 0,
  kParseError = 2,  ///< Unreadable or malformed input, or bad usage.
  kValidationError = 3,
  kNumericError = 4,
  kVerdictFail = 5,
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;  ///< ANSI styling of text reports on `out`.
};

/// Runs one command. `args` excludes the program name.
int Run(const std::vector<std::string>& args, Streams io);

/// Whether stdout styling is wanted: stdout is a terminal and
/// REDVOTE_NO_COLOR is unset.
bool ColorWanted();

}  // namespace redvote::cli

#endif  // REDVOTE_CLI_CLI_H_
