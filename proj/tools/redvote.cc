// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <iostream>

#include "redvote/cli/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return redvote::cli::Run(args, {std::cout, std::cerr, redvote::cli::ColorWanted()});
}
