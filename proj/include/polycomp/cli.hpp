#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polycomp/error.hpp"

namespace polycomp::cli {

struct CommandResult {
  std::string command;
  nlohmann::json payload;
  std::string summary;
  int exit_code = 0;
};

/// 0 success, 1 validation failure, 2 numerical failure, 3 malformed input.
int exit_code_for(ErrorKind kind);

/// Arguments exclude the program name. Never throws for bad input; errors
/// are reported through the payload and exit code.
CommandResult run(const std::vector<std::string>& args);

/// Prints the payload on stdout and the summary on stderr; returns the exit code.
int run_main(int argc, char** argv);

}  // namespace polycomp::cli
