#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monofan/cmcx.hpp"

namespace monofan::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,
  kIoError = 2,
  kResourceCap = 3,
};

enum class Format { Json, Text };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> output;
  Format format = Format::Json;
  ResourceCaps caps;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

/// Reads "max_cells=N,max_states=M" (either key optional). Throws ParseError.
ResourceCaps parse_caps(const std::string& text, ResourceCaps base = {});

/// Parses argv, runs one subcommand and prints its report to `out`; usage
/// errors go to `err`. Returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace monofan::cli
