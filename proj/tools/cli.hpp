#pragma once

#include <iosfwd>

namespace unitri::cli {

enum ExitCode : int {
  ok = 0,
  verification_failed = 1,
  bad_input = 2,
  capability_missing = 3,
  search_exhausted = 4,
};

/// Runs one command line. Writes a single JSON document to out and
/// diagnostics to err; stdin input is read from in.
int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err);

} // namespace unitri::cli
