#pragma once

#include <ostream>

namespace asyncmodel::cli {

/// Runs one command line. Exit codes: 0 success or membership, 1 semantic
/// negative, 2 invalid input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asyncmodel::cli
