#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padlock::cli {

/// Runs one CLI invocation. Exit codes: 0 success (a false verdict is a
/// reported outcome, not a failure), 1 runtime failure (capacity, integrity,
/// inconsistent inputs), 2 usage errors and malformed input documents.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace padlock::cli
