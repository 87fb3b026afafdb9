// Command-line driver, separated from main() so tests can invoke commands
// in-process and capture their streams.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tacap {

enum ExitStatus {
    kOk = 0,            // success
    kDataError = 1,     // parse or validation errors in the input corpus
    kUsageError = 2,    // bad arguments, unreadable files, bad config
    kInternalError = 3  // broken internal invariant
};

// args excludes the program name, e.g. {"validate", "corpus.tacap"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace tacap
