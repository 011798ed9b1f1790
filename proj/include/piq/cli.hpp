#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace piq::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    ok = 0,              // verified / PI / answered
    counterexample = 1,  // counterexample / NonPI / not locally A-graded
    inconclusive = 2,
    usage_error = 3,
    parse_error = 4,     // malformed .qv file, tuple or polynomial; unreadable file
    rejected_input = 5,  // well-formed input outside an operation's domain
};

/// Runs one command line (without the program name); reports go to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace piq::cli
