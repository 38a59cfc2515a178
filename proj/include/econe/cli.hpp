#ifndef ECONE_CLI_HPP
#define ECONE_CLI_HPP

#include <ostream>

namespace econe::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int
{
    kSuccess = 0,
    kVerificationFailure = 1,
    kInputError = 2,
    kNotCertifiable = 3
};

/// Entry point of the `econe` tool; never calls std::exit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}   // namespace econe::cli

#endif
