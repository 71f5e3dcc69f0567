#ifndef PERMBINOM_CLI_HPP
#define PERMBINOM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace permbinom::cli {

enum ExitCode : int { kOk = 0, kDisagreement = 1, kInputError = 2, kCapExceeded = 3 };

// Runs one command line (without the program name). Records go to out,
// diagnostics to err; the return value is the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permbinom::cli

#endif  // PERMBINOM_CLI_HPP
