#ifndef CPD_CLI_HPP
#define CPD_CLI_HPP

namespace cpd {

/// Command-line entry point (decompose / generate / selftest / verify).
/// Returns the process exit code: 0 success, 1 input/format problem,
/// 2 numerical or diagnostic failure.
int run_cli(int argc, char** argv);

}  // namespace cpd

#endif  // CPD_CLI_HPP
