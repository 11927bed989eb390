#ifndef SECLAT_CLI_HPP
#define SECLAT_CLI_HPP

#include <ostream>

namespace seclat {

/// Runs one command line. Exit status: 0 success, 1 verification or runtime
/// failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seclat

#endif
