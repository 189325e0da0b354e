#ifndef MAXMEAN_TOOLS_CLI_H_
#define MAXMEAN_TOOLS_CLI_H_

#include <iosfwd>

namespace maxmean::cli {

// Exit codes: 0 success, 1 runtime or solver failure, 2 usage error.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace maxmean::cli

#endif  // MAXMEAN_TOOLS_CLI_H_
