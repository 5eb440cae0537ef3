#ifndef COXIOTA_CLI_HPP
#define COXIOTA_CLI_HPP

#include <ostream>

namespace coxiota::cli {

// Exit codes: 0 pass, 1 check failed (witness printed), 2 budget exhausted,
// 3 usage or bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coxiota::cli

#endif  // COXIOTA_CLI_HPP
