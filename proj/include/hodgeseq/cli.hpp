#ifndef HODGESEQ_CLI_HPP
#define HODGESEQ_CLI_HPP

#include <string>
#include <vector>

namespace hodgeseq {

// Entry point behind the hodgeseq binary.  args excludes the program name.
// Exit status: 0 success, 1 verification failure, 2 input/usage error.
int run_cli(const std::vector<std::string>& args);

} // namespace hodgeseq

#endif // HODGESEQ_CLI_HPP
