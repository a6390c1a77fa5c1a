#include <vector>

#include "hodgeseq/cli.hpp"

int main(int argc, char** argv) {
    return hodgeseq::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
