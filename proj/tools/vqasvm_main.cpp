#include <vector>

#include "vqasvm/cli.hpp"

int main(int argc, char** argv) {
    return vqasvm::cli_run(std::vector<std::string>(argv + 1, argv + argc));
}
