#include <string>
#include <vector>

#include "entsim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return entsim::cli_main(args);
}
