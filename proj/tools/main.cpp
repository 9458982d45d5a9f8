#include <string>
#include <vector>

#include "circmean/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return circmean::run_cli(args);
}
