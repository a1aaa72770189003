#include <string>
#include <vector>

#include "qec/cli.hpp"

int main(int argc, char** argv) {
    return qec::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
