#include "aeset/cli.hpp"

#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    aeset::CommandResult result = aeset::dispatch(std::move(args));
    if (!result.payload.empty()) std::fputs(result.payload.c_str(), stdout);
    if (!result.diagnostics.empty()) std::fputs(result.diagnostics.c_str(), stderr);
    return result.exit_code;
}
