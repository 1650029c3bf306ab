#pragma once

#include <ostream>
#include <stdexcept>

namespace qxsort::cli {

// Invalid flag values or combinations; reported with exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Entry point of the qxsort tool (subcommands bench, theory, tabulate,
// verify). Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qxsort::cli
