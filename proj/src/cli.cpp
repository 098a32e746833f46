#include "srheat/cli.hpp"

#include <ostream>

namespace srheat {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    (void)args;
    (void)out;
    err << "not implemented yet\n";
    return kExitUsage;
}

}  // namespace srheat
