#pragma once

#include <stdexcept>
#include <string>

namespace srheat {

// An iterative numerical procedure (quadrature refinement, ODE step
// halving, decay-radius search) ran out of budget before meeting its
// tolerance. Maps to exit code 3 in the command line tool.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A quantity that is exact by construction failed its internal cross-check,
// which points at a bug or catastrophic conditioning rather than user error.
struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace srheat
