#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "srheat/polynomial.hpp"

namespace srheat {

// Syntax or validation failure in user-supplied text; the message carries
// line/column and, for frame documents, the field/component location.
// Maps to the usage exit code in the command line tool.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses an expression over variables x1..xd into expanded form:
//   poly   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := NUMBER | VAR | factor '^' INT | '(' poly ')' | '-' factor
//   VAR    := 'x' INT   (1-based, <= d)
// Whitespace is insignificant; exponents must be nonnegative integers.
Polynomial parse_polynomial(const std::string& src, int d);

// A frame document: n polynomial vector fields on R^d, component
// expressions kept as strings, plus optional display labels and optional
// evaluation points for the analysis commands.
struct FrameSpec {
    int d = 0;
    int n = 0;
    std::vector<std::vector<std::string>> fields;  // n entries of d expressions
    std::vector<std::string> labels;               // empty or size n
    std::vector<std::vector<double>> points;       // each of size d

    bool operator==(const FrameSpec& o) const = default;
};

FrameSpec parse_frame_spec(const std::string& json_text);
std::string frame_spec_to_json(const FrameSpec& spec);

// Parses every component; failures are aggregated into one parse_error that
// names each offending field and component.
Frame build_frame(const FrameSpec& spec);

// Canonical serialization through Polynomial::to_string, which the grammar
// above re-parses; build_frame(frame_to_spec(f)) reproduces f exactly.
FrameSpec frame_to_spec(const Frame& frame);

}  // namespace srheat
