#pragma once

#include <stdexcept>
#include <string>

namespace proxiskel {

struct DegenerateGenerators : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedMetric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CollinearInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DisconnectedGraph : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BetaOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when a cycle bound is requested for a vertex pair with no two
// edge-disjoint connecting paths.
struct NoCycle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidCandidates : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyScene : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ResolutionTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace proxiskel
