#pragma once

#include <stdexcept>
#include <string>

namespace perfkit {

// Inputs outside an operation's mathematical domain (negative time, f > 1, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// The request is well-formed but has no solution (e.g. target speedup above 1/(1-f)).
class infeasible_error : public domain_error {
public:
    explicit infeasible_error(const std::string& what) : domain_error(what) {}
};

// Open queueing model whose bottleneck cannot keep up with the arrival rate.
class saturation_error : public std::runtime_error {
public:
    saturation_error(const std::string& what, std::size_t bottleneck, double max_throughput)
        : std::runtime_error(what), bottleneck_index(bottleneck), x_max(max_throughput) {}

    std::size_t bottleneck_index;
    double x_max;
};

// Singular linear system (unreachable exit, disconnected routing, ...).
class singular_error : public std::runtime_error {
public:
    explicit singular_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text; carries the 1-based line number when known.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_number(line) {}

    std::size_t line_number;
};

}  // namespace perfkit
