#ifndef CONEWAVE_ERRORS_HPP
#define CONEWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conewave {

// Invalid argument to a library operation (nonpositive radius, zero
// direction vector, non-monotone sequence, ...).
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed to meet its contract (Newton did not
// converge, quadrature underflow, estimator band too narrow, ...).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; carries a 1-based line number when known.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, long line = -1)
        : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Requested evolution or sampling would be contaminated by the artificial
// Dirichlet wall at r = R: data support plus elapsed time leaves the
// shadow region where the truncated and infinite-cone propagators agree.
class wall_shadow_error : public std::runtime_error {
public:
    explicit wall_shadow_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad scenario or harness configuration.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace conewave

#endif
