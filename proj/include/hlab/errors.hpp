#pragma once

#include <stdexcept>
#include <string>

namespace hlab {

// Configuration problems: bad grid sizes, malformed manifests, out-of-range
// parameters. Maps to CLI exit code 1.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad data fed into an otherwise valid configuration (NaN samples, grid
// mismatch, weight below 1, spectral collisions).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation was asked outside its mathematical domain (boundary values of
// a line function, imaginary powers across a kernel, f undefined on the
// spectrum).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A quantity that should be summable/finite on the grid is visibly not.
// Carries the partial value so callers can distinguish "outside the space"
// from "grid too small".
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& what, double partial)
        : std::runtime_error(what), partial_value(partial) {}
    double partial_value;
};

// Degenerate input (zero function where a ratio is required, empty injective
// part used as an operator).
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hlab
