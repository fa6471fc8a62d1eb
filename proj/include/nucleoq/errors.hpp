#pragma once

#include <stdexcept>
#include <string>

namespace nucleoq {

// Precondition or physics-domain violation (bad argument values).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed input text (data or scenario files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Record-level problem in a dataset: missing field, broken invariant, bad reference.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive integration could not reach the requested tolerance.
class StiffnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nucleoq
