#pragma once

#include <stdexcept>
#include <string>

namespace ellw {

/// Argument outside the domain of a function (x = 0 in a theta factor, |p| >= 1, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Mismatched sizes: too few variables for a partition, array caps that differ, etc.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A denominator factor came out (numerically) zero. The message names the factor.
class pole_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ellw
