/**
 * @file error.hpp
 * @brief Exception types shared by all modules.
 *
 * Precondition violations throw InvalidArgument, numerical breakdowns
 * (non-finite state, singular systems, non-convergence) throw NumericalError,
 * and malformed files or configs throw ConfigError.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace msf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

#define MSF_REQUIRE(cond, msg)                         \
    do {                                               \
        if (!(cond)) throw ::msf::InvalidArgument(msg); \
    } while (0)

}  // namespace msf
