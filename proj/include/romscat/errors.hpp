#ifndef ROMSCAT_ERRORS_HPP
#define ROMSCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace romscat {

// Exception hierarchy mirrors the CLI exit codes:
//   validation_error -> 1, numerical_error -> 2, io_error -> 3.

struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace romscat

#endif
