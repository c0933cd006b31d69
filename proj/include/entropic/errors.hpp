#pragma once

#include <stdexcept>
#include <string>

namespace entropic {

// bad config file / bad CLI usage -> exit code 1
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// quadrature blow-up, eigensolver stall, singular fit -> exit code 2
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace entropic
