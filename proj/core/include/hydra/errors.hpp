#ifndef HYDRA_ERRORS_HPP_
#define HYDRA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hydra {

/// Bad or inconsistent configuration (unknown key, out-of-range value,
/// incompatible parameter combination). CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data (TLE files, city tables). CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A value outside an operation's mathematical domain.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Element set asked to propagate too far from its epoch.
class StaleEpochError : public DomainError {
public:
    explicit StaleEpochError(const std::string& msg) : DomainError(msg) {}
};

/// Input shape the operation deliberately does not handle.
class UnsupportedInputError : public DomainError {
public:
    explicit UnsupportedInputError(const std::string& msg) : DomainError(msg) {}
};

}  // namespace hydra

#endif  // HYDRA_ERRORS_HPP_
