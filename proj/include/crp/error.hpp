#pragma once

#include <stdexcept>
#include <string>

namespace crp {

// Validation errors map to CLI exit code 1, internal errors to 2.
enum class ErrorKind { validation, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& message) {
    throw Error(ErrorKind::validation, message);
}

[[noreturn]] inline void fail_internal(const std::string& message) {
    throw Error(ErrorKind::internal, message);
}

} // namespace crp
