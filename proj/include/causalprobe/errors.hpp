#pragma once

#include <stdexcept>
#include <string>

namespace causalprobe {

// Every thrown error carries a stable machine-parsable id (snake_case) that the
// CLI prints to stderr, plus a category that maps onto the process exit code:
// validation errors -> 2, numerical/model errors -> 3.
enum class ErrorKind { Validation, Numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string id, const std::string& message)
        : std::runtime_error(message), kind_(kind), id_(std::move(id)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& id() const { return id_; }

private:
    ErrorKind kind_;
    std::string id_;
};

class ValidationError : public Error {
public:
    ValidationError(const std::string& id, const std::string& message)
        : Error(ErrorKind::Validation, id, message) {}
};

class NumericError : public Error {
public:
    NumericError(const std::string& id, const std::string& message)
        : Error(ErrorKind::Numeric, id, message) {}
};

}  // namespace causalprobe
