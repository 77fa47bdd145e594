#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace importcast {

// Bad arguments, bad configuration, or a malformed input schema.
// The CLI maps these to exit code 2; everything else is a runtime failure (1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : UsageError {
    using UsageError::UsageError;
};

// A data row that violates the record invariants; carries the 1-based line number.
class RowError : public std::runtime_error {
public:
    RowError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Non-finite value produced during model evaluation or training.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model fitting could not produce usable parameters.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what, double last_loss = 0.0)
        : std::runtime_error(what), last_loss_(last_loss) {}

    double last_loss() const { return last_loss_; }

private:
    double last_loss_;
};

}  // namespace importcast
