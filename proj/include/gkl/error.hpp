#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gkl {

enum class ErrorKind {
    InvalidGraph,
    IncompatibleInput,
    EmptyCollection,
    InvalidSpec,
    InvalidShape,
    NotFitted,
    SizeLimit,
    NumericalError,
    Divergent,
    DegenerateKernel,
    FetchError,
    CorruptDataset,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library surfaces as this exception; `kind()` lets
/// callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    /// Message without the "Kind: " prefix.
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// Non-fatal condition worth reporting (e.g. a zero self-kernel coerced
/// during normalisation). `location` names a graph index or file position.
struct Warning {
    std::string location;
    std::string message;

    friend bool operator==(const Warning&, const Warning&) = default;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace gkl
