#include "gkl/error.hpp"

namespace gkl {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::IncompatibleInput: return "IncompatibleInput";
        case ErrorKind::EmptyCollection: return "EmptyCollection";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::InvalidShape: return "InvalidShape";
        case ErrorKind::NotFitted: return "NotFitted";
        case ErrorKind::SizeLimit: return "SizeLimit";
        case ErrorKind::NumericalError: return "NumericalError";
        case ErrorKind::Divergent: return "Divergent";
        case ErrorKind::DegenerateKernel: return "DegenerateKernel";
        case ErrorKind::FetchError: return "FetchError";
        case ErrorKind::CorruptDataset: return "CorruptDataset";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace gkl
