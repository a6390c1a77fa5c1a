#include "hodgeseq/errors.hpp"

namespace hodgeseq {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Input: return "input";
        case ErrorKind::Size: return "size";
        case ErrorKind::Positivity: return "positivity";
        case ErrorKind::Model: return "model";
        case ErrorKind::DegenerateSlice: return "degenerate-slice";
        case ErrorKind::Normalization: return "normalization";
        case ErrorKind::Truncation: return "truncation";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Numeric: return "numeric";
    }
    return "unknown";
}

HodgeseqError::HodgeseqError(ErrorKind kind, std::string module, const std::string& message)
    : std::runtime_error("[" + module + "] " + to_string(kind) + " error: " + message),
      kind_(kind),
      module_(std::move(module)) {}

} // namespace hodgeseq
