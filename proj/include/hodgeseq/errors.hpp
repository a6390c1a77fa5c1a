#ifndef HODGESEQ_ERRORS_HPP
#define HODGESEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hodgeseq {

// Failure categories surfaced to callers.  Every throw site tags the category
// plus the module it originated in so CLI diagnostics can say where a bad
// input was rejected.
enum class ErrorKind {
    Input,           // malformed argument, unknown cell, index out of range
    Size,            // cell budget or dense-solver cap exceeded
    Positivity,      // a weight/probability that must be > 0 is not
    Model,           // a model constraint is violated (e.g. weights not summing to 1)
    DegenerateSlice, // zero total probability mass at some dimension slice
    Normalization,   // a required normalizer vanished
    Truncation,      // operator needs cells above the stored top dimension
    Precondition,    // theorem/verification precondition not met
    Numeric          // a numerical routine failed to converge
};

const char* to_string(ErrorKind kind);

class HodgeseqError : public std::runtime_error {
public:
    HodgeseqError(ErrorKind kind, std::string module, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

} // namespace hodgeseq

#endif // HODGESEQ_ERRORS_HPP
