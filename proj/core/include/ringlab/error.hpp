#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ringlab {

enum class ErrorKind {
    kNotATransactionGraph,
    kEmptyRing,
    kIndexOutOfRange,
    kDuplicateEdge,
    kMatchingNotMaximum,
    kRingCrossesChunks,
    kInvalidPartition,
    kInvalidConfig,
    kInvalidParams,
    kInvalidBeta,
    kInstanceTooLarge,
    kNoFeasibleK,
    kDomainError,
    kHypothesisViolated,
    kInvalidDistribution,
    kParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is stable; `what()` carries
/// a human-readable diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), m_kind(kind) {}

    ErrorKind kind() const noexcept { return m_kind; }

private:
    ErrorKind m_kind;
};

} // namespace ringlab
