#ifndef CANTOR_ERRORS_HPP
#define CANTOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cantor {

/// Parameters fail the side conditions the guarantees need.
struct CertificationError : std::runtime_error {
    explicit CertificationError(const std::string& m) : std::runtime_error(m) {}
};

/// A search the theory proves must succeed came up empty — a bug, never a
/// soft failure.
struct SearchFailure : std::logic_error {
    explicit SearchFailure(const std::string& m) : std::logic_error(m) {}
};

/// An enumeration or cap budget would be exceeded.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace cantor

#endif
