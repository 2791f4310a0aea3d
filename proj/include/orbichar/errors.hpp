#ifndef ORBICHAR_ERRORS_HPP
#define ORBICHAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orbichar {

/// A group descriptor whose abelianization cannot be brought to normal form.
class AbelianizationUnavailable : public std::runtime_error {
public:
    explicit AbelianizationUnavailable(const std::string& what)
        : std::runtime_error("abelianization unavailable: " + what)
    {
    }
};

/// The homomorphism enumeration would exceed the configured table-lookup budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that is outside the supported model (e.g. even corner orders).
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructed object failed its post hoc verification. Signals a bug.
class VerificationFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A characteristic sequence no signature can produce.
class InvalidSequence : public std::invalid_argument {
public:
    explicit InvalidSequence(const std::string& what)
        : std::invalid_argument("not a valid characteristic sequence: " + what)
    {
    }
};

} // namespace orbichar

#endif
