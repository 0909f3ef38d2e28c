#pragma once

#include <stdexcept>
#include <string>

namespace tracemon {

/// Malformed user input: unknown letters, syntax errors, bad files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A translation or construction exceeded its configured state budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An explicit enumeration bound (linearizations, equivalence classes) was hit.
class BoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant of the synthesis pipeline was violated.
class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace tracemon
