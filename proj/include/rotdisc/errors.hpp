#pragma once

#include <stdexcept>

namespace rotdisc {

// Requested chord depth lies outside the body's directional width.
class EmptyChordError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical routine failed to reach its tolerance or budget.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rotdisc
