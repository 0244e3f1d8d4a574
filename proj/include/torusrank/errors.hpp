#pragma once

#include <stdexcept>
#include <string>

namespace torusrank {

// Radicand has a square factor, or is below 2.
struct not_square_free : std::domain_error {
    explicit not_square_free(const std::string& msg) : std::domain_error("NotSquareFree: " + msg) {}
};

struct zero_denominator : std::domain_error {
    zero_denominator() : std::domain_error("ZeroDenominator: denominator c must be nonzero") {}
};

// Normalization cannot reach b > 0 without changing the value; the caller
// must pass the conjugate explicitly.
struct negative_irrational_part : std::domain_error {
    negative_irrational_part()
        : std::domain_error("NegativeIrrationalPart: canonical form requires b > 0; pass the conjugate") {}
};

// No convergent alignment within one period shift satisfies the closure
// identity. Signals an implementation bug, not a data error.
struct index_convention_failure : std::logic_error {
    index_convention_failure()
        : std::logic_error("IndexConventionFailure: no convergent alignment closes the period") {}
};

// Neither sign branch of the derived linear diophantine identity vanishes
// at the base point.
struct sign_unresolvable : std::logic_error {
    sign_unresolvable()
        : std::logic_error("SignUnresolvable: neither sign branch vanishes at the base point") {}
};

struct perfect_square_discriminant : std::domain_error {
    perfect_square_discriminant()
        : std::domain_error("PerfectSquareDiscriminant: b^2 - 4 is a perfect square") {}
};

struct bad_discriminant : std::domain_error {
    explicit bad_discriminant(const std::string& msg) : std::domain_error("BadDiscriminant: " + msg) {}
};

}  // namespace torusrank
