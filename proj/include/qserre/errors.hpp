#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qserre {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad JSON, invalid matrix, bad range).
struct invalid_input : error {
    using error::error;
};

/// Two polynomials with different variable counts were combined.
struct arity_mismatch : invalid_input {
    using invalid_input::invalid_input;
};

/// Division by a zero scalar or polynomial.
struct division_by_zero : error {
    using error::error;
};

/// Exact division failed; carries the first offending monomial.
struct inexact_division : error {
    std::string witness;
    explicit inexact_division(const std::string& msg, std::string witness_monomial)
        : error(msg), witness(std::move(witness_monomial)) {}
};

/// Evaluation point hit a vanishing denominator or a zero substitution.
struct singular_evaluation : error {
    using error::error;
};

/// A two-sided series product whose diagonal sum fails the existence criterion.
struct undefined_product : error {
    std::int64_t degree;
    undefined_product(const std::string& msg, std::int64_t p) : error(msg), degree(p) {}
};

} // namespace qserre
