/**
 * Exact rational scalar and dense linear-algebra aliases used everywhere in
 * the solver core. There is no floating-point path: every coordinate, every
 * probability and every certificate is a GMP-backed rational, so set
 * membership and relative-interior verdicts are exact.
 */

#ifndef MSP_RATIONAL_HPP
#define MSP_RATIONAL_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace msp {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using VectorXr = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatrixXr = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/** Invalid user-supplied data: malformed file, bad rational, dimension mismatch. */
class InputError : public std::runtime_error
{
    public:
        explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/** An operation that requires a nonempty set was applied to an empty one. */
class EmptySetError : public InputError
{
    public:
        explicit EmptySetError(const std::string& what) : InputError(what) {}
};

/** A cross-module contract was breached; indicates an internal bug, not bad input. */
class ContractViolation : public std::logic_error
{
    public:
        explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/**
 * Parse "p/q" or "p" (optional leading '-' on p, decimal digits only) into a
 * canonical rational. Throws InputError on anything else, including q = 0.
 *
 * The two-integer constructor is used deliberately: the GMP string constructor
 * does not canonicalize, and non-canonical values poison downstream exact
 * comparisons and printing.
 */
Rational parse_rational(const std::string& text);

/** Canonical "p/q" (or "p" when the denominator is 1). */
std::string to_string(const Rational& q);

/** "(a, b, c)" rendering for diagnostics. */
std::string to_string(const VectorXr& v);

/** Strict lexicographic order on equally sized vectors. */
bool lex_less(const VectorXr& a, const VectorXr& b);

/** Componentwise exact equality. */
bool vec_eq(const VectorXr& a, const VectorXr& b);

/**
 * Multiply by the unique positive rational that makes all entries coprime
 * integers. The zero vector is returned unchanged; signs are preserved.
 */
VectorXr scale_to_coprime(const VectorXr& v);

} // namespace msp

#endif // MSP_RATIONAL_HPP
