/**
 * @file error.hpp
 * @brief Error codes and the exception type used across the kernel.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qasa {

enum class Errc {
    DegenerateBase,      // balanced integer [j]_z requested at z with z - z^{-1} = 0
    OutOfRange,          // index/argument outside its documented domain
    UndefinedPower,      // (-1)^x with non-integer x
    UnsupportedRank,     // rank below 1
    AlreadyDual,         // dual_datum applied to a datum that is already dual
    MixedAlgebra,        // operands live in different algebras
    InhomogeneousParity, // operation requires a parity-homogeneous element
    InhomogeneousWeight, // operation requires a weight-homogeneous element
    SyntaxError,         // expression parse failure (position attached)
    UnknownGenerator,    // generator token not valid in the target algebra
    WindowTooSmall,      // loop window too small to enumerate the catalogue
    OrderExceeded,       // series coefficient beyond the requested order
    NoSolution,          // linear solve for a constant is inconsistent
    BudgetExceeded,      // search exceeded the configured budget
    WindowMismatch,      // target window too small for the images of a source window
    DivideByZero,        // exact division by zero
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::size_t pos = npos)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), pos_(pos) {}

    Errc code() const { return code_; }
    /// Byte offset into the offending input for SyntaxError; npos otherwise.
    std::size_t pos() const { return pos_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    Errc code_;
    std::size_t pos_;
};

} // namespace qasa
