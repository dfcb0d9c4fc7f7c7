/**
 * @file scalar.cpp
 * @brief Canonical text rendering for Laurent polynomials and scalars.
 */
#include "qasa/scalar.hpp"

namespace qasa {

namespace {

/// "q^{half/2}" in canonical exponent notation; empty for half == 0.
std::string q_part(int half) {
    if (half == 0) return "";
    if (half == 2) return "q";
    if (half % 2 == 0) return "q^(" + std::to_string(half / 2) + ")";
    return "q^(" + std::to_string(half) + "/2)";
}

/// Split a coefficient into (display-negative, absolute value).
std::pair<bool, GaussRat> sign_split(const GaussRat& c) {
    bool neg = (c.re != 0) ? (c.re < 0) : (c.im < 0);
    return {neg, neg ? -c : c};
}

/// Render |coeff| * q^{half/2}; coeff must be nonzero with canonical sign.
std::string term_body(const GaussRat& abs, int half) {
    std::string qp = q_part(half);
    if (qp.empty()) return abs.str();
    if (abs.is_one()) return qp;
    std::string g = abs.str();
    bool sum = (abs.re != 0 && abs.im != 0); // mixed values are sums: parenthesize
    return (sum ? "(" + g + ")" : g) + "*" + qp;
}

} // namespace

std::string HalfLaurent::str() const {
    if (is_zero()) return "0";
    std::string out;
    // Descending exponents: leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        auto [neg, abs] = sign_split(it->second);
        if (out.empty()) {
            out = (neg ? "-" : "") + term_body(abs, it->first);
        } else {
            out += (neg ? " - " : " + ") + term_body(abs, it->first);
        }
    }
    return out;
}

std::string Scalar::str() const {
    if (is_zero()) return "0";
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DegenerateBase: return "DegenerateBase";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::UndefinedPower: return "UndefinedPower";
        case Errc::UnsupportedRank: return "UnsupportedRank";
        case Errc::AlreadyDual: return "AlreadyDual";
        case Errc::MixedAlgebra: return "MixedAlgebra";
        case Errc::InhomogeneousParity: return "InhomogeneousParity";
        case Errc::InhomogeneousWeight: return "InhomogeneousWeight";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnknownGenerator: return "UnknownGenerator";
        case Errc::WindowTooSmall: return "WindowTooSmall";
        case Errc::OrderExceeded: return "OrderExceeded";
        case Errc::NoSolution: return "NoSolution";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::WindowMismatch: return "WindowMismatch";
        case Errc::DivideByZero: return "DivideByZero";
    }
    return "UnknownError";
}

} // namespace qasa
