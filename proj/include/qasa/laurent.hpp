/**
 * @file laurent.hpp
 * @brief Sparse Laurent polynomials in the half-integral variable q^{1/2}
 *        with Gaussian-rational coefficients.
 *
 * A term is stored as (h, c) meaning c * q^{h/2}; h ranges over all
 * integers, so both q^{1/2} and q^{-3} are representable exactly.  Terms are
 * kept sorted by ascending half-exponent with no zero coefficients, which
 * makes equality structural.
 */
#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qasa/rational.hpp"

namespace qasa {

class HalfLaurent {
public:
    using Term = std::pair<int, GaussRat>; // (half-exponent, coefficient)

    HalfLaurent() = default;

    static HalfLaurent zero() { return HalfLaurent(); }
    static HalfLaurent one() { return monomial(GaussRat(1), 0); }

    /// c * q^{half/2}
    static HalfLaurent monomial(GaussRat c, int half) {
        HalfLaurent p;
        if (!c.is_zero()) p.terms_.emplace_back(half, std::move(c));
        return p;
    }

    /// q^{half/2}
    static HalfLaurent q_power_half(int half) { return monomial(GaussRat(1), half); }

    /// q^{e} (integral power)
    static HalfLaurent q_power(int e) { return q_power_half(2 * e); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second.is_one();
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    int min_half() const { return terms_.front().first; } // requires !is_zero()
    int max_half() const { return terms_.back().first; }  // requires !is_zero()

    const GaussRat& leading_coeff() const { return terms_.back().second; }
    const GaussRat& trailing_coeff() const { return terms_.front().second; }

    /// Coefficient of q^{half/2} (zero if absent).
    GaussRat coeff(int half) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), half,
                                   [](const Term& t, int h) { return t.first < h; });
        if (it != terms_.end() && it->first == half) return it->second;
        return GaussRat(0);
    }

    HalfLaurent operator-() const {
        HalfLaurent r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend HalfLaurent operator+(const HalfLaurent& a, const HalfLaurent& b) {
        HalfLaurent r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->first < ia->first) {
                r.terms_.push_back(*ib++);
            } else {
                GaussRat c = ia->second + ib->second;
                if (!c.is_zero()) r.terms_.emplace_back(ia->first, std::move(c));
                ++ia, ++ib;
            }
        }
        return r;
    }

    friend HalfLaurent operator-(const HalfLaurent& a, const HalfLaurent& b) { return a + (-b); }

    friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
        HalfLaurent r;
        if (a.is_zero() || b.is_zero()) return r;
        // Accumulate into a map-like sorted vector; sizes here are small.
        for (const auto& ta : a.terms_) {
            HalfLaurent shifted;
            shifted.terms_.reserve(b.terms_.size());
            for (const auto& tb : b.terms_) {
                shifted.terms_.emplace_back(ta.first + tb.first, ta.second * tb.second);
            }
            r = r + shifted;
        }
        return r;
    }

    HalfLaurent& operator+=(const HalfLaurent& b) { return *this = *this + b; }
    HalfLaurent& operator-=(const HalfLaurent& b) { return *this = *this - b; }
    HalfLaurent& operator*=(const HalfLaurent& b) { return *this = *this * b; }

    HalfLaurent scaled(const GaussRat& c) const {
        if (c.is_zero()) return HalfLaurent();
        HalfLaurent r(*this);
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }

    /// Multiply by q^{half/2}.
    HalfLaurent shifted(int half) const {
        HalfLaurent r(*this);
        for (auto& t : r.terms_) t.first += half;
        return r;
    }

    friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const HalfLaurent& a, const HalfLaurent& b) { return !(a == b); }

    /// Lexicographic order on the term list (canonical, used for map keys).
    friend bool operator<(const HalfLaurent& a, const HalfLaurent& b) {
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
            [](const Term& x, const Term& y) {
                if (x.first != y.first) return x.first < y.first;
                return x.second < y.second;
            });
    }

    /**
     * Polynomial division with remainder, treating both operands as
     * polynomials in x = q^{1/2} after factoring out their minimal
     * half-exponents.  Returns (quotient, remainder) with
     * a = quotient * b + remainder and deg(remainder) < deg(b) in the
     * shifted sense.  The quotient/remainder are Laurent in general.
     */
    static std::pair<HalfLaurent, HalfLaurent> divmod(const HalfLaurent& a, const HalfLaurent& b) {
        if (b.is_zero()) throw Error(Errc::DivideByZero, "polynomial division by zero");
        if (a.is_zero()) return {HalfLaurent(), HalfLaurent()};
        // Cancel leading terms until the remainder's span drops below the
        // divisor's.  With Laurent inputs the quotient may be Laurent too;
        // "degree" here is the exponent span, which is shift-invariant.
        HalfLaurent rem = a, quot;
        const int span_b = b.max_half() - b.min_half();
        while (!rem.is_zero() && rem.max_half() - rem.min_half() >= span_b) {
            GaussRat c = rem.leading_coeff() / b.leading_coeff();
            HalfLaurent t = monomial(std::move(c), rem.max_half() - b.max_half());
            quot += t;
            rem -= t * b;
        }
        return {quot, rem};
    }

    /// Exact division; throws if a is not a multiple of b.
    static HalfLaurent div_exact(const HalfLaurent& a, const HalfLaurent& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw Error(Errc::DivideByZero, "inexact polynomial division");
        return q;
    }

    /**
     * Monic-by-trailing GCD: the result g divides both inputs, has minimal
     * half-exponent 0 and trailing coefficient 1.  gcd(0,0) = 0.
     */
    static HalfLaurent gcd(HalfLaurent a, HalfLaurent b) {
        auto normalize = [](HalfLaurent p) {
            if (p.is_zero()) return p;
            p = p.shifted(-p.min_half());
            return p.scaled(p.trailing_coeff().inverse());
        };
        a = normalize(std::move(a));
        b = normalize(std::move(b));
        while (!b.is_zero()) {
            HalfLaurent r = divmod(a, b).second;
            a = std::move(b);
            b = normalize(std::move(r));
        }
        return normalize(std::move(a));
    }

    /**
     * Canonical text form, terms in descending half-exponent:
     * "q^(2) - q + 2", "q^(1/2) + q^(-1/2)", "(1+i)*q^(3/2) - i".
     */
    std::string str() const;

private:
    std::vector<Term> terms_;
};

} // namespace qasa
