/**
 * @file rational.hpp
 * @brief Exact Gaussian rationals a + b*i with GMP rational coordinates.
 *
 * The coefficient field of the whole kernel is Q(i)(q^{1/2}); this file
 * provides the constant subfield Q(i).  Arithmetic is exact and canonical
 * (mpq_class keeps numerator/denominator reduced with positive denominator).
 */
#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "qasa/error.hpp"

namespace qasa {

using Rat = mpq_class;

struct GaussRat {
    Rat re{0};
    Rat im{0};

    GaussRat() = default;
    GaussRat(long r) : re(r), im(0) {}                      // NOLINT(google-explicit-constructor)
    GaussRat(Rat r) : re(std::move(r)), im(0) {}            // NOLINT(google-explicit-constructor)
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat unit_i() { return GaussRat(Rat(0), Rat(1)); }

    /// i^k for any integer k (k reduced mod 4).
    static GaussRat i_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return GaussRat(1);
            case 1: return GaussRat(Rat(0), Rat(1));
            case 2: return GaussRat(-1);
            default: return GaussRat(Rat(0), Rat(-1));
        }
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat conj() const { return GaussRat(re, -im); }

    /// re^2 + im^2 (a nonnegative rational, zero iff *this is zero).
    Rat norm() const { return re * re + im * im; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re + b.re, a.im + b.im);
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re - b.re, a.im - b.im);
    }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        if (b.is_zero()) throw Error(Errc::DivideByZero, "division by zero Gaussian rational");
        Rat n = b.norm();
        GaussRat num = a * b.conj();
        return GaussRat(num.re / n, num.im / n);
    }

    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }

    GaussRat inverse() const { return GaussRat(1) / *this; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    /// Total order used only for canonical term ordering (not a field order).
    friend bool operator<(const GaussRat& a, const GaussRat& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    /**
     * Canonical text form: "0", "3", "-1/2", "i", "-i", "2*i", "1/2*i",
     * "1+i", "3/2-2*i".  The explicit "*" keeps fractional imaginary parts
     * unambiguous under the expression grammar (1/2*i == (1/2)*i).
     */
    std::string str() const {
        auto rs = [](const Rat& r) { return r.get_str(); };
        auto imag_abs = [&](const Rat& a) {
            return a == 1 ? std::string("i") : rs(a) + "*i";
        };
        if (im == 0) return rs(re);
        std::string imag = im > 0 ? imag_abs(im) : "-" + imag_abs(-im);
        if (re == 0) return imag;
        return rs(re) + (im > 0 ? "+" : "-") + imag_abs(im > 0 ? im : Rat(-im));
    }
};

} // namespace qasa
