/**
 * @file scalar.hpp
 * @brief The exact coefficient field Q(i)(q^{1/2}) in canonical form, and
 *        unit monomials i^u * q^{h/2}.
 *
 * A Scalar is a reduced fraction num/den of half-exponent Laurent
 * polynomials.  The canonical form is unique:
 *   - zero is 0/1;
 *   - gcd(num, den) = 1 as polynomials in q^{1/2};
 *   - den is a genuine polynomial whose lowest term is exactly 1 * q^0
 *     (any monomial unit is pushed into num).
 * Equality is therefore structural.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qasa/laurent.hpp"

namespace qasa {

class Scalar {
public:
    Scalar() : num_(HalfLaurent::zero()), den_(HalfLaurent::one()) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return from_laurent(HalfLaurent::one()); }
    static Scalar from_int(long v) { return from_laurent(HalfLaurent::monomial(GaussRat(v), 0)); }
    static Scalar from_gauss(GaussRat g) {
        return from_laurent(HalfLaurent::monomial(std::move(g), 0));
    }
    static Scalar from_laurent(HalfLaurent p) {
        Scalar s;
        s.num_ = std::move(p);
        s.den_ = HalfLaurent::one();
        return s;
    }
    /// q^{half/2}
    static Scalar q_power_half(int half) { return from_laurent(HalfLaurent::q_power_half(half)); }
    /// q^{e}
    static Scalar q_power(int e) { return from_laurent(HalfLaurent::q_power(e)); }

    static Scalar fraction(HalfLaurent num, HalfLaurent den) {
        if (den.is_zero()) throw Error(Errc::DivideByZero, "scalar with zero denominator");
        Scalar s;
        s.num_ = std::move(num);
        s.den_ = std::move(den);
        s.canonicalize();
        return s;
    }

    const HalfLaurent& num() const { return num_; }
    const HalfLaurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }

    Scalar operator-() const {
        Scalar r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_.is_one() && b.den_.is_one()) return from_laurent(a.num_ + b.num_);
        return fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        if (a.den_.is_one() && b.den_.is_one()) return from_laurent(a.num_ * b.num_);
        return fraction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw Error(Errc::DivideByZero, "scalar division by zero");
        if (a.is_zero()) return zero();
        return fraction(a.num_ * b.den_, a.den_ * b.num_);
    }

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    Scalar inverse() const { return one() / *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical total order (for deterministic containers / pivoting).
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.den_ != b.den_) return a.den_ < b.den_;
        return a.num_ < b.num_;
    }

    /// Complexity measure used by the elimination pivoting heuristic.
    std::size_t term_count() const { return num_.size() + den_.size(); }

    std::string str() const;

private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = HalfLaurent::one();
            return;
        }
        // Split off monomial units q^{min/2} so both parts are genuine
        // polynomials with nonzero constant term, reduce by their gcd, then
        // re-attach the unit to the numerator and scale the denominator's
        // trailing coefficient to exactly 1.
        const int sn = num_.min_half(), sd = den_.min_half();
        HalfLaurent n = num_.shifted(-sn), d = den_.shifted(-sd);
        HalfLaurent g = HalfLaurent::gcd(n, d);
        if (!g.is_one()) {
            n = HalfLaurent::div_exact(n, g);
            d = HalfLaurent::div_exact(d, g);
        }
        GaussRat lead = d.trailing_coeff();
        if (!lead.is_one()) {
            GaussRat inv = lead.inverse();
            n = n.scaled(inv);
            d = d.scaled(inv);
        }
        num_ = n.shifted(sn - sd);
        den_ = std::move(d);
    }

    HalfLaurent num_, den_;
};

/**
 * A unit monomial i^{unit} * q^{half/2}.  These are exactly the scalars the
 * root-length conventions produce: q_i is an integral power of q and t_i is
 * an integral power of t^{1/2} = i * q^{1/2}.
 */
struct UnitMonomial {
    int unit = 0; // power of i, stored mod 4
    int half = 0; // half-exponent of q

    UnitMonomial() = default;
    UnitMonomial(int u, int h) : unit(((u % 4) + 4) % 4), half(h) {}

    static UnitMonomial one() { return UnitMonomial(); }
    /// (i * q^{1/2})^{m}: the m-th power of t^{1/2}.
    static UnitMonomial t_half_power(int m) { return UnitMonomial(m, m); }
    /// q^{e}
    static UnitMonomial q_power(int e) { return UnitMonomial(0, 2 * e); }

    friend UnitMonomial operator*(const UnitMonomial& a, const UnitMonomial& b) {
        return UnitMonomial(a.unit + b.unit, a.half + b.half);
    }
    UnitMonomial inverse() const { return UnitMonomial(-unit, -half); }
    UnitMonomial pow(long e) const {
        return UnitMonomial(static_cast<int>((unit * (e % 4)) % 4),
                            static_cast<int>(half * e));
    }

    friend bool operator==(const UnitMonomial& a, const UnitMonomial& b) {
        return a.unit == b.unit && a.half == b.half;
    }
    friend bool operator!=(const UnitMonomial& a, const UnitMonomial& b) { return !(a == b); }

    bool is_one() const { return unit == 0 && half == 0; }

    Scalar scalar() const {
        return Scalar::from_laurent(HalfLaurent::monomial(GaussRat::i_power(unit), half));
    }

    /// Recover a unit monomial from a Scalar if it is one.
    static std::optional<UnitMonomial> from_scalar(const Scalar& s) {
        if (!s.is_laurent() || s.num().size() != 1) return std::nullopt;
        const auto& t = s.num().terms()[0];
        const GaussRat& c = t.second;
        for (int u = 0; u < 4; ++u) {
            if (c == GaussRat::i_power(u)) return UnitMonomial(u, t.first);
        }
        return std::nullopt;
    }

    std::string str() const { return scalar().str(); }
};

} // namespace qasa
