/**
 * @file qcomb.hpp
 * @brief Balanced q-integers, q-factorials and q-binomials at an arbitrary
 *        invertible base.
 *
 * The balanced integer is [j]_z = (z^j - z^{-j})/(z - z^{-1}), computed via
 * the equivalent summation z^{j-1} + z^{j-3} + ... + z^{1-j} so no division
 * is performed.  The base may be any scalar with z - z^{-1} != 0; in
 * practice it is a unit monomial such as q_i or t_i = i^{|alpha_i|^2} *
 * q^{|alpha_i|^2 / 2}.
 */
#pragma once

#include "qasa/scalar.hpp"

namespace qasa {

/// z^e for a scalar base and integer exponent (negative allowed).
inline Scalar scalar_pow(const Scalar& z, long e) {
    if (e == 0) return Scalar::one();
    Scalar base = e > 0 ? z : z.inverse();
    long k = e > 0 ? e : -e;
    Scalar r = Scalar::one();
    while (k > 0) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

/// [j]_z; throws DegenerateBase when z - z^{-1} = 0 (z = 1, -1 or 0).
inline Scalar q_int(long j, const Scalar& z) {
    if (z.is_zero()) throw Error(Errc::DegenerateBase, "balanced integer at base 0");
    if ((z - z.inverse()).is_zero())
        throw Error(Errc::DegenerateBase, "balanced integer at z with z = z^{-1}");
    const long a = j >= 0 ? j : -j;
    Scalar sum = Scalar::zero();
    for (long e = a - 1; e >= 1 - a; e -= 2) sum += scalar_pow(z, e);
    return j >= 0 ? sum : -sum;
}

/// [N]_z! = [1]_z [2]_z ... [N]_z; [0]! = 1.  Throws OutOfRange for N < 0.
inline Scalar q_factorial(long N, const Scalar& z) {
    if (N < 0) throw Error(Errc::OutOfRange, "q-factorial of a negative integer");
    Scalar r = Scalar::one();
    for (long j = 2; j <= N; ++j) r *= q_int(j, z);
    if (N >= 1) r *= q_int(1, z);
    return r;
}

/// Balanced binomial [N choose k]_z.  Throws OutOfRange unless 0 <= k <= N.
inline Scalar q_binomial(long N, long k, const Scalar& z) {
    if (N < 0 || k < 0 || k > N)
        throw Error(Errc::OutOfRange, "q-binomial outside 0 <= k <= N");
    return q_factorial(N, z) / (q_factorial(k, z) * q_factorial(N - k, z));
}

} // namespace qasa
