/**
 * @file cartan.cpp
 * @brief Construction of the root data and loop structure coefficients.
 */
#include "qasa/cartan.hpp"

#include <numeric>

namespace qasa {

namespace {

/**
 * Realize the simple roots inside the epsilon-lattice Z^n with
 * (eps_i, eps_j) = delta_ij; the null-root component pairs to zero with
 * everything and is dropped.  Row i holds the coordinates of alpha_i.
 *
 *   osp1 pair : alpha_0 = -2 eps_1,        alpha_i = eps_i - eps_{i+1}, alpha_n = eps_n
 *   sl2  pair : alpha_0 = -eps_1 - eps_2 (n >= 2; -eps_1 for n = 1),
 *               alpha_i = eps_i - eps_{i+1}, alpha_n = eps_n
 *   osp2 pair : alpha_0 = -eps_1,          alpha_i = eps_i - eps_{i+1}, alpha_n = eps_n
 */
std::vector<std::vector<int>> simple_root_coords(Family f, int n) {
    std::vector<std::vector<int>> alpha(static_cast<std::size_t>(n) + 1,
                                        std::vector<int>(static_cast<std::size_t>(n), 0));
    switch (f) {
        case Family::Osp1: alpha[0][0] = -2; break;
        case Family::Sl2:
            alpha[0][0] = -1;
            if (n >= 2) alpha[0][1] = -1;
            break;
        case Family::Osp2: alpha[0][0] = -1; break;
    }
    for (int i = 1; i < n; ++i) {
        alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1;
        alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -1;
    }
    alpha[static_cast<std::size_t>(n)][static_cast<std::size_t>(n - 1)] = 1;
    return alpha;
}

Scalar unit_power_scalar(const UnitMonomial& base, long e) {
    return base.pow(e).scalar();
}

/// z^e - z^{-e} for a unit monomial base.
Scalar sym_diff(const UnitMonomial& base, long e) {
    return unit_power_scalar(base, e) - unit_power_scalar(base, -e);
}

long sign_pow(long r) { return (r % 2 == 0) ? 1 : -1; }

} // namespace

bool CartanDatum::in_loop_set(int i, long r) const {
    if (i < 1 || i > n) return false;
    if (family == Family::Osp2 && i < n) return r % 2 == 0;
    return true;
}

int CartanDatum::theta(int i, int j) const {
    if (family == Family::Osp2 && !(i == n && j == n)) return 2;
    return 1;
}

std::string CartanDatum::name() const {
    switch (family) {
        case Family::Osp1: return dual ? "A_{2n}^(2)" : "osp(1|2n)^(1)";
        case Family::Sl2: return dual ? "B_n^(1)" : "sl(1|2n)^(2)";
        case Family::Osp2: return dual ? "D_{n+1}^(2)" : "osp(2|2n)^(2)";
    }
    return "?";
}

CartanDatum build_datum(Family f, int n, bool dual) {
    if (n < 1) throw Error(Errc::UnsupportedRank, "rank must be at least 1");
    CartanDatum d;
    d.family = f;
    d.n = n;
    d.dual = dual;

    const auto alpha = simple_root_coords(f, n);
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    d.gram.assign(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            d.gram[i][j] = std::inner_product(alpha[i].begin(), alpha[i].end(),
                                              alpha[j].begin(), 0);
        }
    }
    d.cartan.assign(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const int num = 2 * d.gram[i][j];
            if (num % d.gram[i][i] != 0)
                throw Error(Errc::OutOfRange, "non-integral Cartan entry");
            d.cartan[i][j] = num / d.gram[i][i];
        }
    }

    d.parity.assign(m, 0);
    if (!dual) {
        d.parity[static_cast<std::size_t>(n)] = 1;
        if (f == Family::Osp2) d.parity[0] = 1;
    }

    d.zeta.assign(m, 1);
    d.zeta[static_cast<std::size_t>(n)] = 2;

    d.marks.assign(m, 2);
    d.marks[0] = 1;
    switch (f) {
        case Family::Osp1: break;
        case Family::Sl2: d.marks[1] = 1; break;
        case Family::Osp2: d.marks.assign(m, 1); break;
    }
    return d;
}

CartanDatum dual_datum(const CartanDatum& d) {
    if (d.dual) throw Error(Errc::AlreadyDual, "datum is already on the even side");
    return build_datum(d.family, d.n, true);
}

Scalar u_coeff(const CartanDatum& d, int i, int j, long r) {
    if (i < 1 || i > d.n || j < 1 || j > d.n)
        throw Error(Errc::OutOfRange, "u_coeff node out of range");
    const long a = d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const UnitMonomial qi = d.q_i(i);
    switch (d.family) {
        case Family::Osp1:
            if (i == d.n && j == d.n) {
                // q_n^{4r} - q_n^{-4r} - q_n^{2r} + q_n^{-2r}
                return unit_power_scalar(qi, 4 * r) - unit_power_scalar(qi, -4 * r) -
                       unit_power_scalar(qi, 2 * r) + unit_power_scalar(qi, -2 * r);
            }
            return sym_diff(qi, r * a);
        case Family::Sl2:
            if (i == d.n && j == d.n) {
                return Scalar::from_int(sign_pow(r)) * sym_diff(qi, 2 * r);
            }
            return sym_diff(qi, r * a);
        case Family::Osp2:
            if (i == d.n && j == d.n) {
                return Scalar::from_int(sign_pow(r)) * sym_diff(qi, 2 * r);
            }
            {
                // (1 + (-1)^r)(q_i^{r a/2} - q_i^{-r a/2}); the prefactor
                // kills exactly the shifts that leave the loop set.  With
                // q_i = q^{norm/2} the combined half-exponent of q is
                // norm * r * a / 2, which is always integral here.
                const long twice_half = d.norm_sq(i) * r * a;
                if (twice_half % 2 != 0)
                    throw Error(Errc::OutOfRange, "non-half-integral exponent in u_coeff");
                const int h = static_cast<int>(twice_half / 2);
                Scalar diff = Scalar::q_power_half(h) - Scalar::q_power_half(-h);
                return Scalar::from_int(1 + sign_pow(r)) * diff;
            }
    }
    throw Error(Errc::OutOfRange, "unknown family");
}

Scalar u_prime_coeff(const CartanDatum& d, int i, int j, long r) {
    if (i < 1 || i > d.n || j < 1 || j > d.n)
        throw Error(Errc::OutOfRange, "u_prime_coeff node out of range");
    const long a = d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const UnitMonomial ti = d.t_i(i);
    switch (d.family) {
        case Family::Osp1:
            if (i == d.n && j == d.n) {
                // (t_n^{2r} - t_n^{-2r})(t_n^{2r} + t_n^{-2r} + (-1)^{r-1})
                Scalar f1 = sym_diff(ti, 2 * r);
                Scalar f2 = unit_power_scalar(ti, 2 * r) + unit_power_scalar(ti, -2 * r) +
                            Scalar::from_int(-sign_pow(r));
                return f1 * f2;
            }
            return sym_diff(ti, r * a);
        case Family::Sl2:
            return sym_diff(ti, r * a);
        case Family::Osp2:
            if (i == d.n && j == d.n) {
                return sym_diff(ti, 2 * r);
            }
            {
                // (1 + (-1)^r)(t_i^{r a/2} - t_i^{-r a/2}); t_i^{1/2} has
                // integral t^{1/2}-exponent norm_sq(i)/... the combined
                // exponent of t^{1/2} is norm_sq(i) * r * a / 2.
                const long m = d.norm_sq(i) * r * a;
                if (m % 2 != 0)
                    throw Error(Errc::OutOfRange, "non-integral exponent in u_prime_coeff");
                Scalar diff = UnitMonomial::t_half_power(static_cast<int>(m / 2)).scalar() -
                              UnitMonomial::t_half_power(static_cast<int>(-m / 2)).scalar();
                return Scalar::from_int(1 + sign_pow(r)) * diff;
            }
    }
    throw Error(Errc::OutOfRange, "unknown family");
}

GaussRat o_sign_power(const CartanDatum& d, int i, long r) {
    if (i < 1 || i > d.n) throw Error(Errc::OutOfRange, "o_sign_power node out of range");
    const bool base_negative = ((d.n - i) % 2) != 0;
    if (!base_negative) return GaussRat(1);
    if (d.c_is_half()) {
        if (r % 2 != 0)
            throw Error(Errc::UndefinedPower, "(-1)^{r/2} with odd r");
        return GaussRat(sign_pow(r / 2));
    }
    return GaussRat(sign_pow(r));
}

std::pair<Family, bool> family_from_code(const std::string& code) {
    if (code == "osp1") return {Family::Osp1, false};
    if (code == "sl2") return {Family::Sl2, false};
    if (code == "osp2-2") return {Family::Osp2, false};
    if (code == "a2n2") return {Family::Osp1, true};
    if (code == "bn1") return {Family::Sl2, true};
    if (code == "dn12") return {Family::Osp2, true};
    throw Error(Errc::OutOfRange, "unknown family code: " + code);
}

std::string family_code(Family f, bool dual) {
    switch (f) {
        case Family::Osp1: return dual ? "a2n2" : "osp1";
        case Family::Sl2: return dual ? "bn1" : "sl2";
        case Family::Osp2: return dual ? "dn12" : "osp2-2";
    }
    return "?";
}

} // namespace qasa
