/**
 * @file cartan.hpp
 * @brief Root data for the three twisted/untwisted affine super families and
 *        their even counterparts.
 *
 * The three superalgebra families are
 *   osp1 : osp(1|2n)^(1)   paired with  A_{2n}^(2)
 *   sl2  : sl(1|2n)^(2)    paired with  B_n^(1)
 *   osp2 : osp(2|2n)^(2)   paired with  D_{n+1}^(2)
 * Each member of a pair shares the same symmetrized Cartan matrix (Gram
 * matrix of simple roots), normalized so the short root alpha_n has
 * (alpha_n, alpha_n) = 1.  The super side carries odd simple roots; the
 * even ("dual") side carries none and its deformation base is t with
 * t^{1/2} = i * q^{1/2}, t = -q.
 */
#pragma once

#include <string>
#include <vector>

#include "qasa/scalar.hpp"

namespace qasa {

enum class Family { Osp1, Sl2, Osp2 };

struct CartanDatum {
    Family family;
    int n = 1;        // rank: simple roots are indexed 0..n
    bool dual = false; // false: superalgebra side (base q); true: even side (base t)

    std::vector<std::vector<int>> gram;   // (alpha_i, alpha_j), integer-valued
    std::vector<std::vector<int>> cartan; // a_ij = 2 (alpha_i,alpha_j) / (alpha_i,alpha_i)
    std::vector<int> parity;              // 1 for odd simple roots (empty pattern when dual)
    std::vector<int> zeta;                // zeta_n = 2, zeta_i = 1 otherwise
    std::vector<int> marks;               // delta = sum_i marks[i] * alpha_i

    int num_nodes() const { return n + 1; }
    int norm_sq(int i) const { return gram[i][i]; }

    /// q_i = q^{(alpha_i,alpha_i)/2} (integral power of q^{1/2}).
    UnitMonomial q_i(int i) const { return UnitMonomial(0, norm_sq(i)); }
    /// t_i = t^{(alpha_i,alpha_i)/2} = (i*q^{1/2})^{(alpha_i,alpha_i)}.
    UnitMonomial t_i(int i) const { return UnitMonomial::t_half_power(norm_sq(i)); }
    /// The deformation base attached to node i on this side of the pair.
    UnitMonomial base(int i) const { return dual ? t_i(i) : q_i(i); }

    bool is_odd_node(int i) const { return parity[static_cast<std::size_t>(i)] != 0; }

    /// Loop index set: true iff the loop generator (i, r) exists, i in 1..n.
    bool in_loop_set(int i, long r) const;

    /// Shift used by the same-sign current relations for the pair (i, j).
    int theta(int i, int j) const;

    /// True when the loop-degree normalizer c equals 1/2 (osp2 pair only).
    bool c_is_half() const { return family == Family::Osp2; }

    /// Largest theta over all node pairs (window padding for images).
    int theta_max() const { return family == Family::Osp2 ? 2 : 1; }

    /// Human-readable name, e.g. "osp(1|2n)^(1)" or "A_{2n}^(2)".
    std::string name() const;

    bool operator==(const CartanDatum& other) const {
        return family == other.family && n == other.n && dual == other.dual;
    }
};

/// Build the datum for one side of one family pair.  Throws UnsupportedRank
/// for n < 1.
CartanDatum build_datum(Family f, int n, bool dual);

/// The even partner of a super datum.  Throws AlreadyDual on a dual datum.
CartanDatum dual_datum(const CartanDatum& d);

/**
 * Loop structure coefficient u_{i,j,r} on the superalgebra side (a Laurent
 * polynomial in q^{1/2}).  Defined for i, j in 1..n and any integer r; it
 * vanishes exactly when the shifted index would leave the loop set.
 */
Scalar u_coeff(const CartanDatum& d, int i, int j, long r);

/// Loop structure coefficient on the even side (t-convention).
Scalar u_prime_coeff(const CartanDatum& d, int i, int j, long r);

/**
 * o(i)^{c r} with o(i) = (-1)^{n-i} and c the loop normalizer (1/2 for the
 * osp2 pair, 1 otherwise).  Throws UndefinedPower when the exponent is not
 * integral for a negative base.
 */
GaussRat o_sign_power(const CartanDatum& d, int i, long r);

/// Parse a CLI family code: osp1, sl2, osp2-2, a2n2, bn1, dn12.
/// Returns (family, dual).  Throws OutOfRange on unknown codes.
std::pair<Family, bool> family_from_code(const std::string& code);

/// Inverse of family_from_code.
std::string family_code(Family f, bool dual);

} // namespace qasa
