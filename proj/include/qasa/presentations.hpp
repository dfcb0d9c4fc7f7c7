/**
 * @file presentations.hpp
 * @brief Instantiated defining-relation catalogues for the four algebra
 *        styles, plus the finite expansion of the kappa-hat currents.
 *
 * A catalogue lists every defining relation of one presentation as an
 * explicit Element (left side minus right side) over concrete index
 * assignments.  Chevalley catalogues are finite; loop catalogues are cut to
 * a loop-index window [-W, W]: an instance is included only when every loop
 * index it mentions (including shifted ones such as s + r) lies inside the
 * window and the loop set.
 *
 * Relations that the monomial normal form already makes identically zero
 * (k_i k_i^{-1} = 1, gamma gamma^{-1} = 1, sigma_i^2 = 1, and the sigma
 * commutation rules absorbed by the sign-carrying sigma mask) are kept in
 * the catalogue marked `trivially_zero` so that counts remain faithful to
 * the presentation, but they carry the zero element.
 */
#pragma once

#include <string>
#include <vector>

#include "qasa/algebra.hpp"

namespace qasa {

/// One fully-instantiated defining relation, stored as lhs - rhs.
struct RelInstance {
    std::string id;       ///< e.g. "hx+:i=1,j=2,r=-3,s=2"
    Element value;        ///< must vanish in the presented algebra
    bool trivially_zero = false;
};

struct Catalogue {
    CtxPtr ctx;
    int window = 0;       ///< 0 for Chevalley catalogues
    std::vector<RelInstance> rels;

    /// Number of instances whose id starts with the given prefix.
    std::size_t count_prefix(const std::string& prefix) const;
};

/**
 * Chevalley-style defining relations of the algebra `ctx` (either side of a
 * pair): Cartan invertibility/commutation, the k-e / k-f conjugations, the
 * e-f relation with denominator b_i^{zeta_i} - b_i^{-zeta_i}, and the Serre
 * relations (Ad_{e_i})^{1-a_ij}(e_j) = (Ad_{f_i})^{1-a_ij}(f_j) = 0 for all
 * ordered pairs i != j, written with the explicit Cartan-conjugation form of
 * Ad.  When the context is smash-extended the sigma sector (sigma_i^2 = 1
 * and the sign commutation rules) is appended.
 */
Catalogue chevalley_relations(const CtxPtr& ctx);

/**
 * Loop-presentation defining relations of `ctx` at the given window
 * (window >= 2 required, else WindowTooSmall): centrality of the half
 * central element, Cartan-type invertibility/commutation, gamma_i
 * conjugation of the currents, the h-x and h-h relations built from the
 * loop structure coefficients, the x+x- relation closed by kappa-hat
 * expansions, the same-sign shifted relations (skipped at (n, n) for the
 * osp1 pair as the presentation prescribes), and the Serre sector with its
 * family case split.  Smash contexts append the sigma sector.
 */
Catalogue drinfeld_relations(const CtxPtr& ctx, int window);

/**
 * kappa_hat(ctx, +1, i, m, order): coefficient of u^{-m} in
 *   gamma_i * exp((b - b^{-1}) * sum_{r>0, (i,r) in loop set} kap_{i,r} u^{-r}),
 * zero for m < 0 and gamma_i at m = 0.  kappa_hat(ctx, -1, i, m, order):
 * coefficient of u^{-m} (m <= 0) in
 *   gamma_i^{-1} * exp((b^{-1} - b) * sum_{r>0} kap_{i,-r} u^{r}).
 * b is the deformation base of the side (q or t).  Products of kap letters
 * are emitted in ascending |loop index| order with multinomial
 * coefficients.  Throws OrderExceeded when |m| > order.
 */
Element kappa_hat(const CtxPtr& ctx, int sign, int i, long m, int order);

} // namespace qasa
