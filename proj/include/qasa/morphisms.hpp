/**
 * @file morphisms.hpp
 * @brief Generator-level algebra maps between presentation contexts: the
 *        Chevalley-side correspondence psi, the loop-side correspondence
 *        phi and its inverse, Drinfeld's isomorphism rho for the even
 *        algebras, the two constructions of the super Drinfeld isomorphism
 *        Psi, the sigma tail words, and the rescaling automorphisms.
 *
 * A GeneratorMap stores one Element image per source generator letter and
 * extends multiplicatively and Scalar-linearly; application is pure and maps
 * are immutable.  Images respect parity, and weight up to the sigma
 * dressing (sigma letters are weight-zero).
 *
 * The affine lowering images carry one factor of the undetermined central
 * constant c (see el_c); every relation image is therefore polynomial in c,
 * and the constant is pinned separately by a linear solve.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qasa/algebra.hpp"

namespace qasa {

class GeneratorMap {
public:
    using LetterImage = std::function<Element(const GenSymbol&)>;
    using SigmaImage = std::function<Element(int)>;

    GeneratorMap(CtxPtr source, CtxPtr target, std::string label, LetterImage letter,
                 SigmaImage sigma)
        : source_(std::move(source)),
          target_(std::move(target)),
          label_(std::move(label)),
          letter_(std::move(letter)),
          sigma_(std::move(sigma)) {}

    const CtxPtr& source() const { return source_; }
    const CtxPtr& target() const { return target_; }
    const std::string& label() const { return label_; }

    /// Image of one source letter, taken with its merged exponent (the
    /// image of k_i^{-3} is the cube of the image of k_i^{-1}, computed
    /// here).  Throws the letter validation errors of the source context.
    Element image(const GenSymbol& g) const { return letter_(g); }

    /// Image of sigma_i; only smash sources carry sigma letters.
    Element sigma_image(int i) const { return sigma_(i); }

    /// Multiplicative, Scalar-linear extension to any element of the source
    /// algebra.  Throws MixedAlgebra when x lives elsewhere.
    Element apply(const Element& x) const;

private:
    CtxPtr source_;
    CtxPtr target_;
    std::string label_;
    LetterImage letter_;
    SigmaImage sigma_;
};

/// outer after inner.  Throws MixedAlgebra unless inner's target algebra is
/// outer's source algebra.
GeneratorMap compose(const GeneratorMap& outer, const GeneratorMap& inner,
                     std::string label = "");

/// The embedding of a presentation into its smash extension (identity on
/// every generator letter).  `plain` must be a non-smash context.
GeneratorMap smash_embedding(const CtxPtr& plain);

/// The projection of a smash extension onto its sigma-free part (identity
/// on every non-sigma letter).  Applying it to an element with sigma
/// content throws OutOfRange: such elements are outside its domain.
GeneratorMap smash_restriction(const CtxPtr& smash);

/**
 * The Chevalley-side correspondence for the pair attached to `f`:
 * smash super Chevalley -> smash even Chevalley,
 *   e_0 |-> iota_e e'_0,  f_0 |-> iota_f f'_0,  k_0^{p} |-> iota_e iota_f k'^{p}_0,
 *   sigma_i |-> sigma'_i,  e_i |-> (prod_{k=i+1}^n sigma'_k) e'_i,
 *   f_i |-> (prod_{k=i}^n sigma'_k) f'_i,  k_i |-> sigma'_i k'_i,
 * with the family-dependent sign-group words iota_e, iota_f.
 */
GeneratorMap psi_map(Family f, int n);

/**
 * The loop-side correspondence: smash super Drinfeld -> smash even
 * Drinfeld,
 *   gamma^{1/2} |-> gamma'^{1/2},  kappa_{i,r} |-> -o(i)^{rc} kappa'_{i,r},
 *   gamma_i^{p} |-> sigma'^p_i gamma'^{p}_i,  sigma_i |-> sigma'_i,
 *   xi^+_{i,r} |-> o(i)^{rc} (prod_{k=i+1}^n sigma'_k) xi'^+_{i,r},
 *   xi^-_{i,r} |-> o(i)^{rc} (prod_{k=i}^n sigma'_k) xi'^-_{i,r},
 * with o(i) = (-1)^{n-i} and the loop normalizer c of the family.
 */
GeneratorMap phi_map(Family f, int n);

/// The inverse of phi_map, given by the mirrored images (even -> super).
GeneratorMap phi_inverse(Family f, int n);

/**
 * Drinfeld's isomorphism on the even side of the pair: smash even
 * Chevalley -> smash even Drinfeld.  e'_i |-> xi'^+_{i,0},
 * f'_i |-> xi'^-_{i,0}, k'^p_i |-> gamma'^p_i for 1 <= i <= n, and the
 * affine images built from nested adjoint words:
 *   e'_0 |-> Ad_{xi'^-_{c_1,0}} ... Ad_{xi'^-_{c_l,0}}(arg^-) gamma' gamma'^{-1}_g,
 *   f'_0 |-> c gamma'^{-1} gamma'_g Ad_{xi'^+_{c_1,0}} ... (arg^+),
 *   k'^p_0 |-> (gamma' gamma'^{-1}_g)^p,
 * where the chain (c_1..c_l) and the loop-1 argument depend on the family
 * and gamma'_g = prod_i gamma'^{m_i}_i with the marks m_i.  The constant c
 * is carried as the distinguished central symbol (el_c).
 */
GeneratorMap rho_map(Family f, int n);

/// Both constructions of the super Drinfeld isomorphism.
struct PsiCap {
    GeneratorMap direct;    ///< plain super Chevalley -> plain super Drinfeld
    GeneratorMap composed;  ///< restriction of phi^{-1} o rho o psi to the sigma-free parts
};

/**
 * The super-side Drinfeld isomorphism built two ways: (a) directly from
 * its displayed generator images (same shapes as rho_map, unprimed), and
 * (b) as the composition of psi, rho and phi^{-1} conjugated by the smash
 * embedding/restriction.  Both are returned for cross-checking.
 */
PsiCap psi_cap(Family f, int n);

/**
 * Phi_j = prod_{k=j}^n sigma_k in a smash context (the unit for j = n+1).
 * Satisfies xi^+_{n,r} Phi_j = (-1)^{delta_{n,j}} Phi_j xi^+_{n,r} and, for
 * i != n,  xi^+_{i,r} Phi_j = (-1)^{delta_{i,j}+delta_{i+1,j}} Phi_j xi^+_{i,r}.
 */
Element sigma_tail_word(const CtxPtr& ctx, int j);

/**
 * The diagonal rescaling automorphism taking the presentation of `ctx` to
 * its standard normalization: for a Chevalley context, e_i |-> [zeta_i]_{b_i} e_i
 * (all other generators fixed); for a loop context, kappa_{i,s} and
 * xi^+_{i,s} are scaled by (b - b^{-1})/(b_i - b_i^{-1}) with b the side's
 * deformation base.  Source and target coincide.
 */
GeneratorMap rescale_to_standard(const CtxPtr& ctx);

/**
 * The unit monomial u with `value` == u * `reference`, when one exists.
 * Returns nullopt when the two elements are not proportional by a unit
 * monomial (including when exactly one of them is zero).
 */
std::optional<UnitMonomial> proportionality_unit(const Element& value,
                                                 const Element& reference);

} // namespace qasa
