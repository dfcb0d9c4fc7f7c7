/**
 * @file verify.hpp
 * @brief Bounded-degree ideal-membership checking.
 *
 * The checker decides whether a candidate element is a consequence of a
 * relation catalogue within a word-length bound: it builds the span of
 * two-sided padded relation instances m * rel * m' (total length at most L,
 * padding letters drawn from the presentation alphabet with loop indices in
 * the window W), reduces every vector to the structural normal form, and
 * solves for membership by exact incremental elimination over the scalar
 * field.
 *
 * Structural normal form (fast_reduce): invertible Cartan-type letters
 * (k_i, gamma_i, gamma^{1/2}) commute past weight-carrying letters with an
 * exact unit factor (k_i e_j k_i^{-1} = q_i^{a_ij} e_j and its current-side
 * analogues), so every monomial is rewritten with its Cartan block collected
 * at the right end, sorted and merged; inverses cancel on merging.  These
 * rules, together with the sign-group normal form already built into the
 * monomial model, are exact consequences of every catalogue, so reduction
 * never changes the membership question.
 *
 * The search is graded: the span decomposes over (sign-group mask, power of
 * the undetermined constant, weight, loop degree), and only vectors in the
 * candidate's sector are enumerated, in a fixed deterministic order of
 * increasing padding length.  Verified verdicts carry an explicit
 * certificate which is re-multiplied and compared against the candidate on
 * every run before being returned; NonzeroAtBound is only reported when the
 * whole bounded span was exhausted, and BudgetExceeded whenever a cap (rows,
 * generated padding monomials, or rewrite steps) cut the search short.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qasa/algebra.hpp"
#include "qasa/morphisms.hpp"
#include "qasa/presentations.hpp"

namespace qasa {

/// Search limits for one membership question.
struct Budget {
    long L = 12;        ///< max total word length of a padded relation product
    int W = 3;          ///< loop-index window for padding letters
    long S = 2000000;   ///< cap on structural rewrite (crossing) steps
    long B = 20000;     ///< cap on elimination rows and per-length padding monomials

    /// Throws OutOfRange unless every field is positive.
    void validate() const;
};

/// One certificate summand: coeff * left * value(rel_id) * right.  The left
/// padding monomial carries the candidate's sign-group mask and power of the
/// undetermined constant; the words themselves are mask-free.
struct CertTerm {
    std::string rel_id;
    Monomial left;
    Monomial right;
    Scalar coeff;
};

struct Verdict {
    enum class Kind { Verified, NonzeroAtBound, BudgetExceeded };

    Kind kind = Kind::BudgetExceeded;
    /// Verified: re-multiplies exactly to the candidate (checked before the
    /// verdict is returned; a failure of that internal check throws).
    std::vector<CertTerm> certificate;
    /// NonzeroAtBound: the canonical remainder of the candidate after
    /// elimination against the entire bounded span.
    std::optional<Element> residual;

    long basis_rows = 0;  ///< elimination rows built during the search
    long steps = 0;       ///< structural crossing steps spent

    bool verified() const { return kind == Kind::Verified; }
};

/**
 * Structural normal form of x: in every monomial the Cartan-type letters are
 * commuted to the right end with their exact conjugation units, then sorted
 * by (kind, node) and merged (vanishing at exponent zero).  Letters that are
 * not Cartan-type keep their relative order.  Linear over terms, terminating
 * (each crossing strictly decreases the number of out-of-place Cartan
 * letters; the step count is checked against that measure).
 */
Element fast_reduce(const Element& x);

/**
 * The same normal form computed by a deliberately different schedule: one
 * adjacent transposition at a time, leftmost first, with the termination
 * measure re-checked after every step.  Exists to cross-check that the
 * reduction result does not depend on rule order; always equals
 * fast_reduce(x).
 */
Element fast_reduce_stepwise(const Element& x);

/**
 * Bounded ideal-membership test: is x a combination of padded instances
 * m * rel * m' of the catalogue, with len(m) + maxlen(rel) + len(m') <= L
 * and padding loop indices inside [-W, W]?
 *
 * Verified   -- with a self-checked certificate;
 * NonzeroAtBound -- the bounded span was fully enumerated and x is not in it
 *               (carries the canonical residual);
 * BudgetExceeded -- a cap (B rows / B generated padding monomials per
 *               length, or S rewrite steps) stopped the search, or some
 *               monomial of x is itself longer than L.
 *
 * Throws MixedAlgebra when x does not live in the catalogue's algebra.
 */
Verdict check_zero(const Element& x, const Catalogue& cat, const Budget& budget);

/// Instance selector for check_morphism; return true to check the instance.
using RelationFilter = std::function<bool(const RelInstance&)>;

struct InstanceOutcome {
    std::string id;       ///< source relation instance id
    bool trivial = false; ///< source instance already vanished in the model
    Verdict verdict;
    double millis = 0.0;  ///< wall-clock time for this instance
};

/// Per-relation-name aggregation ("hx+", "ef", ...): verdict counts and the
/// largest certificate seen.
struct GroupSummary {
    std::string name;
    std::size_t total = 0;
    std::size_t verified = 0;
    std::size_t nonzero = 0;
    std::size_t exceeded = 0;
    std::size_t trivial = 0;
    std::size_t max_certificate = 0;
};

struct MorphismReport {
    std::string map_label;
    std::size_t total = 0;
    std::size_t verified = 0;  ///< includes trivially-zero sources
    std::size_t nonzero = 0;
    std::size_t exceeded = 0;
    std::size_t trivial = 0;
    std::vector<InstanceOutcome> instances;  ///< source catalogue order
    std::vector<GroupSummary> groups;        ///< sorted by relation name

    bool all_verified() const { return verified == total; }
};

/**
 * Relation-preservation check: for every selected instance of the source
 * catalogue, applies the map and runs check_zero against the target
 * catalogue.  Instances are independent and run concurrently when jobs > 1
 * (jobs == 1 is a plain serial loop kept as the reference path); the report
 * is identical either way.
 *
 * Throws MixedAlgebra when the catalogues do not match the map's algebras,
 * and WindowMismatch when the target catalogue's window cannot cover the
 * images (loop-style target: target window >= source window + theta_max,
 * with source window read as 0 for a Chevalley source whose images reach
 * loop index 1).
 */
MorphismReport check_morphism(const GeneratorMap& map, const Catalogue& source,
                              const Catalogue& target, const RelationFilter& filter,
                              const Budget& budget, int jobs = 1);

/**
 * Convenience overload that instantiates the catalogues itself: the source
 * at window budget.W (loop-style sources) and the target wide enough to
 * satisfy the window precondition; budget.W is widened to the target window
 * for the padding alphabet.
 */
MorphismReport check_morphism(const GeneratorMap& map, const RelationFilter& filter,
                              const Budget& budget, int jobs = 1);

/// Outcome of a linear one-parameter membership solve.
struct CSolution {
    std::optional<Scalar> value;  ///< engaged iff the parameter was pinned
    long basis_rows = 0;
    long steps = 0;

    bool determined() const { return value.has_value(); }
};

/**
 * Finds the scalar s with A*s + B in the bounded relation span, by reducing
 * both operands against the incrementally built span and testing residual
 * proportionality after every new row.  A and B must be mask-free,
 * constant-free and sector-homogeneous with a common sector.
 *
 * Determined(s) as soon as the residuals satisfy resB = -s * resA with
 * resA != 0 (then A*s + B is certified to lie in the span built so far);
 * Inconclusive when a budget cap stops the search first or when both
 * residuals vanish (every scalar works at this bound).  Throws NoSolution
 * when the bounded span is exhausted and no scalar works, and the usual
 * validation errors.
 */
CSolution solve_in_span(const Element& A, const Element& B, const Catalogue& cat,
                        const Budget& budget);

/**
 * Pins the undetermined central constant of the family's loop realisation:
 * applies the direct loop-side isomorphism to the affine e-f defining
 * relation of the source presentation, splits the image into its
 * constant-power parts E = A*c + B, and runs solve_in_span against the
 * loop catalogue of the target at window budget.W.
 */
CSolution solve_c(Family f, int n, const Budget& budget);

} // namespace qasa
