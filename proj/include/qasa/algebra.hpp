/**
 * @file algebra.hpp
 * @brief Free algebra of words in presentation generators, twisted by the
 *        sign group attached to the root lattice.
 *
 * Elements are finite Scalar-linear combinations of monomials.  A monomial
 * is a bitmask of commuting order-two group generators sigma_i (one per
 * node) followed by a word in the presentation generators.  Multiplication
 * is free except for three structural rules that are part of the underlying
 * vector-space model, not of the relation ideal being tested:
 *   - sigma letters are fronted, picking up the sign
 *       sigma_i x = (-1)^{(alpha_i, wt x)} x sigma_i
 *     and cancel in pairs (sigma_i^2 = 1);
 *   - adjacent powers of the same invertible Cartan letter (k_i, gamma_i,
 *     gamma^{1/2}) merge additively and vanish at exponent zero.
 * Everything else (commutations, Serre words, current relations) stays free
 * and must be certified by the relation checker.
 */
#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qasa/cartan.hpp"

namespace qasa {

/// Generator alphabet across both presentation styles.
enum class Sym : std::uint8_t {
    E,    // Chevalley raising e_i
    F,    // Chevalley lowering f_i
    K,    // Chevalley Cartan k_i^{arg}
    XiP,  // current xi^+_{i,r}
    XiM,  // current xi^-_{i,r}
    Kap,  // loop Cartan kappa_{i,r}, r != 0
    GN,   // gamma_i^{arg}
    GH,   // central gamma^{arg/2}
};

inline bool is_group_like(Sym s) { return s == Sym::K || s == Sym::GN || s == Sym::GH; }

struct GenSymbol {
    Sym kind;
    std::int16_t node; // 0 for GH (unused)
    std::int32_t arg;  // loop index (XiP/XiM/Kap) or exponent (K/GN/GH)

    friend auto operator<=>(const GenSymbol&, const GenSymbol&) = default;
};

enum class Style : std::uint8_t { Chevalley, Drinfeld };

/// Identity of the ambient algebra; shared by all elements built in it.
struct AlgebraCtx {
    CartanDatum datum;
    Style style = Style::Chevalley;
    bool smash = false;

    bool operator==(const AlgebraCtx& o) const {
        return datum == o.datum && style == o.style && smash == o.smash;
    }
    std::string name() const;

    /// (alpha_i, mu) for a weight mu in simple-root coordinates.
    long pair_with_node(int i, std::span<const long> mu) const {
        long s = 0;
        for (std::size_t j = 0; j < mu.size(); ++j)
            s += static_cast<long>(datum.gram[static_cast<std::size_t>(i)][j]) * mu[j];
        return s;
    }
};

using CtxPtr = std::shared_ptr<const AlgebraCtx>;

CtxPtr make_ctx(Family f, int n, bool dual, Style style, bool smash);
CtxPtr make_ctx(const CartanDatum& datum, Style style, bool smash);

struct Monomial {
    std::uint32_t sigma = 0;      // bit i set <=> sigma_i present (fronted)
    std::vector<GenSymbol> word;  // free word, adjacent Cartan powers merged
    std::int32_t cpow = 0;        // power of the undetermined central constant c

    bool is_unit() const { return sigma == 0 && cpow == 0 && word.empty(); }

    /// Graded length: Cartan letters count |exponent|, others 1; the central
    /// constant is a coefficient-ring symbol and contributes no length.
    long length() const {
        long len = 0;
        for (const auto& g : word) len += is_group_like(g.kind) ? std::abs(g.arg) : 1;
        return len;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.sigma == b.sigma && a.cpow == b.cpow && a.word == b.word;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        const long la = a.length(), lb = b.length();
        if (la != lb) return la < lb;
        if (a.word != b.word) return a.word < b.word;
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return a.cpow < b.cpow;
    }
};

class Element {
public:
    explicit Element(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static Element zero(CtxPtr ctx) { return Element(std::move(ctx)); }
    static Element unit(CtxPtr ctx, Scalar c = Scalar::one());
    /// Single generator; validates the symbol against the context.
    static Element generator(CtxPtr ctx, GenSymbol g);
    static Element sigma(CtxPtr ctx, int i);
    static Element from_monomial(CtxPtr ctx, Monomial m, Scalar c = Scalar::one());

    const CtxPtr& ctx() const { return ctx_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Element operator-() const;
    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator*(const Scalar& c, const Element& a);
    /// Exact division by a nonzero scalar.
    friend Element operator/(const Element& a, const Scalar& c);
    Element& operator+=(const Element& b) { return *this = *this + b; }
    Element& operator-=(const Element& b) { return *this = *this - b; }
    Element& operator*=(const Element& b) { return *this = *this * b; }

    friend bool operator==(const Element& a, const Element& b);

    /// Z2-degree if every monomial agrees; nullopt on inhomogeneous input.
    std::optional<int> parity() const;
    /// Simple-root-coordinate weight if homogeneous (nodes 0..n).
    std::optional<std::vector<long>> weight() const;
    /// Total loop degree if homogeneous.
    std::optional<long> loop_degree() const;

    /// Longest monomial length (0 for the zero element).
    long max_length() const;

    std::string str() const;

    /// Append a scaled monomial (internal normal-form insert).
    void add_term(Monomial m, Scalar c);

private:
    CtxPtr ctx_;
    std::map<Monomial, Scalar> terms_;
};

/// Parity of a single letter in a context (0 or 1).
int letter_parity(const AlgebraCtx& ctx, const GenSymbol& g);
/// Weight contribution of a single letter.
void add_letter_weight(const AlgebraCtx& ctx, const GenSymbol& g, std::vector<long>& wt);
/// Weight of a whole word.
std::vector<long> word_weight(const AlgebraCtx& ctx, std::span<const GenSymbol> w);

/**
 * [x, y]_a = x y - (-1)^{|x||y|} a y x for parity-homogeneous operands
 * (a = 1 gives the plain super bracket; on the even side all operands are
 * even and this is the ordinary a-commutator).
 */
Element super_bracket(const Element& x, const Element& y, const Scalar& a = Scalar::one());

/**
 * Twisted adjoint operators.  For weight-homogeneous x of weight mu,
 *   ad_e(i, x) = e_i x - (-1)^{|e_i||x|} (k_i x k_i^{-1}) e_i
 *              = [e_i, x]_{b^{(alpha_i, mu)}}
 * with b = q on the super side and b = t on the even side; in the loop
 * presentation e_i/f_i/k_i are read as xi^+_{i,0}/xi^-_{i,0}/gamma_i.
 * ad_f uses the inverse conjugation factor b^{-(alpha_i, mu)}.
 */
Element ad_e(int i, const Element& x);
Element ad_f(int i, const Element& x);
/// The same operators written with explicit Cartan conjugation (no weight
/// shortcut); used to cross-check ad_e/ad_f.
Element ad_e_conj(int i, const Element& x);
Element ad_f_conj(int i, const Element& x);

/**
 * Symmetrization: sum of fn over all permutations of the index values
 * (all |values|! of them, even when values repeat).
 */
Element sym_over(std::span<const long> values,
                 const std::function<Element(std::span<const long>)>& fn);

// Generator shorthands -----------------------------------------------------

Element el_e(const CtxPtr& ctx, int i);
Element el_f(const CtxPtr& ctx, int i);
Element el_k(const CtxPtr& ctx, int i, int pow = 1);
Element el_xi(const CtxPtr& ctx, int sign, int i, long r);
Element el_kap(const CtxPtr& ctx, int i, long r);
Element el_gn(const CtxPtr& ctx, int i, int pow = 1);
Element el_gh(const CtxPtr& ctx, int half_pow);
Element el_sigma(const CtxPtr& ctx, int i);
/// c^{pow}: the distinguished central constant left undetermined by the
/// presentation (pinned later by a linear solve).  Central, even,
/// weight-zero; lives in the coefficient ring rather than the word.
Element el_c(const CtxPtr& ctx, int pow = 1);

} // namespace qasa
