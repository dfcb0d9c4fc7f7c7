#include "qasa/morphisms.hpp"

#include <cstdlib>
#include <utility>
#include <vector>

#include "qasa/error.hpp"
#include "qasa/qcomb.hpp"

namespace qasa {

namespace {

/// img^p for a group-like generator, given the images of the two unit
/// powers (p != 0; the zero power never appears in a normalized word).
Element pow_word(const Element& plus_img, const Element& minus_img, int p) {
    const Element& b = p > 0 ? plus_img : minus_img;
    Element r = b;
    for (int k = 1; k < std::abs(p); ++k) r *= b;
    return r;
}

Scalar o_power_scalar(const CartanDatum& d, int i, long r) {
    return Scalar::from_gauss(o_sign_power(d, i, r));
}

/// The sign-group words iota_e / iota_f of the Chevalley correspondence.
Element iota_word(const CtxPtr& tgt, bool for_e) {
    const CartanDatum& d = tgt->datum;
    Element w = Element::unit(tgt);
    switch (d.family) {
        case Family::Osp1:
            break;
        case Family::Sl2:
            for (int i = for_e ? 2 : 1; i <= d.n; ++i) w *= el_sigma(tgt, i);
            break;
        case Family::Osp2:
            for (int i = for_e ? 2 : 1; i <= d.n; i += 2) w *= el_sigma(tgt, i);
            break;
    }
    return w;
}

/// (gamma_g)^p = prod_i gamma_i^{m_i p} with the marks m_i.
Element gamma_g_power(const CtxPtr& ctx, int p) {
    const CartanDatum& d = ctx->datum;
    Element w = Element::unit(ctx);
    for (int i = 1; i <= d.n; ++i) w *= el_gn(ctx, i, d.marks[static_cast<std::size_t>(i)] * p);
    return w;
}

/// Node sequence of the nested adjoint word for the affine images; the
/// rightmost operator acts first.  The palindromic tail repeats node n so
/// that the image weight matches the affine root (delta minus the weight
/// of the argument current).
std::vector<int> adjoint_chain(Family f, int n) {
    std::vector<int> seq;
    switch (f) {
        case Family::Osp1:
            for (int k = 1; k <= n; ++k) seq.push_back(k);
            for (int k = n; k >= 2; --k) seq.push_back(k);
            break;
        case Family::Sl2:
            for (int k = 2; k <= n; ++k) seq.push_back(k);
            for (int k = n; k >= 2; --k) seq.push_back(k);
            break;
        case Family::Osp2:
            for (int k = 1; k + 1 <= n; ++k) seq.push_back(k);
            break;
    }
    return seq;
}

int chain_argument_node(Family f, int n) { return f == Family::Osp2 ? n : 1; }

/// A Chevalley -> loop isomorphism on one side of a pair (rho on the even
/// side, the direct construction of Psi on the super side).  `src` and
/// `tgt` share the datum and the smash flag.
GeneratorMap loop_realisation(const CtxPtr& src, const CtxPtr& tgt, std::string label) {
    const CartanDatum d = src->datum;
    const int n = d.n;
    const std::vector<int> chain = adjoint_chain(d.family, n);
    const int arg_node = chain_argument_node(d.family, n);

    auto letter = [=](const GenSymbol& g) -> Element {
        switch (g.kind) {
            case Sym::E: {
                if (g.node >= 1) return el_xi(tgt, +1, g.node, 0);
                Element x = el_xi(tgt, -1, arg_node, +1);
                for (auto it = chain.rbegin(); it != chain.rend(); ++it) x = ad_f(*it, x);
                return x * el_gh(tgt, 2) * gamma_g_power(tgt, -1);
            }
            case Sym::F: {
                if (g.node >= 1) return el_xi(tgt, -1, g.node, 0);
                Element x = el_xi(tgt, +1, arg_node, -1);
                for (auto it = chain.rbegin(); it != chain.rend(); ++it) x = ad_e(*it, x);
                return el_c(tgt, 1) * el_gh(tgt, -2) * gamma_g_power(tgt, 1) * x;
            }
            case Sym::K: {
                if (g.node >= 1) return el_gn(tgt, g.node, g.arg);
                return el_gh(tgt, 2 * g.arg) * gamma_g_power(tgt, -g.arg);
            }
            default:
                throw Error(Errc::UnknownGenerator,
                            label + ": letter outside the Chevalley alphabet");
        }
    };
    auto sig = [tgt](int i) { return el_sigma(tgt, i); };
    return GeneratorMap(src, tgt, std::move(label), letter, sig);
}

/// The loop-side correspondence in either direction; `od` carries the o
/// and c data of the pair (identical on both sides).
GeneratorMap phi_like(const CtxPtr& src, const CtxPtr& tgt, std::string label) {
    const CartanDatum od = src->datum;
    auto letter = [=](const GenSymbol& g) -> Element {
        switch (g.kind) {
            case Sym::GH:
                return el_gh(tgt, g.arg);
            case Sym::Kap:
                return -o_power_scalar(od, g.node, g.arg) * el_kap(tgt, g.node, g.arg);
            case Sym::GN: {
                Element p1 = el_sigma(tgt, g.node) * el_gn(tgt, g.node, 1);
                Element m1 = el_sigma(tgt, g.node) * el_gn(tgt, g.node, -1);
                return pow_word(p1, m1, g.arg);
            }
            case Sym::XiP:
                return o_power_scalar(od, g.node, g.arg) *
                       (sigma_tail_word(tgt, g.node + 1) * el_xi(tgt, +1, g.node, g.arg));
            case Sym::XiM:
                return o_power_scalar(od, g.node, g.arg) *
                       (sigma_tail_word(tgt, g.node) * el_xi(tgt, -1, g.node, g.arg));
            default:
                throw Error(Errc::UnknownGenerator, label + ": letter outside the loop alphabet");
        }
    };
    auto sig = [tgt](int i) { return el_sigma(tgt, i); };
    return GeneratorMap(src, tgt, std::move(label), letter, sig);
}

} // namespace

Element GeneratorMap::apply(const Element& x) const {
    if (!(*x.ctx() == *source_))
        throw Error(Errc::MixedAlgebra, "apply: element is not in the source algebra of " + label_);
    Element out = Element::zero(target_);
    const int n = source_->datum.n;
    for (const auto& [m, coef] : x.terms()) {
        Monomial head;
        head.cpow = m.cpow;
        Element acc = Element::from_monomial(target_, std::move(head), coef);
        for (int i = 1; i <= n; ++i)
            if (m.sigma & (1u << i)) acc *= sigma_(i);
        for (const auto& g : m.word) acc *= letter_(g);
        out += acc;
    }
    return out;
}

GeneratorMap compose(const GeneratorMap& outer, const GeneratorMap& inner, std::string label) {
    if (!(*inner.target() == *outer.source()))
        throw Error(Errc::MixedAlgebra,
                    "compose: target of " + inner.label() + " differs from source of " +
                        outer.label());
    if (label.empty()) label = outer.label() + "." + inner.label();
    auto letter = [outer, inner](const GenSymbol& g) { return outer.apply(inner.image(g)); };
    auto sig = [outer, inner](int i) { return outer.apply(inner.sigma_image(i)); };
    return GeneratorMap(inner.source(), outer.target(), std::move(label), letter, sig);
}

GeneratorMap smash_embedding(const CtxPtr& plain) {
    if (plain->smash)
        throw Error(Errc::OutOfRange, "smash_embedding expects a non-smash context");
    CtxPtr tgt = make_ctx(plain->datum, plain->style, true);
    auto letter = [tgt](const GenSymbol& g) { return Element::generator(tgt, g); };
    auto sig = [](int) -> Element {
        throw Error(Errc::UnknownGenerator, "a non-smash source has no sigma letters");
    };
    return GeneratorMap(plain, tgt, "eta", letter, sig);
}

GeneratorMap smash_restriction(const CtxPtr& smash) {
    if (!smash->smash)
        throw Error(Errc::OutOfRange, "smash_restriction expects a smash context");
    CtxPtr tgt = make_ctx(smash->datum, smash->style, false);
    auto letter = [tgt](const GenSymbol& g) { return Element::generator(tgt, g); };
    auto sig = [](int) -> Element {
        throw Error(Errc::OutOfRange,
                    "element with sigma content is outside the sigma-free domain");
    };
    return GeneratorMap(smash, tgt, "upsilon", letter, sig);
}

GeneratorMap psi_map(Family f, int n) {
    CtxPtr src = make_ctx(f, n, false, Style::Chevalley, true);
    CtxPtr tgt = make_ctx(f, n, true, Style::Chevalley, true);
    const Element iota_e = iota_word(tgt, true);
    const Element iota_f = iota_word(tgt, false);

    auto letter = [=](const GenSymbol& g) -> Element {
        switch (g.kind) {
            case Sym::E:
                if (g.node == 0) return iota_e * el_e(tgt, 0);
                return sigma_tail_word(tgt, g.node + 1) * el_e(tgt, g.node);
            case Sym::F:
                if (g.node == 0) return iota_f * el_f(tgt, 0);
                return sigma_tail_word(tgt, g.node) * el_f(tgt, g.node);
            case Sym::K: {
                if (g.node == 0) {
                    Element img = el_k(tgt, 0, g.arg);
                    if (g.arg % 2 != 0) img = iota_e * iota_f * img;
                    return img;
                }
                Element p1 = el_sigma(tgt, g.node) * el_k(tgt, g.node, 1);
                Element m1 = el_sigma(tgt, g.node) * el_k(tgt, g.node, -1);
                return pow_word(p1, m1, g.arg);
            }
            default:
                throw Error(Errc::UnknownGenerator, "psi: letter outside the Chevalley alphabet");
        }
    };
    auto sig = [tgt](int i) { return el_sigma(tgt, i); };
    return GeneratorMap(src, tgt, "psi", letter, sig);
}

GeneratorMap phi_map(Family f, int n) {
    return phi_like(make_ctx(f, n, false, Style::Drinfeld, true),
                    make_ctx(f, n, true, Style::Drinfeld, true), "phi");
}

GeneratorMap phi_inverse(Family f, int n) {
    return phi_like(make_ctx(f, n, true, Style::Drinfeld, true),
                    make_ctx(f, n, false, Style::Drinfeld, true), "phi-inv");
}

GeneratorMap rho_map(Family f, int n) {
    return loop_realisation(make_ctx(f, n, true, Style::Chevalley, true),
                            make_ctx(f, n, true, Style::Drinfeld, true), "rho");
}

PsiCap psi_cap(Family f, int n) {
    GeneratorMap direct = loop_realisation(make_ctx(f, n, false, Style::Chevalley, false),
                                           make_ctx(f, n, false, Style::Drinfeld, false), "Psi");
    GeneratorMap eta = smash_embedding(direct.source());
    GeneratorMap upsilon = smash_restriction(make_ctx(f, n, false, Style::Drinfeld, true));
    GeneratorMap composed =
        compose(upsilon, compose(phi_inverse(f, n), compose(rho_map(f, n), compose(psi_map(f, n), eta))),
                "Psi-composed");
    return {std::move(direct), std::move(composed)};
}

Element sigma_tail_word(const CtxPtr& ctx, int j) {
    const int n = ctx->datum.n;
    if (j < 1 || j > n + 1) throw Error(Errc::OutOfRange, "sigma tail start outside 1..n+1");
    Element w = Element::unit(ctx);
    for (int k = j; k <= n; ++k) w *= el_sigma(ctx, k);
    return w;
}

GeneratorMap rescale_to_standard(const CtxPtr& ctx) {
    const CartanDatum d = ctx->datum;
    const Scalar bd = d.dual
                          ? UnitMonomial::t_half_power(2).scalar() -
                                UnitMonomial::t_half_power(-2).scalar()
                          : Scalar::q_power(1) - Scalar::q_power(-1);

    auto letter = [=, style = ctx->style](const GenSymbol& g) -> Element {
        Element base = Element::generator(ctx, g);
        if (style == Style::Chevalley) {
            if (g.kind == Sym::E)
                return q_int(d.zeta[static_cast<std::size_t>(g.node)],
                             d.base(g.node).scalar()) *
                       base;
            return base;
        }
        if (g.kind == Sym::Kap || g.kind == Sym::XiP) {
            const Scalar bi = d.base(g.node).scalar();
            return (bd / (bi - bi.inverse())) * base;
        }
        return base;
    };
    auto sig = [ctx](int i) { return el_sigma(ctx, i); };
    return GeneratorMap(ctx, ctx, "rescale", letter, sig);
}

std::optional<UnitMonomial> proportionality_unit(const Element& value, const Element& reference) {
    if (!(*value.ctx() == *reference.ctx())) return std::nullopt;
    if (value.is_zero() || reference.is_zero()) return std::nullopt;
    if (value.term_count() != reference.term_count()) return std::nullopt;
    std::optional<UnitMonomial> unit;
    auto it = value.terms().begin();
    for (const auto& [m, c] : reference.terms()) {
        if (!(it->first == m)) return std::nullopt;
        auto u = UnitMonomial::from_scalar(it->second / c);
        if (!u) return std::nullopt;
        if (unit && !(u->unit == unit->unit && u->half == unit->half)) return std::nullopt;
        unit = u;
        ++it;
    }
    return unit;
}

} // namespace qasa
