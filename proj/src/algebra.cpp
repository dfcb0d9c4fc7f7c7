/**
 * @file algebra.cpp
 * @brief Free twisted-word arithmetic: multiplication, brackets, adjoint
 *        operators and symmetrization.
 */
#include "qasa/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace qasa {

namespace {

/// Push one letter, merging adjacent powers of the same Cartan letter.
void push_letter(std::vector<GenSymbol>& out, const GenSymbol& g) {
    if (is_group_like(g.kind) && !out.empty()) {
        GenSymbol& b = out.back();
        if (b.kind == g.kind && b.node == g.node) {
            b.arg += g.arg;
            if (b.arg == 0) out.pop_back();
            return;
        }
    }
    if (is_group_like(g.kind) && g.arg == 0) return;
    out.push_back(g);
}

std::vector<GenSymbol> join_words(std::span<const GenSymbol> a, std::span<const GenSymbol> b) {
    std::vector<GenSymbol> out(a.begin(), a.end());
    out.reserve(a.size() + b.size());
    for (const auto& g : b) push_letter(out, g);
    return out;
}

void check_same_ctx(const Element& a, const Element& b) {
    if (!(*a.ctx() == *b.ctx()))
        throw Error(Errc::MixedAlgebra, "operands live in different algebras: " +
                                            a.ctx()->name() + " vs " + b.ctx()->name());
}

/// (-1)^{sum over set bits i of (alpha_i, mu)}.
int sigma_crossing_sign(const AlgebraCtx& ctx, std::uint32_t sigma, std::span<const long> mu) {
    long s = 0;
    for (int i = 0; i <= ctx.datum.n; ++i)
        if (sigma & (1u << i)) s += ctx.pair_with_node(i, mu);
    return (s % 2 == 0) ? 1 : -1;
}

} // namespace

std::string AlgebraCtx::name() const {
    std::string s = datum.dual ? "U_t[" : "U_q[";
    s += datum.name();
    s += "], n=" + std::to_string(datum.n);
    s += style == Style::Chevalley ? ", chevalley" : ", drinfeld";
    if (smash) s += ", smash";
    return s;
}

CtxPtr make_ctx(Family f, int n, bool dual, Style style, bool smash) {
    return make_ctx(build_datum(f, n, dual), style, smash);
}

CtxPtr make_ctx(const CartanDatum& datum, Style style, bool smash) {
    auto ctx = std::make_shared<AlgebraCtx>();
    ctx->datum = datum;
    ctx->style = style;
    ctx->smash = smash;
    return ctx;
}

int letter_parity(const AlgebraCtx& ctx, const GenSymbol& g) {
    switch (g.kind) {
        case Sym::E:
        case Sym::F:
        case Sym::XiP:
        case Sym::XiM:
            return ctx.datum.is_odd_node(g.node) ? 1 : 0;
        default:
            return 0;
    }
}

void add_letter_weight(const AlgebraCtx& ctx, const GenSymbol& g, std::vector<long>& wt) {
    (void)ctx;
    switch (g.kind) {
        case Sym::E:
        case Sym::XiP:
            wt[static_cast<std::size_t>(g.node)] += 1;
            break;
        case Sym::F:
        case Sym::XiM:
            wt[static_cast<std::size_t>(g.node)] -= 1;
            break;
        default:
            break;
    }
}

std::vector<long> word_weight(const AlgebraCtx& ctx, std::span<const GenSymbol> w) {
    std::vector<long> wt(static_cast<std::size_t>(ctx.datum.n) + 1, 0);
    for (const auto& g : w) add_letter_weight(ctx, g, wt);
    return wt;
}

Element Element::unit(CtxPtr ctx, Scalar c) {
    Element e(std::move(ctx));
    e.add_term(Monomial{}, std::move(c));
    return e;
}

Element Element::from_monomial(CtxPtr ctx, Monomial m, Scalar c) {
    Element e(std::move(ctx));
    e.add_term(std::move(m), std::move(c));
    return e;
}

Element Element::generator(CtxPtr ctx, GenSymbol g) {
    const AlgebraCtx& c = *ctx;
    const int n = c.datum.n;
    auto need_style = [&](Style s, const char* what) {
        if (c.style != s)
            throw Error(Errc::UnknownGenerator,
                        std::string(what) + " is not a generator of " + c.name());
    };
    switch (g.kind) {
        case Sym::E:
        case Sym::F:
            need_style(Style::Chevalley, "e/f");
            if (g.node < 0 || g.node > n) throw Error(Errc::OutOfRange, "node out of range");
            g.arg = 0;
            break;
        case Sym::K:
            need_style(Style::Chevalley, "k");
            if (g.node < 0 || g.node > n) throw Error(Errc::OutOfRange, "node out of range");
            break;
        case Sym::XiP:
        case Sym::XiM:
            need_style(Style::Drinfeld, "xi");
            if (g.node < 1 || g.node > n) throw Error(Errc::OutOfRange, "node out of range");
            if (!c.datum.in_loop_set(g.node, g.arg))
                throw Error(Errc::OutOfRange, "loop index outside the loop set");
            break;
        case Sym::Kap:
            need_style(Style::Drinfeld, "kappa");
            if (g.node < 1 || g.node > n) throw Error(Errc::OutOfRange, "node out of range");
            if (g.arg == 0 || !c.datum.in_loop_set(g.node, g.arg))
                throw Error(Errc::OutOfRange, "loop index outside the loop set");
            break;
        case Sym::GN:
            need_style(Style::Drinfeld, "gamma_i");
            if (g.node < 1 || g.node > n) throw Error(Errc::OutOfRange, "node out of range");
            break;
        case Sym::GH:
            need_style(Style::Drinfeld, "gamma^{1/2}");
            g.node = 0;
            break;
    }
    if (is_group_like(g.kind) && g.arg == 0) return unit(std::move(ctx));
    Monomial m;
    m.word.push_back(g);
    return from_monomial(std::move(ctx), std::move(m));
}

Element Element::sigma(CtxPtr ctx, int i) {
    if (!ctx->smash)
        throw Error(Errc::UnknownGenerator, "sigma in a non-smash algebra " + ctx->name());
    if (i < 1 || i > ctx->datum.n) throw Error(Errc::OutOfRange, "sigma node out of range");
    Monomial m;
    m.sigma = 1u << i;
    return from_monomial(std::move(ctx), std::move(m));
}

void Element::add_term(Monomial m, Scalar c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Element Element::operator-() const {
    Element r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Element operator+(const Element& a, const Element& b) {
    check_same_ctx(a, b);
    Element r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

Element operator-(const Element& a, const Element& b) {
    check_same_ctx(a, b);
    Element r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

Element operator*(const Scalar& c, const Element& a) {
    Element r(a.ctx());
    if (c.is_zero()) return r;
    for (const auto& [m, s] : a.terms()) r.add_term(m, c * s);
    return r;
}

Element operator/(const Element& a, const Scalar& c) {
    if (c.is_zero()) throw Error(Errc::DivideByZero, "element divided by zero scalar");
    return c.inverse() * a;
}

Element operator*(const Element& a, const Element& b) {
    check_same_ctx(a, b);
    const AlgebraCtx& ctx = *a.ctx();
    Element r(a.ctx());
    for (const auto& [ma, ca] : a.terms()) {
        const std::vector<long> wa = word_weight(ctx, ma.word);
        for (const auto& [mb, cb] : b.terms()) {
            int sign = 1;
            if (mb.sigma != 0) sign = sigma_crossing_sign(ctx, mb.sigma, wa);
            Monomial m;
            m.sigma = ma.sigma ^ mb.sigma;
            m.word = join_words(ma.word, mb.word);
            m.cpow = ma.cpow + mb.cpow;
            Scalar c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(std::move(m), std::move(c));
        }
    }
    return r;
}

bool operator==(const Element& a, const Element& b) {
    return *a.ctx() == *b.ctx() && a.terms() == b.terms();
}

std::optional<int> Element::parity() const {
    std::optional<int> p;
    for (const auto& [m, c] : terms_) {
        int pm = 0;
        for (const auto& g : m.word) pm ^= letter_parity(*ctx_, g);
        if (!p) p = pm;
        else if (*p != pm) return std::nullopt;
    }
    if (!p) return 0; // zero element: even by convention
    return p;
}

std::optional<std::vector<long>> Element::weight() const {
    std::optional<std::vector<long>> w;
    for (const auto& [m, c] : terms_) {
        auto wm = word_weight(*ctx_, m.word);
        if (!w) w = std::move(wm);
        else if (*w != wm) return std::nullopt;
    }
    if (!w) w = std::vector<long>(static_cast<std::size_t>(ctx_->datum.n) + 1, 0);
    return w;
}

std::optional<long> Element::loop_degree() const {
    std::optional<long> d;
    for (const auto& [m, c] : terms_) {
        long dm = 0;
        for (const auto& g : m.word)
            if (g.kind == Sym::XiP || g.kind == Sym::XiM || g.kind == Sym::Kap) dm += g.arg;
        if (!d) d = dm;
        else if (*d != dm) return std::nullopt;
    }
    if (!d) d = 0;
    return d;
}

long Element::max_length() const {
    long len = 0;
    for (const auto& [m, c] : terms_) len = std::max(len, m.length());
    return len;
}

Element super_bracket(const Element& x, const Element& y, const Scalar& a) {
    check_same_ctx(x, y);
    auto px = x.parity(), py = y.parity();
    if (!px || !py)
        throw Error(Errc::InhomogeneousParity, "bracket of parity-inhomogeneous elements");
    Scalar c = a;
    if (*px == 1 && *py == 1) c = -c;
    return x * y - c * (y * x);
}

namespace {

Element ad_letter(const CtxPtr& ctx, Sym chev, int i) {
    if (ctx->style == Style::Chevalley)
        return Element::generator(ctx, GenSymbol{chev, static_cast<std::int16_t>(i), 0});
    return Element::generator(
        ctx, GenSymbol{chev == Sym::E ? Sym::XiP : Sym::XiM, static_cast<std::int16_t>(i), 0});
}

Scalar conj_factor(const AlgebraCtx& ctx, int i, std::span<const long> mu, int dir) {
    const long p = ctx.pair_with_node(i, mu) * dir;
    // b^{(alpha_i, mu)} with b = q (super side) or b = t (even side).
    if (ctx.datum.dual) return UnitMonomial::t_half_power(static_cast<int>(2 * p)).scalar();
    return Scalar::q_power(static_cast<int>(p));
}

Element cartan_letter(const CtxPtr& ctx, int i, int pow) {
    if (ctx->style == Style::Chevalley)
        return Element::generator(ctx, GenSymbol{Sym::K, static_cast<std::int16_t>(i),
                                                 pow});
    return Element::generator(ctx, GenSymbol{Sym::GN, static_cast<std::int16_t>(i), pow});
}

Element ad_impl(int i, const Element& x, Sym chev) {
    const CtxPtr& ctx = x.ctx();
    auto mu = x.weight();
    if (!mu) throw Error(Errc::InhomogeneousWeight, "adjoint of weight-inhomogeneous element");
    Element gen = ad_letter(ctx, chev, i);
    Scalar a = conj_factor(*ctx, i, *mu, chev == Sym::E ? +1 : -1);
    return super_bracket(gen, x, a);
}

Element ad_conj_impl(int i, const Element& x, Sym chev) {
    const CtxPtr& ctx = x.ctx();
    auto px = x.parity();
    if (!px) throw Error(Errc::InhomogeneousParity, "adjoint of parity-inhomogeneous element");
    Element gen = ad_letter(ctx, chev, i);
    const int dir = chev == Sym::E ? +1 : -1;
    Element conj = cartan_letter(ctx, i, dir) * x * cartan_letter(ctx, i, -dir);
    Element rhs = conj * gen;
    const int pg = letter_parity(*ctx, GenSymbol{chev, static_cast<std::int16_t>(i), 0});
    Scalar s = Scalar::one();
    if (pg == 1 && *px == 1) s = -s;
    return gen * x - s * rhs;
}

} // namespace

Element ad_e(int i, const Element& x) { return ad_impl(i, x, Sym::E); }
Element ad_f(int i, const Element& x) { return ad_impl(i, x, Sym::F); }
Element ad_e_conj(int i, const Element& x) { return ad_conj_impl(i, x, Sym::E); }
Element ad_f_conj(int i, const Element& x) { return ad_conj_impl(i, x, Sym::F); }

Element sym_over(std::span<const long> values,
                 const std::function<Element(std::span<const long>)>& fn) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<long> perm(values.size());
    std::optional<Element> acc;
    do {
        for (std::size_t k = 0; k < idx.size(); ++k) perm[k] = values[idx[k]];
        Element term = fn(perm);
        if (!acc) acc = term;
        else *acc += term;
    } while (std::next_permutation(idx.begin(), idx.end()));
    if (!acc) throw Error(Errc::OutOfRange, "symmetrization over an empty index list");
    return *acc;
}

Element el_e(const CtxPtr& ctx, int i) {
    return Element::generator(ctx, GenSymbol{Sym::E, static_cast<std::int16_t>(i), 0});
}
Element el_f(const CtxPtr& ctx, int i) {
    return Element::generator(ctx, GenSymbol{Sym::F, static_cast<std::int16_t>(i), 0});
}
Element el_k(const CtxPtr& ctx, int i, int pow) {
    return Element::generator(ctx, GenSymbol{Sym::K, static_cast<std::int16_t>(i), pow});
}
Element el_xi(const CtxPtr& ctx, int sign, int i, long r) {
    return Element::generator(ctx, GenSymbol{sign >= 0 ? Sym::XiP : Sym::XiM,
                                             static_cast<std::int16_t>(i),
                                             static_cast<std::int32_t>(r)});
}
Element el_kap(const CtxPtr& ctx, int i, long r) {
    return Element::generator(ctx, GenSymbol{Sym::Kap, static_cast<std::int16_t>(i),
                                             static_cast<std::int32_t>(r)});
}
Element el_gn(const CtxPtr& ctx, int i, int pow) {
    return Element::generator(ctx, GenSymbol{Sym::GN, static_cast<std::int16_t>(i), pow});
}
Element el_gh(const CtxPtr& ctx, int half_pow) {
    return Element::generator(ctx, GenSymbol{Sym::GH, 0, half_pow});
}
Element el_sigma(const CtxPtr& ctx, int i) { return Element::sigma(ctx, i); }

Element el_c(const CtxPtr& ctx, int pow) {
    Monomial m;
    m.cpow = pow;
    return Element::from_monomial(ctx, std::move(m));
}

} // namespace qasa
