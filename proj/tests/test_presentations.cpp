/**
 * @file test_presentations.cpp
 * @brief Relation catalogues and the loop-Cartan exponential.
 *
 * The kappa_hat expansion is checked against an independent oracle: a
 * truncated power series over *commuting* variables x_1..x_N, exponentiated
 * term by term (sum S^p / p!).  Because kappa_hat writes its letters in a
 * fixed canonical order (group letter first, then loop Cartans ascending by
 * absolute loop index), the commutative oracle maps onto exactly one
 * noncommutative word per monomial and the comparison is exact.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qasa/algebra.hpp"
#include "qasa/error.hpp"
#include "qasa/parser.hpp"
#include "qasa/presentations.hpp"

using namespace qasa;

namespace {

CtxPtr chev(Family f, int n, bool dual = false, bool smash = false) {
    return make_ctx(f, n, dual, Style::Chevalley, smash);
}
CtxPtr drin(Family f, int n, bool dual = false, bool smash = false) {
    return make_ctx(f, n, dual, Style::Drinfeld, smash);
}

const RelInstance* find_rel(const Catalogue& cat, const std::string& id) {
    for (const auto& r : cat.rels)
        if (r.id == id) return &r;
    return nullptr;
}

bool has_rel(const Catalogue& cat, const std::string& id) { return find_rel(cat, id) != nullptr; }

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::BudgetExceeded; // unreachable sentinel for "did not throw"
}

// Commutative truncated-series model ----------------------------------------
//
// A polynomial maps an exponent vector (slot p-1 = exponent of x_p) to an
// exact scalar; a series holds the polynomial coefficient of u^{-m} for
// m = 0..N.  All arithmetic is exact.

using Expo = std::vector<int>;
using Poly = std::map<Expo, Scalar>;
using Series = std::vector<Poly>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Expo e = ea;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
            auto [it, fresh] = out.try_emplace(std::move(e), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

Series series_mul(const Series& a, const Series& b) {
    Series out(a.size());
    for (std::size_t m = 0; m < out.size(); ++m)
        for (std::size_t k = 0; k <= m; ++k) {
            Poly prod = poly_mul(a[k], b[m - k]);
            for (auto& [e, c] : prod) {
                auto [it, fresh] = out[m].try_emplace(e, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second.is_zero()) out[m].erase(it);
                }
            }
        }
    return out;
}

Series unit_series(int order) {
    Series s(static_cast<std::size_t>(order) + 1);
    s[0].emplace(Expo(static_cast<std::size_t>(order), 0), Scalar::one());
    return s;
}

/// exp(S) = sum_p S^p / p! truncated at the series order; needs S[0] = 0.
Series series_exp(const Series& s) {
    REQUIRE(s[0].empty());
    const int order = static_cast<int>(s.size()) - 1;
    Series acc = unit_series(order);
    Series power = unit_series(order);
    for (int p = 1; p <= order; ++p) {
        power = series_mul(power, s);
        for (auto& poly : power)
            for (auto& [e, c] : poly) c /= Scalar::from_int(p);
        for (std::size_t m = 0; m < acc.size(); ++m)
            for (const auto& [e, c] : power[m]) {
                auto [it, fresh] = acc[m].try_emplace(e, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second.is_zero()) acc[m].erase(it);
                }
            }
    }
    return acc;
}

/// Plain deformation base difference of the side: q - q^{-1} or t - t^{-1}.
Scalar plain_diff(const CartanDatum& d) {
    if (d.dual)
        return UnitMonomial::t_half_power(2).scalar() - UnitMonomial::t_half_power(-2).scalar();
    return Scalar::q_power(1) - Scalar::q_power(-1);
}

/// The argument series of the exponential: x * sum_r x_r u^{-r} over loop
/// indices r >= 1 with (i, sign*r) in the loop set; x = sign * (b - b^{-1}).
Series kappa_argument(const CartanDatum& d, int sign, int i, int order, bool negate = false) {
    Scalar x = plain_diff(d);
    if (sign < 0) x = -x;
    if (negate) x = -x;
    Series s(static_cast<std::size_t>(order) + 1);
    for (int r = 1; r <= order; ++r) {
        if (!d.in_loop_set(i, sign * r)) continue;
        Expo e(static_cast<std::size_t>(order), 0);
        e[static_cast<std::size_t>(r) - 1] = 1;
        s[static_cast<std::size_t>(r)].emplace(std::move(e), x);
    }
    return s;
}

/// Oracle: gamma_i^{sign} times the u^{-|m|} coefficient of the exponential,
/// with the commutative monomials written in the canonical letter order.
Element oracle_kappa_hat(const CtxPtr& ctx, int sign, int i, long m, int order) {
    const CartanDatum& d = ctx->datum;
    if ((sign > 0 && m < 0) || (sign < 0 && m > 0)) return Element::zero(ctx);
    const Series expo = series_exp(kappa_argument(d, sign, i, order));
    Element total = Element::zero(ctx);
    for (const auto& [e, c] : expo[static_cast<std::size_t>(std::labs(m))]) {
        Element word = el_gn(ctx, i, sign);
        for (std::size_t p = 0; p < e.size(); ++p)
            for (int rep = 0; rep < e[p]; ++rep)
                word *= el_kap(ctx, i, sign * static_cast<long>(p + 1));
        total += c * word;
    }
    return total;
}

/// Map a kappa_hat value into the commutative model; checks the group-letter
/// prefix carries exactly gamma_i^{sign} and every loop letter matches sign.
Poly to_poly(const Element& e, int sign, int i, int order) {
    Poly out;
    for (const auto& [mono, c] : e.terms()) {
        REQUIRE(mono.sigma == 0u);
        long gpow = 0;
        Expo ex(static_cast<std::size_t>(order), 0);
        for (const auto& g : mono.word) {
            if (g.kind == Sym::GN) {
                REQUIRE(g.node == i);
                gpow += g.arg;
            } else {
                REQUIRE(g.kind == Sym::Kap);
                REQUIRE(g.node == i);
                REQUIRE(g.arg * sign > 0);
                const long r = std::labs(g.arg);
                REQUIRE(r <= order);
                ex[static_cast<std::size_t>(r) - 1] += 1;
            }
        }
        REQUIRE(gpow == sign);
        auto [it, fresh] = out.try_emplace(std::move(ex), c);
        if (!fresh) it->second += c;
    }
    return out;
}

std::vector<CtxPtr> drinfeld_grid(int nmax) {
    std::vector<CtxPtr> out;
    for (Family f : {Family::Osp1, Family::Sl2, Family::Osp2})
        for (bool dual : {false, true})
            for (int n = 1; n <= nmax; ++n) out.push_back(drin(f, n, dual));
    return out;
}

} // namespace

TEST_CASE("loop Cartan exponential matches a commutative series oracle") {
    const int order = 5;
    for (const auto& ctx : drinfeld_grid(2))
        for (int i = 1; i <= ctx->datum.n; ++i)
            for (int sign : {1, -1})
                for (long mm = 0; mm <= order; ++mm) {
                    const long m = sign * mm;
                    CAPTURE(ctx->name());
                    CAPTURE(i);
                    CAPTURE(sign);
                    CAPTURE(m);
                    CHECK(kappa_hat(ctx, sign, i, m, order) ==
                          oracle_kappa_hat(ctx, sign, i, m, order));
                    // The opposite-sign coefficient index is identically zero.
                    if (mm > 0)
                        CHECK(kappa_hat(ctx, sign, i, -m, order).is_zero());
                }
}

TEST_CASE("loop Cartan exponential inverts against the negated series") {
    const int order = 5;
    for (const auto& ctx : drinfeld_grid(2)) {
        const CartanDatum& d = ctx->datum;
        for (int i = 1; i <= d.n; ++i)
            for (int sign : {1, -1}) {
                CAPTURE(ctx->name());
                CAPTURE(i);
                CAPTURE(sign);
                Series wrapped(static_cast<std::size_t>(order) + 1);
                for (long m = 0; m <= order; ++m)
                    wrapped[static_cast<std::size_t>(m)] =
                        to_poly(kappa_hat(ctx, sign, i, sign * m, order), sign, i, order);
                const Series inv =
                    series_exp(kappa_argument(d, sign, i, order, /*negate=*/true));
                CHECK(series_mul(wrapped, inv) == unit_series(order));
            }
    }
}

TEST_CASE("loop Cartan exponential small values and error codes") {
    auto ctx = drin(Family::Osp1, 1);

    CHECK(kappa_hat(ctx, 1, 1, 0, 5) == el_gn(ctx, 1));
    CHECK(kappa_hat(ctx, -1, 1, 0, 5) == el_gn(ctx, 1, -1));
    CHECK(kappa_hat(ctx, 1, 1, -2, 5).is_zero());
    CHECK(kappa_hat(ctx, -1, 1, 2, 5).is_zero());

    CHECK(kappa_hat(ctx, 1, 1, 1, 5) ==
          parse_element(ctx, "(q - q^(-1))*g[1]*kap[1,1]"));
    CHECK(kappa_hat(ctx, 1, 1, 2, 5) ==
          parse_element(ctx, "(q - q^(-1))*g[1]*kap[1,2] + "
                             "((q - q^(-1))*(q - q^(-1))/2)*g[1]*kap[1,1]*kap[1,1]"));
    CHECK(kappa_hat(ctx, -1, 1, -1, 5) ==
          parse_element(ctx, "-(q - q^(-1))*g-[1]*kap[1,-1]"));

    // Dual side: the base difference becomes t - t^{-1} = q^{-1} - q.
    auto dual = drin(Family::Osp1, 1, /*dual=*/true);
    CHECK(kappa_hat(dual, 1, 1, 1, 5) ==
          parse_element(dual, "(q^(-1) - q)*g[1]*kap[1,1]"));

    // Restricted loop set: node below the top in the even-indexed family.
    auto osp2 = drin(Family::Osp2, 2);
    CHECK(kappa_hat(osp2, 1, 1, 1, 5).is_zero());
    CHECK(kappa_hat(osp2, 1, 1, 3, 5).is_zero());
    CHECK(kappa_hat(osp2, 1, 1, 2, 5) ==
          parse_element(osp2, "(q - q^(-1))*g[1]*kap[1,2]"));
    CHECK(kappa_hat(osp2, 1, 1, 4, 5) ==
          parse_element(osp2, "(q - q^(-1))*g[1]*kap[1,4] + "
                              "((q - q^(-1))*(q - q^(-1))/2)*g[1]*kap[1,2]*kap[1,2]"));
    CHECK(kappa_hat(osp2, 1, 2, 1, 5) ==
          parse_element(osp2, "(q - q^(-1))*g[2]*kap[2,1]"));

    CHECK(code_of([&] { kappa_hat(ctx, 1, 1, 6, 5); }) == Errc::OrderExceeded);
    CHECK(code_of([&] { kappa_hat(ctx, -1, 1, -6, 5); }) == Errc::OrderExceeded);
    CHECK(code_of([&] { kappa_hat(ctx, 2, 1, 0, 5); }) == Errc::OutOfRange);
    CHECK(code_of([&] { kappa_hat(ctx, 1, 0, 0, 5); }) == Errc::OutOfRange);
    CHECK(code_of([&] { kappa_hat(chev(Family::Osp1, 1), 1, 1, 0, 5); }) ==
          Errc::MixedAlgebra);
}

TEST_CASE("chevalley catalogue instance counts") {
    auto cat = chevalley_relations(chev(Family::Osp1, 2));
    CHECK(cat.count_prefix("kinv:") == 3);
    CHECK(cat.count_prefix("kk:") == 3);
    CHECK(cat.count_prefix("ke:") == 9);
    CHECK(cat.count_prefix("kf:") == 9);
    CHECK(cat.count_prefix("ef:") == 9);
    CHECK(cat.count_prefix("serre-e:") == 6);
    CHECK(cat.count_prefix("serre-f:") == 6);
    CHECK(cat.rels.size() == 45);

    auto smashed = chevalley_relations(chev(Family::Osp1, 2, false, /*smash=*/true));
    CHECK(smashed.count_prefix("sig2:") == 2);
    CHECK(smashed.count_prefix("sig-e:") == 6);
    CHECK(smashed.count_prefix("sig-f:") == 6);
    CHECK(smashed.count_prefix("sig-k:") == 6);
    CHECK(smashed.rels.size() == 65);

    // Ids are unique across the catalogue.
    std::set<std::string> ids;
    for (const auto& r : smashed.rels) ids.insert(r.id);
    CHECK(ids.size() == smashed.rels.size());
}

TEST_CASE("chevalley catalogue golden instances") {
    auto ctx = chev(Family::Osp1, 1);
    auto cat = chevalley_relations(ctx);

    const RelInstance* ke = find_rel(cat, "ke:i=0,j=1");
    REQUIRE(ke != nullptr);
    CHECK(ke->value == parse_element(ctx, "k[0]*e[1]*k-[0] - q^(-2)*e[1]"));

    const RelInstance* kf = find_rel(cat, "kf:i=0,j=1");
    REQUIRE(kf != nullptr);
    CHECK(kf->value == parse_element(ctx, "k[0]*f[1]*k-[0] - q^(2)*f[1]"));

    // Odd node: anticommutator against the zeta-adjusted denominator.
    const RelInstance* ef11 = find_rel(cat, "ef:i=1,j=1");
    REQUIRE(ef11 != nullptr);
    CHECK(ef11->value ==
          parse_element(ctx, "e[1]*f[1] + f[1]*e[1] - (k[1] - k-[1])/(q - q^(-1))"));

    // Even node: plain commutator, base q_0 = q^2.
    const RelInstance* ef00 = find_rel(cat, "ef:i=0,j=0");
    REQUIRE(ef00 != nullptr);
    CHECK(ef00->value ==
          parse_element(ctx, "e[0]*f[0] - f[0]*e[0] - (k[0] - k-[0])/(q^(2) - q^(-2))"));

    const RelInstance* ef01 = find_rel(cat, "ef:i=0,j=1");
    REQUIRE(ef01 != nullptr);
    CHECK(ef01->value == parse_element(ctx, "e[0]*f[1] - f[1]*e[0]"));

    // l = 2 row in the literal Cartan-conjugation form.
    const RelInstance* s01 = find_rel(cat, "serre-e:i=0,j=1");
    REQUIRE(s01 != nullptr);
    CHECK(s01->value ==
          parse_element(ctx, "e[0]*e[0]*e[1] - e[0]*k[0]*e[1]*k-[0]*e[0]"
                             " - k[0]*e[0]*e[1]*k-[0]*e[0]"
                             " + k[0]*k[0]*e[1]*k-[0]*e[0]*k-[0]*e[0]"));

    // l = 1 row between orthogonal nodes (rank two).
    auto ctx2 = chev(Family::Osp1, 2);
    auto cat2 = chevalley_relations(ctx2);
    const RelInstance* s02 = find_rel(cat2, "serre-e:i=0,j=2");
    REQUIRE(s02 != nullptr);
    CHECK(s02->value == parse_element(ctx2, "e[0]*e[2] - k[0]*e[2]*k-[0]*e[0]"));
    const RelInstance* sf02 = find_rel(cat2, "serre-f:i=0,j=2");
    REQUIRE(sf02 != nullptr);
    CHECK(sf02->value == parse_element(ctx2, "f[0]*f[2] - k-[0]*f[2]*k[0]*f[0]"));
}

TEST_CASE("current catalogue instance counts in a rank-one window") {
    // Family with the excluded top-node same-sign pair and the higher rows.
    auto o1 = drinfeld_relations(drin(Family::Osp1, 1), 2);
    CHECK(o1.window == 2);
    CHECK(o1.count_prefix("ghinv:") == 1);
    CHECK(o1.count_prefix("ginv:") == 1);
    CHECK(o1.count_prefix("ghc-g:") == 1);
    CHECK(o1.count_prefix("ghc-x+:") == 5);
    CHECK(o1.count_prefix("ghc-x-:") == 5);
    CHECK(o1.count_prefix("ghc-k:") == 4);
    CHECK(o1.count_prefix("gg:") == 0);
    CHECK(o1.count_prefix("gk:") == 4);
    CHECK(o1.count_prefix("gx+:") == 5);
    CHECK(o1.count_prefix("gx-:") == 5);
    CHECK(o1.count_prefix("hx+:") == 14);
    CHECK(o1.count_prefix("hx-:") == 14);
    CHECK(o1.count_prefix("hh:") == 16);
    CHECK(o1.count_prefix("xx:") == 19);
    CHECK(o1.count_prefix("xs") == 0);
    CHECK(o1.count_prefix("sC1+:") == 20);
    CHECK(o1.count_prefix("sC1-:") == 20);
    CHECK(o1.count_prefix("sC2+:") == 6);
    CHECK(o1.count_prefix("sC2-:") == 6);
    CHECK(o1.count_prefix("sC3") == 0);
    CHECK(o1.rels.size() == 146);

    // Same skeleton on the even partner, with the dual higher-row tags.
    auto a2 = drinfeld_relations(drin(Family::Osp1, 1, true), 2);
    CHECK(a2.count_prefix("hx+:") == 14);
    CHECK(a2.count_prefix("xx:") == 19);
    CHECK(a2.count_prefix("xs") == 0);
    CHECK(a2.count_prefix("dB1+:") == 20);
    CHECK(a2.count_prefix("dB2+:") == 6);
    CHECK(a2.count_prefix("dB3") == 0);
    CHECK(a2.count_prefix("dA") == 0);
    CHECK(a2.rels.size() == 146);

    // Families that keep the top-node same-sign pair.
    auto s1 = drinfeld_relations(drin(Family::Sl2, 1), 2);
    CHECK(s1.count_prefix("xs+:") == 10);
    CHECK(s1.count_prefix("xs-:") == 10);
    CHECK(s1.count_prefix("sB") == 0);
    CHECK(s1.rels.size() == 114);

    auto o2 = drinfeld_relations(drin(Family::Osp2, 1), 2);
    CHECK(o2.count_prefix("xs+:") == 10);
    CHECK(o2.count_prefix("xs-:") == 10);
    CHECK(o2.count_prefix("sD") == 0);
    CHECK(o2.rels.size() == 114);

    auto d2 = drinfeld_relations(drin(Family::Osp2, 1, true), 2);
    CHECK(d2.count_prefix("xs+:") == 10);
    CHECK(d2.count_prefix("xs-:") == 10);
    CHECK(d2.count_prefix("dC") == 0);
    CHECK(d2.rels.size() == 114);

    auto b1 = drinfeld_relations(drin(Family::Sl2, 1, true), 2);
    CHECK(b1.count_prefix("xs+:") == 10);
    CHECK(b1.count_prefix("dA") == 0);
    CHECK(b1.rels.size() == 114);

    // Sign-group sector in the smash closure.
    auto sm = drinfeld_relations(drin(Family::Osp1, 1, false, /*smash=*/true), 2);
    CHECK(sm.count_prefix("sig2:") == 1);
    CHECK(sm.count_prefix("sig-x+:") == 5);
    CHECK(sm.count_prefix("sig-x-:") == 5);
    CHECK(sm.count_prefix("sig-g:") == 1);
    CHECK(sm.rels.size() == 158);
}

TEST_CASE("current catalogue golden instances at rank one") {
    auto ctx = drin(Family::Osp1, 1);
    auto cat = drinfeld_relations(ctx, 2);
    const std::string u111 = "q^(2) - q + q^(-1) - q^(-2)"; // loop pairing at r=1

    const RelInstance* xx = find_rel(cat, "xx:i=1,j=1,r=0,s=0");
    REQUIRE(xx != nullptr);
    CHECK(xx->value ==
          parse_element(ctx, "xi+[1,0]*xi-[1,0] + xi-[1,0]*xi+[1,0]"
                             " - (g[1] - g-[1])/(q - q^(-1))"));

    const RelInstance* xx11 = find_rel(cat, "xx:i=1,j=1,r=1,s=-1");
    REQUIRE(xx11 != nullptr);
    CHECK(xx11->value ==
          parse_element(ctx, "xi+[1,1]*xi-[1,-1] + xi-[1,-1]*xi+[1,1]"
                             " - (g^(1/2)*g^(1/2)*g[1] - g^(-1/2)*g^(-1/2)*g-[1])"
                             "/(q - q^(-1))"));

    const RelInstance* hxp = find_rel(cat, "hx+:i=1,j=1,r=1,s=0");
    REQUIRE(hxp != nullptr);
    CHECK(hxp->value ==
          parse_element(ctx, "kap[1,1]*xi+[1,0] - xi+[1,0]*kap[1,1]"
                             " - ((" + u111 + ")/(q - q^(-1)))*g^(-1/2)*xi+[1,1]"));

    const RelInstance* hxm = find_rel(cat, "hx-:i=1,j=1,r=1,s=0");
    REQUIRE(hxm != nullptr);
    CHECK(hxm->value ==
          parse_element(ctx, "kap[1,1]*xi-[1,0] - xi-[1,0]*kap[1,1]"
                             " - ((" + u111 + ")/(q - q^(-1)))*g^(1/2)*xi-[1,1]"));

    const RelInstance* hh = find_rel(cat, "hh:i=1,j=1,r=1,s=-1");
    REQUIRE(hh != nullptr);
    CHECK(hh->value ==
          parse_element(ctx, "kap[1,1]*kap[1,-1] - kap[1,-1]*kap[1,1]"
                             " - ((" + u111 + ")/((q - q^(-1))*(q - q^(-1))))"
                             "*(g^(1/2)*g^(1/2) - g^(-1/2)*g^(-1/2))"));

    // No pairing coefficient when the loop degrees do not cancel.
    const RelInstance* hh2 = find_rel(cat, "hh:i=1,j=1,r=1,s=2");
    REQUIRE(hh2 != nullptr);
    CHECK(hh2->value ==
          parse_element(ctx, "kap[1,1]*kap[1,2] - kap[1,2]*kap[1,1]"));

    const RelInstance* gx = find_rel(cat, "gx+:i=1,j=1,r=0");
    REQUIRE(gx != nullptr);
    CHECK(gx->value == parse_element(ctx, "g[1]*xi+[1,0]*g-[1] - q*xi+[1,0]"));

    const RelInstance* gxm = find_rel(cat, "gx-:i=1,j=1,r=0");
    REQUIRE(gxm != nullptr);
    CHECK(gxm->value == parse_element(ctx, "g[1]*xi-[1,0]*g-[1] - q^(-1)*xi-[1,0]"));

    const RelInstance* ghk = find_rel(cat, "ghc-k:i=1,r=2");
    REQUIRE(ghk != nullptr);
    CHECK(ghk->value ==
          parse_element(ctx, "g^(1/2)*kap[1,2] - kap[1,2]*g^(1/2)"));

    // Higher rows at the top node, odd-side bases q, q^2, q^{-3}.
    const RelInstance* c1 = find_rel(cat, "sC1+:r1=0,r2=0,r3=0");
    REQUIRE(c1 != nullptr);
    CHECK(c1->value ==
          parse_element(ctx, "6*((xi+[1,1]*xi+[1,0] + q*xi+[1,0]*xi+[1,1])*xi+[1,0]"
                             " - q^(2)*xi+[1,0]*(xi+[1,1]*xi+[1,0] + q*xi+[1,0]*xi+[1,1]))"));

    const RelInstance* c2 = find_rel(cat, "sC2+:r=0,s=0");
    REQUIRE(c2 != nullptr);
    CHECK(c2->value ==
          parse_element(ctx, "2*xi+[1,2]*xi+[1,0] + 2*q*xi+[1,0]*xi+[1,2]"
                             " - (2*q^(2) + 2*q^(-1))*xi+[1,1]*xi+[1,1]"));

    // Even-partner higher row: base t, all letters even.
    auto actx = drin(Family::Osp1, 1, true);
    auto acat = drinfeld_relations(actx, 2);
    const RelInstance* b2 = find_rel(acat, "dB2+:r=0,s=0");
    REQUIRE(b2 != nullptr);
    CHECK(b2->value ==
          parse_element(actx, "2*xi+[1,2]*xi+[1,0] + 2*q*xi+[1,0]*xi+[1,2]"
                              " - (2*q^(2) + 2*q^(-1))*xi+[1,1]*xi+[1,1]"));

    const RelInstance* b2m = find_rel(acat, "dB2-:r=0,s=0");
    REQUIRE(b2m != nullptr);
    CHECK(b2m->value ==
          parse_element(actx, "2*xi-[1,-2]*xi-[1,0] + 2*q*xi-[1,0]*xi-[1,-2]"
                              " - (2*q^(2) + 2*q^(-1))*xi-[1,-1]*xi-[1,-1]"));
}

TEST_CASE("current catalogue golden instances at rank two") {
    // Deformed row at the top node with base i*q^{1/2} and no alternating
    // sign; its even partner alternates with the same base value.
    auto sctx = drin(Family::Sl2, 2);
    auto scat = drinfeld_relations(sctx, 2);
    CHECK(scat.count_prefix("sB+:") == 175);
    CHECK(scat.count_prefix("sB-:") == 175);
    CHECK(scat.count_prefix("sA+:") == 75); // i=1, l=2: C(6,2)=15 pairs * 5 shifts
    const RelInstance* sb = find_rel(scat, "sB+:i=2,j=1,r1=0,r2=0,r3=0,s=0");
    REQUIRE(sb != nullptr);
    CHECK(sb->value ==
          parse_element(sctx,
                        "6*(xi+[1,0]*xi+[2,0]*xi+[2,0]*xi+[2,0]"
                        " + (1 - q - q^(-1))*xi+[2,0]*xi+[1,0]*xi+[2,0]*xi+[2,0]"
                        " + (1 - q - q^(-1))*xi+[2,0]*xi+[2,0]*xi+[1,0]*xi+[2,0]"
                        " + xi+[2,0]*xi+[2,0]*xi+[2,0]*xi+[1,0])"));

    auto bctx = drin(Family::Sl2, 2, true);
    auto bcat = drinfeld_relations(bctx, 2);
    const RelInstance* da = find_rel(bcat, "dA+:i=2,j=1,r1=0,r2=0,r3=0,s=0");
    REQUIRE(da != nullptr);
    CHECK(da->value ==
          parse_element(bctx,
                        "6*(xi+[1,0]*xi+[2,0]*xi+[2,0]*xi+[2,0]"
                        " - (1 - q - q^(-1))*xi+[2,0]*xi+[1,0]*xi+[2,0]*xi+[2,0]"
                        " + (1 - q - q^(-1))*xi+[2,0]*xi+[2,0]*xi+[1,0]*xi+[2,0]"
                        " - xi+[2,0]*xi+[2,0]*xi+[2,0]*xi+[1,0])"));

    // Restricted loop set: no instance may mention an odd index below the
    // top node, and the pairing coefficient vanishing keeps the commutator.
    auto octx = drin(Family::Osp2, 2);
    auto ocat = drinfeld_relations(octx, 3);
    CHECK(!has_rel(ocat, "gx+:i=1,j=1,r=1"));
    CHECK(!has_rel(ocat, "hx+:i=1,j=1,r=1,s=0"));
    CHECK(!has_rel(ocat, "hx+:i=2,j=1,r=1,s=1"));
    CHECK(!has_rel(ocat, "ghc-k:i=1,r=1"));
    const RelInstance* hx0 = find_rel(ocat, "hx+:i=2,j=1,r=1,s=0");
    REQUIRE(hx0 != nullptr);
    CHECK(hx0->value == parse_element(octx, "kap[2,1]*xi+[1,0] - xi+[1,0]*kap[2,1]"));

    // Shift-two same-sign pair across adjacent nodes, the two-term form.
    const RelInstance* xs12 = find_rel(ocat, "xs+:i=1,j=2,r=0,s=0");
    REQUIRE(xs12 != nullptr);
    CHECK(xs12->value ==
          parse_element(octx, "xi+[1,2]*xi+[2,0] - q^(-1)*xi+[2,0]*xi+[1,2]"
                              " + xi+[2,2]*xi+[1,0] - q^(-1)*xi+[1,0]*xi+[2,2]"));

    // Top-node pair keeps shift one.
    CHECK(has_rel(ocat, "xs+:i=2,j=2,r=0,s=1"));

    // Closing row through the neighbour node.
    const RelInstance* sd = find_rel(ocat, "sD+:k=0,r=0,s=0");
    REQUIRE(sd != nullptr);
    CHECK(sd->value ==
          parse_element(octx,
                        "2*((xi+[1,0]*xi+[2,1] - q*xi+[2,1]*xi+[1,0])*xi+[2,0]"
                        " + xi+[2,0]*(xi+[1,0]*xi+[2,1] - q*xi+[2,1]*xi+[1,0]))"));

    // Even partner of the restricted family: r <-> s symmetrised form with
    // both currents of the first node leading, and the same loop-set filter.
    auto dctx = drin(Family::Osp2, 2, true);
    auto dcat = drinfeld_relations(dctx, 3);
    CHECK(!has_rel(dcat, "xs+:i=1,j=2,r=0,s=1")); // second slot forces s even
    const RelInstance* xsd = find_rel(dcat, "xs+:i=1,j=2,r=0,s=0");
    REQUIRE(xsd != nullptr);
    CHECK(xsd->value ==
          parse_element(dctx, "2*xi+[1,2]*xi+[2,0] + 2*q^(-1)*xi+[2,0]*xi+[1,2]"));
    const RelInstance* xsd21 = find_rel(dcat, "xs+:i=2,j=1,r=0,s=0");
    REQUIRE(xsd21 != nullptr);
    CHECK(xsd21->value ==
          parse_element(dctx, "2*xi+[2,2]*xi+[1,0] + 2*q^(-1)*xi+[1,0]*xi+[2,2]"));

    const RelInstance* dc = find_rel(dcat, "dC+:k=0,r=0,s=0");
    REQUIRE(dc != nullptr);
    CHECK(dc->value ==
          parse_element(dctx,
                        "2*((xi+[1,0]*xi+[2,1] + q*xi+[2,1]*xi+[1,0])*xi+[2,0]"
                        " - xi+[2,0]*(xi+[1,0]*xi+[2,1] + q*xi+[2,1]*xi+[1,0]))"));
}

TEST_CASE("window growth only adds instances and never changes them") {
    for (const auto& ctx : drinfeld_grid(2)) {
        CAPTURE(ctx->name());
        auto small = drinfeld_relations(ctx, 2);
        auto large = drinfeld_relations(ctx, 3);
        REQUIRE(small.rels.size() < large.rels.size());
        std::map<std::string, const Element*> big;
        for (const auto& r : large.rels) big.emplace(r.id, &r.value);
        for (const auto& r : small.rels) {
            auto it = big.find(r.id);
            REQUIRE_MESSAGE(it != big.end(), r.id);
            CHECK(*it->second == r.value);
        }
    }
}

TEST_CASE("catalogue values are homogeneous and trivial entries are zero") {
    auto check_cat = [](const Catalogue& cat, bool loop_side) {
        for (const auto& r : cat.rels) {
            CAPTURE(r.id);
            if (r.trivially_zero) {
                CHECK(r.value.is_zero());
                continue;
            }
            CHECK(!r.value.is_zero());
            CHECK(r.value.parity().has_value());
            CHECK(r.value.weight().has_value());
            if (loop_side) CHECK(r.value.loop_degree().has_value());
        }
    };

    for (Family f : {Family::Osp1, Family::Sl2, Family::Osp2})
        for (bool dual : {false, true})
            for (int n : {1, 2, 3}) {
                check_cat(chevalley_relations(chev(f, n, dual)), false);
                for (int w : {2, 3}) {
                    if (n == 3 && w == 3) continue;
                    check_cat(drinfeld_relations(drin(f, n, dual), w), true);
                }
            }

    check_cat(chevalley_relations(chev(Family::Osp2, 2, false, true)), false);
    check_cat(drinfeld_relations(drin(Family::Osp2, 2, false, true), 2), true);
}

TEST_CASE("catalogue construction rejects wrong styles and tiny windows") {
    CHECK(code_of([] { chevalley_relations(drin(Family::Osp1, 1)); }) ==
          Errc::MixedAlgebra);
    CHECK(code_of([] { drinfeld_relations(chev(Family::Osp1, 1), 2); }) ==
          Errc::MixedAlgebra);
    CHECK(code_of([] { drinfeld_relations(drin(Family::Osp1, 1), 1); }) ==
          Errc::WindowTooSmall);
    CHECK(code_of([] { drinfeld_relations(drin(Family::Osp1, 1), 0); }) ==
          Errc::WindowTooSmall);
}

TEST_CASE("instance id prefix counting") {
    auto cat = drinfeld_relations(drin(Family::Osp1, 1), 2);
    CHECK(cat.count_prefix("hx+:i=1,j=1,r=1,") == 4); // s in {-2,-1,0,1}
    CHECK(cat.count_prefix("does-not-exist") == 0);
    CHECK(cat.count_prefix("") == cat.rels.size());
}
