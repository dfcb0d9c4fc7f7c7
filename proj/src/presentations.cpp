#include "qasa/presentations.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

#include "qasa/error.hpp"
#include "qasa/qcomb.hpp"

namespace qasa {

namespace {

/// "name:i=1,j=2,r=-3" style instance ids.
class IdBuilder {
public:
    explicit IdBuilder(std::string name) : out_(std::move(name)) { out_ += ':'; }
    IdBuilder& kv(const char* key, long v) {
        if (!first_) out_ += ',';
        first_ = false;
        out_ += key;
        out_ += '=';
        out_ += std::to_string(v);
        return *this;
    }
    std::string str() const { return out_; }

private:
    std::string out_;
    bool first_ = true;
};

void require_style(const CtxPtr& ctx, Style want, const char* who) {
    if (ctx->style != want)
        throw Error(Errc::MixedAlgebra,
                    std::string(who) + " called on the wrong presentation style: " + ctx->name());
}

/// b_i^{e} as an exact scalar, b_i the deformation base of node i.
Scalar node_power(const CartanDatum& d, int i, long e) {
    return d.base(i).pow(e).scalar();
}

/// b - b^{-1} for the side's plain base (q - q^{-1} or t - t^{-1}).
Scalar base_diff(const CartanDatum& d) {
    UnitMonomial b = d.dual ? UnitMonomial::t_half_power(2) : UnitMonomial::q_power(1);
    return b.scalar() - b.inverse().scalar();
}

void enumerate_partitions(long remaining, long max_part,
                          const std::function<bool(long)>& part_ok,
                          std::vector<long>& current,
                          const std::function<void(const std::vector<long>&)>& emit) {
    if (remaining == 0) {
        emit(current);
        return;
    }
    for (long p = std::min(remaining, max_part); p >= 1; --p) {
        if (!part_ok(p)) continue;
        current.push_back(p);
        enumerate_partitions(remaining - p, p, part_ok, current, emit);
        current.pop_back();
    }
}

/// Sorted k-tuples (ascending, with repeats) drawn from `pool`.
void enumerate_sorted_tuples(const std::vector<long>& pool, int k,
                             std::vector<long>& current,
                             std::size_t start,
                             const std::function<void(const std::vector<long>&)>& emit) {
    if (k == 0) {
        emit(current);
        return;
    }
    for (std::size_t a = start; a < pool.size(); ++a) {
        current.push_back(pool[a]);
        enumerate_sorted_tuples(pool, k - 1, current, a, emit);
        current.pop_back();
    }
}

/// The (A)/(B)-shaped Serre sum: sym over vals of
///   sum_k coef[k] * xi_{i,v_1}..xi_{i,v_k} xi_{j,s} xi_{i,v_{k+1}}..xi_{i,v_l}.
Element serre_row(const CtxPtr& ctx, int sign, int i, int j, long s,
                  std::span<const long> vals, const std::vector<Scalar>& coef) {
    const int l = static_cast<int>(vals.size());
    return sym_over(vals, [&](std::span<const long> p) {
        Element sum = Element::zero(ctx);
        for (int k = 0; k <= l; ++k) {
            Element term = Element::unit(ctx, coef[static_cast<std::size_t>(k)]);
            for (int a = 0; a < k; ++a) term *= el_xi(ctx, sign, i, p[static_cast<std::size_t>(a)]);
            term *= el_xi(ctx, sign, j, s);
            for (int a = k; a < l; ++a) term *= el_xi(ctx, sign, i, p[static_cast<std::size_t>(a)]);
            sum += term;
        }
        return sum;
    });
}

const char* xi_tag(int sign) { return sign > 0 ? "+" : "-"; }

} // namespace

std::size_t Catalogue::count_prefix(const std::string& prefix) const {
    std::size_t c = 0;
    for (const auto& r : rels)
        if (r.id.rfind(prefix, 0) == 0) ++c;
    return c;
}

Catalogue chevalley_relations(const CtxPtr& ctx) {
    require_style(ctx, Style::Chevalley, "chevalley_relations");
    const CartanDatum& d = ctx->datum;
    const int n = d.n;
    Catalogue cat{ctx, 0, {}};
    auto add = [&](std::string id, Element v, bool triv = false) {
        // An instance whose normal form already vanishes holds identically,
        // so the flag uniformly means "nothing left to check".
        const bool t = triv || v.is_zero();
        cat.rels.push_back(RelInstance{std::move(id), std::move(v), t});
    };

    // Cartan sector: invertibility is absorbed by the merged exponents.
    for (int i = 0; i <= n; ++i)
        add(IdBuilder("kinv").kv("i", i).str(), Element::zero(ctx), true);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            add(IdBuilder("kk").kv("i", i).kv("j", j).str(),
                el_k(ctx, i) * el_k(ctx, j) - el_k(ctx, j) * el_k(ctx, i));

    // k e k^{-1} and k f k^{-1} conjugations.
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const long a = d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            add(IdBuilder("ke").kv("i", i).kv("j", j).str(),
                el_k(ctx, i) * el_e(ctx, j) * el_k(ctx, i, -1) -
                    node_power(d, i, a) * el_e(ctx, j));
            add(IdBuilder("kf").kv("i", i).kv("j", j).str(),
                el_k(ctx, i) * el_f(ctx, j) * el_k(ctx, i, -1) -
                    node_power(d, i, -a) * el_f(ctx, j));
        }

    // e f relation with the zeta-adjusted denominator.
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            Element v = super_bracket(el_e(ctx, i), el_f(ctx, j));
            if (i == j) {
                const long z = d.zeta[static_cast<std::size_t>(i)];
                Scalar den = node_power(d, i, z) - node_power(d, i, -z);
                v -= (el_k(ctx, i) - el_k(ctx, i, -1)) / den;
            }
            add(IdBuilder("ef").kv("i", i).kv("j", j).str(), std::move(v));
        }

    // Serre relations, explicit Cartan-conjugation form of Ad.
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            const int l = 1 - d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            Element xe = el_e(ctx, j);
            Element xf = el_f(ctx, j);
            for (int k = 0; k < l; ++k) {
                xe = ad_e_conj(i, xe);
                xf = ad_f_conj(i, xf);
            }
            add(IdBuilder("serre-e").kv("i", i).kv("j", j).str(), std::move(xe));
            add(IdBuilder("serre-f").kv("i", i).kv("j", j).str(), std::move(xf));
        }

    // Sign-group sector: all absorbed by the sigma mask and crossing sign.
    if (ctx->smash) {
        for (int i = 1; i <= n; ++i)
            add(IdBuilder("sig2").kv("i", i).str(), Element::zero(ctx), true);
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const long pair = d.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const Scalar sg = (pair % 2 == 0) ? Scalar::one() : -Scalar::one();
                add(IdBuilder("sig-e").kv("i", i).kv("j", j).str(),
                    el_sigma(ctx, i) * el_e(ctx, j) * el_sigma(ctx, i) - sg * el_e(ctx, j), true);
                add(IdBuilder("sig-f").kv("i", i).kv("j", j).str(),
                    el_sigma(ctx, i) * el_f(ctx, j) * el_sigma(ctx, i) - sg * el_f(ctx, j), true);
                add(IdBuilder("sig-k").kv("i", i).kv("j", j).str(),
                    el_sigma(ctx, i) * el_k(ctx, j) * el_sigma(ctx, i) - el_k(ctx, j), true);
            }
    }

    return cat;
}

Element kappa_hat(const CtxPtr& ctx, int sign, int i, long m, int order) {
    require_style(ctx, Style::Drinfeld, "kappa_hat");
    const CartanDatum& d = ctx->datum;
    if (sign != 1 && sign != -1)
        throw Error(Errc::OutOfRange, "kappa_hat sign must be +1 or -1");
    if (i < 1 || i > d.n) throw Error(Errc::OutOfRange, "kappa_hat node out of range");
    if (std::labs(m) > order)
        throw Error(Errc::OrderExceeded, "kappa_hat coefficient beyond expansion order");
    if ((sign > 0 && m < 0) || (sign < 0 && m > 0)) return Element::zero(ctx);

    const Element gamma_part = el_gn(ctx, i, sign);
    const long mm = std::labs(m);
    if (mm == 0) return gamma_part;

    // x = b - b^{-1} for the + series, b^{-1} - b for the - series.
    Scalar x = base_diff(d);
    if (sign < 0) x = -x;

    Element total = Element::zero(ctx);
    std::vector<long> parts;
    enumerate_partitions(
        mm, mm, [&](long p) { return d.in_loop_set(i, sign * p); }, parts,
        [&](const std::vector<long>& partition) {
            // partition arrives in descending order; emit letters ascending.
            // Dividing by the running repeat count accumulates 1/e_p! per
            // group of equal parts.
            Scalar coeff = scalar_pow(x, static_cast<long>(partition.size()));
            Element word = gamma_part;
            long prev = 0, run = 0;
            for (auto it = partition.rbegin(); it != partition.rend(); ++it) {
                word *= el_kap(ctx, i, sign * *it);
                if (*it == prev) {
                    ++run;
                } else {
                    prev = *it;
                    run = 1;
                }
                coeff /= Scalar::from_int(run);
            }
            total += coeff * word;
        });
    return total;
}

Catalogue drinfeld_relations(const CtxPtr& ctx, int window) {
    require_style(ctx, Style::Drinfeld, "drinfeld_relations");
    if (window < 2)
        throw Error(Errc::WindowTooSmall, "loop catalogue needs window >= 2");
    const CartanDatum& d = ctx->datum;
    const int n = d.n;
    const long W = window;
    Catalogue cat{ctx, window, {}};
    auto add = [&](std::string id, Element v, bool triv = false) {
        const bool t = triv || v.is_zero();
        cat.rels.push_back(RelInstance{std::move(id), std::move(v), t});
    };

    auto in_window = [&](long r) { return -W <= r && r <= W; };
    auto xi_ok = [&](int i, long r) { return in_window(r) && d.in_loop_set(i, r); };
    auto kap_ok = [&](int i, long r) { return r != 0 && xi_ok(i, r); };
    auto xi_range = [&](int i) {
        std::vector<long> rs;
        for (long r = -W; r <= W; ++r)
            if (d.in_loop_set(i, r)) rs.push_back(r);
        return rs;
    };
    auto u = [&](int i, int j, long r) {
        return d.dual ? u_prime_coeff(d, i, j, r) : u_coeff(d, i, j, r);
    };
    const Scalar bd = base_diff(d);

    // (0) Invertibility entries are identities of the monomial model.
    add("ghinv:", Element::zero(ctx), true);
    for (int i = 1; i <= n; ++i)
        add(IdBuilder("ginv").kv("i", i).str(), Element::zero(ctx), true);

    // Centrality of the half central element against every other generator.
    for (int i = 1; i <= n; ++i) {
        add(IdBuilder("ghc-g").kv("i", i).str(),
            el_gh(ctx, 1) * el_gn(ctx, i) - el_gn(ctx, i) * el_gh(ctx, 1));
        for (long r = -W; r <= W; ++r) {
            if (xi_ok(i, r)) {
                add(IdBuilder("ghc-x+").kv("i", i).kv("r", r).str(),
                    el_gh(ctx, 1) * el_xi(ctx, 1, i, r) - el_xi(ctx, 1, i, r) * el_gh(ctx, 1));
                add(IdBuilder("ghc-x-").kv("i", i).kv("r", r).str(),
                    el_gh(ctx, 1) * el_xi(ctx, -1, i, r) - el_xi(ctx, -1, i, r) * el_gh(ctx, 1));
            }
            if (kap_ok(i, r))
                add(IdBuilder("ghc-k").kv("i", i).kv("r", r).str(),
                    el_gh(ctx, 1) * el_kap(ctx, i, r) - el_kap(ctx, i, r) * el_gh(ctx, 1));
        }
    }

    // gamma_i gamma_j commutation, and gamma_i against kap.
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            add(IdBuilder("gg").kv("i", i).kv("j", j).str(),
                el_gn(ctx, i) * el_gn(ctx, j) - el_gn(ctx, j) * el_gn(ctx, i));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (long s = -W; s <= W; ++s) {
                if (!kap_ok(j, s)) continue;
                add(IdBuilder("gk").kv("i", i).kv("j", j).kv("s", s).str(),
                    el_gn(ctx, i) * el_kap(ctx, j, s) - el_kap(ctx, j, s) * el_gn(ctx, i));
            }

    // gamma_i conjugation of the currents.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const long a = d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (long r = -W; r <= W; ++r) {
                if (!xi_ok(j, r)) continue;
                add(IdBuilder("gx+").kv("i", i).kv("j", j).kv("r", r).str(),
                    el_gn(ctx, i) * el_xi(ctx, 1, j, r) * el_gn(ctx, i, -1) -
                        node_power(d, i, a) * el_xi(ctx, 1, j, r));
                add(IdBuilder("gx-").kv("i", i).kv("j", j).kv("r", r).str(),
                    el_gn(ctx, i) * el_xi(ctx, -1, j, r) * el_gn(ctx, i, -1) -
                        node_power(d, i, -a) * el_xi(ctx, -1, j, r));
            }
        }

    // h-x: [kap_{i,r}, xi^{pm}_{j,s}] = u_{i,j,r} gamma^{mp |r|/2} / (r (b-b^{-1})) xi^{pm}_{j,s+r}.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (long r = -W; r <= W; ++r) {
                if (!kap_ok(i, r)) continue;
                const Scalar uij = u(i, j, r);
                for (long s = -W; s <= W; ++s) {
                    if (!xi_ok(j, s)) continue;
                    if (!uij.is_zero() && !in_window(s + r)) continue; // mentions s+r
                    for (int sg : {1, -1}) {
                        Element v = super_bracket(el_kap(ctx, i, r), el_xi(ctx, sg, j, s));
                        if (!uij.is_zero()) {
                            assert(d.in_loop_set(j, s + r));
                            Scalar c = uij / (Scalar::from_int(r) * bd);
                            v -= c * (el_gh(ctx, -sg * std::labs(r)) * el_xi(ctx, sg, j, s + r));
                        }
                        add(IdBuilder(std::string("hx") + xi_tag(sg))
                                .kv("i", i).kv("j", j).kv("r", r).kv("s", s).str(),
                            std::move(v));
                    }
                }
            }

    // h-h: [kap_{i,r}, kap_{j,s}] = delta_{r+s,0} u_{i,j,r}(gamma^r - gamma^{-r}) / (r (b-b^{-1})^2).
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (long r = -W; r <= W; ++r) {
                if (!kap_ok(i, r)) continue;
                for (long s = -W; s <= W; ++s) {
                    if (!kap_ok(j, s)) continue;
                    Element v = super_bracket(el_kap(ctx, i, r), el_kap(ctx, j, s));
                    if (r + s == 0) {
                        Scalar c = u(i, j, r) / (Scalar::from_int(r) * bd * bd);
                        v -= c * (el_gh(ctx, 2 * r) - el_gh(ctx, -2 * r));
                    }
                    add(IdBuilder("hh").kv("i", i).kv("j", j).kv("r", r).kv("s", s).str(),
                        std::move(v));
                }
            }

    // x+x-: [xi^+_{i,r}, xi^-_{j,s}] = delta_ij (gamma^{(r-s)/2} khat^+_{i,r+s}
    //                                           - gamma^{(s-r)/2} khat^-_{i,r+s}) / (b-b^{-1}).
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (long r = -W; r <= W; ++r) {
                if (!xi_ok(i, r)) continue;
                for (long s = -W; s <= W; ++s) {
                    if (!xi_ok(j, s)) continue;
                    if (i == j && !in_window(r + s)) continue; // mentions r+s
                    Element v = super_bracket(el_xi(ctx, 1, i, r), el_xi(ctx, -1, j, s));
                    if (i == j) {
                        const int ord = static_cast<int>(std::labs(r + s));
                        Element rhs =
                            el_gh(ctx, r - s) * kappa_hat(ctx, 1, i, r + s, ord) -
                            el_gh(ctx, s - r) * kappa_hat(ctx, -1, i, r + s, ord);
                        v -= rhs / bd;
                    }
                    add(IdBuilder("xx").kv("i", i).kv("j", j).kv("r", r).kv("s", s).str(),
                        std::move(v));
                }
            }

    // Same-sign shifted relations.  Super side: the displayed two-term sum
    //   [xi_{i,r+th}, xi_{j,s}]_{b_i^{a_ij}} + [xi_{j,s+th}, xi_{i,r}]_{b_j^{a_ji}};
    // even side: the displayed sym over {r, s} of [xi_{i,r+th}, xi_{j,s}]_{b_i^{a_ij}}.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (d.family == Family::Osp1 && i == n && j == n) continue;
            if (!d.dual && j < i) continue; // super form is (i,r)<->(j,s) symmetric
            const int th = d.theta(i, j);
            const long aij = d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const long aji = d.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            for (long r = -W; r <= W; ++r)
                for (long s = -W; s <= W; ++s) {
                    if (!d.dual && i == j && s < r) continue; // (i,r)<->(j,s) duplicate
                    if (d.dual && s < r) continue;            // dual form is r<->s symmetric
                    for (int sg : {1, -1}) {
                        const long shift = sg * th;
                        // Indices mentioned by the two-term super form:
                        // (i, r), (i, r+shift), (j, s), (j, s+shift).  The
                        // r<->s symmetric even form instead mentions
                        // (j, r), (j, s), (i, r+shift), (i, s+shift).
                        const bool ok =
                            d.dual ? xi_ok(j, r) && xi_ok(j, s) && xi_ok(i, r + shift) &&
                                         xi_ok(i, s + shift)
                                   : xi_ok(i, r) && xi_ok(j, s) && xi_ok(i, r + shift) &&
                                         xi_ok(j, s + shift);
                        if (!ok) continue;
                        Element v =
                            !d.dual
                                ? super_bracket(el_xi(ctx, sg, i, r + shift),
                                                el_xi(ctx, sg, j, s), node_power(d, i, aij)) +
                                      super_bracket(el_xi(ctx, sg, j, s + shift),
                                                    el_xi(ctx, sg, i, r), node_power(d, j, aji))
                                : super_bracket(el_xi(ctx, sg, i, r + shift),
                                                el_xi(ctx, sg, j, s), node_power(d, i, aij)) +
                                      super_bracket(el_xi(ctx, sg, i, s + shift),
                                                    el_xi(ctx, sg, j, r), node_power(d, i, aij));
                        add(IdBuilder(std::string("xs") + xi_tag(sg))
                                .kv("i", i).kv("j", j).kv("r", r).kv("s", s).str(),
                            std::move(v));
                    }
                }
        }

    // Serre sector ----------------------------------------------------------

    // (A)-shaped rows.  Super side: i != n, i != j, coefficients
    // (-1)^k [l k]_{b_i}.  Even side: additionally i = n with j < n-1 for the
    // A/B partners and j = n-1 for the B partner, same coefficients.
    auto add_serre_row = [&](const char* name, int i, int j, const Scalar& binom_base,
                             bool alternating) {
        const int l = 1 - d.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        std::vector<Scalar> coef;
        coef.reserve(static_cast<std::size_t>(l) + 1);
        for (int k = 0; k <= l; ++k) {
            Scalar c = q_binomial(l, k, binom_base);
            if (alternating && (k % 2 == 1)) c = -c;
            coef.push_back(std::move(c));
        }
        const auto pool = xi_range(i);
        const auto spool = xi_range(j);
        std::vector<long> tuple;
        enumerate_sorted_tuples(pool, l, tuple, 0, [&](const std::vector<long>& vals) {
            for (long s : spool)
                for (int sg : {1, -1}) {
                    IdBuilder id(std::string(name) + xi_tag(sg));
                    id.kv("i", i).kv("j", j);
                    for (std::size_t a = 0; a < vals.size(); ++a)
                        id.kv(("r" + std::to_string(a + 1)).c_str(), vals[a]);
                    id.kv("s", s);
                    add(id.str(), serre_row(ctx, sg, i, j, s, vals, coef));
                }
        });
    };

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            if (!d.dual) {
                if (i != n)
                    add_serre_row("sA", i, j, d.base(i).scalar(), /*alternating=*/true);
                else if (d.family == Family::Sl2 && j == n - 1) {
                    // The only deformed row at the odd node: base i*q_n and no
                    // alternating sign (the sign re-emerges on the even side
                    // through sigma crossings).  Far-apart pairs (n, j<n-1)
                    // are covered by the (j, n) rows above.
                    add_serre_row("sB", i, j, UnitMonomial::t_half_power(1).scalar(),
                                  /*alternating=*/false);
                }
            } else {
                const bool include =
                    i != n || (d.family != Family::Osp2 && j < n - 1) ||
                    (d.family == Family::Sl2 && j == n - 1);
                if (include)
                    add_serre_row("dA", i, j, d.base(i).scalar(), /*alternating=*/true);
            }
        }

    // Higher Serre displays for the osp1 pair (super side) / its even partner.
    const bool high = (d.family == Family::Osp1);
    if (high) {
        const Scalar c2 = node_power(d, n, 2);   // b_n^2
        const Scalar c4 = node_power(d, n, 4);   // b_n^4
        const Scalar cm6 = node_power(d, n, -6); // b_n^{-6}
        const Scalar c2sum = node_power(d, n, 2) + node_power(d, n, -2);
        const auto pool = xi_range(n);
        const char* tag1 = d.dual ? "dB1" : "sC1";
        const char* tag2 = d.dual ? "dB2" : "sC2";
        const char* tag3 = d.dual ? "dB3" : "sC3";

        for (int sg : {1, -1}) {
            const long sh = sg;
            // First display: sym_{r1,r2,r3} [[xi_{n,r1+sh}, xi_{n,r2}]_{b_n^2}, xi_{n,r3}]_{b_n^4}.
            std::vector<long> tuple;
            enumerate_sorted_tuples(pool, 3, tuple, 0, [&](const std::vector<long>& vals) {
                for (long v : vals)
                    if (!xi_ok(n, v + sh)) return;
                Element v = sym_over(vals, [&](std::span<const long> p) {
                    return super_bracket(
                        super_bracket(el_xi(ctx, sg, n, p[0] + sh), el_xi(ctx, sg, n, p[1]), c2),
                        el_xi(ctx, sg, n, p[2]), c4);
                });
                add(IdBuilder(std::string(tag1) + xi_tag(sg))
                        .kv("r1", vals[0]).kv("r2", vals[1]).kv("r3", vals[2]).str(),
                    std::move(v));
            });

            // Second display: sym_{r,s} ([xi_{n,r+2sh}, xi_{n,s}]_{b_n^2}
            //                            - b_n^4 [xi_{n,r+sh}, xi_{n,s+sh}]_{b_n^{-6}}).
            enumerate_sorted_tuples(pool, 2, tuple, 0, [&](const std::vector<long>& vals) {
                for (long v : vals)
                    if (!xi_ok(n, v + sh) || !xi_ok(n, v + 2 * sh)) return;
                Element v = sym_over(vals, [&](std::span<const long> p) {
                    return super_bracket(el_xi(ctx, sg, n, p[0] + 2 * sh),
                                         el_xi(ctx, sg, n, p[1]), c2) -
                           c4 * super_bracket(el_xi(ctx, sg, n, p[0] + sh),
                                              el_xi(ctx, sg, n, p[1] + sh), cm6);
                });
                add(IdBuilder(std::string(tag2) + xi_tag(sg))
                        .kv("r", vals[0]).kv("s", vals[1]).str(),
                    std::move(v));
            });

            // Third display (needs the neighbour node): sym_{r,s} of
            //   b_n^2 [[xi_{n,r+sh}, xi_{n,s}]_{b_n^2}, xi_{n-1,k}]_{b_n^4}
            //   + (b_n^2 + b_n^{-2}) [[xi_{n-1,k}, xi_{n,r+sh}]_{b_n^2}, xi_{n,s}].
            if (n >= 2) {
                const auto kpool = xi_range(n - 1);
                enumerate_sorted_tuples(pool, 2, tuple, 0, [&](const std::vector<long>& vals) {
                    for (long v : vals)
                        if (!xi_ok(n, v + sh)) return;
                    for (long kk : kpool) {
                        Element v = sym_over(vals, [&](std::span<const long> p) {
                            return c2 * super_bracket(
                                            super_bracket(el_xi(ctx, sg, n, p[0] + sh),
                                                          el_xi(ctx, sg, n, p[1]), c2),
                                            el_xi(ctx, sg, n - 1, kk), c4) +
                                   c2sum * super_bracket(
                                               super_bracket(el_xi(ctx, sg, n - 1, kk),
                                                             el_xi(ctx, sg, n, p[0] + sh), c2),
                                               el_xi(ctx, sg, n, p[1]));
                        });
                        add(IdBuilder(std::string(tag3) + xi_tag(sg))
                                .kv("r", vals[0]).kv("s", vals[1]).kv("k", kk).str(),
                            std::move(v));
                    }
                });
            }
        }
    }

    // osp2-pair closing display: sym_{r,s} [[xi_{n-1,k}, xi_{n,r+sh}]_{b_n^2}, xi_{n,s}].
    if (d.family == Family::Osp2 && n >= 2) {
        const Scalar c2 = node_power(d, n, 2);
        const auto pool = xi_range(n);
        const auto kpool = xi_range(n - 1);
        const char* tag = d.dual ? "dC" : "sD";
        for (int sg : {1, -1}) {
            const long sh = sg;
            std::vector<long> tuple;
            enumerate_sorted_tuples(pool, 2, tuple, 0, [&](const std::vector<long>& vals) {
                for (long v : vals)
                    if (!xi_ok(n, v + sh)) return;
                for (long kk : kpool) {
                    Element v = sym_over(vals, [&](std::span<const long> p) {
                        return super_bracket(
                            super_bracket(el_xi(ctx, sg, n - 1, kk),
                                          el_xi(ctx, sg, n, p[0] + sh), c2),
                            el_xi(ctx, sg, n, p[1]));
                    });
                    add(IdBuilder(std::string(tag) + xi_tag(sg))
                            .kv("k", kk).kv("r", vals[0]).kv("s", vals[1]).str(),
                        std::move(v));
                }
            });
        }
    }

    // Sign-group sector, absorbed by the monomial model.
    if (ctx->smash) {
        for (int i = 1; i <= n; ++i) {
            add(IdBuilder("sig2").kv("i", i).str(), Element::zero(ctx), true);
            for (int j = 1; j <= n; ++j) {
                const long pair = d.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const Scalar sg = (pair % 2 == 0) ? Scalar::one() : -Scalar::one();
                for (long r = -W; r <= W; ++r) {
                    if (!xi_ok(j, r)) continue;
                    add(IdBuilder("sig-x+").kv("i", i).kv("j", j).kv("r", r).str(),
                        el_sigma(ctx, i) * el_xi(ctx, 1, j, r) * el_sigma(ctx, i) -
                            sg * el_xi(ctx, 1, j, r),
                        true);
                    add(IdBuilder("sig-x-").kv("i", i).kv("j", j).kv("r", r).str(),
                        el_sigma(ctx, i) * el_xi(ctx, -1, j, r) * el_sigma(ctx, i) -
                            sg * el_xi(ctx, -1, j, r),
                        true);
                }
                add(IdBuilder("sig-g").kv("i", i).kv("j", j).str(),
                    el_sigma(ctx, i) * el_gn(ctx, j) * el_sigma(ctx, i) - el_gn(ctx, j), true);
            }
        }
    }

    return cat;
}

} // namespace qasa
