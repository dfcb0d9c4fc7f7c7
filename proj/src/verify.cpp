/**
 * @file verify.cpp
 * @brief Bounded-degree ideal membership: structural reduction to a
 *        canonical form, graded span enumeration with incremental exact
 *        elimination, relation-preservation reports, and the linear solve
 *        for the undetermined central constant.
 */
#include "qasa/verify.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <exception>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qasa/error.hpp"

namespace qasa {

namespace {

// ---------------------------------------------------------------------------
// Grading helpers
// ---------------------------------------------------------------------------

long letter_loop(const GenSymbol& g) {
    return (g.kind == Sym::XiP || g.kind == Sym::XiM || g.kind == Sym::Kap) ? g.arg : 0;
}

long word_loop(std::span<const GenSymbol> w) {
    long d = 0;
    for (const auto& g : w) d += letter_loop(g);
    return d;
}

/// +1 / -1 / 0: sign of the letter's weight as a multiple of its simple root.
int letter_weight_sign(const GenSymbol& g) {
    switch (g.kind) {
        case Sym::E:
        case Sym::XiP:
            return 1;
        case Sym::F:
        case Sym::XiM:
            return -1;
        default:
            return 0;
    }
}

/// b^e for the side's plain deformation base (q, or t = i^2 q).
Scalar base_power(const CartanDatum& d, long e) {
    UnitMonomial b = d.dual ? UnitMonomial::t_half_power(2) : UnitMonomial::q_power(1);
    return b.pow(e).scalar();
}

// ---------------------------------------------------------------------------
// Structural reduction
// ---------------------------------------------------------------------------

bool group_before(const GenSymbol& a, const GenSymbol& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.node < b.node;
}

struct ReducedMono {
    Monomial mono;
    Scalar unit;
    long steps = 0;
};

/**
 * One-pass canonical form of a single monomial.  Walking left to right, the
 * pending Cartan-type letters are carried along; every weight-carrying
 * letter they pass contributes the exact conjugation unit
 * base^{(sum of pending exponent-weighted roots, letter weight)}.  The
 * number of crossings performed must equal the number of out-of-place
 * Cartan letters counted up front -- that count is the termination measure.
 */
ReducedMono reduce_monomial(const AlgebraCtx& ctx, const Monomial& m) {
    const CartanDatum& d = ctx.datum;
    const int n = d.n;

    long expected = 0;
    {
        long seen = 0;
        for (const auto& g : m.word) {
            if (is_group_like(g.kind)) ++seen;
            else expected += seen;
        }
    }

    std::vector<GenSymbol> nong, grp;
    nong.reserve(m.word.size());
    std::vector<long> lambda(static_cast<std::size_t>(n) + 1, 0);
    long steps = 0;
    long exponent = 0;
    for (const auto& g : m.word) {
        if (is_group_like(g.kind)) {
            grp.push_back(g);
            if (g.kind != Sym::GH) lambda[static_cast<std::size_t>(g.node)] += g.arg;
        } else {
            if (!grp.empty()) {
                const int sgn = letter_weight_sign(g);
                if (sgn != 0) {
                    long dot = 0;
                    for (int i = 0; i <= n; ++i)
                        if (lambda[static_cast<std::size_t>(i)] != 0)
                            dot += lambda[static_cast<std::size_t>(i)] *
                                   d.gram[static_cast<std::size_t>(i)]
                                         [static_cast<std::size_t>(g.node)];
                    exponent += sgn * dot;
                }
                steps += static_cast<long>(grp.size());
            }
            nong.push_back(g);
        }
    }
    if (steps != expected)
        throw std::logic_error("fast_reduce: crossing count diverged from the termination measure");

    std::stable_sort(grp.begin(), grp.end(), group_before);
    Monomial out;
    out.sigma = m.sigma;
    out.cpow = m.cpow;
    out.word = std::move(nong);
    for (const auto& g : grp) {
        if (!out.word.empty() && out.word.back().kind == g.kind &&
            out.word.back().node == g.node && is_group_like(g.kind)) {
            out.word.back().arg += g.arg;
            if (out.word.back().arg == 0) out.word.pop_back();
        } else if (g.arg != 0) {
            out.word.push_back(g);
        }
    }
    return {std::move(out), exponent == 0 ? Scalar::one() : base_power(d, exponent), steps};
}

Element reduce_counted(const Element& x, long* steps) {
    Element r(x.ctx());
    for (const auto& [m, c] : x.terms()) {
        ReducedMono rm = reduce_monomial(*x.ctx(), m);
        if (steps) *steps += rm.steps;
        r.add_term(std::move(rm.mono), c * rm.unit);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Sector bookkeeping
// ---------------------------------------------------------------------------

struct SectorKey {
    std::uint32_t sigma = 0;
    std::int32_t cpow = 0;
    std::vector<long> weight;
    long loop = 0;

    friend bool operator<(const SectorKey& a, const SectorKey& b) {
        return std::tie(a.sigma, a.cpow, a.weight, a.loop) <
               std::tie(b.sigma, b.cpow, b.weight, b.loop);
    }
};

SectorKey monomial_sector(const AlgebraCtx& ctx, const Monomial& m) {
    return SectorKey{m.sigma, m.cpow, word_weight(ctx, m.word), word_loop(m.word)};
}

/// Re-attach a sector's mask and constant power to a stripped element.
Element reattach(const CtxPtr& ctx, const SectorKey& key, const Element& e) {
    Element r(ctx);
    for (const auto& [m, c] : e.terms()) {
        Monomial mm = m;
        mm.sigma = key.sigma;
        mm.cpow = key.cpow;
        r.add_term(std::move(mm), c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Catalogue index: usable relation instances with their grading
// ---------------------------------------------------------------------------

struct RelEntry {
    std::size_t idx = 0;    ///< position in the catalogue
    Element reduced;        ///< canonical form of the value, nonzero
    std::vector<long> weight;
    long loop = 0;
    long maxlen = 0;        ///< longest monomial of the canonical form

    RelEntry(std::size_t i, Element red, std::vector<long> wt, long lp, long ml)
        : idx(i), reduced(std::move(red)), weight(std::move(wt)), loop(lp), maxlen(ml) {}
};

struct CatIndex {
    const Catalogue* cat = nullptr;
    std::vector<RelEntry> rels;

    static CatIndex build(const Catalogue& cat) {
        CatIndex ci;
        ci.cat = &cat;
        for (std::size_t i = 0; i < cat.rels.size(); ++i) {
            const RelInstance& r = cat.rels[i];
            if (r.trivially_zero || r.value.is_zero()) continue;
            Element red = fast_reduce(r.value);
            if (red.is_zero()) continue;
            for (const auto& [m, c] : red.terms())
                if (m.sigma != 0 || m.cpow != 0)
                    throw Error(Errc::InhomogeneousWeight,
                                "relation instance " + r.id + " is not mask- and constant-free");
            auto wt = red.weight();
            auto lp = red.loop_degree();
            if (!wt || !lp)
                throw Error(Errc::InhomogeneousWeight,
                            "relation instance " + r.id + " is not graded");
            const long maxlen = red.max_length();
            ci.rels.emplace_back(i, std::move(red), std::move(*wt), *lp, maxlen);
        }
        return ci;
    }
};

// ---------------------------------------------------------------------------
// Padding monomials, bucketed by length and graded for sector lookups
// ---------------------------------------------------------------------------

std::vector<GenSymbol> padding_alphabet(const AlgebraCtx& ctx, int W) {
    std::vector<GenSymbol> a;
    const CartanDatum& d = ctx.datum;
    auto sym = [](Sym k, int node, long arg) {
        return GenSymbol{k, static_cast<std::int16_t>(node), static_cast<std::int32_t>(arg)};
    };
    if (ctx.style == Style::Chevalley) {
        for (int i = 0; i <= d.n; ++i) a.push_back(sym(Sym::E, i, 0));
        for (int i = 0; i <= d.n; ++i) a.push_back(sym(Sym::F, i, 0));
        for (int i = 0; i <= d.n; ++i) {
            a.push_back(sym(Sym::K, i, 1));
            a.push_back(sym(Sym::K, i, -1));
        }
    } else {
        for (int i = 1; i <= d.n; ++i)
            for (long r = -W; r <= W; ++r)
                if (d.in_loop_set(i, r)) a.push_back(sym(Sym::XiP, i, r));
        for (int i = 1; i <= d.n; ++i)
            for (long r = -W; r <= W; ++r)
                if (d.in_loop_set(i, r)) a.push_back(sym(Sym::XiM, i, r));
        for (int i = 1; i <= d.n; ++i)
            for (long r = -W; r <= W; ++r)
                if (r != 0 && d.in_loop_set(i, r)) a.push_back(sym(Sym::Kap, i, r));
        for (int i = 1; i <= d.n; ++i) {
            a.push_back(sym(Sym::GN, i, 1));
            a.push_back(sym(Sym::GN, i, -1));
        }
        a.push_back(sym(Sym::GH, 0, 1));
        a.push_back(sym(Sym::GH, 0, -1));
    }
    return a;
}

struct PadMono {
    Monomial m;  ///< mask-free, constant-free word
    std::vector<long> weight;
    long loop = 0;
};

struct GradeKey {
    std::vector<long> weight;
    long loop = 0;

    friend bool operator<(const GradeKey& a, const GradeKey& b) {
        return std::tie(a.weight, a.loop) < std::tie(b.weight, b.loop);
    }
};

/**
 * All canonical padding monomials of a given length, generated lazily by
 * single-letter extension.  Each canonical monomial has a unique parent
 * (drop the last letter, or lower the last Cartan exponent by one), so the
 * enumeration is duplicate-free and its order is deterministic.
 */
class PadBuckets {
public:
    PadBuckets(const AlgebraCtx& ctx, int W, long cap)
        : ctx_(ctx), cap_(cap), alphabet_(padding_alphabet(ctx, W)) {
        PadMono unit;
        unit.weight.assign(static_cast<std::size_t>(ctx.datum.n) + 1, 0);
        lengths_.push_back({std::move(unit)});
        index_.push_back(build_index(lengths_.back()));
    }

    /// nullptr when generating this length would exceed the cap.
    const std::vector<PadMono>* bucket(long len) {
        while (static_cast<long>(lengths_.size()) <= len)
            if (!extend()) return nullptr;
        return &lengths_[static_cast<std::size_t>(len)];
    }

    /// Indices into bucket(len) with the given weight and loop degree.
    const std::vector<std::size_t>* lookup(long len, const GradeKey& key) {
        if (!bucket(len)) return nullptr;
        const auto& idx = index_[static_cast<std::size_t>(len)];
        auto it = idx.find(key);
        static const std::vector<std::size_t> kEmpty;
        return it == idx.end() ? &kEmpty : &it->second;
    }

    bool overflowed() const { return overflow_; }

private:
    using Index = std::map<GradeKey, std::vector<std::size_t>>;

    static Index build_index(const std::vector<PadMono>& bucket) {
        Index idx;
        for (std::size_t i = 0; i < bucket.size(); ++i)
            idx[GradeKey{bucket[i].weight, bucket[i].loop}].push_back(i);
        return idx;
    }

    bool extend() {
        if (overflow_) return false;
        const auto& prev = lengths_.back();
        std::vector<PadMono> next;
        for (const auto& pm : prev) {
            for (const auto& a : alphabet_) {
                PadMono child;
                child.m = pm.m;
                if (is_group_like(a.kind) && !child.m.word.empty() &&
                    child.m.word.back().kind == a.kind && child.m.word.back().node == a.node) {
                    GenSymbol& back = child.m.word.back();
                    const long merged = back.arg + a.arg;
                    // Only same-sign extension lengthens the monomial; the
                    // other cases revisit shorter monomials already listed.
                    if (std::labs(merged) != std::labs(static_cast<long>(back.arg)) + 1) continue;
                    back.arg = static_cast<std::int32_t>(merged);
                } else {
                    child.m.word.push_back(a);
                }
                child.weight = pm.weight;
                const int sgn = letter_weight_sign(a);
                if (sgn != 0) child.weight[static_cast<std::size_t>(a.node)] += sgn;
                child.loop = pm.loop + letter_loop(a);
                next.push_back(std::move(child));
                if (static_cast<long>(next.size()) > cap_) {
                    overflow_ = true;
                    return false;
                }
            }
        }
        index_.push_back(build_index(next));
        lengths_.push_back(std::move(next));
        return true;
    }

    const AlgebraCtx& ctx_;
    long cap_;
    bool overflow_ = false;
    std::vector<GenSymbol> alphabet_;
    std::vector<std::vector<PadMono>> lengths_;
    std::vector<Index> index_;
};

// ---------------------------------------------------------------------------
// Incremental sector span with certificate provenance
// ---------------------------------------------------------------------------

/**
 * The span of reduced padded relation instances restricted to one
 * (weight, loop) sector, built one vector at a time in a fixed order of
 * increasing total padding length, kept in forward-reduced echelon form.
 * Registered residuals are reduced against every new row, and their
 * provenance (an exact combination of enumerated span vectors) is carried
 * along so that certificates can be emitted when a residual vanishes.
 */
class SectorSpan {
public:
    enum class Feed { Added, Exhausted, CapHit };

    struct VecInfo {
        std::size_t rel_idx;  ///< catalogue position
        Monomial left, right;
    };

    SectorSpan(const CatIndex& ci, PadBuckets& pads, const Budget& budget,
               std::vector<long> weight, long loop, long* steps)
        : ci_(ci), pads_(pads), budget_(budget), weight_(std::move(weight)), loop_(loop),
          steps_(steps) {
        pmax_ = -1;
        for (const auto& e : ci_.rels)
            pmax_ = std::max(pmax_, budget_.L - e.maxlen);
    }

    std::size_t add_residual(Element y) {
        Resid r{std::move(y), {}};
        for (std::size_t k = 0; k < rows_.size(); ++k) reduce_against(rows_[k], r.val, r.prov);
        residuals_.push_back(std::move(r));
        return residuals_.size() - 1;
    }

    const Element& residual(std::size_t id) const { return residuals_[id].val; }
    bool residual_zero(std::size_t id) const { return residuals_[id].val.is_zero(); }

    const std::map<std::size_t, Scalar>& combination(std::size_t id) const {
        return residuals_[id].prov;
    }

    const VecInfo& vec(std::size_t vid) const { return vecs_[vid]; }
    long rows() const { return static_cast<long>(rows_.size()); }

    /// Advances the enumeration until a new independent row joins the basis.
    Feed feed() {
        if (cap_hit_) return Feed::CapHit;
        while (true) {
            if (steps_ && *steps_ > budget_.S) return hit_cap();
            if (static_cast<long>(rows_.size()) >= budget_.B) return hit_cap();

            const RelEntry* rel = nullptr;
            const PadMono* left = nullptr;
            const PadMono* right = nullptr;
            switch (next_descriptor(rel, left, right)) {
                case Feed::Exhausted:
                    return Feed::Exhausted;
                case Feed::CapHit:
                    return hit_cap();
                case Feed::Added:
                    break;
            }

            Element raw = Element::from_monomial(ci_.cat->ctx, left->m) * rel->reduced *
                          Element::from_monomial(ci_.cat->ctx, right->m);
            Element v = reduce_counted(raw, steps_);
            if (v.is_zero()) continue;

            std::map<std::size_t, Scalar> prov;
            prov.emplace(vecs_.size(), Scalar::one());
            for (std::size_t k = 0; k < rows_.size(); ++k) reduce_against(rows_[k], v, prov);
            if (v.is_zero()) continue;  // dependent on earlier vectors

            vecs_.push_back(VecInfo{rel->idx, left->m, right->m});

            // Pivot: the coordinate with the cheapest coefficient, then the
            // smallest monomial -- keeps elimination growth down.
            const Monomial* pivot = nullptr;
            std::size_t best = SIZE_MAX;
            for (const auto& [m, c] : v.terms()) {
                const std::size_t tc = c.term_count();
                if (tc < best || (tc == best && (!pivot || m < *pivot))) {
                    best = tc;
                    pivot = &m;
                }
            }
            const Scalar lead = v.terms().at(*pivot);
            Row row{*pivot, v / lead, {}};
            const Scalar inv = lead.inverse();
            for (auto& [vid, c] : prov) row.prov.emplace(vid, c * inv);

            for (auto& r : residuals_) reduce_against(row, r.val, r.prov);
            rows_.push_back(std::move(row));
            return Feed::Added;
        }
    }

private:
    struct Row {
        Monomial pivot;
        Element val;  ///< pivot coefficient 1; reduced against earlier pivots
        std::map<std::size_t, Scalar> prov;
    };
    struct Resid {
        Element val;
        std::map<std::size_t, Scalar> prov;  ///< original = val + sum prov * reduced vec
    };

    Feed hit_cap() {
        cap_hit_ = true;
        return Feed::CapHit;
    }

    static void reduce_against(const Row& row, Element& val, std::map<std::size_t, Scalar>& prov) {
        auto it = val.terms().find(row.pivot);
        if (it == val.terms().end()) return;
        const Scalar c = it->second;
        val -= c * row.val;
        for (const auto& [vid, rc] : row.prov) {
            auto [pit, fresh] = prov.emplace(vid, c * rc);
            if (!fresh) {
                pit->second += c * rc;
                if (pit->second.is_zero()) prov.erase(pit);
            }
        }
    }

    /// Next (relation, left pad, right pad) in the sector, in the fixed
    /// order: total padding length, catalogue position, left length, left
    /// monomial, right monomial.
    Feed next_descriptor(const RelEntry*& rel, const PadMono*& left, const PadMono*& right) {
        while (true) {
            if (p_ > pmax_) return Feed::Exhausted;
            if (rel_pos_ >= ci_.rels.size()) {
                ++p_;
                rel_pos_ = 0;
                a_ = 0;
                mi_ = 0;
                mj_ = nullptr;
                continue;
            }
            const RelEntry& e = ci_.rels[rel_pos_];
            if (e.maxlen + p_ > budget_.L || a_ > p_) {
                ++rel_pos_;
                a_ = 0;
                mi_ = 0;
                mj_ = nullptr;
                continue;
            }
            const std::vector<PadMono>* lb = pads_.bucket(a_);
            if (!lb) return Feed::CapHit;
            if (mi_ >= lb->size()) {
                ++a_;
                mi_ = 0;
                mj_ = nullptr;
                continue;
            }
            const PadMono& lm = (*lb)[mi_];
            if (!mj_) {
                GradeKey need;
                need.weight.resize(weight_.size());
                for (std::size_t i = 0; i < weight_.size(); ++i)
                    need.weight[i] = weight_[i] - e.weight[i] - lm.weight[i];
                need.loop = loop_ - e.loop - lm.loop;
                mj_ = pads_.lookup(p_ - a_, need);
                if (!mj_ && pads_.overflowed()) return Feed::CapHit;
                mj_pos_ = 0;
            }
            if (!mj_ || mj_pos_ >= mj_->size()) {
                ++mi_;
                mj_ = nullptr;
                continue;
            }
            const std::vector<PadMono>* rb = pads_.bucket(p_ - a_);
            if (!rb) return Feed::CapHit;
            rel = &e;
            left = &lm;
            right = &(*rb)[(*mj_)[mj_pos_]];
            ++mj_pos_;
            return Feed::Added;
        }
    }

    const CatIndex& ci_;
    PadBuckets& pads_;
    Budget budget_;
    std::vector<long> weight_;
    long loop_ = 0;
    long* steps_ = nullptr;

    long pmax_ = -1;
    long p_ = 0;
    std::size_t rel_pos_ = 0;
    long a_ = 0;
    std::size_t mi_ = 0;
    const std::vector<std::size_t>* mj_ = nullptr;
    std::size_t mj_pos_ = 0;
    bool cap_hit_ = false;

    std::vector<Row> rows_;
    std::vector<Resid> residuals_;
    std::vector<VecInfo> vecs_;
};

// ---------------------------------------------------------------------------
// Membership with certificates
// ---------------------------------------------------------------------------

void require_same_algebra(const Element& x, const Catalogue& cat, const char* who) {
    if (!cat.ctx || !(*x.ctx() == *cat.ctx))
        throw Error(Errc::MixedAlgebra,
                    std::string(who) + ": candidate and catalogue live in different algebras");
}

Verdict check_zero_indexed(const Element& x, const CatIndex& ci, PadBuckets& pads,
                           const Budget& budget) {
    budget.validate();
    require_same_algebra(x, *ci.cat, "check_zero");

    Verdict out;
    long steps = 0;
    const Element xr = reduce_counted(x, &steps);
    if (xr.max_length() > budget.L) {
        out.kind = Verdict::Kind::BudgetExceeded;
        out.steps = steps;
        return out;
    }

    std::map<SectorKey, Element> sectors;
    for (const auto& [m, c] : xr.terms()) {
        SectorKey key = monomial_sector(*x.ctx(), m);
        Monomial stripped = m;
        stripped.sigma = 0;
        stripped.cpow = 0;
        sectors.try_emplace(key, Element::zero(x.ctx())).first->second.add_term(stripped, c);
    }

    std::vector<CertTerm> cert;
    std::vector<std::size_t> cert_rel;  // catalogue positions, parallel to cert
    Element residual_total = Element::zero(x.ctx());
    bool any_nonzero = false;

    for (const auto& [key, y] : sectors) {
        SectorSpan span(ci, pads, budget, key.weight, key.loop, &steps);
        const std::size_t rid = span.add_residual(y);
        while (!span.residual_zero(rid)) {
            const SectorSpan::Feed f = span.feed();
            if (f == SectorSpan::Feed::Added) continue;
            if (f == SectorSpan::Feed::CapHit) {
                out.kind = Verdict::Kind::BudgetExceeded;
                out.steps = steps;
                out.basis_rows += span.rows();
                return out;
            }
            break;  // exhausted
        }
        out.basis_rows += span.rows();
        if (span.residual_zero(rid)) {
            for (const auto& [vid, c] : span.combination(rid)) {
                const SectorSpan::VecInfo& vi = span.vec(vid);
                Monomial left = vi.left;
                left.sigma = key.sigma;
                left.cpow = key.cpow;
                cert.push_back(CertTerm{ci.cat->rels[vi.rel_idx].id, std::move(left), vi.right, c});
                cert_rel.push_back(vi.rel_idx);
            }
        } else {
            any_nonzero = true;
            residual_total += reattach(x.ctx(), key, span.residual(rid));
        }
    }

    out.steps = steps;
    if (any_nonzero) {
        out.kind = Verdict::Kind::NonzeroAtBound;
        out.residual = std::move(residual_total);
        return out;
    }

    // Soundness gate, run on every verified result: the certificate must
    // re-multiply to the candidate (in canonical form).
    Element remul = Element::zero(x.ctx());
    for (std::size_t t = 0; t < cert.size(); ++t) {
        const CertTerm& ct = cert[t];
        remul += ct.coeff * (Element::from_monomial(x.ctx(), ct.left) *
                             ci.cat->rels[cert_rel[t]].value *
                             Element::from_monomial(x.ctx(), ct.right));
    }
    if (!(fast_reduce(remul) == xr))
        throw std::logic_error("check_zero: certificate re-multiplication failed");

    out.kind = Verdict::Kind::Verified;
    out.certificate = std::move(cert);
    return out;
}

std::string group_name(const std::string& id) {
    const auto colon = id.find(':');
    return colon == std::string::npos ? id : id.substr(0, colon);
}

} // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

void Budget::validate() const {
    if (L <= 0 || W <= 0 || S <= 0 || B <= 0)
        throw Error(Errc::OutOfRange, "budget fields must all be positive");
}

Element fast_reduce(const Element& x) { return reduce_counted(x, nullptr); }

Element fast_reduce_stepwise(const Element& x) {
    const AlgebraCtx& ctx = *x.ctx();
    const CartanDatum& d = ctx.datum;

    auto merge_pass = [](std::vector<GenSymbol>& w) {
        std::vector<GenSymbol> out;
        out.reserve(w.size());
        for (const auto& g : w) {
            if (is_group_like(g.kind) && !out.empty() && out.back().kind == g.kind &&
                out.back().node == g.node) {
                out.back().arg += g.arg;
                if (out.back().arg == 0) out.pop_back();
            } else if (!(is_group_like(g.kind) && g.arg == 0)) {
                out.push_back(g);
            }
        }
        w = std::move(out);
    };
    auto measure = [](const std::vector<GenSymbol>& w) {
        long m1 = 0, seen = 0;
        for (const auto& g : w) {
            if (is_group_like(g.kind)) ++seen;
            else m1 += seen;
        }
        long m2 = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (is_group_like(w[i].kind) && is_group_like(w[j].kind) &&
                    group_before(w[j], w[i]))
                    ++m2;
        return std::tuple<long, long, long>(m1, m2, static_cast<long>(w.size()));
    };

    Element r(x.ctx());
    for (const auto& [m, c0] : x.terms()) {
        std::vector<GenSymbol> w = m.word;
        Scalar coeff = c0;
        merge_pass(w);
        while (true) {
            const auto before = measure(w);
            std::size_t idx = w.size();
            bool crossing = false;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                if (is_group_like(w[i].kind) && !is_group_like(w[i + 1].kind)) {
                    idx = i;
                    crossing = true;
                    break;
                }
            }
            if (!crossing) {
                for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                    if (is_group_like(w[i].kind) && is_group_like(w[i + 1].kind) &&
                        group_before(w[i + 1], w[i])) {
                        idx = i;
                        break;
                    }
                }
            }
            if (idx == w.size()) break;
            if (crossing) {
                const GenSymbol& g = w[idx];
                const int sgn = letter_weight_sign(w[idx + 1]);
                if (g.kind != Sym::GH && sgn != 0) {
                    const long e = static_cast<long>(g.arg) * sgn *
                                   d.gram[static_cast<std::size_t>(g.node)]
                                         [static_cast<std::size_t>(w[idx + 1].node)];
                    if (e != 0) coeff *= base_power(d, e);
                }
            }
            std::swap(w[idx], w[idx + 1]);
            merge_pass(w);
            if (!(measure(w) < before))
                throw std::logic_error("fast_reduce_stepwise: measure failed to decrease");
        }
        Monomial out;
        out.sigma = m.sigma;
        out.cpow = m.cpow;
        out.word = std::move(w);
        r.add_term(std::move(out), std::move(coeff));
    }
    return r;
}

Verdict check_zero(const Element& x, const Catalogue& cat, const Budget& budget) {
    budget.validate();
    require_same_algebra(x, cat, "check_zero");
    const CatIndex ci = CatIndex::build(cat);
    PadBuckets pads(*cat.ctx, budget.W, budget.B);
    return check_zero_indexed(x, ci, pads, budget);
}

MorphismReport check_morphism(const GeneratorMap& map, const Catalogue& source,
                              const Catalogue& target, const RelationFilter& filter,
                              const Budget& budget, int jobs) {
    budget.validate();
    if (!source.ctx || !(*map.source() == *source.ctx))
        throw Error(Errc::MixedAlgebra, "source catalogue does not match the map's source");
    if (!target.ctx || !(*map.target() == *target.ctx))
        throw Error(Errc::MixedAlgebra, "target catalogue does not match the map's target");
    if (target.ctx->style == Style::Drinfeld) {
        const int ws = source.ctx->style == Style::Drinfeld ? source.window : 0;
        const int need = ws + target.ctx->datum.theta_max();
        if (target.window < need)
            throw Error(Errc::WindowMismatch,
                        "target window " + std::to_string(target.window) +
                            " cannot absorb source window " + std::to_string(ws) +
                            " plus shift " + std::to_string(target.ctx->datum.theta_max()));
    }

    std::vector<const RelInstance*> selected;
    for (const auto& r : source.rels)
        if (!filter || filter(r)) selected.push_back(&r);

    const CatIndex ci = CatIndex::build(target);
    std::vector<InstanceOutcome> outcomes(selected.size(),
                                          InstanceOutcome{std::string(), false, Verdict{}, 0.0});
    std::vector<std::exception_ptr> errors(selected.size());

    auto run_one = [&](std::size_t i) {
        try {
            const RelInstance& r = *selected[i];
            const auto t0 = std::chrono::steady_clock::now();
            InstanceOutcome o;
            o.id = r.id;
            o.trivial = r.trivially_zero || r.value.is_zero();
            const Element image = map.apply(r.value);
            PadBuckets pads(*target.ctx, budget.W, budget.B);
            o.verdict = check_zero_indexed(image, ci, pads, budget);
            o.millis = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
            outcomes[i] = std::move(o);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

#ifdef _OPENMP
    if (jobs != 1) {
        const int threads = jobs > 1 ? jobs : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
        for (long i = 0; i < static_cast<long>(selected.size()); ++i)
            run_one(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < selected.size(); ++i) run_one(i);
    }
#else
    for (std::size_t i = 0; i < selected.size(); ++i) run_one(i);
#endif

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    MorphismReport rep;
    rep.map_label = map.label();
    rep.total = outcomes.size();
    std::map<std::string, GroupSummary> groups;
    for (auto& o : outcomes) {
        GroupSummary& g = groups[group_name(o.id)];
        g.name = group_name(o.id);
        ++g.total;
        switch (o.verdict.kind) {
            case Verdict::Kind::Verified:
                ++rep.verified;
                ++g.verified;
                break;
            case Verdict::Kind::NonzeroAtBound:
                ++rep.nonzero;
                ++g.nonzero;
                break;
            case Verdict::Kind::BudgetExceeded:
                ++rep.exceeded;
                ++g.exceeded;
                break;
        }
        if (o.trivial) {
            ++rep.trivial;
            ++g.trivial;
        }
        g.max_certificate = std::max(g.max_certificate, o.verdict.certificate.size());
    }
    rep.instances = std::move(outcomes);
    for (auto& [name, g] : groups) rep.groups.push_back(std::move(g));
    return rep;
}

MorphismReport check_morphism(const GeneratorMap& map, const RelationFilter& filter,
                              const Budget& budget, int jobs) {
    budget.validate();
    const CtxPtr& src = map.source();
    const CtxPtr& tgt = map.target();
    const Catalogue source = src->style == Style::Chevalley
                                 ? chevalley_relations(src)
                                 : drinfeld_relations(src, budget.W);
    Budget bud = budget;
    if (tgt->style == Style::Drinfeld) {
        const int theta = tgt->datum.theta_max();
        const int wt = src->style == Style::Drinfeld
                           ? budget.W + theta
                           : std::max(budget.W, 1 + theta);
        const Catalogue target = drinfeld_relations(tgt, wt);
        bud.W = wt;
        return check_morphism(map, source, target, filter, bud, jobs);
    }
    const Catalogue target = chevalley_relations(tgt);
    return check_morphism(map, source, target, filter, bud, jobs);
}

CSolution solve_in_span(const Element& A, const Element& B, const Catalogue& cat,
                        const Budget& budget) {
    budget.validate();
    require_same_algebra(A, cat, "solve_in_span");
    require_same_algebra(B, cat, "solve_in_span");

    long steps = 0;
    const Element Ar = reduce_counted(A, &steps);
    const Element Br = reduce_counted(B, &steps);

    std::optional<SectorKey> sector;
    for (const Element* e : {&Ar, &Br}) {
        for (const auto& [m, c] : e->terms()) {
            if (m.sigma != 0 || m.cpow != 0)
                throw Error(Errc::OutOfRange,
                            "solve_in_span operands must be mask- and constant-free");
            SectorKey k = monomial_sector(*cat.ctx, m);
            if (!sector) sector = std::move(k);
            else if (!(k.weight == sector->weight && k.loop == sector->loop))
                throw Error(Errc::InhomogeneousWeight,
                            "solve_in_span operands span more than one sector");
        }
    }

    CSolution out;
    out.steps = steps;
    if (!sector) return out;  // both operands zero: underdetermined

    // A candidate longer than the bound cannot be reached by the span at
    // all; the budget is simply insufficient.
    if (std::max(Ar.max_length(), Br.max_length()) > budget.L) return out;

    const CatIndex ci = CatIndex::build(cat);
    PadBuckets pads(*cat.ctx, budget.W, budget.B);
    SectorSpan span(ci, pads, budget, sector->weight, sector->loop, &steps);
    const std::size_t ra = span.add_residual(Ar);
    const std::size_t rb = span.add_residual(Br);

    // resB == -s * resA, checked exactly; s = 0 when resB vanishes.
    auto proportional = [&]() -> std::optional<Scalar> {
        const Element& a = span.residual(ra);
        const Element& b = span.residual(rb);
        if (a.is_zero()) return std::nullopt;
        if (b.is_zero()) return Scalar::zero();
        const auto& [m0, a0] = *a.terms().begin();
        auto it = b.terms().find(m0);
        if (it == b.terms().end()) return std::nullopt;
        const Scalar s = -(it->second) / a0;
        if (b == (-s) * a) return s;
        return std::nullopt;
    };

    while (true) {
        if (span.residual_zero(ra) && span.residual_zero(rb)) {
            // Every scalar closes the relation at this bound: underdetermined.
            out.basis_rows = span.rows();
            out.steps = steps;
            return out;
        }
        if (auto s = proportional()) {
            out.value = std::move(*s);
            out.basis_rows = span.rows();
            out.steps = steps;
            return out;
        }
        const SectorSpan::Feed f = span.feed();
        if (f == SectorSpan::Feed::Added) continue;
        out.basis_rows = span.rows();
        out.steps = steps;
        if (f == SectorSpan::Feed::CapHit) return out;  // inconclusive
        // Exhausted: the bounded span is complete, so failure to close the
        // relation is definite at this bound.
        if (auto s = proportional()) {
            out.value = std::move(*s);
            return out;
        }
        throw Error(Errc::NoSolution,
                    "no scalar closes the relation within the bounded span");
    }
}

CSolution solve_c(Family f, int n, const Budget& budget) {
    budget.validate();
    const PsiCap maps = psi_cap(f, n);
    const GeneratorMap& iso = maps.direct;

    const Catalogue source = chevalley_relations(iso.source());
    const Element* rel = nullptr;
    for (const auto& r : source.rels)
        if (r.id == "ef:i=0,j=0") {
            rel = &r.value;
            break;
        }
    if (!rel) throw Error(Errc::OutOfRange, "affine e-f relation not found in the catalogue");

    const Element image = iso.apply(*rel);
    Element A = Element::zero(iso.target());
    Element B = Element::zero(iso.target());
    for (const auto& [m, c] : image.terms()) {
        if (m.cpow == 1) {
            Monomial mm = m;
            mm.cpow = 0;
            A.add_term(std::move(mm), c);
        } else if (m.cpow == 0) {
            B.add_term(m, c);
        } else {
            throw std::logic_error("solve_c: unexpected constant power in the affine image");
        }
    }

    const Catalogue target = drinfeld_relations(iso.target(), std::max(budget.W, 2));
    return solve_in_span(A, B, target, budget);
}

} // namespace qasa
