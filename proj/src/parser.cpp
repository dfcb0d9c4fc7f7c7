/**
 * @file parser.cpp
 * @brief Recursive-descent parser and canonical printer for elements.
 */
#include "qasa/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace qasa {

namespace {

class Parser {
public:
    Parser(CtxPtr ctx, std::string_view in) : ctx_(std::move(ctx)), in_(in) {}

    Element run() {
        Element e = expr(Env{});
        skip_ws();
        if (pos_ != in_.size()) fail("trailing input");
        return e;
    }

private:
    using Env = std::map<std::string, long, std::less<>>;

    CtxPtr ctx_;
    std::string_view in_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::SyntaxError, msg + " at offset " + std::to_string(pos_), pos_);
    }

    void skip_ws() {
        while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < in_.size() && in_[pos_] == c;
    }

    bool try_consume(std::string_view tok) {
        skip_ws();
        if (in_.substr(pos_).starts_with(tok)) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!try_consume(tok)) fail("expected '" + std::string(tok) + "'");
    }

    long integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < in_.size() && (in_[pos_] == '-' || in_[pos_] == '+')) {
            neg = in_[pos_] == '-';
            ++pos_;
        }
        skip_ws();
        if (pos_ >= in_.size() || !std::isdigit(static_cast<unsigned char>(in_[pos_])))
            fail("expected integer");
        long v = 0;
        while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_])))
            v = v * 10 + (in_[pos_++] - '0');
        return neg ? -v : v;
    }

    std::string identifier() {
        skip_ws();
        if (pos_ >= in_.size() || !std::isalpha(static_cast<unsigned char>(in_[pos_])))
            fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < in_.size() &&
               (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_'))
            ++pos_;
        return std::string(in_.substr(start, pos_ - start));
    }

    /// Index expression: integers and bound variables with +/-.
    long idx(const Env& env) {
        long v = idx_term(env);
        for (;;) {
            if (try_consume("+")) v += idx_term(env);
            else if (try_consume("-")) v -= idx_term(env);
            else return v;
        }
    }

    long idx_term(const Env& env) {
        skip_ws();
        if (pos_ < in_.size() &&
            (std::isdigit(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '-')) {
            return integer();
        }
        std::string name = identifier();
        auto it = env.find(name);
        if (it == env.end()) fail("unbound index variable '" + name + "'");
        return it->second;
    }

    Element expr(const Env& env) {
        Element v = term(env);
        for (;;) {
            if (try_consume("+")) v += term(env);
            else if (peek_minus_binary()) {
                expect("-");
                v -= term(env);
            } else {
                return v;
            }
        }
    }

    /// A '-' at this point is always binary (atoms never start consuming it
    /// here because factor handles unary minus after operators).
    bool peek_minus_binary() { return peek_is('-'); }

    Element term(const Env& env) {
        Element v = factor(env);
        for (;;) {
            if (try_consume("*")) {
                v *= factor(env);
            } else if (try_consume("/")) {
                std::size_t at = pos_;
                Element d = factor(env);
                Scalar s = as_scalar(d, at);
                if (s.is_zero()) throw Error(Errc::DivideByZero, "division by zero", at);
                v = s.inverse() * v;
            } else {
                return v;
            }
        }
    }

    Scalar as_scalar(const Element& e, std::size_t at) {
        if (e.is_zero()) return Scalar::zero();
        if (e.term_count() == 1 && e.terms().begin()->first.is_unit())
            return e.terms().begin()->second;
        throw Error(Errc::SyntaxError, "divisor is not a scalar", at);
    }

    Element factor(const Env& env) {
        if (try_consume("-")) return -factor(env);
        return atom(env);
    }

    Element atom(const Env& env) {
        skip_ws();
        if (pos_ >= in_.size()) fail("unexpected end of input");

        if (try_consume("(")) {
            Element v = expr(env);
            expect(")");
            return v;
        }
        if (peek_is('[')) return bracket(env);
        if (try_consume("sym(")) return sym(env);
        if (try_consume("Ad(")) return adjoint(env);
        if (try_consume("sigma[")) {
            long i = idx(env);
            expect("]");
            return Element::sigma(ctx_, check_int(i));
        }
        if (try_consume("xi+[")) return xi(env, +1);
        if (try_consume("xi-[")) return xi(env, -1);
        if (try_consume("kap[")) {
            long i = idx(env);
            expect(",");
            long r = idx(env);
            expect("]");
            return el_kap(ctx_, check_int(i), r);
        }
        if (try_consume("e[")) return node_gen(env, Sym::E, 0);
        if (try_consume("f[")) return node_gen(env, Sym::F, 0);
        if (try_consume("k-[")) return node_gen(env, Sym::K, -1);
        if (try_consume("k[")) return node_gen(env, Sym::K, +1);
        if (try_consume("g^(")) {
            bool neg = try_consume("-");
            expect("1/2");
            expect(")");
            return el_gh(ctx_, neg ? -1 : 1);
        }
        if (try_consume("g-[")) return node_gen(env, Sym::GN, -1);
        if (try_consume("g[")) return node_gen(env, Sym::GN, +1);
        if (try_consume("q")) return q_power(env);
        if (try_consume("c")) {
            int p = 1;
            if (try_consume("^(")) {
                p = check_int(integer());
                expect(")");
            }
            return el_c(ctx_, p);
        }
        // 'i' only when not an identifier prefix.
        if (pos_ < in_.size() && in_[pos_] == 'i' &&
            (pos_ + 1 == in_.size() ||
             !std::isalnum(static_cast<unsigned char>(in_[pos_ + 1])))) {
            ++pos_;
            return Element::unit(ctx_, Scalar::from_gauss(GaussRat::unit_i()));
        }
        if (std::isdigit(static_cast<unsigned char>(in_[pos_]))) {
            return Element::unit(ctx_, Scalar::from_int(integer()));
        }
        fail("unexpected token");
    }

    int check_int(long v) {
        if (v < -(1 << 28) || v > (1 << 28)) fail("index out of range");
        return static_cast<int>(v);
    }

    Element node_gen(const Env& env, Sym kind, int pow) {
        long i = idx(env);
        expect("]");
        GenSymbol g{kind, static_cast<std::int16_t>(check_int(i)),
                    kind == Sym::E || kind == Sym::F ? 0 : pow};
        return Element::generator(ctx_, g);
    }

    Element xi(const Env& env, int sign) {
        long i = idx(env);
        expect(",");
        long r = idx(env);
        expect("]");
        return el_xi(ctx_, sign, check_int(i), r);
    }

    Element q_power(const Env& env) {
        (void)env;
        if (!try_consume("^(")) return Element::unit(ctx_, Scalar::q_power(1));
        long e = integer();
        int half;
        if (try_consume("/2")) half = static_cast<int>(e);
        else half = static_cast<int>(2 * e);
        expect(")");
        return Element::unit(ctx_, Scalar::q_power_half(half));
    }

    Element bracket(const Env& env) {
        expect("[");
        Element x = expr(env);
        expect(",");
        Element y = expr(env);
        expect("]");
        Scalar a = Scalar::one();
        if (try_consume("_(")) {
            std::size_t at = pos_;
            Element ae = expr(env);
            expect(")");
            a = as_scalar(ae, at);
        }
        return super_bracket(x, y, a);
    }

    Element adjoint(const Env& env) {
        skip_ws();
        Sym chev;
        int node;
        if (try_consume("e[")) {
            chev = Sym::E;
            node = check_int(idx(env));
            expect("]");
        } else if (try_consume("f[")) {
            chev = Sym::F;
            node = check_int(idx(env));
            expect("]");
        } else if (try_consume("xi+[")) {
            chev = Sym::E;
            node = check_int(idx(env));
            expect(",");
            if (idx(env) != 0) fail("adjoint currents must have loop index 0");
            expect("]");
        } else if (try_consume("xi-[")) {
            chev = Sym::F;
            node = check_int(idx(env));
            expect(",");
            if (idx(env) != 0) fail("adjoint currents must have loop index 0");
            expect("]");
        } else {
            fail("expected adjoint generator");
        }
        expect(";");
        Element x = expr(env);
        expect(")");
        return chev == Sym::E ? ad_e(node, x) : ad_f(node, x);
    }

    Element sym(const Env& env) {
        // Bindings first, then capture the body substring and evaluate it
        // once per permutation of the bound values.
        std::vector<std::string> names;
        std::vector<long> values;
        for (;;) {
            std::string name = identifier();
            expect("=");
            values.push_back(idx(env));
            names.push_back(std::move(name));
            if (try_consume(",")) continue;
            expect(";");
            break;
        }
        const std::size_t body_start = pos_;
        // Skip the body once to find its extent (balanced parens).
        int depth = 1;
        while (pos_ < in_.size() && depth > 0) {
            char c = in_[pos_];
            if (c == '(') ++depth;
            else if (c == ')') --depth;
            if (depth > 0) ++pos_;
        }
        if (depth != 0) fail("unterminated sym body");
        std::string_view body = in_.substr(body_start, pos_ - body_start);
        expect(")");

        Element acc = sym_over(values, [&](std::span<const long> perm) {
            Env inner = env;
            for (std::size_t k = 0; k < names.size(); ++k) inner[names[k]] = perm[k];
            Parser sub(ctx_, body);
            Element v = sub.expr(inner);
            sub.skip_ws();
            if (sub.pos_ != body.size())
                throw Error(Errc::SyntaxError,
                            "trailing input in sym body at offset " +
                                std::to_string(body_start + sub.pos_),
                            body_start + sub.pos_);
            return v;
        });
        return acc;
    }
};

// Printer -------------------------------------------------------------------

std::string letter_str(const GenSymbol& g) {
    std::string node = std::to_string(g.node);
    switch (g.kind) {
        case Sym::E: return "e[" + node + "]";
        case Sym::F: return "f[" + node + "]";
        case Sym::K: return (g.arg > 0 ? "k[" : "k-[") + node + "]";
        case Sym::GN: return (g.arg > 0 ? "g[" : "g-[") + node + "]";
        case Sym::GH: return g.arg > 0 ? "g^(1/2)" : "g^(-1/2)";
        case Sym::XiP: return "xi+[" + node + "," + std::to_string(g.arg) + "]";
        case Sym::XiM: return "xi-[" + node + "," + std::to_string(g.arg) + "]";
        case Sym::Kap: return "kap[" + node + "," + std::to_string(g.arg) + "]";
    }
    return "?";
}

std::string monomial_str(const AlgebraCtx& ctx, const Monomial& m) {
    std::string out;
    auto append = [&out](const std::string& s) {
        if (!out.empty()) out += "*";
        out += s;
    };
    if (m.cpow == 1) append("c");
    else if (m.cpow != 0) append("c^(" + std::to_string(m.cpow) + ")");
    for (int i = 0; i <= ctx.datum.n; ++i)
        if (m.sigma & (1u << i)) append("sigma[" + std::to_string(i) + "]");
    for (const auto& g : m.word) {
        const int reps = is_group_like(g.kind) ? std::abs(g.arg) : 1;
        for (int r = 0; r < reps; ++r) append(letter_str(g));
    }
    return out;
}

/// Split a scalar into (display-negative, body) where body omits the sign.
std::pair<bool, std::string> scalar_split(const Scalar& c) {
    if (c.is_laurent() && c.num().size() == 1) {
        const auto& t = c.num().terms()[0];
        const GaussRat& g = t.second;
        bool neg = (g.re != 0) ? (g.re < 0) : (g.im < 0);
        GaussRat abs = neg ? -g : g;
        // A single positive Laurent term always renders as a '*'-factor
        // chain ("3*q^(2)", "(1+i)*q", "i*q^(1/2)"), safe to splice into a
        // product without extra parentheses.
        Scalar body = Scalar::from_laurent(HalfLaurent::monomial(abs, t.first));
        return {neg, body.str()};
    }
    return {false, "(" + c.str() + ")"};
}

} // namespace

Element parse_element(const CtxPtr& ctx, std::string_view input) {
    return Parser(ctx, input).run();
}

std::string print_element(const Element& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : e.terms()) {
        auto [neg, coeff] = scalar_split(c);
        std::string mono = monomial_str(*e.ctx(), m);
        std::string body;
        if (mono.empty()) body = coeff;
        else if (coeff == "1") body = mono;
        else body = coeff + "*" + mono;
        if (out.empty()) out = (neg ? "-" : "") + body;
        else out += (neg ? " - " : " + ") + body;
    }
    return out;
}

std::string Element::str() const { return print_element(*this); }

} // namespace qasa
