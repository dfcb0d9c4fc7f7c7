/**
 * @file test_scalars.cpp
 * @brief Exact-arithmetic foundation: Gaussian rationals, half-exponent
 *        Laurent polynomials, canonical scalar fractions, unit monomials and
 *        balanced q-combinatorics.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "qasa/qcomb.hpp"
#include "qasa/scalar.hpp"

using namespace qasa;

namespace {

std::uint64_t test_seed() {
    if (const char* s = std::getenv("QASA_SEED")) return std::strtoull(s, nullptr, 10);
    return 20260815ULL;
}

struct Rng {
    std::mt19937_64 eng{test_seed()};

    GaussRat gauss() {
        std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
        Rat re(num(eng), den(eng)), im(num(eng), den(eng));
        re.canonicalize(); // mpq_class(num, den) does not reduce on its own
        im.canonicalize();
        return GaussRat(re, im);
    }

    HalfLaurent laurent(int max_terms = 4) {
        std::uniform_int_distribution<int> nterms(0, max_terms), half(-6, 6);
        HalfLaurent p;
        const int k = nterms(eng);
        for (int t = 0; t < k; ++t) p += HalfLaurent::monomial(gauss(), half(eng));
        return p;
    }

    Scalar scalar() {
        HalfLaurent d = laurent();
        while (d.is_zero()) d = laurent();
        return Scalar::fraction(laurent(), d);
    }

    Scalar nonzero_scalar() {
        Scalar s = scalar();
        while (s.is_zero()) s = scalar();
        return s;
    }
};

const Scalar kQ = Scalar::q_power(1);

} // namespace

TEST_CASE("gaussian rational arithmetic and canonical text") {
    GaussRat i = GaussRat::unit_i();
    CHECK(i * i == GaussRat(-1));
    CHECK(GaussRat::i_power(-1) == -i);
    CHECK((GaussRat(Rat(1, 2), Rat(3)) * GaussRat(Rat(2), Rat(0))).str() == "1+6*i");
    CHECK((GaussRat(1) / GaussRat(Rat(0), Rat(1))).str() == "-i");
    CHECK(GaussRat(Rat(0), Rat(1, 2)).str() == "1/2*i");
    CHECK(GaussRat(Rat(3, 2), Rat(-2)).str() == "3/2-2*i");
    CHECK(GaussRat(Rat(-1, 2)).str() == "-1/2");
    CHECK_THROWS_AS((void)(GaussRat(1) / GaussRat(0)), Error);
}

TEST_CASE("gaussian rational field axioms (randomized)") {
    Rng rng;
    for (int trial = 0; trial < 200; ++trial) {
        GaussRat a = rng.gauss(), b = rng.gauss(), c = rng.gauss();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == GaussRat(1));
    }
}

TEST_CASE("laurent polynomial ring operations") {
    HalfLaurent q = HalfLaurent::q_power(1);
    HalfLaurent qi = HalfLaurent::q_power(-1);
    CHECK((q * qi).is_one());
    CHECK((q - q).is_zero());
    HalfLaurent p = q + qi; // q + q^{-1}
    CHECK(p.str() == "q + q^(-1)");
    CHECK((p * p).str() == "q^(2) + 2 + q^(-2)");
    CHECK(HalfLaurent::q_power_half(1).str() == "q^(1/2)");
    CHECK(HalfLaurent::q_power_half(-5).str() == "q^(-5/2)");
    CHECK((HalfLaurent::monomial(GaussRat(Rat(0), Rat(1)), 3) -
           HalfLaurent::one())
              .str() == "i*q^(3/2) - 1");
    CHECK(HalfLaurent::monomial(GaussRat(Rat(1), Rat(1)), 4).str() == "(1+i)*q^(2)");
}

TEST_CASE("laurent division and gcd") {
    HalfLaurent q = HalfLaurent::q_power(1);
    HalfLaurent q2m1 = q * q - HalfLaurent::one();
    HalfLaurent qm1 = q - HalfLaurent::one();
    CHECK(HalfLaurent::div_exact(q2m1, qm1).str() == "q + 1");
    CHECK_THROWS_AS(HalfLaurent::div_exact(q2m1 + HalfLaurent::one(), qm1), Error);
    HalfLaurent g = HalfLaurent::gcd(q2m1, qm1);
    // gcd is normalized: minimal exponent 0, trailing coefficient 1.
    CHECK(g.str() == "-q + 1");
    CHECK(g.trailing_coeff().is_one());

    Rng rng;
    for (int trial = 0; trial < 50; ++trial) {
        HalfLaurent a = rng.laurent(), b = rng.laurent();
        if (b.is_zero()) continue;
        auto [quot, rem] = HalfLaurent::divmod(a, b);
        CHECK(quot * b + rem == a);
        HalfLaurent d = HalfLaurent::gcd(a, b);
        if (!d.is_zero()) {
            CHECK(HalfLaurent::div_exact(a, d) * d == a);
            CHECK(HalfLaurent::div_exact(b, d) * d == b);
        }
    }
}

TEST_CASE("scalar canonical form is unique") {
    Scalar q = kQ;
    Scalar lhs = (q * q - Scalar::one()) / (q - Scalar::one());
    CHECK(lhs == q + Scalar::one());
    CHECK(lhs.str() == "q + 1");

    // (q - q^{-1})/(q^{1/2} - q^{-1/2}) = q^{1/2} + q^{-1/2}
    Scalar num = q - q.inverse();
    Scalar den = Scalar::q_power_half(1) - Scalar::q_power_half(-1);
    CHECK((num / den).str() == "q^(1/2) + q^(-1/2)");

    // Denominators are polynomials with trailing term exactly 1.
    Scalar s = Scalar::one() / (q.inverse() - q);
    CHECK(s.den().trailing_coeff().is_one());
    CHECK(s.den().min_half() == 0);
    CHECK(s * (q.inverse() - q) == Scalar::one());

    Rng rng;
    for (int trial = 0; trial < 80; ++trial) {
        Scalar a = rng.scalar();
        Scalar r = rng.nonzero_scalar();
        CHECK((a * r) / r == a); // common factors always cancel structurally
    }
}

TEST_CASE("scalar field axioms (randomized)") {
    Rng rng;
    for (int trial = 0; trial < 60; ++trial) {
        Scalar a = rng.scalar(), b = rng.scalar(), c = rng.scalar();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + Scalar::zero() == a);
        CHECK(a * Scalar::one() == a);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Scalar::one());
            CHECK((a / a) == Scalar::one());
        }
    }
    CHECK_THROWS_AS((void)(Scalar::one() / Scalar::zero()), Error);
}

TEST_CASE("unit monomials: t^{1/2} = i q^{1/2}, t = -q") {
    UnitMonomial th = UnitMonomial::t_half_power(1);
    CHECK(th.scalar().str() == "i*q^(1/2)");
    UnitMonomial t = UnitMonomial::t_half_power(2);
    CHECK(t.scalar() == -kQ);
    CHECK(UnitMonomial::t_half_power(4).scalar() == kQ * kQ); // t^2 = q^2
    CHECK((t * t.inverse()).is_one());
    CHECK(t.pow(3).scalar() == -(kQ * kQ * kQ));
    CHECK(t.pow(-1).scalar() == -kQ.inverse());

    auto rt = UnitMonomial::from_scalar(th.scalar());
    REQUIRE(rt.has_value());
    CHECK(*rt == th);
    CHECK(!UnitMonomial::from_scalar(kQ + Scalar::one()).has_value());
    CHECK(!UnitMonomial::from_scalar(Scalar::from_int(2)).has_value());
}

TEST_CASE("balanced q-integers: values and degeneracy") {
    CHECK(q_int(0, kQ).is_zero());
    CHECK(q_int(1, kQ) == Scalar::one());
    CHECK(q_int(3, kQ).str() == "q^(2) + 1 + q^(-2)");
    CHECK(q_int(-3, kQ) == -q_int(3, kQ));
    CHECK(q_int(2, Scalar::q_power_half(1)).str() == "q^(1/2) + q^(-1/2)");

    // [2]_i = i + i^{-1} = 0: the base i is NOT degenerate, the value just
    // happens to vanish.
    Scalar unit_i = Scalar::from_gauss(GaussRat::unit_i());
    CHECK(!(unit_i - unit_i.inverse()).is_zero());
    CHECK(q_int(2, unit_i).is_zero());

    CHECK_THROWS_AS((void)q_int(2, Scalar::one()), Error);
    CHECK_THROWS_AS((void)q_int(2, Scalar::from_int(-1)), Error);
    CHECK_THROWS_AS((void)q_int(2, Scalar::zero()), Error);
    try {
        (void)q_int(5, Scalar::from_int(1));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DegenerateBase);
    }
}

TEST_CASE("q-binomials: Pascal recurrences at several bases") {
    const Scalar bases[] = {kQ, UnitMonomial::t_half_power(1).scalar(), -kQ,
                            Scalar::q_power_half(1)};
    for (const Scalar& z : bases) {
        for (long N = 1; N <= 8; ++N) {
            for (long k = 0; k <= N; ++k) {
                Scalar lhs = q_binomial(N, k, z);
                Scalar a = (k >= 1) ? q_binomial(N - 1, k - 1, z) : Scalar::zero();
                Scalar b = (k <= N - 1) ? q_binomial(N - 1, k, z) : Scalar::zero();
                CHECK(lhs == scalar_pow(z, N - k) * a + scalar_pow(z, -k) * b);
                CHECK(lhs == scalar_pow(z, k - N) * a + scalar_pow(z, k) * b);
                CHECK(lhs == q_binomial(N, N - k, z)); // symmetry
            }
        }
    }
    CHECK(q_binomial(4, 2, kQ).str() == "q^(4) + q^(2) + 2 + q^(-2) + q^(-4)");
    CHECK_THROWS_AS((void)q_binomial(3, -1, kQ), Error);
    CHECK_THROWS_AS((void)q_binomial(3, 4, kQ), Error);
    try {
        (void)q_binomial(2, 5, kQ);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::OutOfRange);
    }
}

TEST_CASE("q-factorial basics") {
    CHECK(q_factorial(0, kQ) == Scalar::one());
    CHECK(q_factorial(1, kQ) == Scalar::one());
    CHECK(q_factorial(3, kQ) == q_int(2, kQ) * q_int(3, kQ));
    CHECK_THROWS_AS((void)q_factorial(-1, kQ), Error);
}
