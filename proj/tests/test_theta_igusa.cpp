#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <random>

#include "oracles.hpp"
#include "polkit/theta_igusa.hpp"

using namespace polkit;

namespace {

// built per use: a namespace-scope Real would predate the working precision
Complex imag_unit() { return Complex(Real(0), Real(1)); }

Complex cx(const char* re, const char* im) { return Complex(parse_real(re), parse_real(im)); }

SexticCurve curve(std::initializer_list<long> c)
{
    std::array<Rational, 7> a{};
    std::size_t i = 0;
    for (long v : c) a[i++] = v;
    return SexticCurve(a);
}

ComplexMatrix diag(const Complex& t1, const Complex& t2)
{
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = t1;
    z(1, 1) = t2;
    return z;
}

const SexticCurve C65_1 = curve({42, -62, -7, 28, 3, -4, -1});
const SexticCurve C65_2 = curve({-8, -68, -211, -294, -189, -58, -7});
const SexticCurve C63 = curve({81, 0, 0, 162, 0, 0, -3});
const SexticCurve C35A = curve({-3, -29, -116, -232, -222, -80, 0});

Rational pw(const Rational& x, int e)
{
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

TEST_CASE("even characteristics")
{
    const auto& ev = even_characteristics();
    REQUIRE(ev.size() == 10);
    for (const auto& c : ev) CHECK(c.even());
    CHECK(ev.front().str() == "[0,0;0,0]");
    CHECK(ev.back().str() == "[1/2,1/2;1/2,1/2]");
}

TEST_CASE("theta constants factor on a diagonal period matrix")
{
    const Complex I = imag_unit();
    ComplexMatrix z = diag(I, Real(2) * I);
    const auto& ev = even_characteristics();
    for (const auto& c : ev) {
        Complex got = theta_constant(z, c, 30);
        Complex want = oracle::theta1(I, c.a[0], c.b[0]) * oracle::theta1(Real(2) * I, c.a[1], c.b[1]);
        CHECK(std::abs(got - want) < Real(1e-30));
        bool odd_factor = (c.a[0] && c.b[0]) || (c.a[1] && c.b[1]);
        if (odd_factor)
            CHECK(std::abs(got) < Real(1e-35));
        else
            CHECK(std::abs(got) > Real(1e-3));
    }

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.8, 2.0);
    for (int k = 0; k < 6; ++k) {
        Complex t1(Real(re(rng)), Real(im(rng))), t2(Real(re(rng)), Real(im(rng)));
        for (const auto& c : ev) {
            Complex got = theta_constant(diag(t1, t2), c, 30);
            Complex want = oracle::theta1(t1, c.a[0], c.b[0]) * oracle::theta1(t2, c.a[1], c.b[1]);
            CHECK(std::abs(got - want) < Real(1e-25));
        }
    }
}

TEST_CASE("theta null at i times the identity")
{
    const Complex I = imag_unit();
    // theta_3(i) = pi^(1/4) / Gamma(3/4)
    Real t3 = boost::multiprecision::pow(pi(), Real(1) / 4) / boost::math::tgamma(Real(3) / 4);
    Complex got = theta_constant(diag(I, I), even_characteristics().front(), 30);
    CHECK(std::abs(got - Complex(t3 * t3)) < Real(1e-30));
}

TEST_CASE("decomposition verdicts")
{
    const Complex I = imag_unit();
    CHECK(decomposition_verdict(SiegelPoint(diag(I, Real(2) * I), Real(1e-30)), 30) == Verdict::Split);
    ComplexMatrix z(2, 2);
    z << I, cx("0.5", "0"), cx("0.5", "0"), Real(2) * I;
    CHECK(decomposition_verdict(SiegelPoint(z, Real(1e-30)), 30) == Verdict::Jacobian);

    ThetaConfig cfg;
    VerdictResult r = decomposition_verdict(SiegelPoint(diag(I, Real(2) * I), Real(1e-30)), cfg);
    REQUIRE(r.vanishing.size() == 1);
    CHECK(even_characteristics()[static_cast<std::size_t>(r.vanishing[0])].str() == "[1/2,1/2;1/2,1/2]");
    CHECK(r.thetas.values.size() == 10);

    // a small off-diagonal entry is still a Jacobian at a tight threshold and split at a loose one
    z << I, cx("1e-8", "0"), cx("1e-8", "0"), Real(2) * I;
    cfg.threshold = Real(1e-20);
    CHECK(decomposition_verdict(SiegelPoint(z, Real(1e-30)), cfg).verdict == Verdict::Jacobian);
    cfg.threshold = Real(1e-4);
    CHECK(decomposition_verdict(SiegelPoint(z, Real(1e-30)), cfg).verdict == Verdict::Split);
}

TEST_CASE("Igusa-Clebsch invariants of known curves")
{
    InvariantSet a = igusa_clebsch(C65_1);
    CHECK(a.I2 == 25040);
    CHECK(a.I4 == -389756);
    CHECK(a.I6 == -3309836824LL);
    CHECK(a.I10 == Rational(-22497280000LL));
    InvariantSet b = igusa_clebsch(C65_2);
    CHECK(b.I2 == 24872);
    CHECK(b.I4 == -826556);
    CHECK(b.I6 == -6939338168LL);
    CHECK(b.I10 == Rational(-14623232000LL));
    InvariantSet c = igusa_clebsch(C63);
    CHECK(c.I2 == 215784);
    CHECK(c.I4 == -1970583228LL);
    CHECK(c.I6 == parse_rational("-40958094097080"));
    CHECK(c.I10 == parse_rational("867786649294413090816"));

    InvariantSet abs1 = igusa_invariants(C65_1);
    REQUIRE(abs1.has_absolute);
    CHECK(abs1.i1 == parse_rational("-961328164093760/2197"));
    CHECK(abs1.i2 == parse_rational("2987898435383/10985"));
    CHECK(abs1.i3 == parse_rational("40532675476307/439400"));
    InvariantSet abs35 = igusa_invariants(C35A);
    CHECK(abs35.i1 == parse_rational("-172059988590592/52521875"));
    CHECK(abs35.i2 == parse_rational("9817111789568/52521875"));
    CHECK(abs35.i3 == parse_rational("2837312137472/52521875"));
}

TEST_CASE("I10 is the discriminant of the sextic")
{
    for (const SexticCurve* f : {&C65_1, &C65_2, &C63}) CHECK(igusa_clebsch(*f).I10 == oracle::sextic_discriminant(f->c));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-9, 9);
    int tried = 0;
    while (tried < 25) {
        std::array<Rational, 7> c;
        for (auto& x : c) x = d(rng);
        if (c[6] == 0) continue;
        Rational disc = oracle::sextic_discriminant(c);
        if (disc == 0) continue;
        ++tried;
        CHECK(igusa_clebsch(SexticCurve(c)).I10 == disc);
    }
}

TEST_CASE("invariants under substitution and twist")
{
    SexticCurve g = substitute(C65_1, 1, 1, 0, 1);  // x -> x + 1
    InvariantSet a = igusa_invariants(C65_1), b = igusa_invariants(g);
    CHECK(a.I2 == b.I2);
    CHECK(a.I10 == b.I10);
    CHECK(same_curve_over_closure(C65_1, g));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-4, 4);
    int tried = 0;
    while (tried < 15) {
        Rational p = d(rng), q = d(rng), r = d(rng), s = d(rng);
        Rational det = p * s - q * r;
        if (det == 0) continue;
        SexticCurve h = substitute(C65_1, p, q, r, s);
        if (h.c[6] == 0) continue;
        ++tried;
        InvariantSet x = igusa_invariants(h);
        CHECK(x.I2 == a.I2 * pw(det, 6));
        CHECK(x.I4 == a.I4 * pw(det, 12));
        CHECK(x.I6 == a.I6 * pw(det, 18));
        CHECK(x.I10 == a.I10 * pw(det, 30));
        CHECK(oracle::sextic_discriminant(h.c) == a.I10 * pw(det, 30));
        CHECK(x.i1 == a.i1);
        CHECK(x.i2 == a.i2);
        CHECK(x.i3 == a.i3);
    }

    std::array<Rational, 7> tw = C65_1.c;
    for (auto& x : tw) x *= 9;
    InvariantSet t = igusa_invariants(SexticCurve(tw));
    CHECK(t.i1 == a.i1);
    CHECK(t.i2 == a.i2);
    CHECK(t.i3 == a.i3);
    CHECK(same_curve_over_closure(C65_1, SexticCurve(tw)));
}

TEST_CASE("curve comparison")
{
    CHECK_FALSE(same_curve_over_closure(C65_1, C65_2));
    std::array<Rational, 7> neg = C65_2.c;
    for (auto& x : neg) x = -x;
    CHECK(same_curve_over_closure(C65_2, SexticCurve(neg)));
    CHECK(C35A.degree() == 5);
    CHECK(C65_1.degree() == 6);
}

TEST_CASE("singular curves are rejected")
{
    CHECK_THROWS_AS(curve({0, 0, 1, 0, 0, 0, 1}), Error);  // x^2 (x^4 + 1)
    CHECK_THROWS_AS(curve({1, 0, 1, 0, 0, 0, 0}), Error);  // degree 2
}
