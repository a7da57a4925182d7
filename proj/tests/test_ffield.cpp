#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polkit/ffield.hpp"

using namespace polkit;

namespace {

SexticCurve curve(const std::vector<long>& c)
{
    std::array<Rational, 7> a{};
    for (std::size_t i = 0; i < c.size(); ++i) a[i] = c[i];
    return SexticCurve(a);
}

const std::vector<long> CPLUS = {377, 17238, 278850, 2170636, 8746257, 17307966, 12909572};

std::vector<long> negated(std::vector<long> c)
{
    for (auto& x : c) x = -x;
    return c;
}

// charpoly of Frobenius from N1, N2, computed independently of the library
std::array<long, 5> charpoly_oracle(long n1, long n2, long p)
{
    long s1 = p + 1 - n1;
    long s2 = p * p + 1 - n2;
    long a2 = (s1 * s1 - s2) / 2;
    return {1, -s1, a2, -p * s1, p * p};
}

// y^2 = x^3 + A x + B over F_p by a character sum
long elliptic_trace(long a, long b, long p)
{
    long n = p + 1;
    for (long x = 0; x < p; ++x) n += oracle::legendre(x * x % p * x + a * x + b, p);
    return p + 1 - n;
}

QuadFieldCurveReduction weil23()
{
    QuadFieldCurveReduction q;
    q.a0 = -6903;
    q.a1 = -1908;
    q.b0 = -310050;
    q.b1 = -86004;
    q.d = 13;
    q.p = 23;
    return q;
}

}  // namespace

TEST_CASE("finite field arithmetic")
{
    for (int k : {1, 2}) {
        FiniteField f(7, k);
        CHECK(f.size() == (k == 1 ? 7 : 49));
        int squares = 0;
        for (std::int64_t i = 0; i < f.size(); ++i) {
            auto e = f.element(i);
            if (f.is_zero(e)) {
                CHECK(f.chi(e) == 0);
                continue;
            }
            CHECK(f.pow(e, f.size() - 1) == f.from_int(1));
            squares += f.chi(e) == 1;
            CHECK(f.chi(f.mul(e, e)) == 1);
        }
        CHECK(squares == (f.size() - 1) / 2);
    }
    CHECK_THROWS_AS(FiniteField(9, 1), Error);
    try {
        FiniteField big(1009, 2);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldTooLarge);
    }
}

TEST_CASE("modular helpers")
{
    CHECK(sqrt_mod(13, 23) == std::vector<std::int64_t>{6, 17});
    CHECK(sqrt_mod(5, 23).empty());
    CHECK(pow_mod(3, 22, 23) == 1);
    CHECK(mod_p(Rational(1, 2), 23) == 12);
    CHECK(mod_p(Rational(-7), 5) == 3);
    CHECK_THROWS_AS(mod_p(Rational(1, 23), 23), Error);
    CHECK(is_prime(1000003));
    CHECK_FALSE(is_prime(1000001));
}

TEST_CASE("point counts of y^2 = x^5 + 1 over F_3")
{
    SexticCurve c = curve({1, 0, 0, 0, 0, 1});
    CHECK(count_points_genus2(c, 3, 1) == oracle::count_fp({1, 0, 0, 0, 0, 1}, 3));
    CHECK(count_points_genus2(c, 3, 2) == oracle::count_fp2({1, 0, 0, 0, 0, 1}, 3));
}

TEST_CASE("point counts against the naive oracle")
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> coef(-20, 20);
    int tried = 0;
    for (long p : {5L, 7L, 11L, 13L, 17L}) {
        for (int k = 0; k < 6; ++k) {
            std::vector<long> f(7);
            for (auto& x : f) x = coef(rng);
            if (k % 2) f[6] = 0;  // quintic models too
            SexticCurve c;
            try {
                c = curve(f);
                reduce_curve(c, p);
            } catch (const Error&) {
                continue;
            }
            ++tried;
            long n1 = oracle::count_fp(f, p), n2 = oracle::count_fp2(f, p);
            CHECK(count_points_genus2(c, p, 1) == n1);
            CHECK(count_points_genus2(c, p, 2, 2) == n2);
            // Weil bounds for genus 2
            CHECK(std::abs(double(n1 - (p + 1))) <= 4 * std::sqrt(double(p)));
            CHECK(std::abs(double(n2 - (p * p + 1))) <= 4 * double(p));
            FrobeniusData fd = frobenius_of(c, p);
            auto want = charpoly_oracle(n1, n2, p);
            for (int i = 0; i < 5; ++i) CHECK(fd.charpoly[static_cast<std::size_t>(i)] == want[static_cast<std::size_t>(i)]);
        }
    }
    CHECK(tried >= 15);
}

TEST_CASE("Frobenius polynomials from counts")
{
    FrobeniusData f = frobenius_charpoly_genus2(8, 50, 7);
    CHECK(f.charpoly == std::array<std::int64_t, 5>{1, 0, 0, 0, 49});
    CHECK_THROWS_AS(frobenius_charpoly_genus2(9, 50, 7), Error);

    // y^2 = x^3 + 1 over F_5 is supersingular; the square of its quadratic is
    // the polynomial of E x E
    CHECK(elliptic_trace(0, 1, 5) == 0);
    CHECK(square_quadratic({1, 0, 5}) == std::array<std::int64_t, 5>{1, 0, 10, 0, 25});
    CHECK(square_quadratic({1, -3, 23}) == std::array<std::int64_t, 5>{1, -6, 55, -138, 529});
}

TEST_CASE("the conjugate pair over F_23")
{
    std::vector<long> cm = negated(CPLUS);
    long n1p = oracle::count_fp(CPLUS, 23), n2p = oracle::count_fp2(CPLUS, 23);
    long n1m = oracle::count_fp(cm, 23), n2m = oracle::count_fp2(cm, 23);
    CHECK(n1p == 18);
    CHECK(n1m == 30);
    CHECK(n2p == 604);
    CHECK(n2m == 604);
    FrobeniusData fp = frobenius_of(curve(CPLUS), 23, 2);
    FrobeniusData fm = frobenius_of(curve(cm), 23);
    CHECK(fp.charpoly == std::array<std::int64_t, 5>{1, -6, 55, -138, 529});
    CHECK(fm.charpoly == std::array<std::int64_t, 5>{1, 6, 55, 138, 529});
    auto op = charpoly_oracle(n1p, n2p, 23);
    for (int i = 0; i < 5; ++i) CHECK(fp.charpoly[static_cast<std::size_t>(i)] == op[static_cast<std::size_t>(i)]);
}

TEST_CASE("elliptic reduction and sign disambiguation")
{
    QuadFieldCurveReduction q = weil23();
    for (std::int64_t r : {6, 17}) {
        q.root = r;
        long a = oracle::mod(-6903 - 1908 * r, 23), b = oracle::mod(-310050 - 86004 * r, 23);
        auto quad = reduce_and_count_elliptic(q);
        CHECK(quad == std::array<std::int64_t, 3>{1, -elliptic_trace(a, b, 23), 23});
    }

    auto pair = std::make_pair(curve(CPLUS), curve(negated(CPLUS)));
    Disambiguation d = disambiguate_sign(pair, weil23());
    CHECK(d.selected == 0);
    CHECK(d.root == 6);
    CHECK(d.quadratics.size() == 2);

    Disambiguation s = disambiguate_sign({pair.second, pair.first}, weil23());
    CHECK(s.selected == 1);

    try {
        disambiguate_sign({pair.first, pair.first}, weil23());
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BothMatch);
    }
}

TEST_CASE("reduction errors")
{
    QuadFieldCurveReduction q = weil23();
    q.p = 5;  // 13 is not a square mod 5
    try {
        disambiguate_sign({curve(CPLUS), curve(negated(CPLUS))}, q);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Inert);
    }
    q.p = 13;
    q.root = 0;
    try {
        reduce_and_count_elliptic(q);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadReduction);
    }
    try {
        reduce_curve(curve({1, 0, 0, 0, 0, 0, 3}), 3);  // degree drops
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadReduction);
    }
    try {
        reduce_curve(curve({1, 3, 0, 0, 0, 0, 1}), 3);  // x^6 + 1 = (x^2 + 1)^3 mod 3
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadReduction);
    }
    try {
        count_points_genus2(curve({1, 0, 0, 0, 0, 1}), 1009, 2);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldTooLarge);
    }
}
