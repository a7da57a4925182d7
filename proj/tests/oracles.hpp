#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the library beyond the scalar typedefs.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "polkit/scalar.hpp"

namespace oracle {

using polkit::Complex;
using polkit::Integer;
using polkit::IntMatrix;
using polkit::RatMatrix;
using polkit::Rational;
using polkit::Real;

inline RatMatrix rat(std::initializer_list<std::initializer_list<long>> rows, long den = 1)
{
    RatMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (long v : row) m(r, c++) = Rational(v) / den;
        ++r;
    }
    return m;
}

inline IntMatrix ints(std::initializer_list<std::initializer_list<long>> rows)
{
    IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (long v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

inline RatMatrix minor_of(const RatMatrix& a, Eigen::Index skip_r, Eigen::Index skip_c)
{
    const Eigen::Index n = a.rows();
    RatMatrix m(n - 1, n - 1);
    for (Eigen::Index i = 0, r = 0; i < n; ++i) {
        if (i == skip_r) continue;
        for (Eigen::Index j = 0, c = 0; j < n; ++j) {
            if (j == skip_c) continue;
            m(r, c++) = a(i, j);
        }
        ++r;
    }
    return m;
}

// Laplace expansion along the first row.
inline Rational det(const RatMatrix& a)
{
    const Eigen::Index n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    Rational s = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (a(0, j) == 0) continue;
        Rational t = a(0, j) * det(minor_of(a, 0, j));
        s += (j % 2 == 0) ? t : Rational(-t);
    }
    return s;
}

// Pf(A) = sum_{j>0} (-1)^(j+1) a_0j Pf(A with rows/cols 0 and j removed).
inline Rational pfaffian(const RatMatrix& a)
{
    const Eigen::Index n = a.rows();
    if (n == 0) return 1;
    if (n % 2) return 0;
    Rational s = 0;
    for (Eigen::Index j = 1; j < n; ++j) {
        if (a(0, j) == 0) continue;
        RatMatrix m(n - 2, n - 2);
        for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
            if (r == 0 || r == j) continue;
            for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
                if (c == 0 || c == j) continue;
                m(rr, cc++) = a(r, c);
            }
            ++rr;
        }
        Rational t = a(0, j) * pfaffian(m);
        s += (j % 2 == 1) ? t : Rational(-t);
    }
    return s;
}

inline Integer gcd_entries(const IntMatrix& a)
{
    Integer g = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) g = boost::multiprecision::gcd(g, a(i, j));
    return g;
}

// Elementary divisors (d1, d2) of a nondegenerate 4x4 integral alternating
// form: d1 is the gcd of the entries and d1*d2 = |Pf|.
inline std::pair<Integer, Integer> type4(const IntMatrix& a)
{
    Integer d1 = gcd_entries(a);
    Rational pf = pfaffian(a.cast<Rational>());
    Integer p = boost::multiprecision::numerator(pf);
    if (p < 0) p = -p;
    return {d1, p / d1};
}

inline IntMatrix random_skew(std::mt19937_64& rng, int n, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    IntMatrix a = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = d(rng);
            a(j, i) = -a(i, j);
        }
    return a;
}

// Product of random elementary row operations and swaps; det = +-1.
inline IntMatrix random_unimodular(std::mt19937_64& rng, int n, int steps = 12)
{
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3), coin(0, 4);
    IntMatrix s = IntMatrix::Identity(n, n);
    for (int k = 0; k < steps; ++k) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        if (coin(rng) == 0)
            s.row(i).swap(s.row(j));
        else
            s.row(i) += Integer(coef(rng)) * s.row(j);
    }
    return s;
}

// --- quadratic orders: elements a + b*omega with omega^2 = tr*omega - nm

struct Quad {
    long tr, nm;  // minimal polynomial x^2 - tr x + nm
    long disc() const { return tr * tr - 4 * nm; }
    long norm(long a, long b) const { return a * a + tr * a * b + nm * b * b; }
    double value(long a, long b, int sign = 1) const
    {
        return a + b * (tr + sign * std::sqrt(static_cast<double>(disc()))) / 2.0;
    }
};

// Totally positive primitive solutions of norm = d in a box, as (a,b).
inline std::vector<std::pair<long, long>> norm_solutions(const Quad& q, long d, long box)
{
    std::vector<std::pair<long, long>> out;
    for (long a = -box; a <= box; ++a)
        for (long b = -box; b <= box; ++b) {
            if (q.norm(a, b) != d) continue;
            if (q.value(a, b, 1) <= 0 || q.value(a, b, -1) <= 0) continue;
            long g = std::gcd(std::labs(a), std::labs(b));
            if (g > 1) continue;
            out.emplace_back(a, b);
        }
    return out;
}

// x / y is in the order and a unit: the classes agree up to units.
inline bool unit_ratio(const Quad& q, std::pair<long, long> x, std::pair<long, long> y, long& ua, long& ub)
{
    // x * conj(y) / N(y); conj(a + b w) = (a + b tr) - b w
    long ya = y.first + y.second * q.tr, yb = -y.second;
    long n = q.norm(y.first, y.second);
    // (x.a + x.b w)(ya + yb w) with w^2 = tr w - nm
    long ra = x.first * ya - x.second * yb * q.nm;
    long rb = x.first * yb + x.second * ya + x.second * yb * q.tr;
    if (n == 0 || ra % n || rb % n) return false;
    ua = ra / n;
    ub = rb / n;
    long un = q.norm(ua, ub);
    return un == 1 || un == -1;
}

// --- genus one theta constants, theta[a;b](tau) with a, b in {0, 1/2}

inline Complex theta1(const Complex& tau, int a, int b, int terms = 60)
{
    const Real pi = boost::multiprecision::acos(Real(-1));
    const Complex I(Real(0), Real(1));
    Complex s(0);
    for (int n = -terms; n <= terms; ++n) {
        Real x = Real(n) + Real(a) / 2;
        s += std::exp(I * pi * x * x * tau + Real(2) * I * pi * x * (Real(b) / 2));
    }
    return s;
}

// --- discriminant of a binary sextic via the Sylvester resultant

inline Rational bareiss_det(RatMatrix a)
{
    const Eigen::Index n = a.rows();
    Rational sign = 1, prev = 1;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            a.row(p).swap(a.row(k));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// f = c0 + ... + c6 x^6 with c6 != 0; disc = (-1)^15 Res(f, f') / c6.
inline Rational sextic_discriminant(const std::array<Rational, 7>& c)
{
    std::array<Rational, 6> d;
    for (int i = 1; i <= 6; ++i) d[static_cast<std::size_t>(i - 1)] = c[static_cast<std::size_t>(i)] * i;
    RatMatrix s = RatMatrix::Zero(11, 11);
    for (int r = 0; r < 5; ++r)
        for (int i = 0; i <= 6; ++i) s(r, r + i) = c[static_cast<std::size_t>(6 - i)];
    for (int r = 0; r < 6; ++r)
        for (int i = 0; i <= 5; ++i) s(5 + r, r + i) = d[static_cast<std::size_t>(5 - i)];
    return -bareiss_det(s) / c[6];
}

// --- naive point counts, own arithmetic

inline long mod(long a, long p) { return ((a % p) + p) % p; }

inline long legendre(long a, long p)
{
    a = mod(a, p);
    if (a == 0) return 0;
    for (long x = 1; x < p; ++x)
        if (x * x % p == a) return 1;
    return -1;
}

// y^2 = f(x) over F_p by counting pairs (x, y) directly.
inline long count_fp(const std::vector<long>& f, long p)
{
    long n = 0;
    for (long x = 0; x < p; ++x) {
        long v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = mod(v * x + f[i], p);
        for (long y = 0; y < p; ++y) n += (y * y % p == v);
    }
    long lead = mod(f.back(), p);
    if (f.size() == 7 && lead != 0) n += legendre(lead, p) == 1 ? 2 : 0;
    else n += 1;
    return n;
}

// F_{p^2} = F_p[t]/(t^2 - r) with r the largest nonresidue.
inline long count_fp2(const std::vector<long>& f, long p)
{
    long r = p - 1;
    while (legendre(r, p) != -1) --r;
    using E = std::pair<long, long>;
    auto mul = [&](E a, E b) { return E{mod(a.first * b.first + a.second * b.second % p * r, p), mod(a.first * b.second + a.second * b.first, p)}; };
    // squares of F_{p^2}: count of y with y^2 = v via a table
    std::vector<long> sq(static_cast<std::size_t>(p * p), 0);
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b) {
            E s = mul({a, b}, {a, b});
            ++sq[static_cast<std::size_t>(s.first * p + s.second)];
        }
    long n = 0;
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b) {
            E v{0, 0};
            for (std::size_t i = f.size(); i-- > 0;) {
                v = mul(v, {a, b});
                v.first = mod(v.first + f[i], p);
            }
            n += sq[static_cast<std::size_t>(v.first * p + v.second)];
        }
    long lead = mod(f.back(), p);
    n += (f.size() == 7 && lead != 0) ? 2 : 1;  // every element of F_p is a square in F_p^2
    return n;
}

}  // namespace oracle
