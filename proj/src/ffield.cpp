#include "polkit/ffield.hpp"

#include <algorithm>
#include <thread>

namespace polkit {

namespace {

std::int64_t md(std::int64_t a, std::int64_t p)
{
    a %= p;
    return a < 0 ? a + p : a;
}

using Poly = std::vector<std::int64_t>;  // ascending coefficients mod p

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& b, std::int64_t p)
{
    trim(a);
    const std::int64_t inv = pow_mod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
        std::int64_t c = a.back() * inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = md(a[shift + i] - c * b[i], p);
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t p)
{
    std::int64_t r = 1;
    a = md(a, p);
    while (e > 0) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FiniteField::FiniteField(std::int64_t p, int k) : p_(p), k_(k)
{
    if (p == 2 || !is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not an odd prime");
    if (k != 1 && k != 2) throw Error(ErrorKind::InvalidArgument, "only F_p and F_p^2 are supported");
    if (size() > 1000000) throw Error(ErrorKind::FieldTooLarge, "field of size " + std::to_string(size()) + " > 10^6");
    for (std::int64_t n = 2; n < p; ++n)
        if (pow_mod(n, (p - 1) / 2, p) == p - 1) {
            nonresidue_ = n;
            break;
        }
}

FiniteField::Elt FiniteField::element(std::int64_t index) const
{
    return k_ == 1 ? Elt{index, 0} : Elt{index % p_, index / p_};
}

FiniteField::Elt FiniteField::from_int(std::int64_t v) const { return {md(v, p_), 0}; }

FiniteField::Elt FiniteField::add(const Elt& a, const Elt& b) const { return {(a.x + b.x) % p_, (a.y + b.y) % p_}; }

FiniteField::Elt FiniteField::mul(const Elt& a, const Elt& b) const
{
    if (k_ == 1) return {a.x * b.x % p_, 0};
    std::int64_t x = (a.x * b.x + a.y * b.y % p_ * nonresidue_) % p_;
    std::int64_t y = (a.x * b.y + a.y * b.x) % p_;
    return {x, y};
}

FiniteField::Elt FiniteField::pow(Elt a, std::int64_t e) const
{
    Elt r{1, 0};
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

int FiniteField::chi(const Elt& a) const
{
    if (is_zero(a)) return 0;
    Elt r = pow(a, (size() - 1) / 2);
    return (r.x == 1 && r.y == 0) ? 1 : -1;
}

std::int64_t mod_p(const Rational& q, std::int64_t p)
{
    Integer num = mp::numerator(q), den = mp::denominator(q);
    std::int64_t dn = static_cast<std::int64_t>(Integer(mod_floor(den, Integer(p))));
    if (dn == 0) throw Error(ErrorKind::BadReduction, "p divides a denominator");
    std::int64_t nn = static_cast<std::int64_t>(Integer(mod_floor(num, Integer(p))));
    return nn * pow_mod(dn, p - 2, p) % p;
}

std::array<std::int64_t, 7> reduce_curve(const SexticCurve& c, std::int64_t p)
{
    std::array<std::int64_t, 7> r{};
    for (std::size_t i = 0; i < 7; ++i) r[i] = mod_p(c.c[i], p);
    if (r[6] == 0 && r[5] == 0) throw Error(ErrorKind::BadReduction, "degree drops below 5 mod " + std::to_string(p));
    Poly f(r.begin(), r.end());
    trim(f);
    Poly df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(md(static_cast<std::int64_t>(i) * f[i], p));
    trim(df);
    Poly g = poly_gcd(f, df, p);
    if (g.size() > 1) throw Error(ErrorKind::BadReduction, "curve is singular mod " + std::to_string(p));
    return r;
}

std::int64_t count_points_genus2(const SexticCurve& c, std::int64_t p, int k, unsigned jobs)
{
    FiniteField F(p, k);
    std::array<std::int64_t, 7> r = reduce_curve(c, p);
    std::array<FiniteField::Elt, 7> cf;
    for (std::size_t i = 0; i < 7; ++i) cf[i] = F.from_int(r[i]);

    const std::int64_t q = F.size();
    auto range = [&](std::int64_t lo, std::int64_t hi) {
        std::int64_t n = 0;
        for (std::int64_t idx = lo; idx < hi; ++idx) {
            FiniteField::Elt x = F.element(idx), v = cf[6];
            for (int i = 5; i >= 0; --i) v = F.add(F.mul(v, x), cf[static_cast<std::size_t>(i)]);
            n += 1 + F.chi(v);
        }
        return n;
    };
    std::int64_t affine = 0;
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        affine = range(0, q);
    } else {
        std::vector<std::int64_t> parts(jobs, 0);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] { parts[t] = range(q * t / jobs, q * (t + 1) / jobs); });
        for (auto& th : pool) th.join();
        for (auto v : parts) affine += v;
    }
    std::int64_t infinity;
    if (r[6] == 0)
        infinity = 1;
    else
        infinity = F.chi(cf[6]) == 1 ? 2 : 0;
    return affine + infinity;
}

FrobeniusData frobenius_charpoly_genus2(std::int64_t n1, std::int64_t n2, std::int64_t p)
{
    const std::int64_t s1 = p + 1 - n1;
    const std::int64_t s2 = p * p + 1 - n2;
    if ((s1 * s1 - s2) % 2 != 0) throw Error(ErrorKind::NonIntegral, "(s1^2 - s2) is odd; counts are inconsistent");
    const std::int64_t e1 = s1, e2 = (s1 * s1 - s2) / 2;
    FrobeniusData f;
    f.p = p;
    f.n1 = n1;
    f.n2 = n2;
    f.charpoly = {1, -e1, e2, -p * e1, p * p};
    return f;
}

FrobeniusData frobenius_of(const SexticCurve& c, std::int64_t p, unsigned jobs)
{
    return frobenius_charpoly_genus2(count_points_genus2(c, p, 1, jobs), count_points_genus2(c, p, 2, jobs), p);
}

std::vector<std::int64_t> sqrt_mod(std::int64_t d, std::int64_t p)
{
    std::vector<std::int64_t> roots;
    d = md(d, p);
    for (std::int64_t r = 0; r < p; ++r)
        if (r * r % p == d) roots.push_back(r);
    return roots;
}

std::array<std::int64_t, 3> reduce_and_count_elliptic(const QuadFieldCurveReduction& q)
{
    const std::int64_t p = q.p;
    if (p == 2 || !is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not an odd prime");
    const std::int64_t d = static_cast<std::int64_t>(Integer(mod_floor(q.d, Integer(p))));
    if (d == 0) throw Error(ErrorKind::BadReduction, "p ramifies in Q(sqrt d)");
    if (sqrt_mod(d, p).empty()) throw Error(ErrorKind::Inert, std::to_string(p) + " is inert in Q(sqrt d)");
    if (md(q.root * q.root - d, p) != 0) throw Error(ErrorKind::InvalidArgument, "root is not a square root of d mod p");
    const std::int64_t a = md(mod_p(q.a0, p) + mod_p(q.a1, p) * q.root, p);
    const std::int64_t b = md(mod_p(q.b0, p) + mod_p(q.b1, p) * q.root, p);
    if (md(4 * (a * a % p) % p * a + 27 * (b * b % p), p) == 0)
        throw Error(ErrorKind::BadReduction, "elliptic curve is singular mod " + std::to_string(p));
    std::int64_t n = p + 1;
    for (std::int64_t x = 0; x < p; ++x) {
        std::int64_t v = md((x * x % p * x + a * x + b) % p, p);
        if (v == 0) continue;
        n += pow_mod(v, (p - 1) / 2, p) == 1 ? 1 : -1;
    }
    const std::int64_t ap = p + 1 - n;
    return {1, -ap, p};
}

std::array<std::int64_t, 5> square_quadratic(const std::array<std::int64_t, 3>& q)
{
    return {q[0] * q[0], 2 * q[0] * q[1], q[1] * q[1] + 2 * q[0] * q[2], 2 * q[1] * q[2], q[2] * q[2]};
}

Disambiguation disambiguate_sign(const std::pair<SexticCurve, SexticCurve>& candidates,
                                 const QuadFieldCurveReduction& q, unsigned jobs)
{
    Disambiguation out;
    out.quartics[0] = frobenius_of(candidates.first, q.p, jobs).charpoly;
    out.quartics[1] = frobenius_of(candidates.second, q.p, jobs).charpoly;
    const std::int64_t d = static_cast<std::int64_t>(Integer(mod_floor(q.d, Integer(q.p))));
    std::vector<std::int64_t> roots = sqrt_mod(d, q.p);
    if (roots.empty()) throw Error(ErrorKind::Inert, std::to_string(q.p) + " is inert in Q(sqrt d)");
    int matched[2] = {0, 0};
    std::int64_t match_root[2] = {0, 0};
    for (std::int64_t r : roots) {
        QuadFieldCurveReduction qr = q;
        qr.root = r;
        auto quad = reduce_and_count_elliptic(qr);
        out.quadratics.push_back(quad);
        auto sq = square_quadratic(quad);
        for (int i = 0; i < 2; ++i)
            if (out.quartics[static_cast<std::size_t>(i)] == sq && !matched[i]) {
                matched[i] = 1;
                match_root[i] = r;
            }
    }
    if (matched[0] && matched[1]) throw Error(ErrorKind::BothMatch, "both candidates match; try another split prime");
    if (!matched[0] && !matched[1]) throw Error(ErrorKind::NoMatch, "no candidate matches the elliptic data");
    out.selected = matched[0] ? 0 : 1;
    out.root = match_root[out.selected];
    return out;
}

}  // namespace polkit
