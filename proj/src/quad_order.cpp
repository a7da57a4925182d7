#include "polkit/quad_order.hpp"

#include <algorithm>
#include <cmath>

namespace polkit {

namespace {

bool squarefree(Integer n)
{
    n = mp::abs(n);
    for (Integer p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

Integer parity(const Integer& x) { return mod_floor(x, Integer(2)); }

}  // namespace

bool is_fundamental_discriminant(const Integer& d)
{
    if (d == 0 || d == 1) return false;
    Integer r = mod_floor(d, Integer(4));
    if (r == 1) return squarefree(d);
    if (r == 0) {
        Integer m = d / 4;
        Integer rm = mod_floor(m, Integer(4));
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

QuadOrder QuadOrder::from_discriminant(const Integer& field_disc, const Integer& conductor)
{
    if (!is_fundamental_discriminant(field_disc))
        throw Error(ErrorKind::InvalidOrder, field_disc.str() + " is not a fundamental discriminant");
    if (conductor < 1) throw Error(ErrorKind::InvalidOrder, "conductor must be positive");
    QuadOrder o;
    o.field_disc = field_disc;
    o.conductor = conductor;
    Integer disc = conductor * conductor * field_disc;
    o.tr = parity(disc);
    o.nm = (o.tr - disc) / 4;
    return o;
}

QuadOrder QuadOrder::from_order_discriminant(const Integer& disc)
{
    Integer r = mod_floor(disc, Integer(4));
    if ((r != 0 && r != 1) || is_square(disc) || disc == 0)
        throw Error(ErrorKind::InvalidOrder, disc.str() + " is not the discriminant of a quadratic order");
    Integer best = 1;
    Integer n = mp::abs(disc);
    for (Integer f = 2; f * f <= n; ++f) {
        if (disc % (f * f) != 0) continue;
        Integer q = disc / (f * f);
        Integer rq = mod_floor(q, Integer(4));
        if ((rq == 0 || rq == 1) && is_fundamental_discriminant(q)) best = f;
    }
    return from_discriminant(disc / (best * best), best);
}

std::string QuadOrder::str() const
{
    std::string s = "disc " + disc().str();
    if (conductor != 1) s += " (conductor " + conductor.str() + ")";
    return s;
}

OrderElement add(const OrderElement& x, const OrderElement& y) { return {x.a + y.a, x.b + y.b}; }
OrderElement sub(const OrderElement& x, const OrderElement& y) { return {x.a - y.a, x.b - y.b}; }
OrderElement scale(const OrderElement& x, const Integer& k) { return {x.a * k, x.b * k}; }

OrderElement mul(const OrderElement& x, const OrderElement& y, const QuadOrder& o)
{
    // omega^2 = tr*omega - nm
    Integer bd = x.b * y.b;
    return {x.a * y.a - bd * o.nm, x.a * y.b + x.b * y.a + bd * o.tr};
}

OrderElement power(OrderElement x, unsigned e, const QuadOrder& o)
{
    OrderElement r(1);
    while (e) {
        if (e & 1u) r = mul(r, x, o);
        x = mul(x, x, o);
        e >>= 1;
    }
    return r;
}

Integer norm(const OrderElement& x, const QuadOrder& o) { return x.a * x.a + x.a * x.b * o.tr + x.b * x.b * o.nm; }
Integer trace(const OrderElement& x, const QuadOrder& o) { return 2 * x.a + x.b * o.tr; }
OrderElement conjugate(const OrderElement& x, const QuadOrder& o) { return {x.a + x.b * o.tr, Integer(-x.b)}; }

int sign(const OrderElement& x, const QuadOrder& o)
{
    // x = (P + b*sqrt(disc))/2
    Integer p = 2 * x.a + x.b * o.tr;
    int sp = p > 0 ? 1 : (p < 0 ? -1 : 0);
    int sb = x.b > 0 ? 1 : (x.b < 0 ? -1 : 0);
    if (sb == 0) return sp;
    if (!o.is_real()) throw Error(ErrorKind::ImaginaryOrder, "no real embedding for a non-rational element");
    if (sp == 0 || sp == sb) return sb;
    return p * p > x.b * x.b * o.disc() ? sp : sb;
}

bool is_totally_positive(const OrderElement& x, const QuadOrder& o)
{
    if (!o.is_real()) return x.b == 0 && x.a > 0;
    return sign(x, o) > 0 && sign(conjugate(x, o), o) > 0;
}

int compare(const OrderElement& x, const OrderElement& y, const QuadOrder& o) { return sign(sub(x, y), o); }

Real real_value(const OrderElement& x, const QuadOrder& o)
{
    Real p = Real(2 * x.a + x.b * o.tr);
    return (p + Real(x.b) * mp::sqrt(Real(o.disc()))) / 2;
}

std::string format(const OrderElement& x, const QuadOrder& o)
{
    // x = (P + b*k*sqrt(m))/2 with m squarefree
    Integer m = o.field_disc;
    Integer k = o.conductor;
    if (mod_floor(m, Integer(4)) == 0) {
        m /= 4;
        k *= 2;
    }
    Integer p = 2 * x.a + x.b * o.tr;
    Integer q = x.b * k;
    Integer den = 2;
    if (parity(p) == 0 && parity(q) == 0) {
        p /= 2;
        q /= 2;
        den = 1;
    }
    std::string s;
    if (p != 0 || q == 0) s = p.str();
    if (q != 0) {
        if (q > 0 && !s.empty()) s += "+";
        if (q == -1)
            s += "-";
        else if (q != 1)
            s += q.str();
        s += "√" + m.str();
    }
    if (den == 2) s = "(" + s + ")/2";
    return s;
}

UnitGroupData fundamental_unit(const QuadOrder& o)
{
    if (!o.is_real()) throw Error(ErrorKind::ImaginaryOrder, "fundamental unit requested for an imaginary order");
    QuadOrder mx = QuadOrder::from_discriminant(o.field_disc, 1);
    const Integer delta = mx.disc();
    const Integer s = isqrt(delta);

    // continued fraction of omega = (P + sqrt(delta))/Q; a convergent p/q gives
    // the candidate unit p - q*conj(omega) = (p - q*tr) + q*omega
    Integer P = mx.tr, Q = 2;
    Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    OrderElement eps;
    bool found = false;
    for (int iter = 0; iter < 1000000 && !found; ++iter) {
        Integer a = Q > 0 ? floor_div(P + s, Q) : Integer(-floor_div(P + s, Integer(-Q)) - 1);
        Integer p = a * p1 + p2, q = a * q1 + q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
        OrderElement cand{p - q * mx.tr, q};
        Integer n = norm(cand, mx);
        if (q > 0 && (n == 1 || n == -1)) {
            eps = cand;
            found = true;
        }
        P = a * Q - P;
        Q = (delta - P * P) / Q;
    }
    if (!found) throw Error(ErrorKind::InvalidOrder, "continued fraction did not produce a unit");

    UnitGroupData u;
    if (o.conductor == 1) {
        u.fundamental_unit = eps;
        u.norm_of_fundamental_unit = norm(eps, mx) == 1 ? 1 : -1;
        return u;
    }
    // least power of the maximal-order unit lying in o: x + y*omega_max is in o
    // iff f | y; then b = y/f and a = x + b*(f*s_max - s_o)/2
    const Integer f = o.conductor;
    OrderElement cur = eps;
    for (unsigned k = 1;; ++k) {
        if (cur.b % f == 0) {
            Integer b = cur.b / f;
            Integer shift = (f * mx.tr - o.tr) / 2;
            u.fundamental_unit = OrderElement{cur.a + b * shift, b};
            u.norm_of_fundamental_unit = norm(u.fundamental_unit, o) == 1 ? 1 : -1;
            return u;
        }
        cur = mul(cur, eps, mx);
        if (k > 100000) throw Error(ErrorKind::InvalidOrder, "no power of the unit lies in the order");
    }
}

UnitGroupData unit_group(const QuadOrder& o)
{
    if (o.is_real()) return fundamental_unit(o);
    UnitGroupData u;
    u.fundamental_unit = OrderElement(1);
    u.torsion = 2;
    if (o.conductor == 1 && o.field_disc == -4) u.torsion = 4;
    if (o.conductor == 1 && o.field_disc == -3) u.torsion = 6;
    return u;
}

PolarizationClassGroup polarization_classes(const QuadOrder& o)
{
    PolarizationClassGroup g;
    g.representatives.push_back(OrderElement(1));
    if (!o.is_real()) return g;
    UnitGroupData u = fundamental_unit(o);
    if (u.norm_of_fundamental_unit == 1) g.representatives.push_back(u.fundamental_unit);
    return g;
}

std::vector<OrderElement> solve_norm_equation(const QuadOrder& o, const Integer& d)
{
    if (!o.is_real()) throw Error(ErrorKind::ImaginaryOrder, "norm equation solver needs a real order");
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "norm must be nonzero");
    std::vector<OrderElement> out;
    if (d < 0) return out;  // totally positive elements have positive norm

    const OrderElement eps = fundamental_unit(o).fundamental_unit;
    const OrderElement eps2 = mul(eps, eps, o);
    const Integer disc = o.disc();

    // One representative per class modulo eps^2 lies in sqrt(d)/eps <= t < sqrt(d)*eps.
    // There t - conj(t) = b*sqrt(disc) and |t - conj(t)| < sqrt(d)*eps, so
    // |b| < sqrt(d)*eps/sqrt(disc); P = t + conj(t) is fixed by P^2 = 4d + b^2 disc.
    const double bound_d = std::sqrt(static_cast<double>(d)) * static_cast<double>(real_value(eps, o)) /
                               std::sqrt(static_cast<double>(disc)) +
                           2.0;
    if (!(bound_d < 4e9)) throw Error(ErrorKind::InvalidArgument, "norm search box exceeds the cap");
    const long bmax = static_cast<long>(bound_d);

    auto in_domain = [&](const OrderElement& t) {
        OrderElement te = mul(t, eps, o);
        OrderElement lo = sub(mul(te, te, o), OrderElement(d, 0));              // (t*eps)^2 - d >= 0
        OrderElement hi = sub(mul(t, t, o), mul(OrderElement(d, 0), eps2, o));  // t^2 - d*eps^2 < 0
        return sign(lo, o) >= 0 && sign(hi, o) < 0;
    };

    const bool fast = disc < Integer(1000000000) && d < Integer(1000000000);
    const long long disc_ll = fast ? static_cast<long long>(disc) : 0;
    const long long d_ll = fast ? static_cast<long long>(d) : 0;

    for (long b = -bmax; b <= bmax; ++b) {
        Integer pp;
        if (fast) {
            unsigned __int128 v = static_cast<unsigned __int128>(4 * d_ll) +
                                  static_cast<unsigned __int128>(b < 0 ? -b : b) * static_cast<unsigned __int128>(b < 0 ? -b : b) *
                                      static_cast<unsigned __int128>(disc_ll);
            long double approx = std::sqrt(static_cast<long double>(v));
            unsigned __int128 r = static_cast<unsigned __int128>(approx);
            while (r * r > v) --r;
            while ((r + 1) * (r + 1) <= v) ++r;
            if (r * r != v) continue;
            unsigned long long hi = static_cast<unsigned long long>(r >> 64);
            unsigned long long lo = static_cast<unsigned long long>(r);
            pp = (Integer(hi) << 64) + Integer(lo);
        } else {
            Integer v = 4 * d + Integer(b) * Integer(b) * disc;
            if (!is_square(v)) continue;
            pp = isqrt(v);
        }
        Integer num = pp - Integer(b) * o.tr;
        if (parity(num) != 0) continue;
        OrderElement t{num / 2, Integer(b)};
        if (mp::gcd(t.a, t.b) != 1) continue;
        if (!is_totally_positive(t, o) || norm(t, o) != d) continue;
        if (!in_domain(t)) continue;
        // report the class member in [sqrt(d), sqrt(d)*eps^2)
        if (sign(sub(mul(t, t, o), OrderElement(d, 0)), o) < 0) t = mul(t, eps2, o);
        out.push_back(t);
    }
    std::sort(out.begin(), out.end(), [&](const OrderElement& x, const OrderElement& y) { return compare(x, y, o) < 0; });
    return out;
}

}  // namespace polkit
