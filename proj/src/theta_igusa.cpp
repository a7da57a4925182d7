#include "polkit/theta_igusa.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace polkit {

std::string ThetaCharacteristic::str() const
{
    auto h = [](int v) { return v ? std::string("1/2") : std::string("0"); };
    return "[" + h(a[0]) + "," + h(a[1]) + ";" + h(b[0]) + "," + h(b[1]) + "]";
}

const std::vector<ThetaCharacteristic>& even_characteristics()
{
    static const std::vector<ThetaCharacteristic> chars = [] {
        std::vector<ThetaCharacteristic> v;
        for (int m = 0; m < 16; ++m) {
            ThetaCharacteristic c;
            c.a = {(m >> 3) & 1, (m >> 2) & 1};
            c.b = {(m >> 1) & 1, m & 1};
            if (c.even()) v.push_back(c);
        }
        return v;
    }();
    return chars;
}

Real ThetaConfig::vanishing_threshold() const
{
    if (threshold) return *threshold;
    return pow10(-std::max(1, digits / 2));
}

const char* verdict_name(Verdict v) { return v == Verdict::Jacobian ? "Jacobian" : "Split"; }

Complex theta_constant(const ComplexMatrix& z, const ThetaCharacteristic& c, int radius)
{
    const Eigen::Index g = z.rows();
    const Real half(0.5);
    const Complex ipi(Real(0), pi());
    Complex sum(0);
    if (g == 1) {
        for (int n = -radius; n <= radius; ++n) {
            Real v = Real(n) + (c.a[0] ? half : Real(0));
            Complex e = ipi * (z(0, 0) * Complex(v * v) + Complex(2 * v * (c.b[0] ? half : Real(0))));
            sum += std::exp(e);
        }
        return sum;
    }
    if (g != 2) throw Error(ErrorKind::InvalidArgument, "theta constants are implemented for genus 1 and 2");
    const Real b0 = c.b[0] ? half : Real(0), b1 = c.b[1] ? half : Real(0);
    const Complex z00 = z(0, 0), z01 = z(0, 1) + z(1, 0), z11 = z(1, 1);
    for (int n0 = -radius; n0 <= radius; ++n0) {
        Real v0 = Real(n0) + (c.a[0] ? half : Real(0));
        for (int n1 = -radius; n1 <= radius; ++n1) {
            Real v1 = Real(n1) + (c.a[1] ? half : Real(0));
            Complex quad = z00 * Complex(v0 * v0) + z01 * Complex(v0 * v1) + z11 * Complex(v1 * v1);
            Complex e = ipi * (quad + Complex(2 * (v0 * b0 + v1 * b1)));
            sum += std::exp(e);
        }
    }
    return sum;
}

namespace {

// log10 of sum_{k > r} 8k exp(-pi*lambda*(k-1/2)^2), an upper bound for the
// omitted terms of any characteristic.
double log10_tail(double lambda, int r)
{
    double total = 0.0;
    double first = 0.0;
    bool have = false;
    for (int k = r + 1; k < r + 200; ++k) {
        double x = k - 0.5;
        double l = std::log10(8.0 * k) - M_PI * lambda * x * x / std::log(10.0);
        if (!have) {
            first = l;
            have = true;
        }
        total += std::pow(10.0, l - first);
        if (l - first < -40) break;
    }
    return first + std::log10(total);
}

int radius_for(double lambda, double target_log10, int cap)
{
    for (int r = 1; r <= cap; ++r)
        if (log10_tail(lambda, r) < target_log10) return r;
    return cap + 1;
}

}  // namespace

ThetaNullVector even_theta_nulls(const SiegelPoint& z, const ThetaConfig& cfg)
{
    if (z.z.rows() != 2) throw Error(ErrorKind::InvalidArgument, "even theta nulls need a genus-2 Siegel point");
    Real lam_r = min_imag_eigenvalue(z.z);
    if (lam_r <= Real("1e-3"))
        throw Error(ErrorKind::NotSiegel, "min eigenvalue of Im Z is " + to_string(lam_r, 6) + ", need > 1e-3");
    const double lambda = static_cast<double>(lam_r);
    const auto& chars = even_characteristics();

    auto evaluate = [&](int radius) {
        std::vector<Complex> vals(chars.size());
        unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(chars.size())));
        if (jobs == 1) {
            for (std::size_t i = 0; i < chars.size(); ++i) vals[i] = theta_constant(z.z, chars[i], radius);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < jobs; ++t)
                pool.emplace_back([&, t] {
                    for (std::size_t i = t; i < chars.size(); i += jobs) vals[i] = theta_constant(z.z, chars[i], radius);
                });
            for (auto& th : pool) th.join();
        }
        return vals;
    };

    // first guess assumes max|theta| >= 1e-3, then re-check against the actual maximum
    int radius = radius_for(lambda, -cfg.digits - 3.0, cfg.max_radius);
    for (;;) {
        if (radius > cfg.max_radius)
            throw Error(ErrorKind::PrecisionUnreachable,
                        "truncation radius would exceed the cap " + std::to_string(cfg.max_radius));
        ThetaNullVector out;
        out.values = evaluate(radius);
        out.truncation_radius = radius;
        out.max_abs = 0;
        for (const auto& v : out.values) out.max_abs = std::max(out.max_abs, Real(std::abs(v)));
        double log_max = out.max_abs > 0 ? static_cast<double>(mp::log10(out.max_abs)) : -1e9;
        double need = -cfg.digits + log_max;
        if (log10_tail(lambda, radius) < need) return out;
        int next = radius_for(lambda, need, cfg.max_radius);
        radius = std::max(next, radius + 1);
    }
}

ThetaNullVector even_theta_nulls(const SiegelPoint& z, int digits)
{
    ThetaConfig cfg;
    cfg.digits = digits;
    return even_theta_nulls(z, cfg);
}

VerdictResult decomposition_verdict(const SiegelPoint& z, const ThetaConfig& cfg)
{
    VerdictResult r{Verdict::Jacobian, even_theta_nulls(z, cfg), {}, Real(1), cfg.vanishing_threshold()};
    if (r.thetas.max_abs == 0) throw Error(ErrorKind::AmbiguousVanishing, "all theta constants vanish");
    for (std::size_t i = 0; i < r.thetas.values.size(); ++i) {
        Real ratio = std::abs(r.thetas.values[i]) / r.thetas.max_abs;
        r.min_ratio = std::min(r.min_ratio, ratio);
        if (ratio < r.threshold) r.vanishing.push_back(static_cast<int>(i));
    }
    if (r.vanishing.size() >= 2)
        throw Error(ErrorKind::AmbiguousVanishing,
                    std::to_string(r.vanishing.size()) + " even theta constants vanish; Z is degenerate");
    r.verdict = r.vanishing.empty() ? Verdict::Jacobian : Verdict::Split;
    return r;
}

Verdict decomposition_verdict(const SiegelPoint& z, int digits)
{
    ThetaConfig cfg;
    cfg.digits = digits;
    return decomposition_verdict(z, cfg).verdict;
}

// ---- binary forms and Igusa-Clebsch invariants ----

namespace {

// sum c[i] x^i y^(d-i)
using Form = std::vector<Rational>;

int deg(const Form& f) { return static_cast<int>(f.size()) - 1; }

Form dx(const Form& f)
{
    if (f.size() <= 1) return Form{Rational(0)};
    Form r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = Rational(static_cast<long>(i)) * f[i];
    return r;
}

Form dy(const Form& f)
{
    const int d = deg(f);
    if (d <= 0) return Form{Rational(0)};
    Form r(f.size() - 1);
    for (int i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] = Rational(d - i) * f[static_cast<std::size_t>(i)];
    return r;
}

Form derive(Form f, int nx, int ny)
{
    for (int i = 0; i < nx; ++i) f = dx(f);
    for (int i = 0; i < ny; ++i) f = dy(f);
    return f;
}

Form product(const Form& f, const Form& g)
{
    Form r(f.size() + g.size() - 1, Rational(0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    return r;
}

Integer factorial(int n)
{
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Integer binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// k-th transvectant (f,g)_k, normalized by (n-k)!(m-k)!/(n!m!)
Form transvectant(const Form& f, const Form& g, int k)
{
    const int n = deg(f), m = deg(g);
    Form acc(static_cast<std::size_t>(n + m - 2 * k + 1), Rational(0));
    for (int j = 0; j <= k; ++j) {
        Form t = product(derive(f, k - j, j), derive(g, j, k - j));
        Rational coef = Rational(binomial(k, j)) * (j % 2 ? -1 : 1);
        for (std::size_t i = 0; i < t.size(); ++i) acc[i] += coef * t[i];
    }
    Rational norm(factorial(n - k) * factorial(m - k), factorial(n) * factorial(m));
    for (auto& v : acc) v *= norm;
    return acc;
}

struct Clebsch {
    Rational A, B, C, D;
};

Clebsch clebsch(const SexticCurve& curve)
{
    Form f(curve.c.begin(), curve.c.end());
    Form i = transvectant(f, f, 4);
    Form delta = transvectant(i, i, 2);
    Form y1 = transvectant(f, i, 4);
    Form y2 = transvectant(i, y1, 2);
    Form y3 = transvectant(i, y2, 2);
    return {transvectant(f, f, 6)[0], transvectant(i, i, 4)[0], transvectant(i, delta, 4)[0],
            transvectant(y3, y1, 2)[0]};
}

InvariantSet ic_from_clebsch(const Clebsch& k)
{
    const Rational& A = k.A;
    const Rational& B = k.B;
    const Rational& C = k.C;
    const Rational& D = k.D;
    InvariantSet s;
    s.I2 = -120 * A;
    s.I4 = -720 * A * A + 6750 * B;
    s.I6 = 8640 * A * A * A - 108000 * A * B + 202500 * C;
    s.I10 = -62208 * A * A * A * A * A + 972000 * A * A * A * B + 1620000 * A * A * C - 3037500 * A * B * B -
            6075000 * B * C - 4556250 * D;
    return s;
}

}  // namespace

SexticCurve::SexticCurve(std::array<Rational, 7> coeffs) : c(std::move(coeffs))
{
    int d = degree();
    if (d != 5 && d != 6) throw Error(ErrorKind::SingularCurve, "degree " + std::to_string(d) + " is not 5 or 6");
    if (ic_from_clebsch(clebsch(*this)).I10 == 0) throw Error(ErrorKind::SingularCurve, "discriminant is zero");
}

int SexticCurve::degree() const
{
    for (int i = 6; i >= 0; --i)
        if (c[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

std::string SexticCurve::str() const
{
    std::string s;
    for (int i = 6; i >= 0; --i) {
        const Rational& v = c[static_cast<std::size_t>(i)];
        if (v == 0) continue;
        Rational a = mp::abs(v);
        std::string sign = v < 0 ? "-" : (s.empty() ? "" : "+");
        std::string coef = (a == 1 && i > 0) ? "" : to_string(a);
        std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
        if (!coef.empty() && !mono.empty()) coef += "*";
        s += sign + coef + mono;
    }
    return s.empty() ? "0" : s;
}

InvariantSet igusa_clebsch(const SexticCurve& c)
{
    InvariantSet s = ic_from_clebsch(clebsch(c));
    if (s.I10 == 0) throw Error(ErrorKind::SingularCurve, "discriminant is zero");
    return s;
}

// Normalisation of i1, i2, i3; calibrated once against the 35A triple, and
// all three constants come out as 1.
static const Rational kCalib1 = 1, kCalib2 = 1, kCalib3 = 1;

InvariantSet absolute_invariants(const InvariantSet& ic)
{
    if (ic.I10 == 0) throw Error(ErrorKind::ZeroI10, "I10 vanishes");
    InvariantSet s = ic;
    s.i1 = kCalib1 * ic.I2 * ic.I2 * ic.I2 * ic.I2 * ic.I2 / ic.I10;
    s.i2 = kCalib2 * ic.I2 * ic.I2 * ic.I2 * ic.I4 / ic.I10;
    s.i3 = kCalib3 * ic.I2 * ic.I2 * ic.I6 / ic.I10;
    s.has_absolute = true;
    return s;
}

InvariantSet igusa_invariants(const SexticCurve& c) { return absolute_invariants(igusa_clebsch(c)); }

bool same_curve_over_closure(const SexticCurve& c1, const SexticCurve& c2)
{
    // equality in weighted projective space with weights (1,2,3,5); with
    // I2 != 0 this is equality of the absolute triples
    InvariantSet a = igusa_clebsch(c1), b = igusa_clebsch(c2);
    const std::array<Rational, 4> x{a.I2, a.I4, a.I6, a.I10}, y{b.I2, b.I4, b.I6, b.I10};
    const std::array<unsigned, 4> w{1, 2, 3, 5};
    auto rpow = [](const Rational& v, unsigned e) {
        Rational r = 1;
        for (unsigned k = 0; k < e; ++k) r *= v;
        return r;
    };
    for (std::size_t i = 0; i < 4; ++i)
        if ((x[i] == 0) != (y[i] == 0)) return false;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (x[i] == 0 || x[j] == 0) continue;
            if (rpow(y[i], w[j]) * rpow(x[j], w[i]) != rpow(x[i], w[j]) * rpow(y[j], w[i])) return false;
        }
    return true;
}

SexticCurve substitute(const SexticCurve& f, const Rational& a, const Rational& b, const Rational& c,
                       const Rational& d)
{
    Form lin1{b, a}, lin2{d, c};  // ax+b, cx+d
    Form acc(7, Rational(0));
    for (int i = 0; i <= 6; ++i) {
        Form t{f.c[static_cast<std::size_t>(i)]};
        for (int k = 0; k < i; ++k) t = product(t, lin1);
        for (int k = i; k < 6; ++k) t = product(t, lin2);
        for (std::size_t k = 0; k < t.size(); ++k) acc[k] += t[k];
    }
    std::array<Rational, 7> out;
    for (std::size_t k = 0; k < 7; ++k) out[k] = acc[k];
    return SexticCurve(out);
}

Real theta_curve_mismatch(const ThetaNullVector& t, const InvariantSet& ic)
{
    Complex s8(0), p2(1);
    for (const auto& v : t.values) {
        Complex v2 = v * v;
        Complex v4 = v2 * v2;
        s8 += v4 * v4;
        p2 *= v2;
    }
    Complex s = s8 * s8 * s8 * s8 * s8;
    Complex lhs = s / (p2 * p2);
    Real num = Real(mp::numerator(ic.I4)), den = Real(mp::denominator(ic.I4));
    Real i4 = num / den;
    Real i10 = Real(mp::numerator(ic.I10)) / Real(mp::denominator(ic.I10));
    Real rhs = i4 * i4 * i4 * i4 * i4 / (i10 * i10);
    if (rhs == 0) return std::abs(lhs);
    return std::abs(lhs - Complex(rhs)) / mp::abs(rhs);
}

}  // namespace polkit
