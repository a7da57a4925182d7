#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "polkit/scalar.hpp"
#include "polkit/torus.hpp"

namespace polkit {

// Entries of a and b are 0 or 1, standing for 0 or 1/2.
struct ThetaCharacteristic {
    std::array<int, 2> a{};
    std::array<int, 2> b{};

    bool even() const { return (a[0] * b[0] + a[1] * b[1]) % 2 == 0; }
    std::string str() const;  // "[0,1/2;1/2,0]"
};

// The 10 even genus-2 characteristics, (a1,a2,b1,b2) in lexicographic order.
const std::vector<ThetaCharacteristic>& even_characteristics();

struct ThetaConfig {
    int digits = 30;
    int max_radius = 400;
    unsigned jobs = 1;
    // relative vanishing threshold; empty means 10^(-digits/2)
    std::optional<Real> threshold;

    Real vanishing_threshold() const;
};

struct ThetaNullVector {
    std::vector<Complex> values;  // indexed like even_characteristics()
    int truncation_radius = 0;
    Real max_abs;
};

// Single theta constant, series over |n|_inf <= radius.
Complex theta_constant(const ComplexMatrix& z, const ThetaCharacteristic& c, int radius);

ThetaNullVector even_theta_nulls(const SiegelPoint& z, const ThetaConfig& cfg);
ThetaNullVector even_theta_nulls(const SiegelPoint& z, int digits);

enum class Verdict { Jacobian, Split };
const char* verdict_name(Verdict v);

struct VerdictResult {
    Verdict verdict;
    ThetaNullVector thetas;
    std::vector<int> vanishing;  // indices below threshold
    Real min_ratio;              // min |theta| / max |theta|
    Real threshold;
};

VerdictResult decomposition_verdict(const SiegelPoint& z, const ThetaConfig& cfg);
Verdict decomposition_verdict(const SiegelPoint& z, int digits);

// y^2 = c0 + c1 x + ... + c6 x^6
struct SexticCurve {
    std::array<Rational, 7> c{};

    SexticCurve() = default;
    explicit SexticCurve(std::array<Rational, 7> coeffs);  // checks degree and smoothness
    int degree() const;
    std::string str() const;
};

struct InvariantSet {
    Rational I2, I4, I6, I10;
    Rational i1, i2, i3;
    bool has_absolute = false;
};

InvariantSet igusa_clebsch(const SexticCurve& c);
InvariantSet absolute_invariants(const InvariantSet& ic);
InvariantSet igusa_invariants(const SexticCurve& c);  // both parts
bool same_curve_over_closure(const SexticCurve& c1, const SexticCurve& c2);

// f(x) -> (cx+d)^6 f((ax+b)/(cx+d))
SexticCurve substitute(const SexticCurve& f, const Rational& a, const Rational& b, const Rational& c,
                       const Rational& d);

// Relative mismatch between (sum theta^8)^5 / (prod theta^2)^2 and I4^5/I10^2;
// both sides are invariants of the principally polarized surface.
Real theta_curve_mismatch(const ThetaNullVector& t, const InvariantSet& ic);

}  // namespace polkit
