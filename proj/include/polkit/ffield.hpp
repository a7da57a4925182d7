#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polkit/theta_igusa.hpp"

namespace polkit {

// F_p (k = 1) or F_p[s]/(s^2 - r) with r a fixed nonresidue (k = 2).
class FiniteField {
public:
    struct Elt {
        std::int64_t x = 0, y = 0;  // x + y*s
        bool operator==(const Elt& o) const { return x == o.x && y == o.y; }
    };

    FiniteField(std::int64_t p, int k);

    std::int64_t p() const { return p_; }
    int k() const { return k_; }
    std::int64_t size() const { return k_ == 1 ? p_ : p_ * p_; }
    Elt element(std::int64_t index) const;  // enumerates the field
    Elt from_int(std::int64_t v) const;
    Elt add(const Elt& a, const Elt& b) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt pow(Elt a, std::int64_t e) const;
    bool is_zero(const Elt& a) const { return a.x == 0 && a.y == 0; }
    int chi(const Elt& a) const;  // quadratic character

private:
    std::int64_t p_;
    int k_;
    std::int64_t nonresidue_ = 0;
};

bool is_prime(std::int64_t n);
std::int64_t mod_p(const Rational& q, std::int64_t p);  // throws BadReduction if p | denominator
std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t p);

// Reduced coefficients c0..c6 of a curve with good reduction at p.
std::array<std::int64_t, 7> reduce_curve(const SexticCurve& c, std::int64_t p);

std::int64_t count_points_genus2(const SexticCurve& c, std::int64_t p, int k, unsigned jobs = 1);

struct FrobeniusData {
    std::int64_t p = 0;
    std::int64_t n1 = 0, n2 = 0;
    std::array<std::int64_t, 5> charpoly{};  // leading coefficient first
};

FrobeniusData frobenius_charpoly_genus2(std::int64_t n1, std::int64_t n2, std::int64_t p);
FrobeniusData frobenius_of(const SexticCurve& c, std::int64_t p, unsigned jobs = 1);

// y^2 = x^3 + A x + B with A = a0 + a1 sqrt(d), B = b0 + b1 sqrt(d).
struct QuadFieldCurveReduction {
    Rational a0, a1, b0, b1;
    Integer d;
    std::int64_t p = 0;
    std::int64_t root = 0;  // r with r^2 = d mod p
};

std::vector<std::int64_t> sqrt_mod(std::int64_t d, std::int64_t p);  // sorted roots
std::array<std::int64_t, 3> reduce_and_count_elliptic(const QuadFieldCurveReduction& q);

std::array<std::int64_t, 5> square_quadratic(const std::array<std::int64_t, 3>& q);

struct Disambiguation {
    int selected = -1;          // index into the candidate pair
    std::int64_t root = 0;      // root of d used for the match
    std::array<std::array<std::int64_t, 5>, 2> quartics{};
    std::vector<std::array<std::int64_t, 3>> quadratics;  // one per root
};

// Reduction data without a root; each root of d mod p is tried.
Disambiguation disambiguate_sign(const std::pair<SexticCurve, SexticCurve>& candidates,
                                 const QuadFieldCurveReduction& q, unsigned jobs = 1);

}  // namespace polkit
