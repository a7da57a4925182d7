#pragma once

#include <string>
#include <vector>

#include "polkit/errors.hpp"
#include "polkit/scalar.hpp"

namespace polkit {

// Order of conductor f in the quadratic field of fundamental discriminant D,
// generated by omega = (s + f*sqrt(D))/2 with s = f^2 D mod 2, so that
// omega^2 = tr*omega - nm.
struct QuadOrder {
    Integer field_disc;
    Integer conductor = 1;
    Integer tr;
    Integer nm;

    static QuadOrder from_discriminant(const Integer& field_disc, const Integer& conductor = 1);
    // Accepts any discriminant Delta = f^2 D (e.g. 12 for Z[sqrt3]).
    static QuadOrder from_order_discriminant(const Integer& disc);

    Integer disc() const { return conductor * conductor * field_disc; }
    bool is_real() const { return field_disc > 0; }
    bool is_maximal() const { return conductor == 1; }
    std::string str() const;

    bool operator==(const QuadOrder& o) const { return field_disc == o.field_disc && conductor == o.conductor; }
};

bool is_fundamental_discriminant(const Integer& d);

struct OrderElement {
    Integer a = 0;
    Integer b = 0;

    OrderElement() = default;
    OrderElement(Integer a_, Integer b_) : a(std::move(a_)), b(std::move(b_)) {}
    OrderElement(long a_) : a(a_), b(0) {}

    bool operator==(const OrderElement& o) const { return a == o.a && b == o.b; }
    bool operator!=(const OrderElement& o) const { return !(*this == o); }
};

OrderElement add(const OrderElement& x, const OrderElement& y);
OrderElement sub(const OrderElement& x, const OrderElement& y);
OrderElement mul(const OrderElement& x, const OrderElement& y, const QuadOrder& o);
OrderElement scale(const OrderElement& x, const Integer& k);
OrderElement power(OrderElement x, unsigned e, const QuadOrder& o);

Integer norm(const OrderElement& x, const QuadOrder& o);
Integer trace(const OrderElement& x, const QuadOrder& o);
OrderElement conjugate(const OrderElement& x, const QuadOrder& o);

// Exact sign of x under the fixed embedding omega -> (tr + sqrt(disc))/2.
int sign(const OrderElement& x, const QuadOrder& o);
bool is_totally_positive(const OrderElement& x, const QuadOrder& o);
int compare(const OrderElement& x, const OrderElement& y, const QuadOrder& o);

Real real_value(const OrderElement& x, const QuadOrder& o);
// "2+√3", "(5+√17)/2", "4+√17", "1"
std::string format(const OrderElement& x, const QuadOrder& o);

struct UnitGroupData {
    OrderElement fundamental_unit;  // real case only
    int norm_of_fundamental_unit = 1;
    int torsion = 2;  // number of roots of unity
};

UnitGroupData fundamental_unit(const QuadOrder& o);
UnitGroupData unit_group(const QuadOrder& o);

struct PolarizationClassGroup {
    std::vector<OrderElement> representatives;
    int order() const { return static_cast<int>(representatives.size()); }
};

PolarizationClassGroup polarization_classes(const QuadOrder& o);

// Totally positive primitive t with norm(t) = d, one per class modulo squares
// of units, sorted by real value.
std::vector<OrderElement> solve_norm_equation(const QuadOrder& o, const Integer& d);

}  // namespace polkit
