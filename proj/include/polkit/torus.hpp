#pragma once

#include <string>
#include <vector>

#include "polkit/exact_forms.hpp"
#include "polkit/quad_order.hpp"
#include "polkit/scalar.hpp"

namespace polkit {

// g x 2g periods; columns follow the lattice basis.
struct PeriodMatrix {
    ComplexMatrix omega;
    unsigned precision_bits = 128;
    std::vector<std::string> basis_labels;

    PeriodMatrix() = default;
    // Checks g in {1,2} and R-linear independence of the columns.
    explicit PeriodMatrix(ComplexMatrix m, std::vector<std::string> labels = {});

    int genus() const { return static_cast<int>(omega.rows()); }
};

struct SiegelPoint {
    ComplexMatrix z;
    unsigned precision_bits = 128;
    Real min_imag_eigenvalue;

    SiegelPoint() = default;
    // Checks symmetry and Im Z > 0 with the given tolerance.
    explicit SiegelPoint(ComplexMatrix m, const Real& tol);
};

// Smallest eigenvalue of the real symmetric matrix Im(Z).
Real min_imag_eigenvalue(const ComplexMatrix& z);

SiegelPoint siegel_from_periods(const PeriodMatrix& p);
SiegelPoint siegel_from_periods(const PeriodMatrix& p, const Real& tol);

// Periods over the basis rows of S: Omega' = Omega * S^T.
PeriodMatrix apply_basis_change(const PeriodMatrix& p, const BasisChange& s);

// Complex g x g matrix A with Omega*M ~ A*Omega (least squares) and the
// relative residual; an integral M is C-linear on the torus iff residual ~ 0.
struct AnalyticRepresentation {
    ComplexMatrix a;
    Real residual;
};
AnalyticRepresentation analytic_representation(const PeriodMatrix& p, const IntMatrix& m);

struct TorsionSubgroup {
    std::vector<RatVector> generators;  // homology coordinates, read mod Z^n
    Integer group_order;

    TorsionSubgroup() = default;
    explicit TorsionSubgroup(std::vector<RatVector> gens);  // computes group_order
};

// Column-style Hermite basis of Z^n + sum Z g_i; columns are basis vectors.
RatMatrix saturate_lattice(Eigen::Index n, const std::vector<RatVector>& gens);

// Order of x in Q^n / Z^n.
Integer torsion_order(const RatVector& x);

struct TorsionQuotient {
    RatMatrix basis;            // columns: basis of Lambda_G in old coordinates
    AlternatingForm restricted; // E on Lambda_G (rational)
    AlternatingForm scaled;     // #G * E, integral
    Integer group_order;
};

TorsionQuotient quotient_by_torsion(const AlternatingForm& e, const TorsionSubgroup& g);

// Does the lattice spanned by the given columns equal Lambda_G?
bool same_lattice(const RatMatrix& a, const RatMatrix& b);

// lambda = r + s*sqrt(m), written exactly; m < 0 gives an imaginary surd.
struct QuadraticSurd {
    Rational r = 0;
    Rational s = 0;
    Integer m = 1;
    Complex value() const;
};

struct IsogenyDescent {
    Complex lambda;
    Integer n;
    Complex w1, w2;    // generators of Lambda
    Complex ws1, ws2;  // generators of Lambda^sigma
};

struct WeilRestriction {
    QuadOrder order;        // Z[sqrt n]
    AlternatingForm form;   // product form on (g1, gs1, g2, gs2)
    IntMatrix sqrt_action;  // rho(sqrt n)
    PeriodMatrix periods;
    Real residual;          // rounding residual of the action
};

WeilRestriction weil_restriction_lattice(const IsogenyDescent& d, const Real& tol);

struct EllipticInvariants {
    Complex j, c4, c6;
};

EllipticInvariants elliptic_invariants(const Complex& w1, const Complex& w2);

}  // namespace polkit
