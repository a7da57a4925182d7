#pragma once

#include <optional>
#include <vector>

#include "polkit/exact_forms.hpp"
#include "polkit/quad_order.hpp"
#include "polkit/theta_igusa.hpp"
#include "polkit/torus.hpp"

namespace polkit {

// Lattice with Riemann form E and the action of the order generator omega.
// rho(x) acts on coordinate columns; E_t = E * rho(t).
struct PolarizedLatticeData {
    AlternatingForm form;
    QuadOrder order;
    IntMatrix action;  // rho(omega)

    PolarizedLatticeData() = default;
    // Checks the minimal polynomial of rho(omega) and E-compatibility.
    PolarizedLatticeData(AlternatingForm e, QuadOrder o, IntMatrix rho_omega);

    int rank() const { return static_cast<int>(form.dim()); }
    IntMatrix rho(const OrderElement& t) const;
};

// Residual rho(omega)^2 - tr*rho(omega) + nm*I (zero for valid data).
IntMatrix minimal_polynomial_residual(const IntMatrix& rho_omega, const QuadOrder& o);

// Recover rho(omega) from rho(t) for a known t = a + b*omega with b != 0.
IntMatrix action_from_element(const IntMatrix& rho_t, const OrderElement& t);

AlternatingForm twist_form(const PolarizedLatticeData& p, const OrderElement& t, const Rational& scale = 1);
Integer degree_of(const PolarizedLatticeData& p, const OrderElement& t);

struct PrincipalityResult {
    bool polarizable = false;
    std::optional<OrderElement> witness;
    std::optional<AlternatingForm> principal_form;  // E * rho(t) / N(t)
};

PrincipalityResult is_principally_polarizable(const PolarizedLatticeData& p);

struct Representative {
    OrderElement unit;
    AlternatingForm form;
};

enum class CountProvenance { Exact, NumericTheta };

struct RepresentativeVerdict {
    Verdict verdict;
    Real min_ratio;
    std::vector<int> vanishing;
};

struct ClassificationReport {
    QuadOrder order;
    int pi_count = 0;
    std::vector<Representative> representatives;
    std::vector<std::optional<RepresentativeVerdict>> verdicts;  // empty without periods
    std::optional<int> tau_count, sigma_count;
    CountProvenance provenance = CountProvenance::Exact;
};

ClassificationReport principal_representatives(const PolarizedLatticeData& p);

// Periods for one representative: either on the homology basis of p (a
// symplectic basis for the representative's form is then computed), or
// already in symplectic column order for that representative.
struct PeriodInput {
    PeriodMatrix omega;
    bool symplectic_order = false;
};

struct RepresentativeSiegel {
    SiegelPoint z;
    BasisChange basis;  // identity when periods were already symplectic
};

RepresentativeSiegel representative_siegel_point(const Representative& rep, const PeriodInput& in,
                                                 const std::optional<Real>& tol = std::nullopt);

// siegel_tol loosens the symmetry/positivity test for printed periods.
ClassificationReport classification_report(const PolarizedLatticeData& p,
                                           const std::vector<std::optional<PeriodInput>>& periods,
                                           const ThetaConfig& cfg, const std::optional<Real>& siegel_tol = std::nullopt);

// Homology = O*g1 + O*g2; columns of basis_map are the images of
// (g1, omega*g1, g2, omega*g2) in homology coordinates.
struct ModuleStructure {
    QuadOrder order;
    BasisChange basis_map;
};

AlternatingForm trace_degree_one_form(const ModuleStructure& m);

// Search small integer vectors for g1, g2 making (g1, w g1, g2, w g2) a
// Z-basis; deterministic.
std::optional<ModuleStructure> module_structure_from_action(const PolarizedLatticeData& p, int box = 2);

}  // namespace polkit
