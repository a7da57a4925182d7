#include "polkit/torus.hpp"

#include <algorithm>
#include <cmath>

namespace polkit {

namespace {

// Solve A X = B for square complex A by Gaussian elimination with partial pivoting.
ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b)
{
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        Real best = std::abs(a(k, k));
        for (Eigen::Index i = k + 1; i < n; ++i) {
            Real v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0) throw Error(ErrorKind::Degenerate, "singular complex matrix");
        if (piv != k) {
            a.row(piv).swap(a.row(k));
            b.row(piv).swap(b.row(k));
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            Complex f = a(i, k) / a(k, k);
            if (f == Complex(0)) continue;
            for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    ComplexMatrix x(n, b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j)
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            Complex s = b(i, j);
            for (Eigen::Index k = i + 1; k < n; ++k) s -= a(i, k) * x(k, j);
            x(i, j) = s / a(i, i);
        }
    return x;
}

RealMatrix real_image(const ComplexMatrix& m)
{
    RealMatrix r(2 * m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            r(i, j) = m(i, j).real();
            r(m.rows() + i, j) = m(i, j).imag();
        }
    return r;
}

ComplexMatrix adjoint(const ComplexMatrix& m)
{
    ComplexMatrix r(m.cols(), m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

Real tolerance_for_bits(unsigned bits)
{
    int digits = static_cast<int>(bits * 0.30103);
    return pow10(-std::max(1, digits / 2));
}

}  // namespace

PeriodMatrix::PeriodMatrix(ComplexMatrix m, std::vector<std::string> labels)
    : omega(std::move(m)), precision_bits(working_precision_bits()), basis_labels(std::move(labels))
{
    const Eigen::Index g = omega.rows();
    if (g != 1 && g != 2) throw Error(ErrorKind::InvalidArgument, "period matrix must have 1 or 2 rows");
    if (omega.cols() != 2 * g)
        throw Error(ErrorKind::InvalidArgument, "period matrix must be g x 2g");
    // columns are R-independent iff the real 2g x 2g image is invertible;
    // compare |det| with the Hadamard bound
    RealMatrix r = real_image(omega);
    Real det = mp::abs(r.partialPivLu().determinant());
    Real hadamard = 1;
    for (Eigen::Index j = 0; j < r.cols(); ++j) hadamard *= r.col(j).norm();
    if (hadamard == 0 || det / hadamard < Real("1e-12"))
        throw Error(ErrorKind::DegenerateLattice, "period columns are not R-linearly independent");
}

Real min_imag_eigenvalue(const ComplexMatrix& z)
{
    const Eigen::Index g = z.rows();
    if (g == 1) return z(0, 0).imag();
    if (g == 2) {
        Real a = z(0, 0).imag(), d = z(1, 1).imag();
        Real b = (z(0, 1).imag() + z(1, 0).imag()) / 2;
        Real h = (a - d) / 2;
        return (a + d) / 2 - mp::sqrt(h * h + b * b);
    }
    RealMatrix y(g, g);
    for (Eigen::Index i = 0; i < g; ++i)
        for (Eigen::Index j = 0; j < g; ++j) y(i, j) = (z(i, j).imag() + z(j, i).imag()) / 2;
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(y, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

SiegelPoint::SiegelPoint(ComplexMatrix m, const Real& tol) : z(std::move(m)), precision_bits(working_precision_bits())
{
    if (z.rows() != z.cols()) throw Error(ErrorKind::NotSiegel, "Z is not square");
    Real scale = std::max(Real(1), max_abs(z));
    Real asym = max_abs(ComplexMatrix(z - z.transpose()));
    if (asym > tol * scale)
        throw Error(ErrorKind::NotSymplecticOrder,
                    "Z is not symmetric (|Z - Z^T| = " + to_string(asym, 6) + "); check the basis ordering");
    // symmetrize away the residual so downstream series see an exact symmetric matrix
    z = ComplexMatrix((z + z.transpose()) / Complex(2));
    min_imag_eigenvalue = polkit::min_imag_eigenvalue(z);
    if (min_imag_eigenvalue <= tol)
        throw Error(ErrorKind::NotSymplecticOrder,
                    "Im Z is not positive definite (min eigenvalue " + to_string(min_imag_eigenvalue, 6) +
                        "); check the basis ordering");
}

SiegelPoint siegel_from_periods(const PeriodMatrix& p) { return siegel_from_periods(p, tolerance_for_bits(p.precision_bits)); }

SiegelPoint siegel_from_periods(const PeriodMatrix& p, const Real& tol)
{
    const Eigen::Index g = p.omega.rows();
    ComplexMatrix o1 = p.omega.leftCols(g);
    ComplexMatrix o2 = p.omega.rightCols(g);
    SiegelPoint s(solve(o1, o2), tol);
    s.precision_bits = std::min(p.precision_bits, working_precision_bits());
    return s;
}

PeriodMatrix apply_basis_change(const PeriodMatrix& p, const BasisChange& s)
{
    if (s.matrix.rows() != p.omega.cols()) throw Error(ErrorKind::InvalidArgument, "basis change size mismatch");
    PeriodMatrix out = p;
    out.omega = p.omega * to_complex(s.matrix).transpose();
    out.basis_labels.clear();
    return out;
}

AnalyticRepresentation analytic_representation(const PeriodMatrix& p, const IntMatrix& m)
{
    ComplexMatrix om = p.omega * to_complex(m);
    ComplexMatrix oh = adjoint(p.omega);
    ComplexMatrix gram = p.omega * oh;
    // A = (Omega M) Omega^H (Omega Omega^H)^-1, i.e. A^T solves gram^T A^T = (om oh)^T
    ComplexMatrix rhs = om * oh;
    ComplexMatrix at = solve(gram.transpose(), rhs.transpose());
    AnalyticRepresentation r;
    r.a = at.transpose();
    Real scale = std::max(max_abs(om), max_abs(p.omega));
    r.residual = max_abs(ComplexMatrix(r.a * p.omega - om)) / scale;
    return r;
}

Integer torsion_order(const RatVector& x)
{
    Integer l = 1;
    for (Eigen::Index i = 0; i < x.size(); ++i) l = mp::lcm(l, mp::denominator(x(i)));
    return l;
}

namespace {

// Column Hermite normal form of an integer matrix of full row rank; returns
// the n x n lower-triangular basis.
IntMatrix column_hnf(IntMatrix a)
{
    const Eigen::Index n = a.rows();
    const Eigen::Index m = a.cols();
    for (Eigen::Index i = 0; i < n; ++i) {
        // gcd-combine row i over columns i..m-1 into column i
        for (Eigen::Index j = i + 1; j < m; ++j) {
            if (a(i, j) == 0) continue;
            if (a(i, i) == 0) {
                a.col(i).swap(a.col(j));
                continue;
            }
            Integer x = a(i, i), y = a(i, j);
            // extended Euclid: g = u x + v y
            Integer r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (r1 != 0) {
                Integer q = floor_div(r0, r1);
                Integer tmp = r0 - q * r1;
                r0 = r1;
                r1 = tmp;
                tmp = s0 - q * s1;
                s0 = s1;
                s1 = tmp;
                tmp = t0 - q * t1;
                t0 = t1;
                t1 = tmp;
            }
            Integer g = r0, u = s0, v = t0;
            Integer xg = x / g, yg = y / g;
            Mat<Integer> ci = a.col(i), cj = a.col(j);
            a.col(i) = u * ci + v * cj;
            a.col(j) = Integer(-yg) * ci + xg * cj;
        }
        if (a(i, i) == 0) throw Error(ErrorKind::Degenerate, "lattice generators do not have full rank");
        if (a(i, i) < 0) a.col(i) = Integer(-1) * a.col(i);
        for (Eigen::Index j = 0; j < i; ++j) {
            Integer q = floor_div(a(i, j), a(i, i));
            if (q != 0) a.col(j) -= q * a.col(i);
        }
    }
    return a.leftCols(n);
}

RatMatrix rational_hnf(const RatMatrix& cols)
{
    Integer den = 1;
    for (Eigen::Index i = 0; i < cols.rows(); ++i)
        for (Eigen::Index j = 0; j < cols.cols(); ++j) den = mp::lcm(den, mp::denominator(cols(i, j)));
    IntMatrix a = to_integer(RatMatrix(cols * Rational(den)));
    IntMatrix h = column_hnf(a);
    return RatMatrix(to_rational(h) / Rational(den));
}

}  // namespace

RatMatrix saturate_lattice(Eigen::Index n, const std::vector<RatVector>& gens)
{
    RatMatrix cols(n, n + static_cast<Eigen::Index>(gens.size()));
    cols.leftCols(n) = to_rational(IntMatrix::Identity(n, n));
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].size() != n) throw Error(ErrorKind::InvalidArgument, "torsion generator has the wrong length");
        cols.col(n + static_cast<Eigen::Index>(k)) = gens[k];
    }
    return rational_hnf(cols);
}

bool same_lattice(const RatMatrix& a, const RatMatrix& b) { return rational_hnf(a) == rational_hnf(b); }

TorsionSubgroup::TorsionSubgroup(std::vector<RatVector> gens) : generators(std::move(gens))
{
    static const Integer cap = Integer(1) << 20;
    for (const auto& g : generators)
        if (torsion_order(g) > cap)
            throw Error(ErrorKind::InfiniteOrder, "generator order exceeds 2^20; not a torsion point of the lattice");
    Eigen::Index n = generators.empty() ? 0 : generators.front().size();
    if (n == 0) {
        group_order = 1;
        return;
    }
    RatMatrix b = saturate_lattice(n, generators);
    Rational det = exact_determinant(b);
    group_order = mp::numerator(Rational(1 / mp::abs(det)));
}

TorsionQuotient quotient_by_torsion(const AlternatingForm& e, const TorsionSubgroup& g)
{
    if (!e.integral()) throw Error(ErrorKind::NotIntegral, "E must be integral on the original lattice");
    TorsionQuotient q;
    q.group_order = g.generators.empty() ? Integer(1) : g.group_order;
    q.basis = g.generators.empty() ? to_rational(IntMatrix::Identity(e.dim(), e.dim()))
                                   : saturate_lattice(e.dim(), g.generators);
    q.restricted = AlternatingForm(RatMatrix(q.basis.transpose() * e.matrix * q.basis));
    RatMatrix sc = q.restricted.matrix * Rational(q.group_order);
    if (!is_integral(sc)) throw Error(ErrorKind::NotIntegral, "#G * E is not integral on Lambda_G");
    q.scaled = AlternatingForm(sc);
    // deg(E_G) = #G^(g-1) * deg(E); for surfaces this is #G * deg(E)
    Integer lhs = mp::abs(pfaffian(q.scaled));
    Integer rhs = mp::abs(pfaffian(e)) * mp::pow(q.group_order, static_cast<unsigned>(e.genus() - 1));
    if (lhs != rhs) throw Error(ErrorKind::NotIntegral, "degree relation failed: " + lhs.str() + " != " + rhs.str());
    return q;
}

Complex QuadraticSurd::value() const
{
    Real rr = Real(mp::numerator(r)) / Real(mp::denominator(r));
    Real ss = Real(mp::numerator(s)) / Real(mp::denominator(s));
    Real root = mp::sqrt(Real(mp::abs(m)));
    if (m < 0) return Complex(rr, ss * root);
    return Complex(rr + ss * root, Real(0));
}

WeilRestriction weil_restriction_lattice(const IsogenyDescent& d, const Real& tol)
{
    if (d.n < 1) throw Error(ErrorKind::InvalidArgument, "isogeny degree must be positive");
    if (d.lambda == Complex(0)) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
    const Complex zero(0);
    ComplexMatrix pi(2, 4);
    pi << d.w1, zero, d.w2, zero, zero, d.ws1, zero, d.ws2;
    WeilRestriction out;
    out.periods = PeriodMatrix(pi, {"g1", "gs1", "g2", "gs2"});

    // T(z1, z2) = (n/lambda * z2, lambda * z1), so T o T = n
    ComplexMatrix t(2, 2);
    t << zero, Complex(Real(d.n)) / d.lambda, d.lambda, zero;
    RealMatrix lhs = real_image(pi);
    RealMatrix rhs = real_image(ComplexMatrix(t * pi));
    RealMatrix m = lhs.partialPivLu().solve(rhs);

    IntMatrix mi(4, 4);
    Real worst = 0;
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) {
            Real r = mp::round(m(i, j));
            worst = std::max(worst, Real(mp::abs(m(i, j) - r)));
            mi(i, j) = Integer(r);
        }
    out.residual = worst;
    if (worst > tol)
        throw Error(ErrorKind::NonIntegralAction,
                    "action of sqrt(n) is not integral (rounding residual " + to_string(worst, 6) + ")");
    if (mi * mi != d.n * IntMatrix::Identity(4, 4))
        throw Error(ErrorKind::NonIntegralAction, "rounded action does not square to n");
    out.sqrt_action = mi;
    out.order = QuadOrder::from_order_discriminant(4 * d.n);
    out.form = AlternatingForm(standard_symplectic(2), {"g1", "gs1", "g2", "gs2"});
    return out;
}

EllipticInvariants elliptic_invariants(const Complex& w1_in, const Complex& w2_in)
{
    Complex w1 = w1_in, w2 = w2_in;
    if (w1 == Complex(0) || w2 == Complex(0)) throw Error(ErrorKind::DegenerateLattice, "zero lattice generator");
    Complex tau = w2 / w1;
    Real eps = pow10(-static_cast<int>(Real::default_precision()) / 2);
    if (mp::abs(tau.imag()) < eps * std::max(Real(1), std::abs(tau)))
        throw Error(ErrorKind::DegenerateLattice, "generators are R-linearly dependent");
    if (tau.imag() < 0) {
        std::swap(w1, w2);
        tau = w2 / w1;
    }
    // reduce tau to the fundamental domain, carrying the basis along
    for (int iter = 0; iter < 10000; ++iter) {
        Real k = mp::round(tau.real());
        if (k != 0) {
            w2 -= Complex(k) * w1;
            tau = w2 / w1;
        }
        if (std::norm(tau) < Real(1) - eps) {
            Complex nw1 = w2, nw2 = -w1;
            w1 = nw1;
            w2 = nw2;
            tau = w2 / w1;
            continue;
        }
        break;
    }
    const Complex two_pi_i(Real(0), 2 * pi());
    const Complex q = std::exp(two_pi_i * tau);
    const Real aq = std::abs(q);
    const Real stop = pow10(-static_cast<int>(Real::default_precision()) - 5);
    Complex s3(0), s5(0), qn(1);
    for (int n = 1; n < 100000; ++n) {
        qn *= q;
        Complex lam = qn / (Complex(1) - qn);
        Real nn(n);
        s3 += Complex(nn * nn * nn) * lam;
        s5 += Complex(nn * nn * nn * nn * nn) * lam;
        if (nn * nn * nn * nn * nn * mp::pow(aq, n) < stop) break;
    }
    Complex e4 = Complex(1) + Complex(240) * s3;
    Complex e6 = Complex(1) - Complex(504) * s5;
    Complex scale = Complex(2 * pi()) / w1;
    Complex s2 = scale * scale;
    EllipticInvariants out;
    out.c4 = s2 * s2 * e4;
    out.c6 = s2 * s2 * s2 * e6;
    Complex e43 = e4 * e4 * e4;
    out.j = Complex(1728) * e43 / (e43 - e6 * e6);
    return out;
}

}  // namespace polkit
