#include "polkit/exact_forms.hpp"

#include <sstream>

namespace polkit {

void require_alternating(const RatMatrix& m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorKind::NotAlternating, "matrix is " + std::to_string(m.rows()) + "x" +
                                                   std::to_string(m.cols()) + ", not square");
    if (m.rows() % 2 != 0) throw Error(ErrorKind::OddDimension, "dimension " + std::to_string(m.rows()) + " is odd");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (m(i, i) != 0)
            throw Error(ErrorKind::NotAlternating, "not alternating: diagonal entry (" + std::to_string(i) + "," +
                                                       std::to_string(i) + ") = " + to_string(m(i, i)));
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != -m(j, i))
                throw Error(ErrorKind::NotAlternating, "not alternating: entries (" + std::to_string(i) + "," +
                                                           std::to_string(j) + ") and (" + std::to_string(j) + "," +
                                                           std::to_string(i) + ") are not opposite");
    }
}

AlternatingForm::AlternatingForm(RatMatrix m, std::vector<std::string> labels, bool allow_degenerate)
    : matrix(std::move(m)), basis_labels(std::move(labels)), degenerate(allow_degenerate)
{
    require_alternating(matrix);
    if (!basis_labels.empty() && static_cast<Eigen::Index>(basis_labels.size()) != matrix.rows())
        throw Error(ErrorKind::InvalidArgument, "basis label count does not match the dimension");
    if (!allow_degenerate && exact_determinant(matrix) == 0)
        throw Error(ErrorKind::Degenerate, "form has determinant 0");
}

AlternatingForm::AlternatingForm(const IntMatrix& m, std::vector<std::string> labels, bool allow_degenerate)
    : AlternatingForm(to_rational(m), std::move(labels), allow_degenerate)
{
}

bool PolarizationType::principal() const
{
    for (const auto& d : divisors)
        if (d != 1) return false;
    return true;
}

Integer PolarizationType::degree() const
{
    Integer p = 1;
    for (const auto& d : divisors) p *= d;
    return p;
}

std::string PolarizationType::str() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        if (i) s += ",";
        s += divisors[i].str();
    }
    return s + ")";
}

BasisChange::BasisChange(IntMatrix m) : matrix(std::move(m))
{
    if (matrix.rows() != matrix.cols()) throw Error(ErrorKind::InvalidArgument, "basis change must be square");
    Rational d = exact_determinant(matrix);
    if (d != 1 && d != -1)
        throw Error(ErrorKind::InvalidArgument, "basis change is not unimodular (det " + to_string(d) + ")");
    determinant = d == 1 ? 1 : -1;
}

BasisChange BasisChange::identity(Eigen::Index n) { return BasisChange(IntMatrix::Identity(n, n)); }

Integer pfaffian(const AlternatingForm& a)
{
    require_alternating(a.matrix);
    if (!a.integral()) throw Error(ErrorKind::NotIntegral, "pfaffian needs an integral form");
    Rational pf = pfaffian_exact(a.matrix);
    return mp::numerator(pf);
}

namespace {

struct Reduction {
    IntMatrix s;
    std::vector<Integer> d;
};

// Frobenius normal form of an integral alternating matrix by unimodular
// congruence. Works on a copy; tracks the accumulated row operations in s.
Reduction reduce_alternating(IntMatrix m)
{
    const Eigen::Index n = m.rows();
    IntMatrix s = IntMatrix::Identity(n, n);
    std::vector<Integer> ds;

    auto add = [&](Eigen::Index i, Eigen::Index j, const Integer& c) {  // e_i += c e_j
        if (c == 0) return;
        m.row(i) += c * m.row(j);
        m.col(i) += c * m.col(j);
        s.row(i) += c * s.row(j);
    };
    auto swap = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        m.row(i).swap(m.row(j));
        m.col(i).swap(m.col(j));
        s.row(i).swap(s.row(j));
    };

    for (Eigen::Index k = 0; k < n; k += 2) {
        for (;;) {
            Eigen::Index bi = -1, bj = -1;
            Integer best = 0;
            for (Eigen::Index i = k; i < n; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j) {
                    if (m(i, j) == 0) continue;
                    Integer v = mp::abs(m(i, j));
                    if (bi < 0 || v < best) {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
            if (bi < 0) throw Error(ErrorKind::Degenerate, "form is degenerate");
            swap(k, bi);
            swap(k + 1, bj);
            if (m(k, k + 1) < 0) swap(k, k + 1);
            const Integer p = m(k, k + 1);

            bool dirty = false;
            for (Eigen::Index l = k + 2; l < n; ++l) {
                add(l, k + 1, Integer(-floor_div(m(k, l), p)));
                add(l, k, floor_div(m(k + 1, l), p));
                if (m(k, l) != 0 || m(k + 1, l) != 0) dirty = true;
            }
            if (dirty) continue;

            Eigen::Index bad = -1;
            for (Eigen::Index i = k + 2; i < n && bad < 0; ++i)
                for (Eigen::Index j = k + 2; j < n; ++j)
                    if (m(i, j) % p != 0) {
                        bad = i;
                        break;
                    }
            if (bad >= 0) {
                add(k, bad, 1);
                continue;
            }
            ds.push_back(p);
            break;
        }
    }

    // interleaved (e1,f1,e2,f2,...) -> (e1,e2,...,f1,f2,...)
    IntMatrix out(n, n);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; i += 2) out.row(r++) = s.row(i);
    for (Eigen::Index i = 1; i < n; i += 2) out.row(r++) = s.row(i);
    return {out, ds};
}

}  // namespace

PolarizationType polarization_type(const AlternatingForm& a, const Rational& scale)
{
    if (scale <= 0) throw Error(ErrorKind::InvalidArgument, "scale must be positive");
    RatMatrix scaled = a.matrix * scale;
    require_alternating(scaled);
    IntMatrix m = to_integer(scaled);
    if (exact_determinant(m) == 0) throw Error(ErrorKind::Degenerate, "form has determinant 0");
    return PolarizationType{reduce_alternating(m).d};
}

std::pair<AlternatingForm, Rational> primitive_part(const AlternatingForm& a)
{
    require_alternating(a.matrix);
    if (exact_determinant(a.matrix) == 0) throw Error(ErrorKind::Degenerate, "form has determinant 0");
    Integer g = 0, l = 1;
    for (Eigen::Index i = 0; i < a.matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < a.matrix.cols(); ++j) {
            const Rational& x = a.matrix(i, j);
            if (x == 0) continue;
            g = mp::gcd(g, Integer(mp::abs(mp::numerator(x))));
            l = mp::lcm(l, mp::denominator(x));
        }
    Rational mult(g, l);
    RatMatrix m0 = a.matrix / mult;
    return {AlternatingForm(m0, a.basis_labels), mult};
}

BasisChange symplectic_basis(const AlternatingForm& a)
{
    require_alternating(a.matrix);
    IntMatrix m = to_integer(a.matrix);
    return BasisChange(reduce_alternating(m).s);
}

IntMatrix standard_form(const PolarizationType& d)
{
    const Eigen::Index g = static_cast<Eigen::Index>(d.divisors.size());
    IntMatrix j = IntMatrix::Zero(2 * g, 2 * g);
    for (Eigen::Index i = 0; i < g; ++i) {
        j(i, g + i) = d.divisors[static_cast<std::size_t>(i)];
        j(g + i, i) = -d.divisors[static_cast<std::size_t>(i)];
    }
    return j;
}

IntMatrix standard_symplectic(int g)
{
    return standard_form(PolarizationType{std::vector<Integer>(static_cast<std::size_t>(g), Integer(1))});
}

bool check_symplectic(const BasisChange& s, const AlternatingForm& a, const PolarizationType& d)
{
    if (s.matrix.rows() != a.dim() || static_cast<Eigen::Index>(2 * d.divisors.size()) != a.dim()) return false;
    RatMatrix sr = to_rational(s.matrix);
    RatMatrix lhs = sr * a.matrix * sr.transpose();
    return lhs == to_rational(standard_form(d));
}

AlternatingForm congruent(const AlternatingForm& a, const IntMatrix& s)
{
    RatMatrix sr = to_rational(s);
    return AlternatingForm(RatMatrix(sr * a.matrix * sr.transpose()), {}, a.degenerate);
}

namespace {
template <typename M, typename F>
std::string format_any(const M& m, F fmt)
{
    std::ostringstream os;
    os << "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) os << ",";
        os << "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ",";
            os << fmt(m(i, j));
        }
        os << "]";
    }
    os << "]";
    return os.str();
}
}  // namespace

std::string format_matrix(const RatMatrix& m)
{
    return format_any(m, [](const Rational& x) { return to_string(x); });
}

std::string format_matrix(const IntMatrix& m)
{
    return format_any(m, [](const Integer& x) { return x.str(); });
}

}  // namespace polkit
