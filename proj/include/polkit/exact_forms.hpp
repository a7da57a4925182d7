#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polkit/errors.hpp"
#include "polkit/scalar.hpp"

namespace polkit {

// Matrix of an alternating Riemann form on a fixed lattice basis.
struct AlternatingForm {
    RatMatrix matrix;
    std::vector<std::string> basis_labels;
    bool degenerate = false;  // explicitly flagged degenerate forms skip the det check

    AlternatingForm() = default;
    // Validates skewness, even dimension and (unless flagged) nondegeneracy.
    explicit AlternatingForm(RatMatrix m, std::vector<std::string> labels = {}, bool allow_degenerate = false);
    explicit AlternatingForm(const IntMatrix& m, std::vector<std::string> labels = {}, bool allow_degenerate = false);

    Eigen::Index dim() const { return matrix.rows(); }
    int genus() const { return static_cast<int>(matrix.rows() / 2); }
    bool integral() const { return is_integral(matrix); }
    IntMatrix integer_matrix() const { return to_integer(matrix); }

    bool operator==(const AlternatingForm& o) const { return matrix == o.matrix; }
};

struct PolarizationType {
    std::vector<Integer> divisors;

    bool principal() const;
    Integer degree() const;  // product of the divisors
    std::string str() const; // "(1,2)"
    bool operator==(const PolarizationType& o) const { return divisors == o.divisors; }
};

struct BasisChange {
    IntMatrix matrix;  // rows are the new basis vectors in old coordinates
    int determinant = 1;

    BasisChange() = default;
    explicit BasisChange(IntMatrix m);  // throws InvalidArgument unless det = +-1
    static BasisChange identity(Eigen::Index n);
};

// Exact determinant over Q by Gaussian elimination.
template <typename Derived>
Rational exact_determinant(const Eigen::MatrixBase<Derived>& m)
{
    const Eigen::Index n = m.rows();
    RatMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Rational(m(i, j));
    Rational det = 1;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            a.row(piv).swap(a.row(k));
            det = -det;
        }
        det *= a(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

template <typename Derived>
RatMatrix exact_inverse(const Eigen::MatrixBase<Derived>& m)
{
    const Eigen::Index n = m.rows();
    RatMatrix a(n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = Rational(m(i, j));
            a(i, n + j) = (i == j) ? 1 : 0;
        }
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) throw Error(ErrorKind::Degenerate, "matrix is singular");
        if (piv != k) a.row(piv).swap(a.row(k));
        Rational inv = 1 / a(k, k);
        a.row(k) *= inv;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rational f = a(i, k);
            a.row(i) -= f * a.row(k);
        }
    }
    return a.rightCols(n);
}

// Pfaffian over any field-like scalar by congruence elimination. The sign
// agrees with the first-row cofactor expansion Pf = sum_j (-1)^j a_1j Pf(A_1j).
template <typename Derived>
Rational pfaffian_exact(const Eigen::MatrixBase<Derived>& m)
{
    const Eigen::Index n = m.rows();
    if (n % 2 != 0) return 0;
    RatMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Rational(m(i, j));
    Rational pf = 1;
    for (Eigen::Index k = 0; k < n; k += 2) {
        Eigen::Index j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) return 0;
        if (j != k + 1) {
            a.row(j).swap(a.row(k + 1));
            a.col(j).swap(a.col(k + 1));
            pf = -pf;
        }
        const Rational p = a(k, k + 1);
        pf *= p;
        for (Eigen::Index i = k + 2; i < n; ++i) {
            // e_i -= t e_{k+1} clears a(k,i); e_i -= s e_k then clears a(k+1,i)
            Rational t = a(k, i) / p;
            if (t != 0) {
                a.row(i) -= t * a.row(k + 1);
                a.col(i) -= t * a.col(k + 1);
            }
            Rational s = a(k + 1, i) / -p;
            if (s != 0) {
                a.row(i) -= s * a.row(k);
                a.col(i) -= s * a.col(k);
            }
        }
    }
    return pf;
}

// Validation helpers; they throw the named error instead of returning.
void require_alternating(const RatMatrix& m);

Integer pfaffian(const AlternatingForm& a);
PolarizationType polarization_type(const AlternatingForm& a, const Rational& scale = 1);
std::pair<AlternatingForm, Rational> primitive_part(const AlternatingForm& a);

// S with S*A*S^T = [[0,D],[-D,0]]; pivot = smallest nonzero |entry| above the
// diagonal, lexicographic tie-break.
BasisChange symplectic_basis(const AlternatingForm& a);
bool check_symplectic(const BasisChange& s, const AlternatingForm& a, const PolarizationType& d);

IntMatrix standard_form(const PolarizationType& d);
IntMatrix standard_symplectic(int g);

AlternatingForm congruent(const AlternatingForm& a, const IntMatrix& s);  // S*A*S^T

std::string format_matrix(const RatMatrix& m);
std::string format_matrix(const IntMatrix& m);

}  // namespace polkit
