#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Dense>

namespace polkit {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Complex = std::complex<Real>;

}  // namespace polkit

// Eigen needs NumTraits for the multiprecision scalars. The adaptor shipped
// with Boost 1.74 predates Eigen 3.4 (no infinity/quiet_NaN), so spell them out.
namespace Eigen {

template <>
struct NumTraits<polkit::Integer> : GenericNumTraits<polkit::Integer> {
    using Real = polkit::Integer;
    using NonInteger = polkit::Rational;
    using Literal = polkit::Integer;
    using Nested = polkit::Integer;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 8,
        MulCost = 16
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline Real highest() { return 0; }
    static inline Real lowest() { return 0; }
    static inline int digits10() { return 0; }
    static inline Real infinity() { return 0; }
    static inline Real quiet_NaN() { return 0; }
};

template <>
struct NumTraits<polkit::Rational> : GenericNumTraits<polkit::Rational> {
    using Real = polkit::Rational;
    using NonInteger = polkit::Rational;
    using Literal = polkit::Rational;
    using Nested = polkit::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 16,
        MulCost = 32
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline Real highest() { return 0; }
    static inline Real lowest() { return 0; }
    static inline int digits10() { return 0; }
    static inline Real infinity() { return 0; }
    static inline Real quiet_NaN() { return 0; }
};

template <>
struct NumTraits<polkit::Real> : GenericNumTraits<polkit::Real> {
    using Real = polkit::Real;
    using NonInteger = polkit::Real;
    using Literal = polkit::Real;
    using Nested = polkit::Real;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 16,
        MulCost = 32
    };
    static inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
    static inline Real dummy_precision()
    {
        return boost::multiprecision::pow(Real(10), -static_cast<int>(Real::default_precision()) + 5);
    }
    static inline Real highest() { return std::numeric_limits<Real>::max(); }
    static inline Real lowest() { return std::numeric_limits<Real>::lowest(); }
    static inline int digits10() { return static_cast<int>(Real::default_precision()); }
    static inline Real infinity() { return std::numeric_limits<Real>::infinity(); }
    static inline Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
};

}  // namespace Eigen

namespace polkit {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Mat<Integer>;
using RatMatrix = Mat<Rational>;
using RealMatrix = Mat<Real>;
using ComplexMatrix = Mat<Complex>;
using RatVector = Vec<Rational>;

// Working precision for Real. MPFR default precision is process-global in
// this Boost version: set it once, before any worker threads start.
unsigned bits_to_digits10(unsigned bits);
void set_working_precision(unsigned bits);
unsigned working_precision_bits();

class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_digits10_;
    unsigned saved_bits_;
};

// Exact parsing. Accepts "-3", "−3", "1/2", "0.125", "-2.5e-3".
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
Real parse_real(std::string_view text);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
// Fixed number of significant digits, scientific only when needed.
std::string to_string(const Real& x, int digits);
std::string to_string(const Complex& z, int digits);

bool is_integer(const Rational& x);
inline bool is_integer(const Integer&) { return true; }
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);
Integer isqrt(const Integer& n);
bool is_square(const Integer& n);

Real pi();
Real pow10(int e);

template <typename Derived>
bool is_integral(const Eigen::MatrixBase<Derived>& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!is_integer(m(i, j))) return false;
    return true;
}

RatMatrix to_rational(const IntMatrix& m);
IntMatrix to_integer(const RatMatrix& m);  // throws NotIntegral
ComplexMatrix to_complex(const IntMatrix& m);
ComplexMatrix to_complex(const RatMatrix& m);

Real max_abs(const ComplexMatrix& m);

}  // namespace polkit
