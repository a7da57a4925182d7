#include "polkit/scalar.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "polkit/errors.hpp"

namespace polkit {

namespace {

unsigned g_bits = 128;

// Replace the Unicode minus sign (U+2212) by '-' and strip blanks.
std::string normalize_number(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else if (c != ' ' && c != '\t' && c != '_') {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

bool digits_only(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// GMP reads a leading 0 as octal
Integer decimal_integer(std::string_view s)
{
    while (s.size() > 1 && s[0] == '0') s.remove_prefix(1);
    return Integer{std::string(s)};
}

Integer parse_signed_digits(std::string_view s, std::string_view whole)
{
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!digits_only(s)) throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(whole) + "'");
    Integer v = decimal_integer(s);
    return neg ? Integer(-v) : v;
}

}  // namespace

unsigned bits_to_digits10(unsigned bits)
{
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

void set_working_precision(unsigned bits)
{
    if (bits < 16) bits = 16;
    g_bits = bits;
    Real::default_precision(bits_to_digits10(bits));
}

unsigned working_precision_bits() { return g_bits; }

PrecisionGuard::PrecisionGuard(unsigned bits)
    : saved_digits10_(Real::default_precision()), saved_bits_(g_bits)
{
    set_working_precision(bits);
}

PrecisionGuard::~PrecisionGuard()
{
    g_bits = saved_bits_;
    Real::default_precision(saved_digits10_);
}

Rational parse_rational(std::string_view text)
{
    std::string s = normalize_number(text);
    if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty number");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num = parse_signed_digits(std::string_view(s).substr(0, slash), text);
        Integer den = parse_signed_digits(std::string_view(s).substr(slash + 1), text);
        if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator: '" + std::string(text) + "'");
        return Rational(num, den);
    }
    // decimal with optional exponent
    std::string mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mant = s.substr(0, e);
        exp10 = static_cast<long>(parse_signed_digits(std::string_view(s).substr(e + 1), text));
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.erase(0, 1);
    }
    std::string digits = mant;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        if (digits.empty()) throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(text) + "'");
    }
    if (!digits_only(digits)) throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(text) + "'");
    Integer v = decimal_integer(digits);
    if (neg) v = -v;
    Integer p = mp::pow(Integer(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? Rational(v, p) : Rational(v * p);
}

Integer parse_integer(std::string_view text)
{
    Rational r = parse_rational(text);
    if (!is_integer(r)) throw Error(ErrorKind::NotIntegral, "expected an integer, got '" + std::string(text) + "'");
    return mp::numerator(r);
}

Real parse_real(std::string_view text)
{
    std::string s = normalize_number(text);
    if (s.find('/') != std::string::npos) {
        Rational r = parse_rational(s);
        return Real(mp::numerator(r)) / Real(mp::denominator(r));
    }
    // validate through the exact parser, then let MPFR round once
    (void)parse_rational(s);
    return Real(s);
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x)
{
    if (mp::denominator(x) == 1) return mp::numerator(x).str();
    return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

std::string to_string(const Real& x, int digits)
{
    if (x == 0) return "0";
    std::ostringstream os;
    Real ax = mp::abs(x);
    if (ax >= Real("1e-4") && ax < Real("1e15")) {
        // fixed notation with the requested number of significant digits
        int int_digits = static_cast<int>(mp::floor(mp::log10(ax))) + 1;
        int frac = digits - int_digits;
        if (frac < 0) frac = 0;
        os << std::fixed << std::setprecision(frac) << x;
    } else {
        os << std::scientific << std::setprecision(digits - 1) << x;
    }
    std::string s = os.str();
    if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) return "0";
    return s;
}

std::string to_string(const Complex& z, int digits)
{
    return "(" + to_string(z.real(), digits) + ", " + to_string(z.imag(), digits) + ")";
}

bool is_integer(const Rational& x) { return mp::denominator(x) == 1; }

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Integer mod_floor(const Integer& a, const Integer& b) { return a - b * floor_div(a, b); }

Integer isqrt(const Integer& n)
{
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "isqrt of negative number");
    return mp::sqrt(n);
}

bool is_square(const Integer& n)
{
    if (n < 0) return false;
    Integer r = isqrt(n);
    return r * r == n;
}

Real pi() { return boost::math::constants::pi<Real>(); }

Real pow10(int e) { return mp::pow(Real(10), e); }

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

IntMatrix to_integer(const RatMatrix& m)
{
    IntMatrix r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!is_integer(m(i, j)))
                throw Error(ErrorKind::NotIntegral, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                         ") = " + to_string(m(i, j)) + " is not an integer");
            r(i, j) = mp::numerator(m(i, j));
        }
    return r;
}

ComplexMatrix to_complex(const IntMatrix& m)
{
    ComplexMatrix r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Complex(Real(m(i, j)), Real(0));
    return r;
}

ComplexMatrix to_complex(const RatMatrix& m)
{
    ComplexMatrix r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r(i, j) = Complex(Real(mp::numerator(m(i, j))) / Real(mp::denominator(m(i, j))), Real(0));
    return r;
}

Real max_abs(const ComplexMatrix& m)
{
    Real best = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Real a = std::abs(m(i, j));
            if (a > best) best = a;
        }
    return best;
}

const char* kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotAlternating: return "NotAlternating";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotPrincipal: return "NotPrincipal";
    case ErrorKind::ImaginaryOrder: return "ImaginaryOrder";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::NotSymmetricCompatible: return "NotSymmetricCompatible";
    case ErrorKind::NotSymplecticOrder: return "NotSymplecticOrder";
    case ErrorKind::NotSiegel: return "NotSiegel";
    case ErrorKind::InfiniteOrder: return "InfiniteOrder";
    case ErrorKind::NonIntegralAction: return "NonIntegralAction";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorKind::AmbiguousVanishing: return "AmbiguousVanishing";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::ZeroI10: return "ZeroI10";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::Inert: return "Inert";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::BothMatch: return "BothMatch";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

}  // namespace polkit
