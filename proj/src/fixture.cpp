#include "polkit/fixture.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace polkit {

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& msg)
{
    throw Error(ErrorKind::SchemaError, (pointer.empty() ? "/" : pointer) + ": " + msg);
}

std::string escape_key(const std::string& k)
{
    std::string out;
    for (char c : k) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + escape_key(key); }
std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const Json& member(const Json& j, const std::string& ptr, const std::string& key)
{
    if (!j.is_object()) schema_error(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(at(ptr, key), "missing required member");
    return *it;
}

std::string text_of(const Json& j, const std::string& ptr)
{
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
    if (j.is_number_float()) schema_error(ptr, "binary floats are not allowed; use a decimal string");
    schema_error(ptr, "expected a number string");
}

Rational rational_at(const Json& j, const std::string& ptr)
{
    try {
        return parse_rational(text_of(j, ptr));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaError) throw;
        schema_error(ptr, e.what());
    }
}

Integer integer_at(const Json& j, const std::string& ptr)
{
    Rational r = rational_at(j, ptr);
    if (!is_integer(r)) schema_error(ptr, "expected an integer");
    return mp::numerator(r);
}

Real real_at(const Json& j, const std::string& ptr)
{
    try {
        return parse_real(text_of(j, ptr));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaError) throw;
        schema_error(ptr, e.what());
    }
}

IntMatrix int_matrix_at(const Json& j, const std::string& ptr)
{
    RatMatrix m = parse_rat_matrix(j, ptr);
    if (!is_integral(m)) schema_error(ptr, "expected an integer matrix");
    return to_integer(m);
}

QuadraticSurd surd_at(const Json& j, const std::string& ptr)
{
    QuadraticSurd s;
    s.r = rational_at(member(j, ptr, "r"), at(ptr, "r"));
    s.s = rational_at(member(j, ptr, "s"), at(ptr, "s"));
    s.m = integer_at(member(j, ptr, "m"), at(ptr, "m"));
    return s;
}

template <typename F>
void each_member(const Json& j, const std::string& ptr, F f)
{
    if (!j.is_object()) schema_error(ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) f(it.key(), it.value(), at(ptr, it.key()));
}

const std::set<std::string>& known_checks()
{
    static const std::set<std::string> k{
        "pfaffian", "type",     "primitive_part", "symplectic_basis", "units",          "norm_equation",
        "twist",    "degree",   "principal_check", "classify",        "trace_form",     "quotient",
        "torsion_action", "siegel", "split_verdict", "theta_curve",  "elliptic",       "igusa",
        "curves_distinct", "same_curve", "weilres", "frobenius",    "disambiguate"};
    return k;
}

}  // namespace

RatMatrix parse_rat_matrix(const Json& j, const std::string& ptr)
{
    if (!j.is_array() || j.empty()) schema_error(ptr, "expected a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) schema_error(at(ptr, 0), "expected a non-empty row");
    const std::size_t cols = j[0].size();
    RatMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || row.size() != cols) schema_error(at(ptr, r), "ragged matrix row");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rational_at(row[c], at(at(ptr, r), c));
    }
    return m;
}

Complex parse_complex(const Json& j, const std::string& ptr)
{
    if (j.is_array()) {
        if (j.size() != 2) schema_error(ptr, "complex values are [\"re\",\"im\"] pairs");
        return Complex(real_at(j[0], at(ptr, 0)), real_at(j[1], at(ptr, 1)));
    }
    return Complex(real_at(j, ptr), Real(0));
}

ComplexMatrix parse_complex_matrix(const Json& j, const std::string& ptr)
{
    if (!j.is_array() || j.empty() || !j[0].is_array()) schema_error(ptr, "expected an array of rows");
    const std::size_t rows = j.size(), cols = j[0].size();
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) schema_error(at(ptr, r), "ragged matrix row");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(j[r][c], at(at(ptr, r), c));
    }
    return m;
}

Json to_json(const RatMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const IntMatrix& m) { return to_json(to_rational(m)); }

Json to_json(const Complex& z, int digits)
{
    return Json::array({to_string(z.real(), digits), to_string(z.imag(), digits)});
}

const RatMatrix& Fixture::form(const std::string& key) const
{
    auto it = forms.find(key);
    if (it == forms.end()) throw Error(ErrorKind::InvalidArgument, "fixture has no form '" + key + "'");
    return it->second;
}

const OrderElement& Fixture::element(const std::string& key) const
{
    auto it = elements.find(key);
    if (it == elements.end()) throw Error(ErrorKind::InvalidArgument, "fixture has no element '" + key + "'");
    return it->second;
}

SexticCurve Fixture::curve(const std::string& key) const
{
    auto it = curves.find(key);
    if (it == curves.end()) throw Error(ErrorKind::InvalidArgument, "fixture has no curve '" + key + "'");
    return SexticCurve(it->second);
}

PolarizedLatticeData Fixture::polarized(const std::string& form_key) const
{
    if (!order || !action) throw Error(ErrorKind::InvalidArgument, "fixture has no order/action data");
    const std::string& key = form_key.empty() ? base_form : form_key;
    return PolarizedLatticeData(AlternatingForm(form(key)), *order, *action);
}

Fixture parse_fixture(const Json& doc)
{
    Fixture f;
    if (!doc.is_object()) schema_error("", "fixture must be a JSON object");
    const Json& schema = member(doc, "", "schema");
    if (!schema.is_number_integer() || schema.get<int>() != 1) schema_error("/schema", "unsupported schema version");
    const Json& name = member(doc, "", "name");
    if (!name.is_string()) schema_error("/name", "expected a string");
    f.name = name.get<std::string>();
    if (doc.contains("description")) f.description = doc["description"].get<std::string>();

    if (doc.contains("order")) {
        const Json& o = doc["order"];
        Integer d = integer_at(member(o, "/order", "disc"), "/order/disc");
        Integer c = o.contains("conductor") ? integer_at(o["conductor"], "/order/conductor") : Integer(1);
        try {
            f.order = QuadOrder::from_discriminant(d, c);
        } catch (const Error& e) {
            schema_error("/order", e.what());
        }
    }
    if (doc.contains("action")) f.action = int_matrix_at(member(doc["action"], "/action", "omega"), "/action/omega");
    if (doc.contains("forms"))
        each_member(doc["forms"], "/forms", [&](const std::string& k, const Json& v, const std::string& p) {
            f.forms[k] = parse_rat_matrix(v, p);
        });
    if (doc.contains("polarized")) {
        const Json& pz = member(doc["polarized"], "/polarized", "form");
        if (!pz.is_string()) schema_error("/polarized/form", "expected a form name");
        f.base_form = pz.get<std::string>();
    } else if (f.forms.count("E")) {
        f.base_form = "E";
    }
    if (doc.contains("elements"))
        each_member(doc["elements"], "/elements", [&](const std::string& k, const Json& v, const std::string& p) {
            f.elements[k] = OrderElement(integer_at(member(v, p, "a"), at(p, "a")), integer_at(member(v, p, "b"), at(p, "b")));
        });
    if (doc.contains("endos"))
        each_member(doc["endos"], "/endos", [&](const std::string& k, const Json& v, const std::string& p) {
            f.endos[k] = int_matrix_at(v, p);
        });
    if (doc.contains("basis_changes"))
        each_member(doc["basis_changes"], "/basis_changes", [&](const std::string& k, const Json& v, const std::string& p) {
            f.basis_changes[k] = int_matrix_at(v, p);
        });
    if (doc.contains("lattices"))
        each_member(doc["lattices"], "/lattices", [&](const std::string& k, const Json& v, const std::string& p) {
            f.lattices[k] = parse_rat_matrix(v, p);
        });
    if (doc.contains("periods"))
        each_member(doc["periods"], "/periods", [&](const std::string& k, const Json& v, const std::string& p) {
            FixturePeriods fp;
            fp.omega = parse_complex_matrix(member(v, p, "omega"), at(p, "omega"));
            if (v.contains("symplectic")) {
                if (!v["symplectic"].is_boolean()) schema_error(at(p, "symplectic"), "expected a boolean");
                fp.symplectic = v["symplectic"].get<bool>();
            }
            f.periods[k] = fp;
        });
    if (doc.contains("torsion"))
        each_member(doc["torsion"], "/torsion", [&](const std::string& k, const Json& v, const std::string& p) {
            if (!v.is_array() || v.empty()) schema_error(p, "expected a vector");
            RatVector x(static_cast<Eigen::Index>(v.size()));
            for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = rational_at(v[i], at(p, i));
            f.torsion[k] = x;
        });
    if (doc.contains("curves"))
        each_member(doc["curves"], "/curves", [&](const std::string& k, const Json& v, const std::string& p) {
            const Json& c = member(v, p, "f");
            if (!c.is_array() || c.size() != 7) schema_error(at(p, "f"), "expected 7 coefficients c0..c6");
            std::array<Rational, 7> a;
            for (std::size_t i = 0; i < 7; ++i) a[i] = rational_at(c[i], at(at(p, "f"), i));
            f.curves[k] = a;
        });
    if (doc.contains("ffield")) {
        const Json& ff = doc["ffield"];
        if (!ff.is_array()) schema_error("/ffield", "expected an array");
        for (std::size_t i = 0; i < ff.size(); ++i) {
            const std::string p = at("/ffield", i);
            FfieldCheck c;
            c.p = static_cast<std::int64_t>(integer_at(member(ff[i], p, "p"), at(p, "p")));
            c.d = integer_at(member(ff[i], p, "d"), at(p, "d"));
            const Json& ell = member(ff[i], p, "elliptic");
            const std::string pe = at(p, "elliptic");
            const Json& a = member(ell, pe, "a");
            const Json& b = member(ell, pe, "b");
            if (!a.is_array() || a.size() != 2) schema_error(at(pe, "a"), "expected [a0, a1] for a0 + a1 sqrt(d)");
            if (!b.is_array() || b.size() != 2) schema_error(at(pe, "b"), "expected [b0, b1] for b0 + b1 sqrt(d)");
            c.a0 = rational_at(a[0], at(at(pe, "a"), 0));
            c.a1 = rational_at(a[1], at(at(pe, "a"), 1));
            c.b0 = rational_at(b[0], at(at(pe, "b"), 0));
            c.b1 = rational_at(b[1], at(at(pe, "b"), 1));
            const Json& cand = member(ff[i], p, "candidates");
            if (!cand.is_array() || cand.size() != 2 || !cand[0].is_string() || !cand[1].is_string())
                schema_error(at(p, "candidates"), "expected two curve names");
            c.plus = cand[0].get<std::string>();
            c.minus = cand[1].get<std::string>();
            f.ffield.push_back(c);
        }
    }
    if (doc.contains("weil")) {
        const Json& w = doc["weil"];
        WeilData d;
        d.lambda = surd_at(member(w, "/weil", "lambda"), "/weil/lambda");
        d.n = integer_at(member(w, "/weil", "n"), "/weil/n");
        d.w1 = parse_complex(member(w, "/weil", "w1"), "/weil/w1");
        d.w2 = parse_complex(member(w, "/weil", "w2"), "/weil/w2");
        const Json& s = member(w, "/weil", "sigma");
        if (!s.is_array() || s.size() != 2) schema_error("/weil/sigma", "expected two surd factors");
        d.sigma1 = surd_at(s[0], "/weil/sigma/0");
        d.sigma2 = surd_at(s[1], "/weil/sigma/1");
        f.weil = d;
    }
    if (doc.contains("expected")) {
        const Json& e = doc["expected"];
        if (!e.is_array()) schema_error("/expected", "expected an array of checks");
        for (std::size_t i = 0; i < e.size(); ++i) {
            const Json& c = member(e[i], at("/expected", i), "check");
            if (!c.is_string()) schema_error(at(at("/expected", i), "check"), "expected an operation name");
        }
        f.expected = e;
    }
    return f;
}

Fixture load_fixture(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::SchemaError, path + ": cannot open fixture");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, path + ": " + e.what());
    }
    return parse_fixture(doc);
}

std::vector<std::string> validate_fixture(const Fixture& f)
{
    std::vector<std::string> v;
    auto guard = [&](const std::string& ptr, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            v.push_back(ptr + ": " + e.what());
        }
    };
    for (const auto& [k, m] : f.forms) {
        const std::string p = at("/forms", k);
        if (m.rows() != m.cols()) {
            v.push_back(p + ": not square");
            continue;
        }
        if (m.transpose() != RatMatrix(-m)) {
            v.push_back(p + ": not alternating");
            continue;
        }
        guard(p, [&] { AlternatingForm a(m); });
    }
    if (!f.base_form.empty() && !f.forms.count(f.base_form))
        v.push_back("/polarized/form: unknown form '" + f.base_form + "'");
    if (f.action) {
        if (!f.order) {
            v.push_back("/action: action given without an order");
        } else {
            const IntMatrix& rho = *f.action;
            if (rho.rows() != rho.cols()) {
                v.push_back("/action/omega: not square");
            } else {
                IntMatrix res = minimal_polynomial_residual(rho, *f.order);
                if (!res.isZero())
                    v.push_back("/action/omega: fails x^2 - " + to_string(f.order->tr) + "x + " + to_string(f.order->nm) +
                                " = 0; residual " + format_matrix(res));
                auto it = f.forms.find(f.base_form);
                if (it != f.forms.end() && it->second.rows() == rho.rows() && f.order->is_real()) {
                    RatMatrix t = it->second * to_rational(rho);
                    if (t.transpose() != RatMatrix(-t))
                        v.push_back("/action/omega: E*rho(omega) is not alternating for form '" + f.base_form + "'");
                }
            }
        }
    }
    if (f.action && f.order)
        for (const auto& [k, m] : f.endos) {
            auto e = f.elements.find(k);
            if (e == f.elements.end()) continue;
            const Eigen::Index n = f.action->rows();
            if (m.rows() != n || m.cols() != n) {
                v.push_back(at("/endos", k) + ": size does not match the action");
                continue;
            }
            IntMatrix expect = e->second.a * IntMatrix::Identity(n, n) + e->second.b * *f.action;
            if (expect != m) v.push_back(at("/endos", k) + ": differs from rho(" + k + ") computed from /elements");
        }
    for (const auto& [k, m] : f.basis_changes) guard(at("/basis_changes", k), [&] { BasisChange b(m); });
    for (const auto& [k, m] : f.lattices)
        if (m.rows() != m.cols() || exact_determinant(m) == 0) v.push_back(at("/lattices", k) + ": not a full-rank basis");
    for (const auto& [k, p] : f.periods) guard(at("/periods", k), [&] { PeriodMatrix pm(p.omega); });
    for (const auto& [k, c] : f.curves) guard(at("/curves", k), [&] { SexticCurve s(c); });
    for (std::size_t i = 0; i < f.ffield.size(); ++i) {
        const auto& c = f.ffield[i];
        if (!f.curves.count(c.plus) || !f.curves.count(c.minus))
            v.push_back(at(at("/ffield", i), "candidates") + ": unknown curve name");
        if (!is_prime(c.p) || c.p == 2) v.push_back(at(at("/ffield", i), "p") + ": not an odd prime");
    }
    for (std::size_t i = 0; i < f.expected.size(); ++i) {
        const std::string op = f.expected[i]["check"].get<std::string>();
        if (!known_checks().count(op)) v.push_back(at(at("/expected", i), "check") + ": unknown operation '" + op + "'");
    }
    return v;
}

RatVector torsion_combination(const Fixture& f, const std::string& expr)
{
    RatVector acc;
    std::string s;
    for (char c : expr)
        if (c != ' ') s += c;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw Error(ErrorKind::InvalidArgument, "bad torsion expression '" + expr + "'");
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        Rational k = 1;
        if (auto star = term.find('*'); star != std::string::npos) {
            k = parse_rational(term.substr(0, star));
            term = term.substr(star + 1);
        }
        auto it = f.torsion.find(term);
        if (it == f.torsion.end()) throw Error(ErrorKind::InvalidArgument, "unknown torsion point '" + term + "'");
        RatVector t = it->second * Rational(sign * k);
        if (first)
            acc = t;
        else
            acc += t;
        first = false;
        i = j;
    }
    if (first) throw Error(ErrorKind::InvalidArgument, "empty torsion expression");
    return acc;
}

}  // namespace polkit
