#include <algorithm>
#include <chrono>
#include <sstream>

#include "polkit/fixture.hpp"

namespace polkit {

namespace {

struct Ctx {
    const Fixture& f;
    const VerifyConfig& cfg;
};

std::string sparam(const Json& j, const char* key, const std::string& def = {})
{
    auto it = j.find(key);
    if (it == j.end()) return def;
    if (it->is_string()) return it->get<std::string>();
    return it->dump();
}

bool has(const Json& j, const char* key) { return j.contains(key); }

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ")
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

std::vector<std::string> slist(const Json& j, const char* key)
{
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    for (const auto& x : j[key]) out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    return out;
}

Real tolerance(const Json& j, const char* key, const char* def)
{
    return parse_real(sparam(j, key, def));
}

CheckResult make(const std::string& id, bool ok, std::string computed, std::string expected, std::string tol = {})
{
    CheckResult r;
    r.id = id;
    r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    r.computed = std::move(computed);
    r.expected = std::move(expected);
    r.tolerance = std::move(tol);
    return r;
}

RatMatrix twisted_matrix(const Ctx& c, const Json& j)
{
    RatMatrix m = c.f.form(sparam(j, "form", c.f.base_form));
    if (has(j, "element")) {
        PolarizedLatticeData p = c.f.polarized(sparam(j, "form"));
        m = m * to_rational(p.rho(c.f.element(sparam(j, "element"))));
    }
    return m * parse_rational(sparam(j, "scale", "1"));
}

std::string form_label(const Ctx& c, const Json& j)
{
    std::string s = sparam(j, "form", c.f.base_form);
    if (has(j, "element")) s += "*" + sparam(j, "element");
    if (has(j, "scale")) s += "*" + sparam(j, "scale");
    return s;
}

QuadOrder order_of(const Ctx& c, const Json& j)
{
    if (has(j, "disc")) return QuadOrder::from_discriminant(parse_integer(sparam(j, "disc")), parse_integer(sparam(j, "conductor", "1")));
    if (!c.f.order) throw Error(ErrorKind::InvalidArgument, "no order in fixture");
    return *c.f.order;
}

RepresentativeSiegel siegel_for(const Ctx& c, const Json& j)
{
    const std::string pname = sparam(j, "periods");
    auto it = c.f.periods.find(pname);
    if (it == c.f.periods.end()) throw Error(ErrorKind::InvalidArgument, "unknown periods '" + pname + "'");
    PeriodInput in{PeriodMatrix(it->second.omega), it->second.symplectic};
    Representative rep{OrderElement(1), AlternatingForm(twisted_matrix(c, j))};
    if (!has(j, "form") && in.symplectic_order) rep.form = AlternatingForm(RatMatrix(to_rational(standard_symplectic(in.omega.genus()))));
    return representative_siegel_point(rep, in, tolerance(j, "tol", "1e-20"));
}

ThetaConfig theta_cfg(const Ctx& c, const Json& j)
{
    ThetaConfig t;
    t.digits = c.cfg.digits;
    t.jobs = c.cfg.jobs;
    if (has(j, "threshold")) t.threshold = parse_real(sparam(j, "threshold"));
    return t;
}

CheckResult check_pfaffian(const Ctx& c, const Json& j)
{
    Integer pf = mp::abs(pfaffian(AlternatingForm(twisted_matrix(c, j))));
    return make("pfaffian[" + form_label(c, j) + "]", pf.str() == sparam(j, "expect"), "|Pf| = " + pf.str(),
                "|Pf| = " + sparam(j, "expect"));
}

CheckResult check_type(const Ctx& c, const Json& j)
{
    AlternatingForm a(twisted_matrix(c, j));
    std::string id = "type[" + form_label(c, j) + "]";
    if (j.value("primitive", false)) {
        a = primitive_part(a).first;
        id = "type[primitive " + form_label(c, j) + "]";
    }
    std::string t = polarization_type(a).str();
    return make(id, t == sparam(j, "expect"), t, sparam(j, "expect"));
}

CheckResult check_primitive(const Ctx& c, const Json& j)
{
    auto [a0, mult] = primitive_part(AlternatingForm(twisted_matrix(c, j)));
    std::string comp = "multiplier " + to_string(mult) + ", type " + polarization_type(a0).str();
    std::string exp = "multiplier " + sparam(j, "expect_multiplier") + ", type " + sparam(j, "expect_type");
    bool ok = comp == exp;
    if (has(j, "expect_form")) {
        ok = ok && a0.matrix == c.f.form(sparam(j, "expect_form"));
        comp += ", form " + format_matrix(a0.matrix);
        exp += ", form " + sparam(j, "expect_form");
    }
    return make("primitive_part[" + form_label(c, j) + "]", ok, comp, exp);
}

CheckResult check_symplectic_basis(const Ctx& c, const Json& j)
{
    AlternatingForm a(twisted_matrix(c, j));
    PolarizationType t = polarization_type(a);
    std::vector<std::string> parts;
    bool ok = true;
    if (has(j, "basis")) {
        auto it = c.f.basis_changes.find(sparam(j, "basis"));
        if (it == c.f.basis_changes.end()) throw Error(ErrorKind::InvalidArgument, "unknown basis " + sparam(j, "basis"));
        bool given = check_symplectic(BasisChange(it->second), a, t);
        ok = ok && given;
        parts.push_back(sparam(j, "basis") + (given ? " normalizes" : " fails"));
    }
    bool own = check_symplectic(symplectic_basis(a), a, t);
    ok = ok && own;
    parts.push_back(std::string("computed basis ") + (own ? "normalizes" : "fails"));
    parts.push_back("type " + t.str());
    std::vector<std::string> expect;
    if (has(j, "basis")) expect.push_back(sparam(j, "basis") + " normalizes");
    expect.push_back("computed basis normalizes");
    expect.push_back("type " + sparam(j, "expect_type"));
    ok = ok && t.str() == sparam(j, "expect_type");
    return make("symplectic_basis[" + form_label(c, j) + "]", ok, join(parts), join(expect));
}

CheckResult check_units(const Ctx& c, const Json& j)
{
    QuadOrder o = order_of(c, j);
    std::string comp;
    if (o.is_real()) {
        UnitGroupData u = fundamental_unit(o);
        comp = "eps = " + format(u.fundamental_unit, o) + ", N(eps) = " + std::to_string(u.norm_of_fundamental_unit) + ", ";
    }
    comp += "pi = " + std::to_string(polarization_classes(o).order());
    std::string exp;
    if (o.is_real()) exp = "eps = " + sparam(j, "expect_unit") + ", N(eps) = " + sparam(j, "expect_norm") + ", ";
    exp += "pi = " + sparam(j, "expect_pi");
    return make("units[" + o.str() + "]", comp == exp, comp, exp);
}

CheckResult check_norm_equation(const Ctx& c, const Json& j)
{
    QuadOrder o = order_of(c, j);
    Integer d = parse_integer(sparam(j, "d"));
    std::vector<std::string> sols;
    for (const auto& t : solve_norm_equation(o, d)) sols.push_back(format(t, o));
    std::vector<std::string> want = slist(j, "expect_contains");
    bool ok = true;
    for (const auto& w : want) ok = ok && std::find(sols.begin(), sols.end(), w) != sols.end();
    std::string exp = want.empty() ? "none" : "contains " + join(want);
    if (j.value("expect_empty", false)) ok = ok && sols.empty();
    return make("norm_equation[" + o.str() + ", " + d.str() + "]", ok, sols.empty() ? "none" : join(sols), exp);
}

CheckResult check_twist(const Ctx& c, const Json& j)
{
    PolarizedLatticeData p = c.f.polarized(sparam(j, "form"));
    OrderElement t = c.f.element(sparam(j, "element"));
    AlternatingForm tw = twist_form(p, t, parse_rational(sparam(j, "scale", "1")));
    std::vector<std::string> comp, exp;
    bool ok = true;
    if (has(j, "expect_form")) {
        bool eq = tw.matrix == c.f.form(sparam(j, "expect_form"));
        ok = ok && eq;
        comp.push_back(eq ? "equals " + sparam(j, "expect_form") : format_matrix(tw.matrix));
        exp.push_back("equals " + sparam(j, "expect_form"));
    }
    if (has(j, "expect_type")) {
        std::string ty = polarization_type(tw).str();
        ok = ok && ty == sparam(j, "expect_type");
        comp.push_back("type " + ty);
        exp.push_back("type " + sparam(j, "expect_type"));
    }
    return make("twist[" + form_label(c, j) + "]", ok, join(comp), join(exp));
}

CheckResult check_degree(const Ctx& c, const Json& j)
{
    PolarizedLatticeData p = c.f.polarized(sparam(j, "form"));
    Integer d = degree_of(p, c.f.element(sparam(j, "element")));
    return make("degree[" + form_label(c, j) + "]", d.str() == sparam(j, "expect"), d.str(), sparam(j, "expect"));
}

CheckResult check_principal(const Ctx& c, const Json& j)
{
    PolarizedLatticeData p = c.f.polarized(sparam(j, "form"));
    PrincipalityResult r = is_principally_polarizable(p);
    std::string comp = r.polarizable ? "polarizable, witness " + format(*r.witness, p.order) : "not polarizable";
    std::string exp = j.value("expect_polarizable", true) ? "polarizable, witness " + sparam(j, "expect_witness")
                                                          : "not polarizable";
    return make("principal_check[" + sparam(j, "form", c.f.base_form) + "]", comp == exp, comp, exp);
}

std::string classification_text(const ClassificationReport& r)
{
    std::vector<std::string> reps;
    for (const auto& x : r.representatives) reps.push_back(format(x.unit, r.order));
    std::string s = "pi = " + std::to_string(r.pi_count) + "; representatives: " + join(reps);
    if (!r.verdicts.empty()) {
        std::vector<std::string> v;
        for (const auto& x : r.verdicts) v.push_back(x ? verdict_name(x->verdict) : "-");
        s += "; verdicts: " + join(v);
    }
    if (r.tau_count) s += "; tau = " + std::to_string(*r.tau_count) + ", sigma = " + std::to_string(*r.sigma_count);
    return s;
}

CheckResult check_classify(const Ctx& c, const Json& j)
{
    PolarizedLatticeData p = c.f.polarized(sparam(j, "form"));
    std::vector<std::optional<PeriodInput>> per;
    for (const auto& name : slist(j, "periods")) {
        if (name == "null") {
            per.push_back(std::nullopt);
            continue;
        }
        const FixturePeriods& fp = c.f.periods.at(name);
        per.push_back(PeriodInput{PeriodMatrix(fp.omega), fp.symplectic});
    }
    std::optional<Real> tol;
    if (has(j, "tol")) tol = parse_real(sparam(j, "tol"));
    ClassificationReport r = classification_report(p, per, theta_cfg(c, j), tol);
    std::string exp = "pi = " + sparam(j, "expect_pi") + "; representatives: " + join(slist(j, "expect_representatives"));
    if (has(j, "expect_verdicts")) exp += "; verdicts: " + join(slist(j, "expect_verdicts"));
    if (has(j, "expect_tau")) exp += "; tau = " + sparam(j, "expect_tau") + ", sigma = " + sparam(j, "expect_sigma");
    std::string comp = classification_text(r);
    CheckResult res = make("classify[" + sparam(j, "form", c.f.base_form) + "]", comp == exp, comp, exp,
                           has(j, "threshold") ? "threshold " + sparam(j, "threshold") : "");
    if (!r.verdicts.empty()) {
        std::vector<std::string> ratios;
        for (const auto& v : r.verdicts)
            if (v) ratios.push_back(to_string(v->min_ratio, 3));
        res.note = "min |theta|/max: " + join(ratios);
    }
    return res;
}

CheckResult check_trace_form(const Ctx& c, const Json& j)
{
    PolarizedLatticeData p = c.f.polarized(sparam(j, "form"));
    std::vector<std::string> comp, exp;
    bool ok = true;
    if (has(j, "expect_canonical")) {
        AlternatingForm canon = trace_degree_one_form(ModuleStructure{p.order, BasisChange::identity(4)});
        bool eq = canon.matrix == c.f.form(sparam(j, "expect_canonical"));
        ok = ok && eq;
        comp.push_back("canonical " + format_matrix(canon.matrix));
        exp.push_back("canonical " + format_matrix(c.f.form(sparam(j, "expect_canonical"))));
    }
    auto ms = module_structure_from_action(p);
    if (!ms) throw Error(ErrorKind::InvalidArgument, "no module basis found in the search box");
    AlternatingForm e0 = trace_degree_one_form(*ms);
    Rational det = exact_determinant(e0.matrix);
    bool integral = e0.integral();
    ok = ok && integral && det.str() == sparam(j, "expect_det", "1");
    comp.push_back(std::string(integral ? "integral" : "non-integral") + ", det " + to_string(det));
    exp.push_back("integral, det " + sparam(j, "expect_det", "1"));
    return make("trace_form[" + p.order.str() + "]", ok, join(comp), join(exp));
}

CheckResult check_quotient(const Ctx& c, const Json& j)
{
    AlternatingForm e(c.f.form(sparam(j, "form", c.f.base_form)));
    std::vector<std::string> gens = slist(j, "generators");
    std::vector<RatVector> vs;
    for (const auto& g : gens) vs.push_back(torsion_combination(c.f, g));
    TorsionQuotient q = quotient_by_torsion(e, TorsionSubgroup(vs));
    std::vector<std::string> comp, exp;
    bool ok = q.group_order.str() == sparam(j, "expect_order");
    comp.push_back("#G = " + q.group_order.str());
    exp.push_back("#G = " + sparam(j, "expect_order"));

    Integer lhs = mp::abs(pfaffian(q.scaled));
    Integer rhs = mp::abs(pfaffian(e)) * q.group_order;
    for (int k = 2; k < e.genus(); ++k) rhs *= q.group_order;
    ok = ok && lhs == rhs;
    comp.push_back("|Pf(#G E_G)| = " + lhs.str());
    exp.push_back("|Pf(#G E_G)| = " + rhs.str());

    RatMatrix basis = q.basis;
    RatMatrix restricted = q.restricted.matrix;
    if (has(j, "lattice")) {
        const RatMatrix& b = c.f.lattices.at(sparam(j, "lattice"));
        bool same = same_lattice(b, q.basis);
        ok = ok && same;
        comp.push_back(sparam(j, "lattice") + (same ? " spans" : " differs"));
        exp.push_back(sparam(j, "lattice") + " spans");
        basis = b;
        restricted = b.transpose() * e.matrix * b;
    }
    if (has(j, "expect_restricted")) {
        bool eq = restricted == c.f.form(sparam(j, "expect_restricted"));
        ok = ok && eq;
        comp.push_back(eq ? "E_G = " + sparam(j, "expect_restricted") : "E_G = " + format_matrix(restricted));
        exp.push_back("E_G = " + sparam(j, "expect_restricted"));
    }
    if (has(j, "expect_primitive_type")) {
        std::string t = polarization_type(primitive_part(AlternatingForm(restricted)).first).str();
        ok = ok && t == sparam(j, "expect_primitive_type");
        comp.push_back("primitive type " + t);
        exp.push_back("primitive type " + sparam(j, "expect_primitive_type"));
    }
    if (has(j, "twist")) {
        const Json& tj = j["twist"];
        OrderElement t = c.f.element(sparam(tj, "element"));
        PolarizedLatticeData p = c.f.polarized(sparam(j, "form"));
        RatMatrix rho = exact_inverse(basis) * to_rational(p.rho(t)) * basis;
        bool integral = is_integral(rho);
        ok = ok && integral;
        comp.push_back(std::string("rho(") + sparam(tj, "element") + ") " + (integral ? "integral" : "not integral") + " on G-lattice");
        exp.push_back(std::string("rho(") + sparam(tj, "element") + ") integral on G-lattice");
        if (integral) {
            RatMatrix tw = restricted * rho;
            if (has(tj, "expect_form")) {
                bool eq = tw == c.f.form(sparam(tj, "expect_form"));
                ok = ok && eq;
                comp.push_back(eq ? "twist = " + sparam(tj, "expect_form") : "twist = " + format_matrix(tw));
                exp.push_back("twist = " + sparam(tj, "expect_form"));
            }
            if (has(tj, "expect_type")) {
                std::string ty = polarization_type(AlternatingForm(tw)).str();
                ok = ok && ty == sparam(tj, "expect_type");
                comp.push_back("twist type " + ty);
                exp.push_back("twist type " + sparam(tj, "expect_type"));
            }
        }
    }
    return make("quotient[<" + join(gens) + ">]", ok, join(comp), join(exp));
}

CheckResult check_torsion_action(const Ctx& c, const Json& j)
{
    IntMatrix m;
    std::string label;
    if (has(j, "endo")) {
        label = sparam(j, "endo");
        m = c.f.endos.at(label);
    } else {
        label = sparam(j, "element");
        m = c.f.polarized().rho(c.f.element(label));
    }
    std::vector<std::string> comp, exp;
    bool ok = true;
    if (has(j, "expect_multiplier")) {
        Rational k = parse_rational(sparam(j, "expect_multiplier"));
        for (const auto& g : slist(j, "generators")) {
            RatVector x = torsion_combination(c.f, g);
            bool mult = is_integral(RatVector(to_rational(m) * x - k * x));
            ok = ok && mult;
            comp.push_back(label + "(" + g + ") " + (mult ? "= " : "!= ") + to_string(k) + "*" + g);
            exp.push_back(label + "(" + g + ") = " + to_string(k) + "*" + g);
        }
    }
    if (has(j, "images"))
        for (auto it = j["images"].begin(); it != j["images"].end(); ++it) {
            RatVector x = torsion_combination(c.f, it.key());
            std::string want = it.value().get<std::string>();
            RatVector y = to_rational(m) * x;
            bool eq = want == "0" ? is_integral(y) : is_integral(RatVector(y - torsion_combination(c.f, want)));
            ok = ok && eq;
            comp.push_back(label + "(" + it.key() + ") " + (eq ? "= " : "!= ") + want);
            exp.push_back(label + "(" + it.key() + ") = " + want);
        }
    return make("torsion_action[" + label + "]", ok, join(comp), join(exp));
}

CheckResult check_siegel(const Ctx& c, const Json& j)
{
    RepresentativeSiegel rs = siegel_for(c, j);
    std::string comp = "symmetric, Im Z > 0", exp = comp;
    bool ok = true;
    if (j.value("expect_diagonal", false)) {
        Real off = std::abs(rs.z.z(0, 1));
        bool diag = off <= tolerance(j, "tol", "1e-20") * max_abs(rs.z.z);
        ok = diag;
        comp += diag ? ", diagonal" : ", off-diagonal " + to_string(off, 3);
        exp += ", diagonal";
    }
    CheckResult r = make("siegel[" + sparam(j, "periods") + (has(j, "form") ? "," + form_label(c, j) : "") + "]", ok, comp,
                         exp, "tol " + sparam(j, "tol", "1e-20"));
    r.note = "min eig Im Z = " + to_string(rs.z.min_imag_eigenvalue, 6);
    return r;
}

CheckResult check_split_verdict(const Ctx& c, const Json& j)
{
    RepresentativeSiegel rs = siegel_for(c, j);
    VerdictResult v = decomposition_verdict(rs.z, theta_cfg(c, j));
    std::string comp = std::string(verdict_name(v.verdict)) + ", " + std::to_string(v.vanishing.size()) + " vanishing";
    std::string exp = sparam(j, "expect") + ", " + (sparam(j, "expect") == "Split" ? "1" : "0") + " vanishing";
    CheckResult r = make("split_verdict[" + sparam(j, "periods") + (has(j, "form") ? "," + form_label(c, j) : "") + "]",
                         comp == exp, comp, exp, "threshold " + sparam(j, "threshold", to_string(v.threshold, 3)));
    r.note = "min |theta|/max = " + to_string(v.min_ratio, 3) + ", radius " + std::to_string(v.thetas.truncation_radius);
    return r;
}

CheckResult check_theta_curve(const Ctx& c, const Json& j)
{
    RepresentativeSiegel rs = siegel_for(c, j);
    ThetaNullVector t = even_theta_nulls(rs.z, theta_cfg(c, j));
    Real mis = theta_curve_mismatch(t, igusa_clebsch(c.f.curve(sparam(j, "curve"))));
    Real tol = tolerance(j, "match_tol", "1e-3");
    return make("theta_curve[" + sparam(j, "periods") + "~" + sparam(j, "curve") + "]", mis <= tol,
                "relative mismatch " + (mis < tol ? std::string("below tolerance") : to_string(mis, 3)),
                "relative mismatch below tolerance", "rel " + sparam(j, "match_tol", "1e-3"));
}

Complex surd_value(const Json& j)
{
    QuadraticSurd s;
    s.r = parse_rational(sparam(j, "r"));
    s.s = parse_rational(sparam(j, "s"));
    s.m = parse_integer(sparam(j, "m"));
    return s.value();
}

CheckResult check_elliptic(const Ctx& c, const Json& j)
{
    const Json& lat = j["lattice"];
    Complex w1 = parse_complex(lat[0], "/lattice/0"), w2 = parse_complex(lat[1], "/lattice/1");
    EllipticInvariants e = elliptic_invariants(w1, w2);
    Real tol = tolerance(j, "rel_tol", "1e-3");
    std::vector<std::string> comp, exp;
    bool ok = true;
    auto cmp = [&](const char* name, const Complex& got, const char* key) {
        if (!has(j, key)) return;
        Complex want = surd_value(j[key]);
        Real rel = std::abs(got - want) / std::abs(want);
        bool good = rel <= tol;
        ok = ok && good;
        comp.push_back(std::string(name) + (good ? " matches" : " off by " + to_string(rel, 3)));
        exp.push_back(std::string(name) + " matches");
    };
    cmp("j", e.j, "expect_j");
    cmp("c4", e.c4, "expect_c4");
    cmp("c6", e.c6, "expect_c6");
    (void)c;
    CheckResult r = make("elliptic[" + sparam(j, "name", "lattice") + "]", ok, join(comp), join(exp), "rel " + sparam(j, "rel_tol", "1e-3"));
    r.note = "j = " + to_string(e.j, 8);
    return r;
}

CheckResult check_igusa(const Ctx& c, const Json& j)
{
    SexticCurve cv = c.f.curve(sparam(j, "curve"));
    InvariantSet s = igusa_invariants(cv);
    std::vector<std::string> comp, exp;
    if (has(j, "expect_ic")) {
        comp.push_back("I = " + join({to_string(s.I2), to_string(s.I4), to_string(s.I6), to_string(s.I10)}));
        exp.push_back("I = " + join(slist(j, "expect_ic")));
    }
    if (has(j, "expect")) {
        comp.push_back("i = " + join({to_string(s.i1), to_string(s.i2), to_string(s.i3)}));
        std::vector<std::string> want;
        for (const auto& w : slist(j, "expect")) want.push_back(to_string(parse_rational(w)));
        exp.push_back("i = " + join(want));
    }
    if (j.value("expect_nonzero_I10", false)) {
        comp.push_back(s.I10 != 0 ? "I10 != 0" : "I10 = 0");
        exp.push_back("I10 != 0");
    }
    return make("igusa[" + sparam(j, "curve") + "]", join(comp) == join(exp), join(comp), join(exp));
}

CheckResult check_curves_distinct(const Ctx& c, const Json& j, bool want_same)
{
    std::vector<std::string> names = slist(j, "curves");
    std::vector<SexticCurve> cs;
    for (const auto& n : names) cs.push_back(c.f.curve(n));
    bool ok = true;
    std::vector<std::string> bad;
    for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a + 1; b < cs.size(); ++b) {
            bool same = same_curve_over_closure(cs[a], cs[b]);
            if (same != want_same) {
                ok = false;
                bad.push_back(names[a] + (same ? "~" : "!~") + names[b]);
            }
        }
    std::string want = want_same ? "isomorphic over Qbar" : "pairwise non-isomorphic over Qbar";
    return make(std::string(want_same ? "same_curve[" : "curves_distinct[") + join(names) + "]", ok,
                ok ? want : join(bad), want);
}

CheckResult check_weilres(const Ctx& c, const Json& j)
{
    if (!c.f.weil) throw Error(ErrorKind::InvalidArgument, "fixture has no Weil restriction data");
    const WeilData& w = *c.f.weil;
    IsogenyDescent d;
    d.lambda = w.lambda.value();
    d.n = w.n;
    d.w1 = w.w1;
    d.w2 = w.w2;
    d.ws1 = w.sigma1.value() * w.w1;
    d.ws2 = w.sigma2.value() * w.w2;
    Real tol = tolerance(j, "tol", "1e-6");
    WeilRestriction wr = weil_restriction_lattice(d, tol);
    PolarizedLatticeData p(wr.form, wr.order, wr.sqrt_action);
    OrderElement t = c.f.element(sparam(j, "element"));
    IntMatrix m = p.rho(t);
    std::vector<std::string> comp, exp;
    bool ok = true;
    if (has(j, "expect_action")) {
        bool eq = m == c.f.endos.at(sparam(j, "expect_action"));
        ok = ok && eq;
        comp.push_back(eq ? "rho(" + sparam(j, "element") + ") = " + sparam(j, "expect_action") : format_matrix(m));
        exp.push_back("rho(" + sparam(j, "element") + ") = " + sparam(j, "expect_action"));
    }
    if (has(j, "expect_form")) {
        AlternatingForm eu = twist_form(p, t);
        bool eq = eu.matrix == c.f.form(sparam(j, "expect_form"));
        ok = ok && eq;
        comp.push_back(eq ? "E_t = " + sparam(j, "expect_form") : "E_t = " + format_matrix(eu.matrix));
        exp.push_back("E_t = " + sparam(j, "expect_form"));
    }
    bool small = wr.residual <= tol;
    ok = ok && small;
    comp.push_back(small ? "residual below tol" : "residual " + to_string(wr.residual, 3));
    exp.push_back("residual below tol");
    if (has(j, "expect_verdicts")) {
        std::vector<std::optional<PeriodInput>> per(2, PeriodInput{wr.periods, false});
        std::optional<Real> stol;
        if (has(j, "siegel_tol")) stol = parse_real(sparam(j, "siegel_tol"));
        ClassificationReport r = classification_report(p, per, theta_cfg(c, j), stol);
        comp.push_back(classification_text(r));
        exp.push_back("pi = " + sparam(j, "expect_pi") + "; representatives: " + join(slist(j, "expect_representatives")) +
                      "; verdicts: " + join(slist(j, "expect_verdicts")) + "; tau = " + sparam(j, "expect_tau") +
                      ", sigma = " + sparam(j, "expect_sigma"));
        ok = ok && comp.back() == exp.back();
    }
    return make("weilres[" + to_string(w.n) + "]", ok, join(comp), join(exp), "tol " + sparam(j, "tol", "1e-6"));
}

std::string charpoly_text(const std::array<std::int64_t, 5>& c)
{
    std::vector<std::string> xs;
    for (auto v : c) xs.push_back(std::to_string(v));
    return "[" + join(xs, ",") + "]";
}

CheckResult check_frobenius(const Ctx& c, const Json& j)
{
    std::int64_t p = static_cast<std::int64_t>(parse_integer(sparam(j, "p")));
    FrobeniusData fd = frobenius_of(c.f.curve(sparam(j, "curve")), p, c.cfg.jobs);
    const auto& cp = fd.charpoly;
    // T^4 P(p/T) = p^2 P(T): coefficients satisfy c3 = p c1, c4 = p^2 c0
    bool fe = cp[3] == p * cp[1] && cp[4] == p * p * cp[0];
    bool weil = cp[1] * cp[1] <= 16 * p;
    std::string comp = "counts " + std::to_string(fd.n1) + "," + std::to_string(fd.n2) + "; charpoly " + charpoly_text(cp);
    std::string exp = has(j, "expect_counts") ? "counts " + join(slist(j, "expect_counts"), ",") + "; charpoly " +
                                                    "[" + join(slist(j, "expect_charpoly"), ",") + "]"
                                              : comp;
    return make("frobenius[" + sparam(j, "curve") + ", p=" + std::to_string(p) + "]", fe && weil && comp == exp, comp, exp);
}

CheckResult check_disambiguate(const Ctx& c, const Json& j)
{
    std::size_t idx = static_cast<std::size_t>(std::stoul(sparam(j, "index", "0")));
    const FfieldCheck& fc = c.f.ffield.at(idx);
    QuadFieldCurveReduction q;
    q.a0 = fc.a0;
    q.a1 = fc.a1;
    q.b0 = fc.b0;
    q.b1 = fc.b1;
    q.d = fc.d;
    q.p = fc.p;
    SexticCurve plus = c.f.curve(fc.plus), minus = c.f.curve(fc.minus);
    Disambiguation a = disambiguate_sign({plus, minus}, q, c.cfg.jobs);
    Disambiguation b = disambiguate_sign({minus, plus}, q, c.cfg.jobs);
    std::string sel = a.selected == 0 ? fc.plus : fc.minus;
    std::string sel_swapped = b.selected == 0 ? fc.minus : fc.plus;
    bool ok = sel == sparam(j, "expect") && sel_swapped == sel;
    std::string comp = sel + " (root " + std::to_string(a.root) + ")" + (sel_swapped == sel ? ", order-independent" : ", order-dependent");
    CheckResult r = make("disambiguate[p=" + std::to_string(fc.p) + "]", ok, comp,
                         sparam(j, "expect") + " (root " + std::to_string(a.root) + "), order-independent");
    r.note = "quartic " + charpoly_text(a.quartics[static_cast<std::size_t>(a.selected)]);
    return r;
}

CheckResult run_check(const Ctx& c, const Json& j)
{
    const std::string op = j["check"].get<std::string>();
    if (op == "pfaffian") return check_pfaffian(c, j);
    if (op == "type") return check_type(c, j);
    if (op == "primitive_part") return check_primitive(c, j);
    if (op == "symplectic_basis") return check_symplectic_basis(c, j);
    if (op == "units") return check_units(c, j);
    if (op == "norm_equation") return check_norm_equation(c, j);
    if (op == "twist") return check_twist(c, j);
    if (op == "degree") return check_degree(c, j);
    if (op == "principal_check") return check_principal(c, j);
    if (op == "classify") return check_classify(c, j);
    if (op == "trace_form") return check_trace_form(c, j);
    if (op == "quotient") return check_quotient(c, j);
    if (op == "torsion_action") return check_torsion_action(c, j);
    if (op == "siegel") return check_siegel(c, j);
    if (op == "split_verdict") return check_split_verdict(c, j);
    if (op == "theta_curve") return check_theta_curve(c, j);
    if (op == "elliptic") return check_elliptic(c, j);
    if (op == "igusa") return check_igusa(c, j);
    if (op == "curves_distinct") return check_curves_distinct(c, j, false);
    if (op == "same_curve") return check_curves_distinct(c, j, true);
    if (op == "weilres") return check_weilres(c, j);
    if (op == "frobenius") return check_frobenius(c, j);
    if (op == "disambiguate") return check_disambiguate(c, j);
    throw Error(ErrorKind::SchemaError, "unknown check '" + op + "'");
}

}  // namespace

const char* status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "SKIP";
    }
    return "?";
}

int RunReport::count(CheckStatus s) const
{
    int n = 0;
    for (const auto& c : checks) n += c.status == s;
    return n;
}

std::string RunReport::text() const
{
    std::ostringstream os;
    os << "fixture " << fixture << " (digits " << digits << ", " << precision_bits << " bits)\n";
    for (const auto& c : checks) {
        os << status_name(c.status) << "  " << c.id << "\n";
        os << "      computed: " << c.computed << "\n";
        if (c.status != CheckStatus::Pass || c.expected != c.computed) os << "      expected: " << c.expected << "\n";
        if (!c.tolerance.empty()) os << "      tolerance: " << c.tolerance << "\n";
        if (!c.note.empty()) os << "      note: " << c.note << "\n";
    }
    os << "summary: " << count(CheckStatus::Pass) << " pass, " << count(CheckStatus::Fail) << " fail, "
       << count(CheckStatus::Skip) << " skip\n";
    return os.str();
}

Json RunReport::to_json() const
{
    Json checks_j = Json::array();
    for (const auto& c : checks)
        checks_j.push_back({{"id", c.id},
                            {"status", status_name(c.status)},
                            {"computed", c.computed},
                            {"expected", c.expected},
                            {"tolerance", c.tolerance},
                            {"note", c.note}});
    return {{"fixture", fixture},
            {"digits", digits},
            {"precision_bits", precision_bits},
            {"checks", checks_j},
            {"summary", {{"pass", count(CheckStatus::Pass)}, {"fail", count(CheckStatus::Fail)}, {"skip", count(CheckStatus::Skip)}}},
            {"wall_seconds", wall_seconds}};
}

RunReport RunReport::from_json(const Json& j)
{
    RunReport r;
    r.fixture = j.at("fixture").get<std::string>();
    r.digits = j.at("digits").get<int>();
    r.precision_bits = j.at("precision_bits").get<unsigned>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    for (const auto& c : j.at("checks")) {
        CheckResult x;
        x.id = c.at("id").get<std::string>();
        const std::string s = c.at("status").get<std::string>();
        x.status = s == "PASS" ? CheckStatus::Pass : s == "FAIL" ? CheckStatus::Fail : CheckStatus::Skip;
        x.computed = c.at("computed").get<std::string>();
        x.expected = c.at("expected").get<std::string>();
        x.tolerance = c.at("tolerance").get<std::string>();
        x.note = c.at("note").get<std::string>();
        r.checks.push_back(x);
    }
    return r;
}

RunReport verify_fixture(const Fixture& f, const VerifyConfig& cfg)
{
    auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.fixture = f.name;
    rep.digits = cfg.digits;
    rep.precision_bits = working_precision_bits();
    Ctx ctx{f, cfg};
    for (std::size_t i = 0; i < f.expected.size(); ++i) {
        const Json& j = f.expected[i];
        if (j.value("skip", false)) {
            CheckResult r;
            r.id = j["check"].get<std::string>() + "#" + std::to_string(i);
            r.status = CheckStatus::Skip;
            r.note = sparam(j, "reason");
            rep.checks.push_back(r);
            continue;
        }
        try {
            CheckResult r = run_check(ctx, j);
            if (has(j, "label")) r.id += " " + sparam(j, "label");
            rep.checks.push_back(r);
        } catch (const std::exception& e) {
            CheckResult r;
            r.id = j["check"].get<std::string>() + "#" + std::to_string(i);
            r.status = CheckStatus::Fail;
            r.computed = "error";
            r.expected = sparam(j, "expect", "success");
            r.note = e.what();
            rep.checks.push_back(r);
        }
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace polkit
