#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "polkit/fixture.hpp"

namespace polkit {

namespace {

struct Options {
    std::string fixture;
    unsigned prec = 128;
    int digits = 30;
    std::string tol;
    bool json = false;
    unsigned jobs = 1;

    std::string form, element, scale, basis, periods, curve, coeffs, gens, golden;
    std::string disc, conductor = "1";
    std::int64_t p = 0;
    int k = 1;
    std::size_t index = 0;
    bool update_golden = false;
};

// Raised for bad invocations; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    Json json = Json::object();
    std::string text;
    int code = 0;
};

std::vector<std::string> split(const std::string& s, char sep = ',')
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ")
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

std::string matrix_text(const RatMatrix& m)
{
    std::string s;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<std::string> row;
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        s += "[" + join(row, " ") + "]" + (r + 1 < m.rows() ? "\n" : "");
    }
    return s;
}

std::string matrix_text(const IntMatrix& m) { return matrix_text(to_rational(m)); }

Json complex_matrix_json(const ComplexMatrix& m, int digits)
{
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c), digits));
        rows.push_back(row);
    }
    return rows;
}

std::string complex_matrix_text(const ComplexMatrix& m, int digits)
{
    std::string s;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<std::string> row;
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c), digits));
        s += "[" + join(row, "  ") + "]" + (r + 1 < m.rows() ? "\n" : "");
    }
    return s;
}

class Session {
public:
    explicit Session(const Options& o) : o_(o) {}

    const Fixture& fixture()
    {
        if (!f_) {
            if (o_.fixture.empty()) throw UsageError("--fixture is required");
            Fixture f = load_fixture(o_.fixture);
            std::vector<std::string> v = validate_fixture(f);
            if (!v.empty()) throw Error(ErrorKind::SchemaError, o_.fixture + ": " + join(v, "; "));
            f_ = std::move(f);
        }
        return *f_;
    }

    RatMatrix form_matrix()
    {
        const Fixture& f = fixture();
        std::string key = o_.form.empty() ? f.base_form : o_.form;
        RatMatrix m = f.form(key);
        if (!o_.element.empty()) m = m * to_rational(f.polarized(key).rho(f.element(o_.element)));
        if (!o_.scale.empty()) m = m * parse_rational(o_.scale);
        return m;
    }

    QuadOrder order()
    {
        if (!o_.disc.empty())
            return QuadOrder::from_discriminant(parse_integer(o_.disc), parse_integer(o_.conductor));
        const Fixture& f = fixture();
        if (!f.order) throw UsageError("fixture has no order; pass --disc");
        return *f.order;
    }

    SexticCurve curve()
    {
        if (!o_.coeffs.empty()) {
            std::vector<std::string> cs = split(o_.coeffs);
            if (cs.size() != 7) throw UsageError("--coeffs takes seven values c0,...,c6");
            std::array<Rational, 7> a;
            for (std::size_t i = 0; i < 7; ++i) a[i] = parse_rational(cs[i]);
            return SexticCurve(a);
        }
        if (o_.curve.empty()) throw UsageError("--curve NAME or --coeffs c0,...,c6 is required");
        return fixture().curve(o_.curve);
    }

    std::optional<Real> tol() const
    {
        if (o_.tol.empty()) return std::nullopt;
        return parse_real(o_.tol);
    }

    ThetaConfig theta_config() const
    {
        ThetaConfig t;
        t.digits = o_.digits;
        t.jobs = o_.jobs;
        return t;
    }

    RepresentativeSiegel siegel()
    {
        const Fixture& f = fixture();
        if (o_.periods.empty()) throw UsageError("--periods NAME is required");
        auto it = f.periods.find(o_.periods);
        if (it == f.periods.end()) throw UsageError("fixture has no periods '" + o_.periods + "'");
        PeriodInput in{PeriodMatrix(it->second.omega), it->second.symplectic};
        Representative rep;
        rep.unit = OrderElement(1);
        if (o_.form.empty() && in.symplectic_order)
            rep.form = AlternatingForm(standard_symplectic(in.omega.genus()));
        else
            rep.form = AlternatingForm(form_matrix());
        return representative_siegel_point(rep, in, tol());
    }

    const Options& opts() const { return o_; }

private:
    const Options& o_;
    std::optional<Fixture> f_;
};

Output cmd_type(Session& s)
{
    PolarizationType t = polarization_type(AlternatingForm(s.form_matrix()));
    Output r;
    r.text = t.str();
    Json d = Json::array();
    for (const auto& x : t.divisors) d.push_back(x.str());
    r.json = {{"type", t.str()}, {"divisors", d}, {"principal", t.principal()}};
    return r;
}

Output cmd_pfaffian(Session& s)
{
    AlternatingForm a(s.form_matrix());
    Rational pf = pfaffian_exact(a.matrix);
    Output r;
    r.text = "Pf = " + to_string(pf);
    r.json = {{"pfaffian", to_string(pf)}, {"determinant", to_string(exact_determinant(a.matrix))}};
    return r;
}

Output cmd_symplectic_basis(Session& s)
{
    AlternatingForm a(s.form_matrix());
    PolarizationType t = polarization_type(a);
    BasisChange b = symplectic_basis(a);
    Output r;
    bool ok = check_symplectic(b, a, t);
    r.json = {{"type", t.str()}, {"basis", to_json(b.matrix)}, {"normalizes", ok}};
    r.text = matrix_text(b.matrix) + "\ntype " + t.str() + (ok ? "" : "\ncomputed basis fails to normalize");
    if (!s.opts().basis.empty()) {
        const Fixture& f = s.fixture();
        auto it = f.basis_changes.find(s.opts().basis);
        if (it == f.basis_changes.end()) throw UsageError("fixture has no basis change '" + s.opts().basis + "'");
        bool given = check_symplectic(BasisChange(it->second), a, t);
        r.json["given"] = {{"name", s.opts().basis}, {"normalizes", given}};
        r.text += "\n" + s.opts().basis + (given ? " normalizes" : " fails to normalize");
        ok = ok && given;
    }
    r.code = ok ? 0 : 1;
    return r;
}

Output cmd_units(Session& s)
{
    QuadOrder o = s.order();
    Output r;
    int pi = polarization_classes(o).order();
    r.json = {{"order", o.str()}, {"pi", pi}};
    if (o.is_real()) {
        UnitGroupData u = fundamental_unit(o);
        r.text = "ε = " + format(u.fundamental_unit, o) + ", N(ε) = " + std::to_string(u.norm_of_fundamental_unit) + ", ";
        r.json["unit"] = format(u.fundamental_unit, o);
        r.json["norm"] = u.norm_of_fundamental_unit;
    } else {
        UnitGroupData u = unit_group(o);
        r.text = "roots of unity: " + std::to_string(u.torsion) + ", ";
        r.json["torsion"] = u.torsion;
    }
    r.text += "π = " + std::to_string(pi);
    return r;
}

Output cmd_classify(Session& s)
{
    const Fixture& f = s.fixture();
    PolarizedLatticeData p = f.polarized(s.opts().form);
    std::vector<std::optional<PeriodInput>> per;
    for (const auto& name : split(s.opts().periods)) {
        if (name == "null") {
            per.push_back(std::nullopt);
            continue;
        }
        auto it = f.periods.find(name);
        if (it == f.periods.end()) throw UsageError("fixture has no periods '" + name + "'");
        per.push_back(PeriodInput{PeriodMatrix(it->second.omega), it->second.symplectic});
    }
    ClassificationReport c = classification_report(p, per, s.theta_config(), s.tol());
    std::vector<std::string> reps;
    Json jreps = Json::array();
    for (const auto& x : c.representatives) {
        reps.push_back(format(x.unit, c.order));
        jreps.push_back({{"unit", reps.back()}, {"form", to_json(x.form.matrix)}});
    }
    Output r;
    r.text = "π = " + std::to_string(c.pi_count) + "; representatives: " + join(reps);
    r.json = {{"order", c.order.str()}, {"pi", c.pi_count}, {"representatives", jreps}};
    if (!c.verdicts.empty()) {
        std::vector<std::string> v;
        Json jv = Json::array();
        for (const auto& x : c.verdicts) {
            v.push_back(x ? verdict_name(x->verdict) : "-");
            jv.push_back(x ? Json(v.back()) : Json(nullptr));
        }
        r.text += "; verdicts: " + join(v);
        r.json["verdicts"] = jv;
    }
    if (c.tau_count) {
        r.text += "; τ = " + std::to_string(*c.tau_count) + ", σ = " + std::to_string(*c.sigma_count);
        r.json["tau"] = *c.tau_count;
        r.json["sigma"] = *c.sigma_count;
    }
    return r;
}

Output cmd_twist(Session& s)
{
    if (s.opts().element.empty()) throw UsageError("--element is required");
    const Fixture& f = s.fixture();
    PolarizedLatticeData p = f.polarized(s.opts().form);
    Rational k = s.opts().scale.empty() ? Rational(1) : parse_rational(s.opts().scale);
    AlternatingForm t = twist_form(p, f.element(s.opts().element), k);
    std::string ty = polarization_type(t).str();
    Output r;
    r.text = matrix_text(t.matrix) + "\ntype " + ty;
    r.json = {{"form", to_json(t.matrix)}, {"type", ty}};
    return r;
}

Output cmd_principal_check(Session& s)
{
    const Fixture& f = s.fixture();
    PolarizedLatticeData p = f.polarized(s.opts().form);
    PrincipalityResult pr = is_principally_polarizable(p);
    Output r;
    r.json = {{"polarizable", pr.polarizable}};
    if (pr.polarizable) {
        r.text = "principally polarizable; witness " + format(*pr.witness, p.order);
        r.json["witness"] = format(*pr.witness, p.order);
        r.json["principal_form"] = to_json(pr.principal_form->matrix);
    } else {
        r.text = "not principally polarizable";
    }
    return r;
}

Output cmd_trace_form(Session& s)
{
    QuadOrder o = s.order();
    AlternatingForm canon = trace_degree_one_form(ModuleStructure{o, BasisChange::identity(4)});
    Output r;
    r.text = matrix_text(canon.matrix) + "\ndet " + to_string(exact_determinant(canon.matrix));
    r.json = {{"order", o.str()}, {"canonical", to_json(canon.matrix)}, {"det", to_string(exact_determinant(canon.matrix))}};
    if (s.opts().disc.empty() && s.fixture().action) {
        auto ms = module_structure_from_action(s.fixture().polarized(s.opts().form));
        if (ms) {
            AlternatingForm e0 = trace_degree_one_form(*ms);
            r.text += "\non homology:\n" + matrix_text(e0.matrix) + "\ndet " + to_string(exact_determinant(e0.matrix));
            r.json["homology"] = to_json(e0.matrix);
            r.json["homology_det"] = to_string(exact_determinant(e0.matrix));
        }
    }
    return r;
}

Output cmd_quotient(Session& s)
{
    const Fixture& f = s.fixture();
    std::vector<std::string> gens = split(s.opts().gens);
    if (gens.empty()) throw UsageError("--gens takes a comma separated list such as 4*Dinf,D5+D7");
    std::vector<RatVector> vs;
    for (const auto& g : gens) vs.push_back(torsion_combination(f, g));
    AlternatingForm e(s.form_matrix());
    TorsionQuotient q = quotient_by_torsion(e, TorsionSubgroup(vs));
    Integer lhs = mp::abs(pfaffian(q.scaled));
    Integer rhs = mp::abs(pfaffian(e));
    for (int k = 1; k < e.genus(); ++k) rhs *= q.group_order;
    Output r;
    r.code = lhs == rhs ? 0 : 1;
    r.text = "#G = " + q.group_order.str() + "\nbasis:\n" + matrix_text(q.basis) + "\nE_G:\n" +
             matrix_text(q.restricted.matrix) + "\n|Pf(#G E_G)| = " + lhs.str() + ", #G^(g-1) |Pf(E)| = " + rhs.str();
    r.json = {{"order", q.group_order.str()},
              {"basis", to_json(q.basis)},
              {"restricted", to_json(q.restricted.matrix)},
              {"scaled", to_json(q.scaled.matrix)},
              {"degree_relation", lhs == rhs}};
    return r;
}

Output cmd_weilres(Session& s)
{
    const Fixture& f = s.fixture();
    if (!f.weil) throw UsageError("fixture has no weil block");
    const WeilData& w = *f.weil;
    IsogenyDescent d{w.lambda.value(), w.n, w.w1, w.w2, w.sigma1.value() * w.w1, w.sigma2.value() * w.w2};
    Real tol = s.tol().value_or(parse_real("1e-6"));
    WeilRestriction wr = weil_restriction_lattice(d, tol);
    Output r;
    const int dg = 12;
    r.text = "order " + wr.order.str() + "\nrho(sqrt " + w.n.str() + "):\n" + matrix_text(wr.sqrt_action) + "\nform:\n" +
             matrix_text(wr.form.matrix) + "\nresidual " + to_string(wr.residual, 3) + "\nperiods:\n" +
             complex_matrix_text(wr.periods.omega, dg);
    r.json = {{"order", wr.order.str()},
              {"action", to_json(wr.sqrt_action)},
              {"form", to_json(wr.form.matrix)},
              {"residual", to_string(wr.residual, 6)},
              {"periods", complex_matrix_json(wr.periods.omega, dg)}};
    r.code = wr.residual <= tol ? 0 : 1;
    return r;
}

Output cmd_siegel(Session& s)
{
    RepresentativeSiegel rs = s.siegel();
    const int dg = s.opts().digits;
    Output r;
    r.text = complex_matrix_text(rs.z.z, dg) + "\nmin eig Im Z = " + to_string(rs.z.min_imag_eigenvalue, 6);
    r.json = {{"z", complex_matrix_json(rs.z.z, dg)},
              {"min_imag_eigenvalue", to_string(rs.z.min_imag_eigenvalue, 6)},
              {"basis", to_json(rs.basis.matrix)}};
    return r;
}

Output cmd_theta(Session& s)
{
    RepresentativeSiegel rs = s.siegel();
    ThetaNullVector t = even_theta_nulls(rs.z, s.theta_config());
    const int dg = s.opts().digits;
    Output r;
    Json vals = Json::array();
    const auto& ch = even_characteristics();
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        r.text += ch[i].str() + "  " + to_string(t.values[i], dg) + "\n";
        vals.push_back({{"characteristic", ch[i].str()}, {"value", to_json(t.values[i], dg)}});
    }
    r.text += "radius " + std::to_string(t.truncation_radius);
    r.json = {{"thetas", vals}, {"radius", t.truncation_radius}};
    return r;
}

Output cmd_split_verdict(Session& s)
{
    RepresentativeSiegel rs = s.siegel();
    ThetaConfig cfg = s.theta_config();
    if (s.tol()) cfg.threshold = s.tol();
    VerdictResult v = decomposition_verdict(rs.z, cfg);
    const auto& ch = even_characteristics();
    std::vector<std::string> van;
    for (int i : v.vanishing) van.push_back(ch[static_cast<std::size_t>(i)].str());
    Output r;
    r.text = std::string(verdict_name(v.verdict)) + "; min |θ|/max = " + to_string(v.min_ratio, 3) + ", threshold " +
             to_string(v.threshold, 3) + (van.empty() ? "" : "; vanishing " + join(van));
    r.json = {{"verdict", verdict_name(v.verdict)},
              {"vanishing", van},
              {"min_ratio", to_string(v.min_ratio, 6)},
              {"threshold", to_string(v.threshold, 6)}};
    return r;
}

Output cmd_igusa(Session& s)
{
    InvariantSet iv = igusa_invariants(s.curve());
    Output r;
    r.text = "I2 = " + to_string(iv.I2) + ", I4 = " + to_string(iv.I4) + ", I6 = " + to_string(iv.I6) +
             ", I10 = " + to_string(iv.I10);
    r.json = {{"I2", to_string(iv.I2)}, {"I4", to_string(iv.I4)}, {"I6", to_string(iv.I6)}, {"I10", to_string(iv.I10)}};
    if (iv.has_absolute) {
        r.text += "\ni1 = " + to_string(iv.i1) + ", i2 = " + to_string(iv.i2) + ", i3 = " + to_string(iv.i3);
        r.json["i"] = {to_string(iv.i1), to_string(iv.i2), to_string(iv.i3)};
    }
    return r;
}

std::int64_t prime_opt(const Session& s)
{
    if (s.opts().p <= 0) throw UsageError("--p is required");
    return s.opts().p;
}

Output cmd_count_points(Session& s)
{
    std::int64_t p = prime_opt(s);
    std::int64_t n = count_points_genus2(s.curve(), p, s.opts().k, s.opts().jobs);
    Output r;
    r.text = "#C(F_" + std::to_string(p) + (s.opts().k == 2 ? "^2" : "") + ") = " + std::to_string(n);
    r.json = {{"p", p}, {"k", s.opts().k}, {"count", n}};
    return r;
}

std::string poly_text(const std::array<std::int64_t, 5>& c)
{
    std::vector<std::string> xs;
    for (auto v : c) xs.push_back(std::to_string(v));
    return "[" + join(xs, ",") + "]";
}

Output cmd_frobenius(Session& s)
{
    std::int64_t p = prime_opt(s);
    FrobeniusData fd = frobenius_of(s.curve(), p, s.opts().jobs);
    Output r;
    r.text = "N1 = " + std::to_string(fd.n1) + ", N2 = " + std::to_string(fd.n2) + "; charpoly " + poly_text(fd.charpoly);
    r.json = {{"p", p}, {"n1", fd.n1}, {"n2", fd.n2}, {"charpoly", fd.charpoly}};
    return r;
}

Output cmd_disambiguate(Session& s)
{
    const Fixture& f = s.fixture();
    if (s.opts().index >= f.ffield.size()) throw UsageError("fixture has no ffield entry " + std::to_string(s.opts().index));
    const FfieldCheck& c = f.ffield[s.opts().index];
    QuadFieldCurveReduction q;
    q.a0 = c.a0;
    q.a1 = c.a1;
    q.b0 = c.b0;
    q.b1 = c.b1;
    q.d = c.d;
    q.p = c.p;
    Disambiguation d = disambiguate_sign({f.curve(c.plus), f.curve(c.minus)}, q, s.opts().jobs);
    const std::string& sel = d.selected == 0 ? c.plus : c.minus;
    Output r;
    r.text = sel + " (p = " + std::to_string(c.p) + ", root " + std::to_string(d.root) + " of " + c.d.str() + ")\n" +
             c.plus + " quartic " + poly_text(d.quartics[0]) + "\n" + c.minus + " quartic " + poly_text(d.quartics[1]);
    Json quads = Json::array();
    for (const auto& x : d.quadratics) quads.push_back(x);
    r.json = {{"selected", sel}, {"root", d.root}, {"quartics", d.quartics}, {"quadratics", quads}};
    return r;
}

Output cmd_verify_fixture(Session& s)
{
    const Options& o = s.opts();
    VerifyConfig cfg;
    cfg.digits = o.digits;
    cfg.jobs = o.jobs;
    RunReport rep = verify_fixture(s.fixture(), cfg);
    Output r;
    r.text = rep.text();
    r.text.pop_back();
    r.json = rep.to_json();
    r.code = rep.ok() ? 0 : 1;
    if (!o.golden.empty()) {
        if (o.update_golden) {
            std::ofstream g(o.golden);
            if (!g) throw UsageError("cannot write " + o.golden);
            g << rep.text();
        } else {
            std::ifstream g(o.golden);
            if (!g) throw UsageError("cannot read golden report " + o.golden);
            std::stringstream buf;
            buf << g.rdbuf();
            bool same = buf.str() == rep.text();
            r.json["golden"] = {{"path", o.golden}, {"matches", same}};
            if (!same) {
                r.text += "\ngolden report " + o.golden + " differs";
                r.code = 1;
            }
        }
    } else if (o.update_golden) {
        throw UsageError("--update-golden needs --golden PATH");
    }
    return r;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Polarizations of abelian surfaces with real multiplication", "polkit"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--fixture", o.fixture, "fixture JSON file");
    app.add_option("--prec", o.prec, "working precision in bits")->capture_default_str();
    app.add_option("--digits", o.digits, "decimal digits for theta series and output")->capture_default_str();
    app.add_option("--tol", o.tol, "tolerance, e.g. 1e-6");
    app.add_flag("--json", o.json, "machine readable output");
    app.add_option("--jobs", o.jobs, "parallel jobs")->capture_default_str()->check(CLI::PositiveNumber);

    using Handler = Output (*)(Session&);
    std::vector<std::pair<CLI::App*, Handler>> cmds;
    auto add = [&](const char* name, const char* help, Handler h) {
        CLI::App* c = app.add_subcommand(name, help);
        cmds.emplace_back(c, h);
        return c;
    };
    auto form_opts = [&](CLI::App* c) {
        c->add_option("--form", o.form, "form name in the fixture");
        c->add_option("--element", o.element, "multiply by rho(element)");
        c->add_option("--scale", o.scale, "rational scale factor");
    };
    auto order_opts = [&](CLI::App* c) {
        c->add_option("--disc", o.disc, "fundamental discriminant");
        c->add_option("--conductor", o.conductor, "conductor");
    };
    auto curve_opts = [&](CLI::App* c) {
        c->add_option("--curve", o.curve, "curve name in the fixture");
        c->add_option("--coeffs", o.coeffs, "c0,...,c6 of y^2 = c0 + c1 x + ... + c6 x^6");
    };
    auto period_opts = [&](CLI::App* c) {
        c->add_option("--periods", o.periods, "period matrix name in the fixture");
        c->add_option("--form", o.form, "form used to find a symplectic basis");
    };

    form_opts(add("type", "elementary divisors of a form", cmd_type));
    form_opts(add("pfaffian", "Pfaffian of a form", cmd_pfaffian));
    {
        CLI::App* c = add("symplectic-basis", "basis change to symplectic normal form", cmd_symplectic_basis);
        form_opts(c);
        c->add_option("--basis", o.basis, "also check a named basis change");
    }
    order_opts(add("units", "fundamental unit and number of polarization classes", cmd_units));
    {
        CLI::App* c = add("classify", "principal polarizations up to isomorphism", cmd_classify);
        c->add_option("--form", o.form, "principal form");
        c->add_option("--periods", o.periods, "period names per representative, comma separated");
    }
    form_opts(add("twist", "twisted form E*rho(t)", cmd_twist));
    add("principal-check", "is the polarization a twist of a principal one", cmd_principal_check)
        ->add_option("--form", o.form, "form name");
    {
        CLI::App* c = add("trace-form", "trace form of degree one", cmd_trace_form);
        order_opts(c);
        c->add_option("--form", o.form, "form name");
    }
    {
        CLI::App* c = add("quotient", "quotient by a finite subgroup of torsion points", cmd_quotient);
        form_opts(c);
        c->add_option("--gens", o.gens, "torsion generators, comma separated");
    }
    add("weilres", "Weil restriction of a curve with an isogeny to its conjugate", cmd_weilres);
    period_opts(add("siegel", "Siegel point of a period matrix", cmd_siegel));
    period_opts(add("theta", "even theta constants", cmd_theta));
    period_opts(add("split-verdict", "Jacobian or product of elliptic curves", cmd_split_verdict));
    curve_opts(add("igusa", "Igusa-Clebsch and absolute invariants", cmd_igusa));
    {
        CLI::App* c = add("count-points", "points on a genus 2 curve over F_p or F_p^2", cmd_count_points);
        curve_opts(c);
        c->add_option("--p", o.p, "odd prime")->required();
        c->add_option("--k", o.k, "extension degree (1 or 2)")->check(CLI::Range(1, 2));
    }
    {
        CLI::App* c = add("frobenius", "characteristic polynomial of Frobenius", cmd_frobenius);
        curve_opts(c);
        c->add_option("--p", o.p, "odd prime")->required();
    }
    add("disambiguate", "choose the sign of a twisted pair by point counts", cmd_disambiguate)
        ->add_option("--index", o.index, "ffield entry");
    {
        CLI::App* c = add("verify-fixture", "run every expected check in a fixture", cmd_verify_fixture);
        c->add_option("--golden", o.golden, "golden report to compare against");
        c->add_flag("--update-golden", o.update_golden, "rewrite the golden report");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "polkit: " << e.what() << "\n";
        return 2;
    }

    set_working_precision(o.prec);
    Session s(o);
    try {
        for (const auto& [c, h] : cmds) {
            if (!c->parsed()) continue;
            Output r = h(s);
            if (o.json) {
                r.json = Json{{"command", c->get_name()}, {"ok", r.code == 0}, {"result", r.json}};
                out << r.json.dump(2) << "\n";
            } else {
                out << r.text << "\n";
            }
            return r.code;
        }
    } catch (const UsageError& e) {
        err << "polkit: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "polkit: " << kind_name(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::SchemaError ? 2 : 1;
    } catch (const std::exception& e) {
        err << "polkit: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace polkit
