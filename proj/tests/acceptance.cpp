// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "polkit/fixture.hpp"

using namespace polkit;
using oracle::ints;
using oracle::rat;

namespace {

const std::string DIR = POLKIT_FIXTURE_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failed conditions for one criterion.
struct Tally {
    std::vector<std::string> failures;
    int checks = 0;
    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

template <class F>
double timed(F&& f)
{
    auto t0 = Clock::now();
    f();
    return seconds_since(t0);
}

std::string ms(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f ms", s * 1000);
    return buf;
}

Fixture fx(const char* name) { return load_fixture(DIR + "/" + name + ".json"); }

// ---------------------------------------------------------------------------

void ac1(Tally& t)
{
    const Fixture f65 = fx("65B"), f35 = fx("35");
    struct Case {
        const char* name;
        RatMatrix m;
        bool primitive;
        const char* want;
    };
    const Case cases[] = {
        {"65B E", f65.form("E"), false, "(2,2)"},
        {"35 restriction", f35.form("E_res"), true, "(1,4)"},
        {"35 E'", f35.form("E_prime"), false, "(2,2)"},
        {"35 E*u", f35.form("E_u"), false, "(2,2)"},
    };
    for (const auto& c : cases) {
        std::string got;
        // warm once, then time the exact computation
        auto run = [&] {
            AlternatingForm e(c.m);
            got = polarization_type(c.primitive ? primitive_part(e).first : e).str();
        };
        run();
        double s = timed(run);
        t.expect(got == c.want, std::string(c.name) + " type " + got);
        t.expect(s < 1e-3, std::string(c.name) + " took " + ms(s));
    }
    t.expect(f35.form("E_u") == RatMatrix(f35.form("E") * to_rational(f35.endos.at("u"))), "35 E*u product");
}

void ac2(Tally& t)
{
    QuadOrder z3 = QuadOrder::from_discriminant(12, 1), o17 = QuadOrder::from_discriminant(17, 1);
    UnitGroupData a = fundamental_unit(z3), b = fundamental_unit(o17);
    t.expect(format(a.fundamental_unit, z3) == "2+√3" && a.norm_of_fundamental_unit == 1, "unit of Z[sqrt3]");
    t.expect(polarization_classes(z3).order() == 2, "pi(Z[sqrt3]) = 2");
    t.expect(format(b.fundamental_unit, o17) == "4+√17" && b.norm_of_fundamental_unit == -1, "unit of disc 17");
    t.expect(polarization_classes(o17).order() == 1, "pi(disc 17) = 1");
}

void ac3(Tally& t)
{
    const Fixture f65 = fx("65B"), f35 = fx("35");
    AlternatingForm eu(f65.form("E_u")), l(f35.form("L"));
    for (auto [name, form, s] : {std::tuple{"65B", eu, f65.basis_changes.at("S")}, std::tuple{"35", l, f35.basis_changes.at("S")}}) {
        PolarizationType ty = polarization_type(form);
        t.expect(ty.principal(), std::string(name) + " twisted form is principal");
        t.expect(check_symplectic(BasisChange(s), form, ty), std::string(name) + " printed basis normalizes");
        t.expect(congruent(form, s).matrix == to_rational(standard_form(ty)), std::string(name) + " S E S^T is standard");
        t.expect(check_symplectic(symplectic_basis(form), form, ty), std::string(name) + " computed basis normalizes");
    }
}

void ac4(Tally& t)
{
    const Fixture f = fx("weilres13");
    const WeilData& w = *f.weil;
    WeilRestriction wr;
    double s = timed([&] {
        IsogenyDescent d;
        d.lambda = w.lambda.value();
        d.n = w.n;
        d.w1 = w.w1;
        d.w2 = w.w2;
        d.ws1 = w.sigma1.value() * w.w1;
        d.ws2 = w.sigma2.value() * w.w2;
        wr = weil_restriction_lattice(d, parse_real("1e-6"));
    });
    IntMatrix m = IntMatrix(2 * IntMatrix::Identity(4, 4)) + wr.sqrt_action;
    t.expect(m == f.endos.at("M"), "action of 2+sqrt3");
    t.expect(RatMatrix(wr.form.matrix * to_rational(m)) == f.form("E_u"), "E_u");
    t.expect(wr.residual < parse_real("1e-6"), "rounding residual " + to_string(wr.residual, 3));
    t.expect(analytic_representation(wr.periods, wr.sqrt_action).residual < parse_real("1e-6"), "analytic action");
    t.expect(s < 1.0, "runtime " + ms(s));
}

void ac5(Tally& t)
{
    double s = timed([&] {
        ThetaConfig cfg;
        cfg.digits = 30;

        // printed 63B periods under the principal form J
        const Fixture f63 = fx("63B");
        Representative j{OrderElement(1), AlternatingForm(f63.form("J"))};
        RepresentativeSiegel rs =
            representative_siegel_point(j, {PeriodMatrix(f63.periods.at("Omega").omega), false}, parse_real("1e-4"));
        cfg.threshold = parse_real("1e-4");
        VerdictResult v = decomposition_verdict(rs.z, cfg);
        t.expect(v.vanishing.size() == 1, "63B: " + std::to_string(v.vanishing.size()) + " vanishing at 1e-4");

        // exact diagonal point
        ComplexMatrix z = ComplexMatrix::Zero(2, 2);
        z(0, 0) = Complex(Real(0), Real(1));
        z(1, 1) = Complex(Real(0), Real(2));
        cfg.threshold = parse_real("1e-10");
        VerdictResult d = decomposition_verdict(SiegelPoint(z, parse_real("1e-30")), cfg);
        t.expect(d.vanishing.size() == 1, "diag(i,2i): " + std::to_string(d.vanishing.size()) + " vanishing at 1e-10");

        // 65B: both principal classes, with the twisted one among them
        const Fixture f65 = fx("65B");
        ThetaConfig c65;
        c65.digits = 30;
        ClassificationReport r = classification_report(
            f65.polarized(), {PeriodInput{PeriodMatrix(f65.periods.at("C1").omega), f65.periods.at("C1").symplectic},
                              PeriodInput{PeriodMatrix(f65.periods.at("C2").omega), f65.periods.at("C2").symplectic}},
            c65, parse_real("1e-20"));
        bool all_jacobian = r.verdicts.size() == 2;
        for (const auto& x : r.verdicts) all_jacobian = all_jacobian && x && x->verdict == Verdict::Jacobian && x->vanishing.empty();
        t.expect(all_jacobian, "65B representatives are Jacobians");
        t.expect(r.tau_count == 2 && r.sigma_count == 0, "65B tau = 2, sigma = 0");
    });
    t.expect(s < 5.0, "runtime " + ms(s));
}

void ac6(Tally& t)
{
    const Complex w1(parse_real("6.584352"), parse_real("8.916903")), w2(parse_real("-2.275825"), parse_real("6.429374"));
    EllipticInvariants e = elliptic_invariants(w1, w2);
    Complex jp = Real(27) * Complex(Real(121171), -Real(36627) * boost::multiprecision::sqrt(Real(3))) / Real(686);
    Real rel = std::abs(e.j - jp) / std::abs(jp);
    t.expect(rel < parse_real("1e-3"), "j relative error " + to_string(rel, 3));
    EllipticInvariants g = elliptic_invariants(Complex(1), Complex(Real(0), Real(1)));
    t.expect(std::abs(g.j - Complex(1728)) < parse_real("1e-20"), "j(Z+Zi)");
}

void ac7(Tally& t)
{
    const Fixture f65 = fx("65B"), f63 = fx("63B"), f35 = fx("35"), fw = fx("weilres13");
    struct Case {
        const Fixture* f;
        const char* curve;
        const char* i1;
        const char* i2;
        const char* i3;
    };
    const Case cases[] = {
        {&f65, "C1", "-961328164093760/2197", "2987898435383/10985", "40532675476307/439400"},
        {&f65, "C2", "-2323772442949236392/3570125", "6209754882128531/7140250", "8384352118830751/28561000"},
        {&f35, "A", "-172059988590592/52521875", "9817111789568/52521875", "2837312137472/52521875"},
        {&f35, "B", "-7181323060373049679519744/12822723388671875", "-33650072410276504576/20516357421875",
         "-10226167629421212592/20516357421875"},
        {&f35, "C", "1498959544523423744/102942875", "-139237160005402624/102942875", "-10517118550948864/102942875"},
        {&f35, "D", "56653986045279961467426677948986729324544/6894938445548752818329712175",
         "50313022611962478908460968554496/271329489991187628175", "19441983588474276892430507253456/271329489991187628175"},
    };
    std::vector<InvariantSet> sets;
    double s = timed([&] {
        for (const auto& c : cases) {
            InvariantSet x = igusa_invariants(c.f->curve(c.curve));
            t.expect(x.has_absolute && x.i1 == parse_rational(c.i1) && x.i2 == parse_rational(c.i2) &&
                         x.i3 == parse_rational(c.i3),
                     std::string(c.curve) + " triple");
            sets.push_back(x);
        }
        InvariantSet c63 = igusa_clebsch(f63.curve("C"));
        t.expect(c63.I2 == 215784 && c63.I4 == -1970583228LL && c63.I6 == parse_rational("-40958094097080") &&
                     c63.I10 == parse_rational("867786649294413090816"),
                 "63B Igusa-Clebsch");
        InvariantSet cp = igusa_clebsch(fw.curve("C_plus"));
        t.expect(cp.I10 != 0, "plus curve I10 nonzero");
        t.expect(cp.I10 == oracle::sextic_discriminant(fw.curve("C_plus").c), "plus curve I10 is the discriminant");
    });
    auto distinct = [&](std::size_t a, std::size_t b) {
        return !(sets[a].i1 == sets[b].i1 && sets[a].i2 == sets[b].i2 && sets[a].i3 == sets[b].i3);
    };
    t.expect(distinct(0, 1), "65B pair distinct");
    for (std::size_t a = 2; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b) t.expect(distinct(a, b), "35 family distinct");
    t.expect(s < 0.1, "runtime " + ms(s));
}

void ac8(Tally& t)
{
    const Fixture f = fx("weilres13");
    const FfieldCheck& ff = f.ffield.at(0);
    double s = timed([&] {
        FrobeniusData plus = frobenius_of(f.curve(ff.plus), ff.p), minus = frobenius_of(f.curve(ff.minus), ff.p);
        QuadFieldCurveReduction q{ff.a0, ff.a1, ff.b0, ff.b1, ff.d, ff.p, 0};
        bool plus_match = false, minus_match = false;
        for (std::int64_t r : sqrt_mod(static_cast<std::int64_t>(ff.d), ff.p)) {
            q.root = r;
            auto sq = square_quadratic(reduce_and_count_elliptic(q));
            plus_match = plus_match || sq == plus.charpoly;
            minus_match = minus_match || sq == minus.charpoly;
        }
        t.expect(plus_match, "plus quartic is a square of the elliptic quadratic");
        t.expect(!minus_match, "minus quartic does not match");
        Disambiguation d = disambiguate_sign({f.curve(ff.plus), f.curve(ff.minus)}, q);
        t.expect(d.selected == 0, "disambiguate selects plus");
    });
    t.expect(s < 1.0, "runtime " + ms(s));
}

void ac9(Tally& t)
{
    for (long d : {12L, 17L}) {
        QuadOrder o = QuadOrder::from_discriminant(d, 1);
        AlternatingForm e = trace_degree_one_form(ModuleStructure{o, BasisChange::identity(4)});
        t.expect(exact_determinant(e.matrix) == 1, "canonical det, disc " + std::to_string(d));
    }
    for (const char* n : {"65B", "35"}) {
        Fixture f = fx(n);
        PolarizedLatticeData p = f.polarized();
        auto m = module_structure_from_action(p);
        t.expect(m.has_value(), std::string(n) + " module basis");
        if (m) t.expect(exact_determinant(trace_degree_one_form(*m).matrix) == 1, std::string(n) + " det 1");
    }
}

void ac10(Tally& t)
{
    const Fixture f = fx("35");
    AlternatingForm e(f.form("E"));
    RatMatrix mv = RatMatrix(2 * to_rational(f.endos.at("u"))) - RatMatrix::Identity(4, 4);
    t.expect(to_rational(f.endos.at("v")) == mv, "M_v = 2 M_u - I");
    for (const char* g : {"Dinf", "D5", "D7"}) {
        const RatVector& x = f.torsion.at(g);
        t.expect(is_integral(RatVector(mv * x - x * 3)), std::string("v acts as 3 on ") + g);
    }
    t.expect(torsion_order(f.torsion.at("Dinf")) == 8 && torsion_order(f.torsion.at("D5")) == 8 &&
                 torsion_order(f.torsion.at("D7")) == 2,
             "generator orders");
    TorsionSubgroup all({f.torsion.at("Dinf"), f.torsion.at("D5"), f.torsion.at("D7")});
    t.expect(all.group_order == 32, "#G = " + all.group_order.str());
    const Integer pf = abs(pfaffian(e));
    for (auto [expr, order] : {std::pair{"4*Dinf", 2}, std::pair{"2*Dinf", 4}, std::pair{"D5+D7", 8}}) {
        TorsionQuotient q = quotient_by_torsion(e, TorsionSubgroup({torsion_combination(f, expr)}));
        t.expect(q.group_order == order, std::string(expr) + " order");
        t.expect(abs(pfaffian(q.scaled)) == q.group_order * pf, std::string(expr) + " degree relation");
    }
}

// --- property suites ---------------------------------------------------------

bool norm_classes_ok(long disc, long d, std::string& why)
{
    QuadOrder o = QuadOrder::from_discriminant(disc, 1);
    oracle::Quad q{static_cast<long>(o.tr), static_cast<long>(o.nm)};
    UnitGroupData u = fundamental_unit(o);
    OrderElement e2 = mul(u.fundamental_unit, u.fundamental_unit, o);
    auto got = solve_norm_equation(o, d);
    for (const auto& x : got)
        if (norm(x, o) != d || !is_totally_positive(x, o)) {
            why = "bad solution";
            return false;
        }
    for (auto x : oracle::norm_solutions(q, d, 60)) {
        int hits = 0;
        for (const auto& t : got) {
            long ua, ub;
            if (!oracle::unit_ratio(q, x, {static_cast<long>(t.a), static_cast<long>(t.b)}, ua, ub)) continue;
            OrderElement w(ua, ub);
            if (norm(w, o) != 1 || !is_totally_positive(w, o)) continue;
            OrderElement wi = real_value(w, o) < 1 ? conjugate(w, o) : w;
            OrderElement p = 1;
            bool square = false;
            while (!square && compare(p, wi, o) <= 0) {
                square = p == wi;
                p = mul(p, e2, o);
            }
            hits += square;
        }
        if (hits != 1) {
            std::ostringstream s;
            s << "disc " << disc << " d " << d << " solution " << x.first << "+" << x.second << "w in " << hits << " classes";
            why = s.str();
            return false;
        }
    }
    return true;
}

void ac11(Tally& t)
{
    std::mt19937_64 rng(2024);
    double s = timed([&] {
        // Pf^2 = det and type invariance under unimodular congruence
        int forms = 0;
        while (forms < 200) {
            IntMatrix a = oracle::random_skew(rng, 4, 6);
            RatMatrix ar = a.cast<Rational>();
            if (oracle::det(ar) == 0) continue;
            ++forms;
            AlternatingForm e(a);
            Rational pf = Rational(pfaffian(e));
            t.expect(pf * pf == oracle::det(ar), "Pf^2 = det");
            IntMatrix sm = oracle::random_unimodular(rng, 4);
            auto [d1, d2] = oracle::type4(a);
            PolarizationType ty = polarization_type(e);
            PolarizationType ts = polarization_type(AlternatingForm(IntMatrix(sm * a * sm.transpose())));
            t.expect(ty.str() == ts.str(), "type invariant under congruence");
            t.expect(ty.str() == "(" + d1.str() + "," + d2.str() + ")", "type matches elementary divisors");
        }

        // theta factorization on diagonal Z
        std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.8, 2.0);
        for (int k = 0; k < 10; ++k) {
            Complex t1(Real(re(rng)), Real(im(rng))), t2(Real(re(rng)), Real(im(rng)));
            ComplexMatrix z = ComplexMatrix::Zero(2, 2);
            z(0, 0) = t1;
            z(1, 1) = t2;
            for (const auto& c : even_characteristics()) {
                Complex want = oracle::theta1(t1, c.a[0], c.b[0]) * oracle::theta1(t2, c.a[1], c.b[1]);
                t.expect(std::abs(theta_constant(z, c, 30) - want) < parse_real("1e-25"), "theta factorization");
            }
        }

        // Igusa invariance under random substitutions
        std::uniform_int_distribution<long> cf(-9, 9), sub(-4, 4);
        int curves = 0;
        while (curves < 20) {
            std::array<Rational, 7> c;
            for (auto& x : c) x = cf(rng);
            if (c[6] == 0 || oracle::sextic_discriminant(c) == 0) continue;
            SexticCurve f(c);
            InvariantSet a = igusa_invariants(f);
            if (!a.has_absolute) continue;
            Rational p = sub(rng), q = sub(rng), r = sub(rng), w = sub(rng);
            Rational det = p * w - q * r;
            if (det == 0) continue;
            SexticCurve g = substitute(f, p, q, r, w);
            if (g.c[6] == 0) continue;
            ++curves;
            InvariantSet b = igusa_invariants(g);
            Rational d6 = det * det * det * det * det * det;
            t.expect(b.I2 == a.I2 * d6, "I2 weight");
            t.expect(b.I10 == a.I10 * d6 * d6 * d6 * d6 * d6, "I10 weight");
            t.expect(b.i1 == a.i1 && b.i2 == a.i2 && b.i3 == a.i3, "absolute invariants");
            t.expect(a.I10 == oracle::sextic_discriminant(c), "I10 = discriminant");
        }

        // norm equation vs brute force
        for (long disc = 5; disc <= 100; ++disc) {
            if (!is_fundamental_discriminant(disc)) continue;
            for (long d = -20; d <= 20; ++d) {
                if (d == 0) continue;
                std::string why;
                t.expect(norm_classes_ok(disc, d, why), why);
            }
        }
    });
    t.expect(s < 120.0, "runtime " + ms(s));
}

}  // namespace

int main()
{
    set_working_precision(128);
    const std::vector<std::pair<const char*, std::function<void(Tally&)>>> criteria = {
        {"AC1 types", ac1},
        {"AC2 units and classes", ac2},
        {"AC3 symplectic bases", ac3},
        {"AC4 Weil restriction", ac4},
        {"AC5 theta verdicts", ac5},
        {"AC6 elliptic invariants", ac6},
        {"AC7 Igusa invariants", ac7},
        {"AC8 Frobenius disambiguation", ac8},
        {"AC9 trace forms", ac9},
        {"AC10 torsion quotients", ac10},
        {"AC11 property suites", ac11},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Tally t;
        auto t0 = Clock::now();
        try {
            fn(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        double s = seconds_since(t0);
        bool ok = t.failures.empty();
        failed += !ok;
        std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << t.checks << " checks, " << ms(s) << ")\n";
        for (const auto& f : t.failures) std::cout << "     " << f << "\n";
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
    return failed ? 1 : 0;
}
