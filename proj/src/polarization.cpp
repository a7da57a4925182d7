#include "polkit/polarization.hpp"

#include <thread>

namespace polkit {

IntMatrix minimal_polynomial_residual(const IntMatrix& rho, const QuadOrder& o)
{
    const Eigen::Index n = rho.rows();
    return IntMatrix(rho * rho - o.tr * rho + o.nm * IntMatrix::Identity(n, n));
}

PolarizedLatticeData::PolarizedLatticeData(AlternatingForm e, QuadOrder o, IntMatrix rho_omega)
    : form(std::move(e)), order(std::move(o)), action(std::move(rho_omega))
{
    if (action.rows() != form.dim() || action.cols() != form.dim())
        throw Error(ErrorKind::InvalidArgument, "action matrix size does not match the form");
    IntMatrix res = minimal_polynomial_residual(action, order);
    if (!res.isZero())
        throw Error(ErrorKind::InvalidArgument, "rho(omega) fails its minimal polynomial; residual " + format_matrix(res));
    if (order.is_real()) {
        RatMatrix t = form.matrix * to_rational(action);
        if (t.transpose() != RatMatrix(-t))
            throw Error(ErrorKind::NotSymmetricCompatible, "E*rho(omega) is not alternating");
    }
}

IntMatrix PolarizedLatticeData::rho(const OrderElement& t) const
{
    const Eigen::Index n = action.rows();
    return IntMatrix(t.a * IntMatrix::Identity(n, n) + t.b * action);
}

IntMatrix action_from_element(const IntMatrix& rho_t, const OrderElement& t)
{
    if (t.b == 0) throw Error(ErrorKind::InvalidArgument, "element does not generate the order");
    const Eigen::Index n = rho_t.rows();
    RatMatrix m = (to_rational(rho_t) - Rational(t.a) * to_rational(IntMatrix::Identity(n, n))) / Rational(t.b);
    return to_integer(m);
}

AlternatingForm twist_form(const PolarizedLatticeData& p, const OrderElement& t, const Rational& scale)
{
    if (scale <= 0) throw Error(ErrorKind::InvalidArgument, "scale must be positive");
    if (!p.order.is_real() && t.b != 0)
        throw Error(ErrorKind::NotSymmetricCompatible, "element is not fixed by complex conjugation");
    RatMatrix m = p.form.matrix * to_rational(p.rho(t)) * scale;
    if (m.transpose() != RatMatrix(-m))
        throw Error(ErrorKind::NotSymmetricCompatible, "E*rho(t) is not alternating");
    if (scale != 1 && !is_integral(m))
        throw Error(ErrorKind::NotIntegral, "scaled twist " + to_string(scale) + "*E*rho(t) is not integral");
    return AlternatingForm(m, p.form.basis_labels);
}

Integer degree_of(const PolarizedLatticeData& p, const OrderElement& t)
{
    Integer base = mp::abs(pfaffian(p.form));
    Integer d = base * mp::abs(norm(t, p.order));
    AlternatingForm tw = twist_form(p, t);
    if (tw.integral() && mp::abs(pfaffian(tw)) != d)
        throw Error(ErrorKind::InvalidArgument, "degree cross-check failed: |Pf(E_t)| = " +
                                                    mp::abs(pfaffian(tw)).str() + ", expected " + d.str());
    return d;
}

PrincipalityResult is_principally_polarizable(const PolarizedLatticeData& p)
{
    if (!p.form.integral()) throw Error(ErrorKind::NotIntegral, "form must be integral");
    const Integer d = mp::abs(pfaffian(p.form));
    PrincipalityResult r;
    std::vector<OrderElement> candidates;
    if (d == 1)
        candidates.push_back(OrderElement(1));
    else if (p.order.is_real())
        candidates = solve_norm_equation(p.order, d);
    // E rho(t) / N(t) = E rho(conj t)^-1
    for (const auto& t : candidates) {
        RatMatrix m = p.form.matrix * to_rational(p.rho(t)) / Rational(norm(t, p.order));
        if (!is_integral(m)) continue;
        Rational det = exact_determinant(m);
        if (det != 1 && det != -1) continue;
        r.polarizable = true;
        r.witness = t;
        r.principal_form = AlternatingForm(m, p.form.basis_labels);
        return r;
    }
    return r;
}

ClassificationReport principal_representatives(const PolarizedLatticeData& p)
{
    if (!p.form.integral() || !polarization_type(p.form).principal())
        throw Error(ErrorKind::NotPrincipal, "base form is not principal");
    ClassificationReport rep;
    rep.order = p.order;
    for (const auto& u : polarization_classes(p.order).representatives) rep.representatives.push_back({u, twist_form(p, u)});
    rep.pi_count = static_cast<int>(rep.representatives.size());
    return rep;
}

RepresentativeSiegel representative_siegel_point(const Representative& rep, const PeriodInput& in,
                                                 const std::optional<Real>& tol)
{
    PeriodMatrix om = in.omega;
    BasisChange s = BasisChange::identity(om.omega.cols());
    if (!in.symplectic_order) {
        s = symplectic_basis(rep.form);
        om = apply_basis_change(om, s);
    }
    SiegelPoint z = tol ? siegel_from_periods(om, *tol) : siegel_from_periods(om);
    return {z, s};
}

ClassificationReport classification_report(const PolarizedLatticeData& p,
                                           const std::vector<std::optional<PeriodInput>>& periods,
                                           const ThetaConfig& cfg, const std::optional<Real>& siegel_tol)
{
    ClassificationReport rep = principal_representatives(p);
    bool any = false;
    for (const auto& x : periods)
        if (x) any = true;
    if (!any) return rep;

    const std::size_t n = rep.representatives.size();
    rep.verdicts.assign(n, std::nullopt);
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](std::size_t j, unsigned inner_jobs) {
        try {
            if (j >= periods.size() || !periods[j]) return;
            RepresentativeSiegel rs = representative_siegel_point(rep.representatives[j], *periods[j], siegel_tol);
            ThetaConfig c = cfg;
            c.jobs = inner_jobs;
            VerdictResult v = decomposition_verdict(rs.z, c);
            rep.verdicts[j] = RepresentativeVerdict{v.verdict, v.min_ratio, v.vanishing};
        } catch (...) {
            errors[j] = std::current_exception();
        }
    };
    if (cfg.jobs > 1 && n > 1) {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < n; ++j) pool.emplace_back(work, j, std::max(1u, cfg.jobs / static_cast<unsigned>(n)));
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t j = 0; j < n; ++j) work(j, cfg.jobs);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    bool all = true;
    int tau = 0, sigma = 0;
    for (const auto& v : rep.verdicts) {
        if (!v) {
            all = false;
            continue;
        }
        (v->verdict == Verdict::Jacobian ? tau : sigma)++;
    }
    rep.provenance = CountProvenance::NumericTheta;
    if (all) {
        rep.tau_count = tau;
        rep.sigma_count = sigma;
    }
    return rep;
}

AlternatingForm trace_degree_one_form(const ModuleStructure& m)
{
    if (!m.order.is_real()) throw Error(ErrorKind::ImaginaryOrder, "trace form needs a real quadratic order");
    if (m.basis_map.matrix.rows() != 4) throw Error(ErrorKind::InvalidArgument, "module basis must have rank 4");
    // E0(a g1, b g2) = Tr(a b / sqrt(disc)) on (g1, w g1, g2, w g2)
    const Integer& tr = m.order.tr;
    IntMatrix f(4, 4);
    f << 0, 0, 0, 1, 0, 0, 1, tr, 0, -1, 0, 0, -1, Integer(-tr), 0, 0;
    RatMatrix binv = exact_inverse(m.basis_map.matrix);
    RatMatrix e = binv.transpose() * to_rational(f) * binv;
    return AlternatingForm(e);
}

std::optional<ModuleStructure> module_structure_from_action(const PolarizedLatticeData& p, int box)
{
    if (p.rank() != 4) return std::nullopt;
    using V = std::array<long long, 4>;
    long long w[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) w[i][j] = static_cast<long long>(p.action(i, j));
    std::vector<V> vecs;
    const int side = 2 * box + 1;
    int total = side * side * side * side;
    for (int code = 0; code < total; ++code) {
        V v;
        int c = code;
        bool nz = false;
        for (int k = 0; k < 4; ++k) {
            v[static_cast<std::size_t>(k)] = c % side - box;
            c /= side;
            nz = nz || v[static_cast<std::size_t>(k)] != 0;
        }
        if (nz) vecs.push_back(v);
    }
    auto apply = [&](const V& v) {
        V r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(i)] += w[i][j] * v[static_cast<std::size_t>(j)];
        return r;
    };
    auto det4 = [](const long long m[4][4]) {
        // Laplace over the first two rows
        long long d = 0;
        const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        for (int a = 0; a < 6; ++a) {
            int i = pairs[a][0], j = pairs[a][1];
            int k = pairs[5 - a][0], l = pairs[5 - a][1];
            long long top = m[0][i] * m[1][j] - m[0][j] * m[1][i];
            long long bot = m[2][k] * m[3][l] - m[2][l] * m[3][k];
            int sgn = (i + j + 1) % 2 == 0 ? 1 : -1;
            d += sgn * top * bot;
        }
        return d;
    };
    for (const auto& g1 : vecs) {
        V w1 = apply(g1);
        for (const auto& g2 : vecs) {
            V w2 = apply(g2);
            long long m[4][4];
            for (int i = 0; i < 4; ++i) {
                m[i][0] = g1[static_cast<std::size_t>(i)];
                m[i][1] = w1[static_cast<std::size_t>(i)];
                m[i][2] = g2[static_cast<std::size_t>(i)];
                m[i][3] = w2[static_cast<std::size_t>(i)];
            }
            // det4 expands along rows; use the transpose so columns become rows
            long long t[4][4];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) t[i][j] = m[j][i];
            long long d = det4(t);
            if (d != 1 && d != -1) continue;
            IntMatrix b(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) b(i, j) = m[i][j];
            return ModuleStructure{p.order, BasisChange(b)};
        }
    }
    return std::nullopt;
}

}  // namespace polkit
