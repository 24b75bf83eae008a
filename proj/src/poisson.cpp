// Quadratic Poisson brackets: the scalar 2x2 multiplier kernels on symbols of
// complex degree, the matrix-side r-matrix brackets on the companion
// cross-section, the diagonal-twist contribution along its two routes, and
// the quotient-equivalence driver.

#include "qds/poisson.hpp"

#include "qds/rng.hpp"

#include <cmath>

namespace qds {

namespace {

// family multipliers; zero at m = 0 (constants are projected out)
Cplx family_a(const Context& ctx, const Cplx& mu, const DeltaSpec& delta, int m) {
    if (m == 0) return Cplx(0, 0);
    Cplx q = ctx.qpow(mu * double(m));
    (void)ctx.one_minus_qpow(mu, m); // genericity guard
    return cayley_half(q) + delta.at(m);
}

Cplx family_b(const Context& ctx, const Cplx& mu, const DeltaSpec& delta, int m) {
    if (m == 0) return Cplx(0, 0);
    Cplx q = ctx.qpow(mu * double(m));
    return -(1.0 / ctx.one_minus_qpow(mu, m) + delta.at(m)) * q;
}

Cplx family_c(const Context& ctx, const Cplx& mu, const DeltaSpec& delta, int m) {
    if (m == 0) return Cplx(0, 0);
    Cplx q = ctx.qpow(mu * double(m));
    return (q / ctx.one_minus_qpow(mu, m) + delta.at(m)) / q;
}

Cplx map_at(const std::map<int, Cplx>& f, int m) {
    auto it = f.find(m);
    return it == f.end() ? Cplx(0, 0) : it->second;
}

} // namespace

Cplx QuadOperatorSpec::a(const Context& ctx, int m) const {
    return family ? family_a(ctx, mu, delta, m) : map_at(ma, m);
}
Cplx QuadOperatorSpec::b(const Context& ctx, int m) const {
    return family ? family_b(ctx, mu, delta, m) : map_at(mb, m);
}
Cplx QuadOperatorSpec::c(const Context& ctx, int m) const {
    return family ? family_c(ctx, mu, delta, m) : map_at(mc, m);
}
Cplx QuadOperatorSpec::d(const Context& ctx, int m) const {
    return family ? -family_a(ctx, mu, delta, m) : map_at(md, m);
}

QuadOperatorSpec QuadOperatorSpec::involutive(const Cplx& mu) {
    QuadOperatorSpec s;
    s.family = true;
    s.mu = mu;
    return s;
}

QuadOperatorSpec QuadOperatorSpec::twisted(const Cplx& mu, DeltaSpec delta) {
    QuadOperatorSpec s;
    s.family = true;
    s.mu = mu;
    s.delta = std::move(delta);
    return s;
}

QuadOperatorSpec QuadOperatorSpec::raw(std::map<int, Cplx> a, std::map<int, Cplx> b,
                                       std::map<int, Cplx> c, std::map<int, Cplx> d) {
    auto check_odd = [](const std::map<int, Cplx>& f, const char* name) {
        for (const auto& [m, v] : f)
            if (std::abs(v + map_at(f, -m)) > 1e-12)
                fail(ErrorKind::Shape,
                     std::string("bracket kernel: multiplier ") + name + " must be odd in m");
    };
    check_odd(a, "a");
    check_odd(d, "d");
    for (const auto& [m, v] : b)
        if (std::abs(v - map_at(c, -m)) > 1e-12)
            fail(ErrorKind::Shape, "bracket kernel: b_m must equal c_{-m}");
    for (const auto& [m, v] : c)
        if (std::abs(v - map_at(b, -m)) > 1e-12)
            fail(ErrorKind::Shape, "bracket kernel: b_m must equal c_{-m}");
    QuadOperatorSpec s;
    s.family = false;
    s.ma = std::move(a);
    s.mb = std::move(b);
    s.mc = std::move(c);
    s.md = std::move(d);
    return s;
}

std::map<int, double> involutivity_residual(const Context& ctx, const QuadOperatorSpec& spec,
                                            int mlo, int mhi) {
    std::map<int, double> r;
    for (int m = mlo; m <= mhi; ++m)
        r[m] = std::abs(spec.a(ctx, m) + spec.b(ctx, m) - spec.c(ctx, m) - spec.d(ctx, m));
    return r;
}

// --- scalar functionals --------------------------------------------------------

Cplx functional_value(const Context& ctx, const QPsiSymbol& l, const FunctionalSpec& f,
                      int depth) {
    if (f.kind == FunctionalSpec::Kind::Spectral) return qsym_hamiltonian(ctx, l, f.m, depth);
    return res(series_mul(laurent_monomial(-f.j), l.at(-f.i)));
}

QPsiSymbol functional_differential(const Context& ctx, const QPsiSymbol& l,
                                   const FunctionalSpec& f, int depth) {
    if (f.kind == FunctionalSpec::Kind::Spectral) return qsym_dhamiltonian(ctx, l, f.m, depth);
    // the coordinate covector D^{i-lambda} z^{-j} = q^{(lambda-i)j} z^{-j} D^{i-lambda}
    Cplx c = ctx.qpow((l.base - double(f.i)) * double(f.j));
    return qsym_term(-l.base, f.i, laurent_monomial(-f.j, c));
}

GradientPair gradient_from_differential(const Context& ctx, const QPsiSymbol& l,
                                        const QPsiSymbol& dphi) {
    GradientPair g;
    g.dphi = dphi;
    g.nabla = qsym_mul(ctx, l, dphi);
    g.nablap = qsym_mul(ctx, dphi, l);
    return g;
}

GradientPair gradient_scalar(const Context& ctx, const QPsiSymbol& l, const FunctionalSpec& f,
                             int depth) {
    return gradient_from_differential(ctx, l, functional_differential(ctx, l, f, depth));
}

namespace {

// the D^0 coefficient of an integer-degree symbol
LaurentSeries j0_series(const QPsiSymbol& a) {
    if (!a.integer_base())
        fail(ErrorKind::DegreeMismatch, "degree-zero coefficient needs an integer-degree symbol");
    return a.at(-a.base_int());
}

// sum of two multiplier actions on series, per z-exponent
template <typename FA, typename FB>
LaurentSeries combine_multipliers(const LaurentSeries& p, FA fa, const LaurentSeries& pp, FB fb) {
    LaurentSeries r;
    r.lo = std::max(p.lo, pp.lo);
    for (const auto& [m, v] : p.c) r.c[m] += fa(m) * v;
    for (const auto& [m, v] : pp.c) r.c[m] += fb(m) * v;
    r.cleanup(0.0);
    return r;
}

// re-embed a series as the D^0 component in the grading of `like`
QPsiSymbol embed_j0(const QPsiSymbol& like, LaurentSeries s) {
    return qsym_term(like.base, -like.base_int(), std::move(s));
}

} // namespace

Cplx bracket_scalar(const Context& ctx, const QuadOperatorSpec& spec, const GradientPair& gphi,
                    const GradientPair& gpsi) {
    LaurentSeries p = j0_series(gphi.nabla);
    LaurentSeries pp = j0_series(gphi.nablap);
    LaurentSeries top0 = combine_multipliers(
        p, [&](int m) { return spec.a(ctx, m); }, pp, [&](int m) { return spec.b(ctx, m); });
    LaurentSeries bot0 = combine_multipliers(
        p, [&](int m) { return spec.c(ctx, m); }, pp, [&](int m) { return spec.d(ctx, m); });
    QPsiSymbol top = qsym_add(qsym_R(gphi.nabla), embed_j0(gphi.nabla, std::move(top0)));
    QPsiSymbol bot = qsym_add(qsym_R(gphi.nablap), embed_j0(gphi.nablap, std::move(bot0)));
    return qsym_inner(ctx, top, gpsi.nabla) - qsym_inner(ctx, bot, gpsi.nablap);
}

Cplx bracket_scalar(const Context& ctx, const QPsiSymbol& l, const QuadOperatorSpec& spec,
                    const FunctionalSpec& phi, const FunctionalSpec& psi, int depth) {
    return bracket_scalar(ctx, spec, gradient_scalar(ctx, l, phi, depth),
                          gradient_scalar(ctx, l, psi, depth));
}

// --- matrix side ----------------------------------------------------------------

LoopMatrix mat_coordinate_differential(const Context& ctx, const CompanionFin& c, int i, int j) {
    const int n = c.n;
    if (i < 1 || i > n) fail(ErrorKind::Shape, "coordinate index out of range");
    LoopMatrix m(n);
    m.at(i - 1, 0) = laurent_monomial(-j, Cplx(-1, 0));
    // fill the lower triangle so that h^{-1}(L m) - m L is upper triangular
    for (int w = 1; w < n; ++w)
        for (int k = 0; k < w; ++k)
            m.at(w, k + 1) = series_sub(series_dilate(ctx, m.at(w - 1, k), Cplx(-1, 0)),
                                        series_mul(m.at(w, 0), c.r[k]));
    return m;
}

MatGradientPair mat_gradient(const Context& ctx, const LoopMatrix& l, const LoopMatrix& dphi) {
    MatGradientPair g;
    g.dphi = dphi;
    g.nabla = mat_mul(ctx, l, dphi);
    g.nablap = mat_mul(ctx, dphi, l);
    return g;
}

LoopMatrix mat_Z(const Context& ctx, const MatGradientPair& g) {
    return mat_sub(mat_dilate(ctx, g.nabla, Cplx(-1, 0)), g.nablap);
}

LoopMatrix mat_Zbar(const Context& ctx, const MatGradientPair& g) {
    return mat_add(mat_dilate(ctx, g.nabla, Cplx(-1, 0)), g.nablap);
}

namespace {

LoopMatrix r_apply_with(const LoopMatrix& z, const DiagMatrixFin& r0diag) {
    LoopMatrix r = mat_scale(mat_sub(mat_upper(z), mat_lower(z)), Cplx(0.5, 0));
    return mat_add(r, mat_diag(r0diag));
}

} // namespace

LoopMatrix mat_r_apply(const Context& ctx, const LoopMatrix& z, const DeltaSpec& delta) {
    return r_apply_with(z, r0_fin(ctx, mat_diag_part(z), delta));
}

Cplx bracket_matrix(const Context& ctx, const MatGradientPair& gphi, const MatGradientPair& gpsi,
                    const DeltaSpec& delta) {
    LoopMatrix zphi = mat_Z(ctx, gphi);
    LoopMatrix w = mat_sub(mat_scale(mat_Zbar(ctx, gpsi), Cplx(0.5, 0)),
                           mat_r_apply(ctx, mat_Z(ctx, gpsi), delta));
    return mat_inner(ctx, zphi, w);
}

Cplx bracket_matrix_kernel(const Context& ctx, const MatGradientPair& gphi,
                           const MatGradientPair& gpsi, const DeltaSpec& delta) {
    // [[ r, -h r_+ ], [ r_- h^{-1}, -r ]] against (nabla, nabla') of both sides
    const LoopMatrix& na = gphi.nabla;
    const LoopMatrix& np = gphi.nablap;
    LoopMatrix top = mat_sub(
        mat_r_apply(ctx, na, delta),
        mat_dilate(ctx, mat_add(mat_r_apply(ctx, np, delta), mat_scale(np, Cplx(0.5, 0))),
                   Cplx(1, 0)));
    LoopMatrix nah = mat_dilate(ctx, na, Cplx(-1, 0));
    LoopMatrix bot = mat_sub(mat_sub(mat_r_apply(ctx, nah, delta), mat_scale(nah, Cplx(0.5, 0))),
                             mat_r_apply(ctx, np, delta));
    return mat_inner(ctx, top, gpsi.nabla) - mat_inner(ctx, bot, gpsi.nablap);
}

DiagMatrixFin r0_universal_restricted(const Context& ctx, const DiagMatrixFin& f,
                                      const DeltaSpec& delta) {
    const int n = f.n;
    DiagMatrixFin out(n);
    int lo = kNegInf;
    for (int w = 0; w < n; ++w) lo = std::max(lo, f.d[w].lo);
    for (int w = 0; w < n; ++w) out.d[w].lo = lo;

    std::map<int, bool> exps;
    for (int w = 0; w < n; ++w)
        for (const auto& [m, v] : f.d[w].c) exps[m] = true;

    for (const auto& [m, unused] : exps) {
        (void)unused;
        std::vector<Cplx> vals(n);
        for (int w = 0; w < n; ++w) {
            auto it = f.d[w].c.find(m);
            vals[w] = it == f.d[w].c.end() ? Cplx(0, 0) : it->second;
        }
        Cplx total(0, 0);
        for (int w = 0; w < n; ++w) total += ctx.qpow(Cplx(w * m, 0)) * vals[w];
        if (m == 0) {
            // constant mode: partial sums of an interpolant acquire a w-linear
            // piece, so the mean enters with weight w + n/2 and the first
            // moment is subtracted
            Cplx moment(0, 0);
            for (int w = 0; w < n; ++w) moment += double(w) * vals[w];
            Cplx prefix(0, 0);
            for (int w = 0; w < n; ++w) {
                out.d[w].c[m] += -0.5 * vals[w] - prefix - moment / double(n) +
                                 (total / double(n)) * (double(w) + double(n) / 2);
                prefix += vals[w];
            }
            continue;
        }
        Cplx mult = double(n) * (1.0 / ctx.one_minus_qpow(Cplx(n, 0), m) + delta.at(m));
        Cplx prefix(0, 0);
        for (int w = 0; w < n; ++w) {
            Cplx qmw = ctx.qpow(Cplx(-w * m, 0));
            out.d[w].c[m] += -0.5 * vals[w] - qmw * prefix + mult * (total / double(n)) * qmw;
            prefix += ctx.qpow(Cplx(w * m, 0)) * vals[w];
        }
    }
    for (int w = 0; w < n; ++w) out.d[w].cleanup(ctx.eps);
    return out;
}

Cplx bracket_matrix_restricted(const Context& ctx, const MatGradientPair& gphi,
                               const MatGradientPair& gpsi, const DeltaSpec& delta) {
    LoopMatrix zphi = mat_Z(ctx, gphi);
    LoopMatrix zpsi = mat_Z(ctx, gpsi);
    LoopMatrix rz = r_apply_with(zpsi, r0_universal_restricted(ctx, mat_diag_part(zpsi), delta));
    LoopMatrix w = mat_sub(mat_scale(mat_Zbar(ctx, gpsi), Cplx(0.5, 0)), rz);
    return mat_inner(ctx, zphi, w);
}

// --- diagonal-twist contribution -------------------------------------------------

DiagMatrixFin twist_diag_field(const Context& ctx, int n, const GradientPair& g) {
    DiagMatrixFin z0(n);
    z0.d[0] = series_dilate(ctx, j0_series(g.nabla), Cplx(-1, 0));
    z0.d[n - 1] = series_sub(z0.d[n - 1], j0_series(g.nablap));
    return z0;
}

Cplx jdelta_matrix(const Context& ctx, int n, const GradientPair& gphi, const GradientPair& gpsi,
                   const DeltaSpec& delta) {
    DiagMatrixFin z0phi = twist_diag_field(ctx, n, gphi);
    DiagMatrixFin z0psi = twist_diag_field(ctx, n, gpsi);
    LaurentSeries g0 = proj_U_fin(ctx, z0phi);
    LaurentSeries g0d;
    g0d.lo = g0.lo;
    for (const auto& [m, v] : g0.c) g0d.c[m] = double(n) * delta.at(m) * v;
    g0d.cleanup(0.0);
    return diag_inner(ctx, u_field_fin(ctx, n, g0d), z0psi);
}

Cplx jdelta_scalar(const Context& ctx, int n, const GradientPair& gphi, const GradientPair& gpsi,
                   const DeltaSpec& delta) {
    LaurentSeries p = j0_series(gphi.nabla);
    LaurentSeries pp = j0_series(gphi.nablap);
    auto qn = [&](int m) { return ctx.qpow(Cplx(n * m, 0)); };
    LaurentSeries s1 = combine_multipliers(
        p, [&](int m) { return delta.at(m); }, pp, [&](int m) { return -delta.at(m) * qn(m); });
    LaurentSeries s2 = combine_multipliers(
        p, [&](int m) { return delta.at(m) / qn(m); }, pp,
        [&](int m) { return -delta.at(m); });
    return inner(s1, j0_series(gpsi.nabla)) - inner(s2, j0_series(gpsi.nablap));
}

// --- quotient equivalence ---------------------------------------------------------

QuotientEquivalenceReport quotient_equivalence_check(const Context& ctx, int n,
                                                     const DeltaSpec& delta, int trials,
                                                     uint64_t seed) {
    QuotientEquivalenceReport rep;
    rep.trials = trials;
    QuadOperatorSpec spec = QuadOperatorSpec::twisted(Cplx(n, 0), delta);
    for (int tr = 0; tr < trials; ++tr) {
        Rng rng = Rng::derive(seed + uint64_t(tr), "quotient");
        std::vector<LaurentSeries> u(n);
        for (int i = 0; i < n; ++i)
            for (int e = -2; e <= 2; ++e) u[i].c[e] = 0.6 * rng.next_cplx();

        FunctionalSpec phi = FunctionalSpec::coefficient(rng.next_int(1, n), rng.next_int(-2, 2));
        FunctionalSpec psi = FunctionalSpec::coefficient(rng.next_int(1, n), rng.next_int(-2, 2));

        QPsiSymbol l = qsym_from_u(Cplx(n, 0), u);
        Cplx scalar = bracket_scalar(ctx, l, spec, phi, psi, n + 3);

        CompanionFin comp;
        comp.n = n;
        comp.r.resize(n);
        for (int k = 0; k < n; ++k) comp.r[k] = series_scale(u[k], Cplx(-1, 0));
        LoopMatrix big = companion_matrix(ctx, comp);
        MatGradientPair gphi =
            mat_gradient(ctx, big, mat_coordinate_differential(ctx, comp, phi.i, phi.j));
        MatGradientPair gpsi =
            mat_gradient(ctx, big, mat_coordinate_differential(ctx, comp, psi.i, psi.j));
        Cplx finite = bracket_matrix(ctx, gphi, gpsi, delta);
        Cplx restricted = bracket_matrix_restricted(ctx, gphi, gpsi, delta);

        rep.max_matrix_vs_scalar = std::max(rep.max_matrix_vs_scalar, std::abs(finite - scalar));
        rep.max_finite_vs_restricted =
            std::max(rep.max_finite_vs_restricted, std::abs(finite - restricted));
        rep.max_value = std::max({rep.max_value, std::abs(finite), std::abs(scalar)});
    }
    return rep;
}

} // namespace qds
