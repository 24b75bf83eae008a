#include "qds/diagfield.hpp"

namespace qds {

DiagField df_add(const DiagField& a, const DiagField& b) { return {series_add(a.f, b.f)}; }
DiagField df_sub(const DiagField& a, const DiagField& b) { return {series_sub(a.f, b.f)}; }
DiagField df_scale(const DiagField& a, const Cplx& s) { return {series_scale(a.f, s)}; }
DiagField df_mul(const DiagField& a, const DiagField& b) { return {series_mul(a.f, b.f)}; }

DiagField df_dilate(const Context& ctx, const DiagField& a, const Cplx& power) {
    return {series_dilate(ctx, a.f, power)};
}

LaurentSeries df_eval(const Context& ctx, const DiagField& a, const Cplx& w) {
    return a0l_eval(ctx, a.f, w);
}

DiagField df_shift(const Context& ctx, const DiagField& a) {
    DiagField r;
    r.f.lo = a.f.lo;
    for (const auto& [m, v] : a.f.c) r.f.c[m] = a0_shift(ctx, v, Cplx(1, 0));
    r.f.cleanup(ctx.eps);
    return r;
}

DiagField df_apply_A(const Context& ctx, const DiagField& a) {
    return df_sub(a, df_dilate(ctx, df_shift(ctx, a), Cplx(1, 0)));
}

DiagField df_apply_A_inverse(const Context& ctx, const DiagField& a) {
    DiagField r;
    r.f.lo = a.f.lo;
    for (const auto& [m, v] : a.f.c) {
        A0Function s = interpolate_partial_sum(ctx, v, m);
        r.f.c[m] = A0Function::basis(0, -m, Cplx(-1, 0)) * s;
    }
    r.f.cleanup(ctx.eps);
    return r;
}

DiagField df_from_generator(const LaurentSeries& f0) {
    DiagField r;
    r.f.lo = f0.lo;
    for (const auto& [m, v] : f0.c) r.f.c[m] = A0Function::basis(0, -m, v);
    return r;
}

LaurentSeries df_proj_U_generator(const Context& ctx, const DiagField& a, const Cplx& lambda) {
    if (std::abs(lambda) < ctx.eps_generic)
        fail(ErrorKind::ZeroLambda, "projection onto U needs lambda != 0");
    DiagField g = df_apply_A_inverse(ctx, a);
    LaurentSeries f0;
    f0.lo = g.f.lo;
    for (const auto& [m, v] : g.f.c)
        f0.set(m, -a0_eval(ctx, v, lambda) * ctx.qpow(lambda * double(m)) / lambda, ctx.eps);
    f0.cleanup(ctx.eps);
    return f0;
}

DiagField df_proj_U(const Context& ctx, const DiagField& a, const Cplx& lambda) {
    return df_from_generator(df_proj_U_generator(ctx, a, lambda));
}

DiagField df_r0(const Context& ctx, const DiagField& a, const UniversalRMatrixSpec& spec) {
    const Cplx lambda = spec.lambda;
    LaurentSeries f0 = df_proj_U_generator(ctx, a, lambda);
    LaurentSeries g0;
    g0.lo = f0.lo;
    for (const auto& [m, v] : f0.c) {
        Cplx mult;
        if (m == 0) {
            mult = lambda * 0.5;
        } else {
            mult = lambda * (1.0 / ctx.one_minus_qpow(lambda, m) + spec.delta.at(m));
        }
        g0.set(m, mult * v, ctx.eps);
    }
    DiagField r = df_add(df_scale(a, Cplx(-0.5, 0)), df_apply_A_inverse(ctx, a));
    return df_add(r, df_from_generator(g0));
}

Cplx df_pair(const Context& ctx, const DiagField& a, const DiagField& b, const Cplx& lambda) {
    A0Laurent prod = series_mul(a.f, b.f, ctx.eps);
    if (prod.lo > 0)
        fail(ErrorKind::Truncation, "pairing needs the z^0 coefficient of the product");
    A0Function h = prod.at(0);
    A0Function phi = interpolate_partial_sum(ctx, h, 0);
    return a0_eval(ctx, phi, lambda);
}

DiagMatrixFin df_restrict(const Context& ctx, const DiagField& a, int n) {
    DiagMatrixFin r(n);
    for (int i = 0; i < n; ++i) r.d[i] = df_eval(ctx, a, Cplx(i, 0));
    return r;
}

bool df_in_U(const DiagField& a, double eps) {
    for (const auto& [m, v] : a.f.c)
        for (const auto& [k, c] : v.t)
            if (std::abs(c) > eps && (k.first != 0 || k.second != -m)) return false;
    return true;
}

double df_dist(const DiagField& a, const DiagField& b) {
    return series_sub(a.f, b.f, 0.0).norm();
}

} // namespace qds
