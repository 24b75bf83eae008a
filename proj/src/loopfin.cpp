#include "qds/loopfin.hpp"

#include <numbers>

namespace qds {

LoopMatrix mat_identity(int n) {
    LoopMatrix r(n);
    for (int i = 0; i < n; ++i) r.at(i, i) = laurent_monomial(0);
    return r;
}

LoopMatrix mat_add(const LoopMatrix& a, const LoopMatrix& b) {
    if (a.n != b.n) fail(ErrorKind::Shape, "matrix size mismatch");
    LoopMatrix r(a.n);
    for (int k = 0; k < a.n * a.n; ++k) r.e[k] = series_add(a.e[k], b.e[k]);
    return r;
}

LoopMatrix mat_sub(const LoopMatrix& a, const LoopMatrix& b) {
    return mat_add(a, mat_scale(b, Cplx(-1, 0)));
}

LoopMatrix mat_scale(const LoopMatrix& a, const Cplx& s) {
    LoopMatrix r(a.n);
    for (int k = 0; k < a.n * a.n; ++k) r.e[k] = series_scale(a.e[k], s);
    return r;
}

LoopMatrix mat_mul(const Context& ctx, const LoopMatrix& a, const LoopMatrix& b) {
    if (a.n != b.n) fail(ErrorKind::Shape, "matrix size mismatch");
    LoopMatrix r(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            LaurentSeries s;
            for (int k = 0; k < a.n; ++k)
                s = series_add(s, series_mul(a.at(i, k), b.at(k, j), ctx.eps));
            r.at(i, j) = std::move(s);
        }
    return r;
}

LoopMatrix mat_dilate(const Context& ctx, const LoopMatrix& a, const Cplx& power) {
    LoopMatrix r(a.n);
    for (int k = 0; k < a.n * a.n; ++k) r.e[k] = series_dilate(ctx, a.e[k], power);
    return r;
}

LoopMatrix mat_diag(const DiagMatrixFin& d) {
    LoopMatrix r(d.n);
    for (int i = 0; i < d.n; ++i) r.at(i, i) = d.d[i];
    return r;
}

LoopMatrix mat_upper(const LoopMatrix& a) {
    LoopMatrix r(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = i + 1; j < a.n; ++j) r.at(i, j) = a.at(i, j);
    return r;
}

LoopMatrix mat_lower(const LoopMatrix& a) {
    LoopMatrix r(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < i; ++j) r.at(i, j) = a.at(i, j);
    return r;
}

DiagMatrixFin mat_diag_part(const LoopMatrix& a) {
    DiagMatrixFin r(a.n);
    for (int i = 0; i < a.n; ++i) r.d[i] = a.at(i, i);
    return r;
}

Cplx mat_inner(const Context& ctx, const LoopMatrix& a, const LoopMatrix& b) {
    if (a.n != b.n) fail(ErrorKind::Shape, "matrix size mismatch");
    Cplx s = 0;
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) s += inner(a.at(i, k), b.at(k, i), ctx.eps);
    return s;
}

Cplx diag_inner(const Context& ctx, const DiagMatrixFin& a, const DiagMatrixFin& b) {
    if (a.n != b.n) fail(ErrorKind::Shape, "matrix size mismatch");
    Cplx s = 0;
    for (int i = 0; i < a.n; ++i) s += inner(a.d[i], b.d[i], ctx.eps);
    return s;
}

LoopMatrix mat_inverse_unipotent(const Context& ctx, const LoopMatrix& t) {
    const int n = t.n;
    for (int i = 0; i < n; ++i) {
        if (laurent_dist(t.at(i, i), laurent_monomial(0)) > 1e-12)
            fail(ErrorKind::Shape, "unipotent inverse needs unit diagonal");
        for (int j = 0; j < i; ++j)
            if (t.at(i, j).norm() > 1e-12)
                fail(ErrorKind::Shape, "unipotent inverse needs upper-triangular input");
    }
    LoopMatrix nil = mat_sub(t, mat_identity(n)); // strictly upper, nilpotent
    LoopMatrix inv = mat_identity(n);
    LoopMatrix pw = mat_identity(n);
    for (int j = 1; j < n; ++j) {
        pw = mat_mul(ctx, pw, nil);
        inv = mat_add(inv, mat_scale(pw, Cplx(j % 2 ? -1 : 1, 0)));
    }
    return inv;
}

LoopMatrix mat_gauge(const Context& ctx, const LoopMatrix& t, const LoopMatrix& l) {
    return mat_mul(ctx, mat_mul(ctx, mat_dilate(ctx, t, Cplx(1, 0)), l),
                   mat_inverse_unipotent(ctx, t));
}

bool is_reduction_input(const LoopMatrix& l, double tol) {
    const int n = l.n;
    for (int i = 0; i + 1 < n; ++i)
        if (laurent_dist(l.at(i + 1, i), laurent_monomial(0)) > tol) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j + 1 < i; ++j)
            if (l.at(i, j).norm() > tol) return false;
    return true;
}

LoopMatrix companion_matrix(const Context& ctx, const CompanionFin& c) {
    (void)ctx;
    const int n = c.n;
    LoopMatrix r(n);
    for (int k = 0; k < n; ++k) r.at(0, k) = c.r[k];
    for (int i = 0; i + 1 < n; ++i) r.at(i + 1, i) = laurent_monomial(0);
    return r;
}

// Match diagonal l of (h T) L = C T where C is the companion target.  The
// unknowns at level l are the T entries on diagonal l+1 and the companion
// entry r_{l+1}; they satisfy
//   F_{i,i+l} + (h T)_{i,i+l+1} = T_{i-1,i+l}   (i >= 1)
//   F_{0,l}   + (h T)_{0,l+1}   = r_{l+1}
// with F the level-l defect built from already-known diagonals.  Solving
// from the last row upward determines everything uniquely.
FiniteReduction reduce_finite(const Context& ctx, const LoopMatrix& l) {
    const int n = l.n;
    if (!is_reduction_input(l))
        fail(ErrorKind::Shape, "reduction input must have unit subdiagonal and vanish below it");
    LoopMatrix t = mat_identity(n);
    CompanionFin comp;
    comp.n = n;
    comp.r.resize(n);
    for (int lev = 0; lev < n; ++lev) {
        std::vector<LaurentSeries> f(n - lev);
        for (int i = 0; i + lev < n; ++i) f[i] = l.at(i, i + lev);
        for (int j = 1; j <= lev; ++j) {
            int d = lev - j; // companion diagonal paired with T diagonal j
            f[0] = series_sub(f[0], series_mul(comp.r[d], t.at(d, lev), ctx.eps));
            for (int i = 0; i + lev < n; ++i) {
                if (i + j >= n) continue;
                LaurentSeries ht = series_dilate(ctx, t.at(i, i + j), Cplx(1, 0));
                f[i] = series_add(f[i], series_mul(ht, l.at(i + j, i + lev), ctx.eps));
            }
        }
        if (lev <= n - 2) {
            t.at(n - 2 - lev, n - 1) = f[n - 1 - lev];
            for (int i = n - 2 - lev; i >= 1; --i)
                t.at(i - 1, i + lev) =
                    series_add(f[i], series_dilate(ctx, t.at(i, i + lev + 1), Cplx(1, 0)));
            comp.r[lev] = series_add(f[0], series_dilate(ctx, t.at(0, lev + 1), Cplx(1, 0)));
        } else {
            comp.r[lev] = f[0];
        }
    }
    return {comp, t};
}

static Cplx root_of_unity(int n, long k) {
    long r = ((k % n) + n) % n;
    return std::polar(1.0, 2.0 * std::numbers::pi * double(r) / double(n));
}

std::vector<LaurentSeries> diag_to_eigen(const Context& ctx, const DiagMatrixFin& f) {
    const int n = f.n;
    std::vector<LaurentSeries> c(n);
    for (int a = 0; a < n; ++a) {
        LaurentSeries s;
        for (int i = 0; i < n; ++i)
            s = series_add(s, series_scale(f.d[i], root_of_unity(n, -(long)a * i) / double(n)),
                           ctx.eps);
        c[a] = std::move(s);
    }
    return c;
}

DiagMatrixFin diag_from_eigen(const Context& ctx, int n, const std::vector<LaurentSeries>& c) {
    DiagMatrixFin f(n);
    for (int i = 0; i < n; ++i) {
        LaurentSeries s;
        for (int a = 0; a < n; ++a)
            s = series_add(s, series_scale(c[a], root_of_unity(n, (long)a * i)), ctx.eps);
        f.d[i] = std::move(s);
    }
    return f;
}

LaurentSeries proj_U_fin(const Context& ctx, const DiagMatrixFin& f) {
    LaurentSeries s;
    for (int i = 0; i < f.n; ++i)
        s = series_add(s, series_dilate(ctx, f.d[i], Cplx(i, 0)), ctx.eps);
    return series_scale(s, Cplx(1.0 / f.n, 0));
}

DiagMatrixFin u_field_fin(const Context& ctx, int n, const LaurentSeries& f0) {
    DiagMatrixFin f(n);
    for (int i = 0; i < n; ++i) f.d[i] = series_dilate(ctx, f0, Cplx(-i, 0));
    return f;
}

DiagMatrixFin r0_fin(const Context& ctx, const DiagMatrixFin& f, const DeltaSpec& delta) {
    const int n = f.n;
    std::vector<LaurentSeries> c = diag_to_eigen(ctx, f);
    for (int a = 0; a < n; ++a) {
        LaurentSeries out;
        out.lo = c[a].lo;
        for (const auto& [m, v] : c[a].c) {
            if (m == 0 && a == 0) continue; // constants are projected out
            Cplx xi = ctx.qpow(m) * root_of_unity(n, a);
            if (std::abs(xi - 1.0) < ctx.eps_generic)
                fail(ErrorKind::NonGeneric, "Cayley multiplier pole: q^m w^a = 1");
            out.c[m] = v * cayley_half(xi);
        }
        out.cleanup(ctx.eps);
        c[a] = std::move(out);
    }
    DiagMatrixFin r = diag_from_eigen(ctx, n, c);
    if (!delta.empty()) {
        LaurentSeries f0 = proj_U_fin(ctx, f);
        LaurentSeries f0d;
        f0d.lo = f0.lo;
        for (const auto& [m, v] : f0.c) f0d.c[m] = v * (double(n) * delta.at(m));
        f0d.cleanup(ctx.eps);
        DiagMatrixFin uf = u_field_fin(ctx, n, f0d);
        for (int i = 0; i < n; ++i) r.d[i] = series_add(r.d[i], uf.d[i], ctx.eps);
    }
    return r;
}

double mat_dist(const LoopMatrix& a, const LoopMatrix& b) {
    if (a.n != b.n) return 1e300;
    double d = 0;
    for (int k = 0; k < a.n * a.n; ++k) d = std::max(d, laurent_dist(a.e[k], b.e[k]));
    return d;
}

} // namespace qds
