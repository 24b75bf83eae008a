#include "qds/a0.hpp"

#include <vector>

namespace qds {

namespace {

// Integer powers of a complex number without std::pow edge cases at 0^0.
Cplx cpow_int(const Cplx& a, int k) {
    Cplx r(1, 0);
    for (int i = 0; i < k; ++i) r *= a;
    return r;
}

void check_poly_deg(int m) {
    if (m > kA0DegreeCap)
        fail(ErrorKind::Cutoff, "interpolation degree cap exceeded (w^" + std::to_string(m) + ")");
}

// Solve alpha(w+1)*c - alpha(w) = w^m for a degree-m polynomial alpha,
// coefficients returned lowest-first.  Valid for c != 1.
std::vector<Cplx> geometric_weights(const Cplx& c, int m) {
    std::vector<Cplx> a(m + 1);
    for (int j = m; j >= 0; --j) {
        Cplx rhs = (j == m) ? Cplx(1, 0) : Cplx(0, 0);
        for (int k = j + 1; k <= m; ++k) rhs -= c * a[k] * binom(k, j);
        a[j] = rhs / (c - 1.0);
    }
    return a;
}

// Solve alpha(w+1) - alpha(w) = w^m, alpha(0) = 0 (Faulhaber), degree m+1.
std::vector<Cplx> faulhaber_weights(int m) {
    std::vector<Cplx> a(m + 2);
    for (int j = m; j >= 0; --j) {
        Cplx rhs = (j == m) ? Cplx(1, 0) : Cplx(0, 0);
        for (int k = j + 2; k <= m + 1; ++k) rhs -= a[k] * binom(k, j);
        a[j + 1] = rhs / double(j + 1);
    }
    a[0] = 0;
    return a;
}

} // namespace

A0Function operator+(const A0Function& a, const A0Function& b) {
    A0Function r = a;
    for (const auto& [k, v] : b.t) r.t[k] += v;
    r.cleanup();
    return r;
}

A0Function operator-(const A0Function& a, const A0Function& b) {
    A0Function r = a;
    for (const auto& [k, v] : b.t) r.t[k] -= v;
    r.cleanup();
    return r;
}

A0Function operator*(const A0Function& a, const A0Function& b) {
    A0Function r;
    for (const auto& [ka, va] : a.t)
        for (const auto& [kb, vb] : b.t) {
            int m = ka.first + kb.first;
            check_poly_deg(m);
            r.t[{m, ka.second + kb.second}] += va * vb;
        }
    r.cleanup();
    return r;
}

A0Function operator*(const A0Function& a, const Cplx& s) {
    A0Function r;
    for (const auto& [k, v] : a.t) r.t[k] = v * s;
    r.cleanup();
    return r;
}

Cplx a0_eval(const Context& ctx, const A0Function& f, const Cplx& w) {
    Cplx s = 0;
    for (const auto& [k, v] : f.t) s += v * cpow_int(w, k.first) * ctx.qpow(double(k.second) * w);
    return s;
}

A0Function a0_shift(const Context& ctx, const A0Function& f, const Cplx& a) {
    A0Function r;
    for (const auto& [k, v] : f.t) {
        const auto [m, n] = k;
        Cplx base = v * ctx.qpow(double(n) * a);
        for (int j = 0; j <= m; ++j)
            r.t[{j, n}] += base * binom(m, j) * cpow_int(a, m - j);
    }
    r.cleanup();
    return r;
}

A0Function interpolate_partial_sum(const Context& ctx, const A0Function& f, int l) {
    A0Function r;
    for (const auto& [k, v] : f.t) {
        const auto [m, n] = k;
        check_poly_deg(m + 1);
        if (n + l == 0) {
            // q^{(n+l)w} = 1: plain power sums, polynomial answer.
            auto a = faulhaber_weights(m);
            for (int j = 1; j <= m + 1; ++j) r.t[{j, 0}] += v * a[j];
        } else {
            // geometric weight c = q^{n+l}; |q| < 1 keeps c away from 1.
            Cplx c = ctx.qpow(n + l);
            auto a = geometric_weights(c, m);
            for (int j = 0; j <= m; ++j) r.t[{j, n + l}] += v * a[j];
            r.t[{0, 0}] -= v * a[0]; // enforce F(0) = 0
        }
    }
    r.cleanup();
    return r;
}

// --- A0Function2 -------------------------------------------------------------

A0Function2 A0Function2::from_w(const A0Function& f) {
    A0Function2 r;
    for (const auto& [k, v] : f.t) r.t[{k.first, k.second, 0, 0}] = v;
    return r;
}

A0Function2 A0Function2::from_t(const A0Function& f) {
    A0Function2 r;
    for (const auto& [k, v] : f.t) r.t[{0, 0, k.first, k.second}] = v;
    return r;
}

A0Function2 operator+(const A0Function2& a, const A0Function2& b) {
    A0Function2 r = a;
    for (const auto& [k, v] : b.t) r.t[k] += v;
    r.cleanup();
    return r;
}

A0Function2 operator-(const A0Function2& a, const A0Function2& b) {
    A0Function2 r = a;
    for (const auto& [k, v] : b.t) r.t[k] -= v;
    r.cleanup();
    return r;
}

A0Function2 operator*(const A0Function2& a, const A0Function2& b) {
    A0Function2 r;
    for (const auto& [ka, va] : a.t)
        for (const auto& [kb, vb] : b.t) {
            check_poly_deg(ka.mw + kb.mw);
            check_poly_deg(ka.mt + kb.mt);
            A0Key2 k{ka.mw + kb.mw, ka.nw + kb.nw, ka.mt + kb.mt, ka.nt + kb.nt};
            r.t[k] += va * vb;
        }
    r.cleanup();
    return r;
}

A0Function2 operator*(const A0Function2& a, const Cplx& s) {
    A0Function2 r;
    for (const auto& [k, v] : a.t) r.t[k] = v * s;
    r.cleanup();
    return r;
}

Cplx a0_eval2(const Context& ctx, const A0Function2& f, const Cplx& w, const Cplx& t) {
    Cplx s = 0;
    for (const auto& [k, v] : f.t)
        s += v * cpow_int(w, k.mw) * ctx.qpow(double(k.nw) * w) * cpow_int(t, k.mt) *
             ctx.qpow(double(k.nt) * t);
    return s;
}

double a0_eval2_scale(const Context& ctx, const A0Function2& f, const Cplx& w, const Cplx& t) {
    double s = 0;
    for (const auto& [k, v] : f.t)
        s += std::abs(v * cpow_int(w, k.mw) * ctx.qpow(double(k.nw) * w) * cpow_int(t, k.mt) *
                      ctx.qpow(double(k.nt) * t));
    return s;
}

double a0_eval2_basis(const Context& ctx, const A0Function2& f, const Cplx& w, const Cplx& t) {
    double basis = 0;
    for (const auto& [k, v] : f.t)
        basis += std::abs(cpow_int(w, k.mw) * ctx.qpow(double(k.nw) * w) * cpow_int(t, k.mt) *
                          ctx.qpow(double(k.nt) * t));
    return basis;
}

double a0_eval2_floor(const Context& ctx, const A0Function2& f, const Cplx& w, const Cplx& t) {
    // Noise floor of an evaluated residual: every stored coefficient carries
    // roundoff proportional to the magnitudes merged into it, which is at
    // least the coefficient norm of the whole function.  Summing the basis
    // magnitudes at the point bounds how much of that dirt the evaluation can
    // surface; residuals below this are indistinguishable from zero.
    // a few dozen ulps of the term scale: coefficients reach the evaluation
    // through long add/multiply chains, so their absolute error is a small
    // multiple of machine epsilon times the largest coefficient magnitude
    return 1e-14 * std::max(1.0, f.norm()) * a0_eval2_basis(ctx, f, w, t);
}

A0Function a0_eval_w(const Context& ctx, const A0Function2& f, const Cplx& w) {
    A0Function r;
    for (const auto& [k, v] : f.t)
        r.t[{k.mt, k.nt}] += v * cpow_int(w, k.mw) * ctx.qpow(double(k.nw) * w);
    r.cleanup();
    return r;
}

A0Function a0_eval_t(const Context& ctx, const A0Function2& f, const Cplx& t) {
    A0Function r;
    for (const auto& [k, v] : f.t)
        r.t[{k.mw, k.nw}] += v * cpow_int(t, k.mt) * ctx.qpow(double(k.nt) * t);
    r.cleanup();
    return r;
}

A0Function2 a0_shift_w(const Context& ctx, const A0Function2& f, const Cplx& a) {
    A0Function2 r;
    for (const auto& [k, v] : f.t) {
        Cplx base = v * ctx.qpow(double(k.nw) * a);
        for (int j = 0; j <= k.mw; ++j)
            r.t[{j, k.nw, k.mt, k.nt}] += base * binom(k.mw, j) * cpow_int(a, k.mw - j);
    }
    r.cleanup();
    return r;
}

A0Function a0_diag_eval(const Context& ctx, const A0Function2& f, const Cplx& a) {
    A0Function r;
    for (const auto& [k, v] : f.t) {
        // t := w + a
        Cplx base = v * ctx.qpow(double(k.nt) * a);
        for (int j = 0; j <= k.mt; ++j) {
            check_poly_deg(k.mw + j);
            r.t[{k.mw + j, k.nw + k.nt}] += base * binom(k.mt, j) * cpow_int(a, k.mt - j);
        }
    }
    r.cleanup();
    return r;
}

A0Function a0_subst_w_from_t(const Context& ctx, const A0Function2& f, const Cplx& a) {
    A0Function r;
    for (const auto& [k, v] : f.t) {
        // w := t + a
        Cplx base = v * ctx.qpow(double(k.nw) * a);
        for (int j = 0; j <= k.mw; ++j) {
            check_poly_deg(k.mt + j);
            r.t[{k.mt + j, k.nw + k.nt}] += base * binom(k.mw, j) * cpow_int(a, k.mw - j);
        }
    }
    r.cleanup();
    return r;
}

A0Function2 interpolate_partial_sum_w(const Context& ctx, const A0Function2& f, int l) {
    // Group by the spectator (t) part, sum the w part in closed form.
    std::map<std::pair<int, int>, A0Function> groups;
    for (const auto& [k, v] : f.t) groups[{k.mt, k.nt}].t[{k.mw, k.nw}] += v;
    A0Function2 r;
    for (const auto& [tk, g] : groups) {
        A0Function F = interpolate_partial_sum(ctx, g, l);
        for (const auto& [k, v] : F.t) r.t[{k.first, k.second, tk.first, tk.second}] += v;
    }
    r.cleanup();
    return r;
}

// --- interpolation-valued Laurent series -------------------------------------

LaurentSeries a0l_eval(const Context& ctx, const A0Laurent& f, const Cplx& w) {
    LaurentSeries r;
    r.lo = f.lo;
    for (const auto& [m, v] : f.c) r.c[m] = a0_eval(ctx, v, w);
    r.cleanup(ctx.eps);
    return r;
}

A0Laurent a0l2_eval_w(const Context& ctx, const A0Laurent2& f, const Cplx& w) {
    A0Laurent r;
    r.lo = f.lo;
    for (const auto& [m, v] : f.c) r.c[m] = a0_eval_w(ctx, v, w);
    r.cleanup(ctx.eps);
    return r;
}

A0Laurent2 a0l2_shift_w(const Context& ctx, const A0Laurent2& f, const Cplx& a) {
    A0Laurent2 r;
    r.lo = f.lo;
    for (const auto& [m, v] : f.c) r.c[m] = a0_shift_w(ctx, v, a);
    r.cleanup(ctx.eps);
    return r;
}

A0Laurent a0l2_eval_t(const Context& ctx, const A0Laurent2& f, const Cplx& t) {
    A0Laurent r;
    r.lo = f.lo;
    for (const auto& [m, v] : f.c) r.c[m] = a0_eval_t(ctx, v, t);
    r.cleanup(ctx.eps);
    return r;
}

A0Laurent a0l_from_laurent(const LaurentSeries& f) {
    A0Laurent r;
    r.lo = f.lo;
    for (const auto& [m, v] : f.c) r.c[m] = A0Function::constant(v);
    return r;
}

} // namespace qds
