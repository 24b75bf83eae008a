#include "qds/psido.hpp"

namespace qds {

QPsiSymbol qsym_power_of_D(const Cplx& a) {
    QPsiSymbol r;
    r.base = a;
    r.c[0] = laurent_monomial(0);
    return r;
}

QPsiSymbol qsym_one() { return qsym_power_of_D(Cplx(0, 0)); }

QPsiSymbol qsym_term(const Cplx& base, int k, LaurentSeries a) {
    QPsiSymbol r;
    r.base = base;
    r.set(k, std::move(a));
    return r;
}

QPsiSymbol qsym_from_u(const Cplx& lambda, const std::vector<LaurentSeries>& u) {
    QPsiSymbol r;
    r.base = lambda;
    r.c[0] = laurent_monomial(0);
    for (size_t i = 0; i < u.size(); ++i) r.set(-(int(i) + 1), u[i]);
    return r;
}

QPsiSymbol qsym_rebase(const QPsiSymbol& a, const Cplx& new_base) {
    Cplx d = a.base - new_base;
    if (std::abs(d.imag()) > 1e-9 || std::abs(d.real() - std::round(d.real())) > 1e-9)
        fail(ErrorKind::DegreeMismatch, "rebase requires integer degree difference");
    int s = int(std::round(d.real()));
    QPsiSymbol r;
    r.base = new_base;
    r.klo = detail::add_deg(a.klo, 0) == kNegInf ? kNegInf : a.klo + s;
    for (const auto& [k, v] : a.c) r.c[k + s] = v;
    return r;
}

QPsiSymbol qsym_add(const QPsiSymbol& a, const QPsiSymbol& b) {
    if (std::abs(a.base - b.base) > 1e-12) {
        Cplx d = a.base - b.base;
        if (std::abs(d.imag()) <= 1e-9 && std::abs(d.real() - std::round(d.real())) <= 1e-9)
            return qsym_add(a, qsym_rebase(b, a.base));
        fail(ErrorKind::DegreeMismatch, "cannot add symbols of incompatible degree");
    }
    QPsiSymbol r;
    r.base = a.base;
    r.klo = std::max(a.klo, b.klo);
    for (const auto& [k, v] : a.c) if (k >= r.klo) r.c[k] = v;
    for (const auto& [k, v] : b.c) {
        if (k < r.klo) continue;
        auto it = r.c.find(k);
        if (it == r.c.end()) r.c[k] = v; else it->second = series_add(it->second, v);
    }
    for (auto it = r.c.begin(); it != r.c.end();)
        it = (it->second.is_zero() && it->second.exact()) ? r.c.erase(it) : std::next(it);
    return r;
}

QPsiSymbol qsym_scale(const QPsiSymbol& a, const Cplx& s) {
    QPsiSymbol r;
    r.base = a.base;
    r.klo = a.klo;
    for (const auto& [k, v] : a.c) r.c[k] = series_scale(v, s);
    return r;
}

QPsiSymbol qsym_sub(const QPsiSymbol& a, const QPsiSymbol& b) {
    return qsym_add(a, qsym_scale(b, Cplx(-1, 0)));
}

QPsiSymbol qsym_mul(const Context& ctx, const QPsiSymbol& a, const QPsiSymbol& b) {
    QPsiSymbol r;
    r.base = a.base + b.base;
    r.klo = std::max(detail::add_deg(a.klo, b.ktop()), detail::add_deg(b.klo, a.ktop()));
    for (const auto& [k1, a1] : a.c) {
        // D^{base_a + k1} moves across b's coefficients as a dilation.
        Cplx s = a.base + Cplx(k1, 0);
        for (const auto& [k2, a2] : b.c) {
            int k = k1 + k2;
            if (k < r.klo) continue;
            LaurentSeries term = series_mul(a1, series_dilate(ctx, a2, s), ctx.eps);
            auto it = r.c.find(k);
            if (it == r.c.end()) r.c[k] = std::move(term);
            else it->second = series_add(it->second, term, ctx.eps);
        }
    }
    for (auto it = r.c.begin(); it != r.c.end();)
        it = (it->second.is_zero(ctx.eps) && it->second.exact()) ? r.c.erase(it) : std::next(it);
    return r;
}

QPsiSymbol qsym_dilate(const Context& ctx, const QPsiSymbol& a, const Cplx& s) {
    QPsiSymbol r;
    r.base = a.base;
    r.klo = a.klo;
    for (const auto& [k, v] : a.c) r.c[k] = series_dilate(ctx, v, s);
    return r;
}

QPsiSymbol qsym_lmul_series(const Context& ctx, const LaurentSeries& f, const QPsiSymbol& a) {
    QPsiSymbol r;
    r.base = a.base;
    r.klo = a.klo;
    for (const auto& [k, v] : a.c) r.c[k] = series_mul(f, v, ctx.eps);
    return r;
}

QPsiSymbol qsym_rmul_series(const Context& ctx, const QPsiSymbol& a, const LaurentSeries& f) {
    QPsiSymbol r;
    r.base = a.base;
    r.klo = a.klo;
    for (const auto& [k, v] : a.c)
        r.c[k] = series_mul(v, series_dilate(ctx, f, a.base + Cplx(k, 0)), ctx.eps);
    return r;
}

Cplx qsym_tr(const Context& ctx, const QPsiSymbol& a) {
    (void)ctx;
    if (!a.integer_base()) return Cplx(0, 0); // non-integer degrees carry no residue
    int k0 = -a.base_int();
    return res(a.at(k0));
}

QPsiSymbol qsym_part(const QPsiSymbol& a, Part p) {
    if (!a.integer_base())
        fail(ErrorKind::DegreeMismatch, "graded projection needs an integer-degree symbol");
    int b = a.base_int();
    QPsiSymbol r;
    r.base = a.base;
    auto degree_known_from = detail::add_deg(a.klo, 0) == kNegInf ? kNegInf : a.klo + b;
    auto keep = [&](int d) {
        switch (p) {
            case Part::Plus: return d >= 1;
            case Part::Zero: return d == 0;
            case Part::ZeroPrime: return d == 0;
            case Part::Minus: return d <= -1;
            case Part::PlusZero: return d >= 0;
        }
        return false;
    };
    // The unknown tail matters exactly for the parts reaching downward.
    bool reaches_down = (p == Part::Minus);
    r.klo = reaches_down ? a.klo : kNegInf;
    if ((p == Part::Zero || p == Part::ZeroPrime || p == Part::PlusZero) && degree_known_from > 0)
        fail(ErrorKind::Truncation, "degree-zero part lies below the known window");
    for (const auto& [k, v] : a.c) {
        if (!keep(b + k)) continue;
        if (p == Part::ZeroPrime) {
            LaurentSeries w = v;
            if (w.lo <= 0) w.set(0, Cplx(0, 0)); // strip the constant
            r.c[k] = std::move(w);
        } else {
            r.c[k] = v;
        }
    }
    return r;
}

QPsiSymbol qsym_R(const QPsiSymbol& a) {
    return qsym_scale(qsym_sub(qsym_part(a, Part::Plus), qsym_part(a, Part::Minus)), 0.5);
}

QPsiSymbol qsym_inverse(const Context& ctx, const QPsiSymbol& a, int depth) {
    if (a.c.empty()) fail(ErrorKind::Shape, "cannot invert a symbol without known coefficients");
    int ktop = a.ktop();
    const LaurentSeries& lead = a.at(ktop);
    if (lead.c.size() != 1)
        fail(ErrorKind::Shape, "inverse requires a monomial leading coefficient");
    int s = lead.c.begin()->first;
    Cplx cc = lead.c.begin()->second;
    Cplx d = a.base + Cplx(ktop, 0);
    // (c z^s D^d)^{-1} = (q^{d s}/c) z^{-s} D^{-d}
    QPsiSymbol b0 = qsym_term(-a.base, -ktop, laurent_monomial(-s, ctx.qpow(d * double(s)) / cc));

    QPsiSymbol n = qsym_sub(qsym_mul(ctx, a, b0), qsym_one()); // strictly lower, base 0
    n.truncate_offsets_below(-depth);
    QPsiSymbol sum = qsym_one();
    QPsiSymbol term = qsym_one();
    for (int j = 1; j <= depth; ++j) {
        term = qsym_scale(qsym_mul(ctx, n, term), Cplx(-1, 0));
        term.truncate_offsets_below(-depth);
        if (term.c.empty()) break;
        sum = qsym_add(sum, term);
    }
    QPsiSymbol r = qsym_mul(ctx, b0, sum);
    r.truncate_offsets_below(-ktop - depth);
    return r;
}

QPsiSymbol qsym_ipow(const Context& ctx, const QPsiSymbol& a, int n, int inv_depth) {
    if (n == 0) return qsym_one();
    QPsiSymbol base = n > 0 ? a : qsym_inverse(ctx, a, inv_depth);
    QPsiSymbol r = base;
    for (int i = 1; i < std::abs(n); ++i) r = qsym_mul(ctx, r, base);
    return r;
}

// --- the lambda-th root ------------------------------------------------------

namespace {

// w_k(z) viewed with the explicit power twist: coefficient of z^m becomes
// w_k^{[m]} q^{-n m} as an A0 function of the power variable n.
A0Laurent twist_by_power(const LaurentSeries& w) {
    A0Laurent r;
    r.lo = w.lo;
    for (const auto& [m, v] : w.c) r.c[m] = A0Function::basis(0, -m, v);
    return r;
}

A0Laurent a0l_partial_sum(const Context& ctx, const A0Laurent& f, int l) {
    A0Laurent r;
    r.lo = f.lo;
    for (const auto& [m, v] : f.c) r.c[m] = interpolate_partial_sum(ctx, v, l);
    r.cleanup(ctx.eps);
    return r;
}

} // namespace

QPsiSymbol qsym_root(const Context& ctx, const QPsiSymbol& L, int depth) {
    const Cplx lambda = L.base;
    if (std::abs(lambda) < ctx.eps_generic)
        fail(ErrorKind::ZeroLambda, "root is undefined at degree 0");
    {
        LaurentSeries lead = L.at(0);
        lead.set(0, lead.at(0) - 1.0);
        if (!lead.is_zero(1e-12))
            fail(ErrorKind::Shape, "root requires a monic symbol (unit leading coefficient)");
    }

    // phi[k] = coefficient of D^{-k} in the ordered product
    //          Phi_n = (1 + W^{(1-n)}) ... (1 + W^{(0)}),
    // stored as an A0-valued Laurent series in the power variable n.
    std::vector<A0Laurent> phi(depth + 1);
    phi[0].c[0] = A0Function::constant(Cplx(1, 0));
    std::vector<LaurentSeries> w(depth + 1); // w[0] unused

    for (int k = 1; k <= depth; ++k) {
        // increment of phi_k when a factor (1 + W^{(-n)}) joins on the left:
        //   inc_k(n) = sum_{j=1..k} W_j^{(-n)} . h^{-j} phi_{k-j}(n)
        // the j = k term contains the yet-unknown w_k linearly.
        A0Laurent known_inc;
        for (int j = 1; j < k; ++j) {
            A0Laurent lhs = twist_by_power(w[j]);
            A0Laurent rhs = series_dilate(ctx, phi[k - j], Cplx(-j, 0));
            known_inc = series_add(known_inc, series_mul(lhs, rhs, ctx.eps), ctx.eps);
        }
        A0Laurent known_phi = a0l_partial_sum(ctx, known_inc, 0);

        // target: phi_k(lambda) = h^{-lambda} u_k
        LaurentSeries ytilde = series_dilate(ctx, L.at(-k), -lambda);
        LaurentSeries rhs = series_sub(ytilde, a0l_eval(ctx, known_phi, lambda), ctx.eps);

        // the unknown enters per z-exponent through the geometric sum
        //   g_m = sum_{i=0}^{lambda-1} q^{-i m} = (q^{-lambda m} - 1)/(q^{-m} - 1)
        LaurentSeries wk;
        wk.lo = rhs.lo;
        for (const auto& [m, v] : rhs.c) {
            Cplx g;
            if (m == 0) {
                g = lambda;
            } else {
                g = (ctx.qpow(-lambda * double(m)) - 1.0) / (ctx.qpow(Cplx(-m, 0)) - 1.0);
                if (std::abs(g) < ctx.eps_generic)
                    fail(ErrorKind::NonGeneric, "root: resonant interpolation factor at z^" +
                                                    std::to_string(m));
            }
            wk.c[m] = v / g;
        }
        wk.cleanup(ctx.eps);
        w[k] = wk;
        phi[k] = series_add(known_phi, a0l_partial_sum(ctx, twist_by_power(wk), 0), ctx.eps);
    }

    // M = D (1 + W): the term D . w_k D^{-k} = h(w_k) D^{1-k} sits at offset
    // -k below the leading degree 1.
    QPsiSymbol m;
    m.base = Cplx(1, 0);
    m.klo = -depth;
    m.c[0] = laurent_monomial(0);
    for (int k = 1; k <= depth; ++k) {
        LaurentSeries v = series_dilate(ctx, w[k], Cplx(1, 0));
        if (!(v.is_zero(ctx.eps) && v.exact())) m.c[-k] = v;
    }
    return m;
}

Cplx qsym_hamiltonian(const Context& ctx, const QPsiSymbol& L, int m, int depth) {
    if (m == 0) fail(ErrorKind::Shape, "spectral invariant index must be nonzero");
    QPsiSymbol M = qsym_root(ctx, L, depth);
    QPsiSymbol P = qsym_ipow(ctx, M, m, depth);
    return L.base / double(m) * qsym_tr(ctx, P);
}

QPsiSymbol qsym_dhamiltonian(const Context& ctx, const QPsiSymbol& L, int m, int depth) {
    QPsiSymbol M = qsym_root(ctx, L, depth);
    QPsiSymbol P = qsym_ipow(ctx, M, m, depth);
    return qsym_mul(ctx, P, qsym_inverse(ctx, L, depth));
}

QPsiSymbol qsym_lax_rhs(const Context& ctx, const QPsiSymbol& L, int m, int depth) {
    QPsiSymbol M = qsym_root(ctx, L, depth);
    QPsiSymbol P = qsym_ipow(ctx, M, m, depth);
    QPsiSymbol A = qsym_part(P, Part::PlusZero);
    return qsym_sub(qsym_mul(ctx, A, L), qsym_mul(ctx, L, A));
}

double qsym_dist(const QPsiSymbol& a, const QPsiSymbol& b, int k_from) {
    double d = 0;
    QPsiSymbol diff = qsym_sub(a, b);
    for (const auto& [k, v] : diff.c)
        if (k >= k_from) d = std::max(d, v.norm());
    return d;
}

double qsym_dist_rel(const QPsiSymbol& a, const QPsiSymbol& b, int k_from) {
    double d = 0;
    QPsiSymbol diff = qsym_sub(a, b);
    for (const auto& [k, v] : diff.c) {
        if (k < k_from) continue;
        double scale = std::max({1.0, a.at(k).norm(), b.at(k).norm()});
        d = std::max(d, v.norm() / scale);
    }
    return d;
}

} // namespace qds
