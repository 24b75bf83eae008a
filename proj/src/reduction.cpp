#include "qds/reduction.hpp"

#include <cstdio>
#include <map>
#include <set>

namespace qds {

namespace {

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// The reduction assumes its input can be evaluated at every integer size:
// entries sticking out of the t x t block must vanish at t.  Sample the
// constraint over the explicit rows and the first few interpolated ones.
void require_integer_vanishing(const Context& ctx, const GlqMatrix& l, int dmax) {
    double scale = std::max(1.0, l.norm());
    int dtop = std::min({l.band_top(), l.dmax, dmax});
    for (int m = 1; m <= l.reg + 5; ++m)
        for (int i = 0; i < m; ++i)
            for (int j = m; j <= i + dtop; ++j) {
                double v = a0l_eval(ctx, glq_entry(ctx, l, i, j), Cplx(m, 0)).norm();
                if (v > 1e-8 * scale)
                    fail(ErrorKind::Shape,
                         "input entries do not vanish at the integer sizes they outgrow");
            }
}

} // namespace

bool is_yq(const Context& ctx, const GlqMatrix& l, double tol) {
    if (l.band_bottom() < -1) return false;
    auto it = l.diag.find(-1);
    if (it == l.diag.end()) return false;
    A0Laurent2 one;
    one.set(0, A0Function2::constant(Cplx(1, 0)));
    if (series_sub(it->second, one, 0).norm() > tol) return false;
    A0Laurent unit;
    unit.set(0, A0Function::constant(Cplx(1, 0)));
    for (int i = 1; i <= l.reg; ++i)
        if (series_sub(glq_entry(ctx, l, i, i - 1), unit, 0).norm() > tol) return false;
    return true;
}

GlqMatrix companion_glq(const Context& ctx, const std::vector<A0Laurent>& r) {
    (void)ctx;
    GlqMatrix c(0);
    c.diag[-1].set(0, A0Function2::constant(Cplx(1, 0)));
    c.dmax = (int)r.size() - 1;
    for (int d = 0; d < (int)r.size(); ++d)
        if (!r[d].is_zero() || !r[d].exact()) c.exc[0][d] = r[d];
    return c;
}

UniversalReduction reduce_universal(const Context& ctx, const GlqMatrix& l, int dmax) {
    if (dmax < 1) fail(ErrorKind::Shape, "at least one companion entry must be requested");
    if (!is_yq(ctx, l))
        fail(ErrorKind::Shape, "reduction input must carry a unit subdiagonal and no band below it");
    if (l.dmax < dmax - 1)
        fail(ErrorKind::Truncation, "input band cutoff too low for the requested companion depth");
    require_integer_vanishing(ctx, l, dmax);

    const int R = l.reg;            // explicit rows of the input
    const int regT = std::max(R - 1, 0);

    UniversalReduction red;
    red.dmax = dmax;
    red.r.resize(dmax);
    red.t = glq_with_reg(ctx, glq_identity(), regT);
    red.t.dmax = dmax;

    // The recursion expands and cancels large intermediates; trimming a small
    // coefficient severs a cancellation partner that the consistency checks
    // later need at sample points where its basis function is huge, so no
    // threshold is applied inside this pipeline (exact zeros still drop).

    for (int lev = 0; lev < dmax; ++lev) {
        // Level lev of h(T) L = C T.  With S = diagonal lev+1 of T (the only
        // unknown), the rows decouple into  S_{i-1} - q^m S_i = F_i  per
        // z-exponent m, where F collects the already-known terms.
        A0Laurent2 f2; // interpolant of F for rows beyond the explicit block
        if (auto it = l.diag.find(lev); it != l.diag.end()) f2 = it->second;
        for (int j = 1; j <= lev; ++j) {
            auto tj = red.t.diag.find(j);
            auto lj = l.diag.find(lev - j);
            if (tj == red.t.diag.end() || lj == l.diag.end()) continue;
            f2 = series_add(f2,
                            series_mul(series_dilate(ctx, tj->second, Cplx(1, 0)),
                                       a0l2_shift_w(ctx, lj->second, Cplx(j, 0)), 0.0),
                            0.0);
        }
        std::vector<A0Laurent> fexc(R + 1);
        for (int i = 0; i <= R; ++i) {
            A0Laurent s = glq_entry(ctx, l, i, i + lev);
            for (int j = 1; j <= lev; ++j) {
                A0Laurent tij = glq_entry(ctx, red.t, i, i + j);
                if (tij.is_zero(0.0) && tij.exact()) continue;
                s = series_add(s,
                               series_mul(series_dilate(ctx, tij, Cplx(1, 0)),
                                          glq_entry(ctx, l, i + j, i + lev), 0.0),
                               0.0);
            }
            fexc[i] = std::move(s);
        }
        // row 0 of C T carries the earlier companion entries
        for (int d = 0; d < lev; ++d) {
            A0Laurent tdl = glq_entry(ctx, red.t, d, lev);
            if (tdl.is_zero(0.0) && tdl.exact()) continue;
            fexc[0] = series_sub(fexc[0], series_mul(red.r[d], tdl, 0.0), 0.0);
        }

        // window of the combined data
        int wlo = f2.lo;
        for (const auto& f : fexc) wlo = std::max(wlo, f.lo);

        // Per z-exponent m: H interpolates the partial sums of q^{wm} F(w),
        // the companion entry is H at w := t - lev (the sum over all rows of
        // the size-t block), and the new diagonal of T is
        //     S(w,t) = q^{-(w+1)m} (u(t) - H(w+1,t) - corrections).
        A0Laurent u;
        u.lo = wlo;
        A0Laurent2 s2;
        s2.lo = wlo;
        std::set<int> ms;
        for (const auto& [m, v] : f2.c) ms.insert(m);
        for (const auto& f : fexc)
            for (const auto& [m, v] : f.c) ms.insert(m);
        for (int m : ms) {
            if (m < wlo) continue;
            const A0Function2& fm = f2.at(m);
            A0Function2 h = interpolate_partial_sum_w(ctx, fm, m);
            A0Function corr;
            for (int i = 0; i <= R; ++i)
                corr = corr +
                       (fexc[i].at(m) - a0_eval_w(ctx, fm, Cplx(i, 0))) * ctx.qpow(i * m);
            A0Function ucoef = a0_subst_w_from_t(ctx, h, Cplx(-lev, 0)) + corr;
            u.set(m, ucoef, 0.0);
            A0Function2 body = A0Function2::from_t(ucoef) - a0_shift_w(ctx, h, Cplx(1, 0)) -
                               A0Function2::from_t(corr);
            A0Function2 tw = A0Function2::from_w(A0Function::basis(0, -m, ctx.qpow(-m)));
            s2.set(m, tw * body, 0.0);
        }

        // explicit rows of the new diagonal, chained down from row 0
        std::vector<A0Laurent> srow(regT + 1);
        for (int i = 0; i <= regT; ++i) {
            const A0Laurent& prev = (i == 0) ? u : srow[i - 1];
            A0Laurent cur;
            cur.lo = std::max(prev.lo, fexc[i].lo);
            std::set<int> mm;
            for (const auto& [m, v] : prev.c) mm.insert(m);
            for (const auto& [m, v] : fexc[i].c) mm.insert(m);
            for (int m : mm) {
                if (m < cur.lo) continue;
                cur.set(m, (prev.at(m) - fexc[i].at(m)) * ctx.qpow(-m), 0.0);
            }
            srow[i] = std::move(cur);
        }

        // the chain one row past the explicit block must meet the interpolant
        A0Laurent probe;
        if (R >= 1) {
            probe.lo = std::max(srow[regT].lo, fexc[R].lo);
            std::set<int> mm;
            for (const auto& [m, v] : srow[regT].c) mm.insert(m);
            for (const auto& [m, v] : fexc[R].c) mm.insert(m);
            for (int m : mm) {
                if (m < probe.lo) continue;
                probe.set(m, (srow[regT].at(m) - fexc[R].at(m)) * ctx.qpow(-m), 0.0);
            }
        } else {
            probe = srow[0];
        }
        A0Laurent interp_r = a0l2_eval_w(ctx, s2, Cplx(R, 0));
        double cerr = series_sub(probe, interp_r, 0).norm();
        if (cerr > 1e-9 * std::max(1.0, interp_r.norm()))
            fail(ErrorKind::Consistency,
                 "gauge diagonal interpolant disagrees with its explicit chain");

        red.r[lev] = std::move(u);
        red.t.diag[lev + 1] = std::move(s2);
        for (int i = 0; i <= regT; ++i)
            if (!srow[i].is_zero(0.0) || !srow[i].exact())
                red.t.exc[i][i + lev + 1] = std::move(srow[i]);

        // the new diagonal must vanish at every integer size it outgrows, so
        // that the gauge lands inside every finite block; violations mean a
        // malformed input or exhausted numerical headroom.  The interpolants
        // carry terms that are individually huge at these points and cancel,
        // so each sampled value is judged against its own term scale, and a
        // point is only decisive when the claim fits inside double precision.
        for (int k = 1; k <= lev + 1; ++k)
            for (const auto& [m, fm] : red.t.diag[lev + 1].c)
                for (int n = 0; n <= R + lev + 3; ++n) {
                    double gv = std::abs(a0_eval2(ctx, fm, Cplx(n, 0), Cplx(n + k, 0)));
                    double scale = std::max(1.0, a0_eval2_scale(ctx, fm, Cplx(n, 0), Cplx(n + k, 0)));
                    double floor = a0_eval2_floor(ctx, fm, Cplx(n, 0), Cplx(n + k, 0));
                    if (gv > std::max(1e-9 * scale, floor))
                        fail(ErrorKind::Consistency,
                             "consistency zero failed at gauge diagonal " +
                                 std::to_string(lev + 1) + ", shift " + std::to_string(k) +
                                 ", z-exponent " + std::to_string(m) + " (residual " +
                                 fmt_sci(gv / scale) + ")");
                }
    }
    return red;
}

std::vector<double> gauge_residuals(const Context& ctx, const GlqMatrix& l,
                                    const UniversalReduction& red) {
    GlqMatrix lhs = glq_mul(ctx, glq_dilate(ctx, red.t, Cplx(1, 0)), l);
    GlqMatrix rhs = glq_mul(ctx, companion_glq(ctx, red.r), red.t);
    GlqMatrix diff = glq_sub(ctx, lhs, rhs);
    int top = std::min(diff.dmax, red.dmax - 1);
    std::vector<double> out;
    for (int d = -1; d <= top; ++d) {
        // the two sides grow with depth, so judge each diagonal of the
        // difference against the size of what was subtracted
        double scale = 1.0;
        if (auto it = lhs.diag.find(d); it != lhs.diag.end())
            scale = std::max(scale, it->second.norm());
        if (auto it = rhs.diag.find(d); it != rhs.diag.end())
            scale = std::max(scale, it->second.norm());
        double v = 0;
        if (auto it = diff.diag.find(d); it != diff.diag.end()) v = it->second.norm();
        for (int i = 0; i <= diff.reg; ++i) {
            if (auto jt = diff.exc[i].find(i + d); jt != diff.exc[i].end())
                v = std::max(v, jt->second.norm());
            if (i <= lhs.reg)
                if (auto jt = lhs.exc[i].find(i + d); jt != lhs.exc[i].end())
                    scale = std::max(scale, jt->second.norm());
            if (i <= rhs.reg)
                if (auto jt = rhs.exc[i].find(i + d); jt != rhs.exc[i].end())
                    scale = std::max(scale, jt->second.norm());
        }
        out.push_back(v / scale);
    }
    return out;
}

QPsiSymbol reduce_at(const Context& ctx, const UniversalReduction& red, const Cplx& lambda) {
    std::vector<LaurentSeries> u(red.dmax);
    for (int i = 0; i < red.dmax; ++i)
        u[i] = series_scale(a0l_eval(ctx, red.r[i], lambda), Cplx(-1, 0));
    return qsym_from_u(lambda, u);
}

GlqMatrix random_yq(const Context& ctx, Rng& rng, int reg, int dtop, int zlo, int zhi,
                    double amp, int pdeg) {
    GlqMatrix m = glq_shift();
    for (int d = 0; d <= dtop; ++d)
        m = glq_add(ctx, m, random_glq_homogeneous(ctx, rng, d, reg, zlo, zhi, amp, pdeg));
    return m;
}

} // namespace qds
