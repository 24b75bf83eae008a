#include "qds/glq.hpp"

namespace qds {

namespace {

inline int sat_add_hi(int a, int b) { // saturating at +inf
    if (a >= kPosInf || b >= kPosInf) return kPosInf;
    return a + b;
}

} // namespace

int GlqMatrix::band_bottom() const {
    int d = kPosInf;
    if (!diag.empty()) d = diag.begin()->first;
    for (int i = 0; i < (int)exc.size(); ++i)
        for (const auto& [j, v] : exc[i])
            if (!v.is_zero()) d = std::min(d, j - i);
    return d;
}

int GlqMatrix::band_top() const {
    int d = kNegInf;
    if (!diag.empty()) d = diag.rbegin()->first;
    for (int i = 0; i < (int)exc.size(); ++i)
        for (const auto& [j, v] : exc[i])
            if (!v.is_zero()) d = std::max(d, j - i);
    return d;
}

double GlqMatrix::norm() const {
    double n = 0;
    for (const auto& [d, v] : diag) n = std::max(n, v.norm());
    for (const auto& row : exc)
        for (const auto& [j, v] : row) n = std::max(n, v.norm());
    return n;
}

A0Laurent glq_entry(const Context& ctx, const GlqMatrix& a, int i, int j) {
    if (i < 0 || j < 0) return A0Laurent{};
    if (i <= a.reg) {
        auto it = a.exc[i].find(j);
        return it == a.exc[i].end() ? A0Laurent{} : it->second;
    }
    auto it = a.diag.find(j - i);
    if (it == a.diag.end()) return A0Laurent{};
    return a0l2_eval_w(ctx, it->second, Cplx(i, 0));
}

GlqMatrix glq_zero(int reg) { return GlqMatrix(reg); }

GlqMatrix glq_identity() {
    GlqMatrix r;
    r.diag[0].set(0, A0Function2::constant(Cplx(1, 0)));
    r.exc[0][0].set(0, A0Function::constant(Cplx(1, 0)));
    return r;
}

GlqMatrix glq_shift() {
    GlqMatrix r(1);
    r.diag[-1].set(0, A0Function2::constant(Cplx(1, 0)));
    r.exc[1][0].set(0, A0Function::constant(Cplx(1, 0)));
    return r;
}

GlqMatrix glq_with_reg(const Context& ctx, const GlqMatrix& a, int reg) {
    if (reg <= a.reg) return a;
    GlqMatrix r = a;
    r.reg = reg;
    r.exc.resize(reg + 1);
    for (int i = a.reg + 1; i <= reg; ++i)
        for (const auto& [d, f] : a.diag) {
            if (i + d < 0 || d > a.dmax) continue;
            A0Laurent v = a0l2_eval_w(ctx, f, Cplx(i, 0));
            if (!v.is_zero(ctx.eps) || !v.exact()) r.exc[i][i + d] = std::move(v);
        }
    return r;
}

GlqMatrix glq_add(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b) {
    int reg = std::max(a.reg, b.reg);
    GlqMatrix x = glq_with_reg(ctx, a, reg);
    GlqMatrix y = glq_with_reg(ctx, b, reg);
    GlqMatrix r(reg);
    r.dmax = std::min(a.dmax, b.dmax);
    r.diag = x.diag;
    for (const auto& [d, f] : y.diag) {
        auto it = r.diag.find(d);
        if (it == r.diag.end()) r.diag[d] = f;
        else it->second = series_add(it->second, f, ctx.eps);
    }
    for (auto it = r.diag.begin(); it != r.diag.end();)
        it = (it->first > r.dmax) ? r.diag.erase(it) : std::next(it);
    for (int i = 0; i <= reg; ++i) {
        r.exc[i] = x.exc[i];
        for (const auto& [j, v] : y.exc[i]) {
            auto it = r.exc[i].find(j);
            if (it == r.exc[i].end()) r.exc[i][j] = v;
            else it->second = series_add(it->second, v, ctx.eps);
        }
    }
    return r;
}

GlqMatrix glq_scale(const GlqMatrix& a, const Cplx& s) {
    GlqMatrix r = a;
    for (auto& [d, f] : r.diag) f = series_scale(f, s);
    for (auto& row : r.exc)
        for (auto& [j, v] : row) v = series_scale(v, s);
    return r;
}

GlqMatrix glq_sub(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b) {
    return glq_add(ctx, a, glq_scale(b, Cplx(-1, 0)));
}

GlqMatrix glq_mul(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b) {
    int dbA = a.band_bottom(), dbB = b.band_bottom();
    if (dbA >= kPosInf || dbB >= kPosInf) return glq_zero(0);
    int dtA = a.band_top(), dtB = b.band_top();
    int dmaxC = std::min(sat_add_hi(a.dmax, dbB), sat_add_hi(b.dmax, dbA));
    int dbotC = dbA + dbB;
    int dtopC = std::min(dtA + dtB, dmaxC);
    int idbA = a.diag.empty() ? kPosInf : a.diag.begin()->first;
    int reg = std::max(a.reg, 0);
    if (!a.diag.empty()) reg = std::max(reg, b.reg - std::min(idbA, 0));
    reg = std::max(reg, -dbotC);
    GlqMatrix r(reg);
    r.dmax = dmaxC;
    for (int d = dbotC; d <= dtopC; ++d) {
        A0Laurent2 s;
        for (const auto& [d1, f1] : a.diag) {
            if (d1 > a.dmax) continue;
            auto it = b.diag.find(d - d1);
            if (it == b.diag.end() || d - d1 > b.dmax) continue;
            s = series_add(s, series_mul(f1, a0l2_shift_w(ctx, it->second, Cplx(d1, 0)), ctx.eps),
                           ctx.eps);
        }
        if (!s.is_zero(ctx.eps) || !s.exact()) r.diag[d] = std::move(s);
    }
    int capA = std::min(dtA, a.dmax);
    for (int i = 0; i <= reg; ++i) {
        for (int j = std::max(0, i + dbotC); j <= i + dtopC; ++j) {
            A0Laurent s;
            int klo = std::max({0, i + dbA, j - std::min(dtB, b.dmax)});
            int khi = std::min(i + capA, j - dbB);
            for (int k = klo; k <= khi; ++k) {
                A0Laurent ea = glq_entry(ctx, a, i, k);
                if (ea.is_zero(ctx.eps) && ea.exact()) continue;
                A0Laurent eb = glq_entry(ctx, b, k, j);
                if (eb.is_zero(ctx.eps) && eb.exact()) continue;
                s = series_add(s, series_mul(ea, eb, ctx.eps), ctx.eps);
            }
            if (!s.is_zero(ctx.eps) || !s.exact()) r.exc[i][j] = std::move(s);
        }
    }
    return r;
}

GlqMatrix glq_dilate(const Context& ctx, const GlqMatrix& a, const Cplx& power) {
    GlqMatrix r = a;
    for (auto& [d, f] : r.diag) f = series_dilate(ctx, f, power);
    for (auto& row : r.exc)
        for (auto& [j, v] : row) v = series_dilate(ctx, v, power);
    return r;
}

A0Laurent tr_glq(const Context& ctx, const GlqMatrix& a) {
    A0Laurent tr;
    auto d0 = a.diag.find(0);
    if (d0 != a.diag.end()) {
        tr.lo = d0->second.lo;
        for (const auto& [m, f] : d0->second.c) {
            A0Function2 sum = interpolate_partial_sum_w(ctx, f, 0);
            tr.set(m, a0_subst_w_from_t(ctx, sum, Cplx(0, 0)), ctx.eps);
        }
    }
    for (int i = 0; i <= a.reg; ++i) {
        A0Laurent exact = glq_entry(ctx, a, i, i);
        tr = series_add(tr, exact, ctx.eps);
        if (d0 != a.diag.end())
            tr = series_sub(tr, a0l2_eval_w(ctx, d0->second, Cplx(i, 0)), ctx.eps);
    }
    return tr;
}

LaurentSeries tr_at(const Context& ctx, const GlqMatrix& a, const Cplx& lambda) {
    return a0l_eval(ctx, tr_glq(ctx, a), lambda);
}

LoopMatrix glq_evaluate(const Context& ctx, const GlqMatrix& a, const Cplx& lambda, int block) {
    LoopMatrix r(block);
    for (int i = 0; i < block; ++i)
        for (int j = 0; j < block; ++j) {
            if (j - i > a.dmax)
                fail(ErrorKind::Truncation, "entry beyond the diagonal cutoff requested");
            r.at(i, j) = a0l_eval(ctx, glq_entry(ctx, a, i, j), lambda);
        }
    return r;
}

LoopMatrix glq_restrict(const Context& ctx, const GlqMatrix& a, int m) {
    return glq_evaluate(ctx, a, Cplx(m, 0), m);
}

double glq_condition3_residual(const Context& ctx, const GlqMatrix& a, int samples) {
    double worst = 0;
    int dtop = std::min(a.band_top(), a.dmax);
    for (int m = a.reg + 1; m <= a.reg + samples; ++m)
        for (int i = a.reg + 1; i < m; ++i)
            for (int j = m; j <= i + dtop; ++j)
                worst = std::max(worst,
                                 a0l_eval(ctx, glq_entry(ctx, a, i, j), Cplx(m, 0)).norm());
    return worst;
}

double glq_diag_zero_residual(const Context& ctx, const GlqMatrix& a, int d) {
    auto it = a.diag.find(d);
    if (it == a.diag.end()) return 0;
    // Sample the zeros at integer sizes and judge every value against its own
    // term scale: the interpolants carry q^{nt} keys with n < 0 whose values
    // are individually huge at these points and cancel.  Points whose noise
    // floor exceeds the value carry no information and do not count.
    double worst = 0;
    for (int l = 1; l <= d; ++l)
        for (const auto& [m, f] : it->second.c)
            for (int n = 0; n <= a.reg + d + 3; ++n) {
                double gv = std::abs(a0_eval2(ctx, f, Cplx(n, 0), Cplx(n + l, 0)));
                double scale = std::max(1.0, a0_eval2_scale(ctx, f, Cplx(n, 0), Cplx(n + l, 0)));
                double floor = a0_eval2_floor(ctx, f, Cplx(n, 0), Cplx(n + l, 0));
                if (gv <= floor) continue;
                worst = std::max(worst, gv / scale);
            }
    return worst;
}

A0Function2 condition3_factor(const Context& ctx, int d) {
    A0Function2 r = A0Function2::constant(Cplx(1, 0));
    for (int l = 1; l <= d; ++l) {
        A0Function2 qt = A0Function2::from_t(A0Function::basis(0, 1));
        A0Function2 qw = A0Function2::from_w(A0Function::basis(0, 1)) * ctx.qpow(l);
        r = r * (qt - qw);
    }
    return r;
}

namespace {

A0Function random_a0_t(Rng& rng, int pdeg, int terms = 2) {
    A0Function f;
    for (int k = 0; k < terms; ++k)
        f = f + A0Function::basis(rng.next_int(0, pdeg), rng.next_int(-1, 1), rng.next_cplx());
    return f;
}

A0Function2 random_a02(Rng& rng, int pdeg, int terms = 2) {
    A0Function2 f;
    for (int k = 0; k < terms; ++k) {
        A0Function2 term =
            A0Function2::from_w(A0Function::basis(rng.next_int(0, pdeg), rng.next_int(-1, 1))) *
            A0Function2::from_t(A0Function::basis(rng.next_int(0, pdeg), rng.next_int(-1, 1)));
        f = f + term * rng.next_cplx();
    }
    return f;
}

} // namespace

GlqMatrix random_glq_homogeneous(const Context& ctx, Rng& rng, int k, int reg, int zlo, int zhi,
                                 double amp, int pdeg) {
    if (reg < -k) reg = -k; // condition 1 needs the band to start at -reg
    GlqMatrix r(std::max(reg, 0));
    A0Function2 gate =
        k > 0 ? condition3_factor(ctx, k) : A0Function2::constant(Cplx(1, 0));
    A0Laurent2 f;
    for (int m = zlo; m <= zhi; ++m)
        f.set(m, gate * random_a02(rng, pdeg) * Cplx(amp, 0), ctx.eps);
    r.diag[k] = std::move(f);
    for (int i = 0; i <= r.reg; ++i) {
        if (i + k < 0) continue;
        // same gate as the interpolant, evaluated at this row: the entry
        // must vanish at the integer sizes i < t <= i + k
        A0Function row_gate = k > 0 ? a0_eval_w(ctx, gate, Cplx(i, 0))
                                    : A0Function::constant(Cplx(1, 0));
        A0Laurent v;
        for (int m = zlo; m <= zhi; ++m)
            v.set(m, random_a0_t(rng, pdeg) * row_gate * Cplx(amp, 0), ctx.eps);
        r.exc[i][i + k] = std::move(v);
    }
    return r;
}

double glq_dist(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b) {
    return glq_sub(ctx, a, b).norm();
}

} // namespace qds
