// Formal Laurent series in z with a one-sided truncation window.
//
// Elements of C((z^-1)) have a finite top degree, so coefficients above the
// largest stored exponent are known zeros; coefficients below the window
// bound `lo` are unknown (lost to truncation).  `lo = kNegInf` marks exact
// data.  Reading an unknown coefficient raises Truncation; range bookkeeping
// follows the usual convolution rule
//
//     lo(a*b) = max(lo_a + hi_b, lo_b + hi_a),
//
// where hi is the structural top degree (lo-1 for a series whose known part
// is identically zero).  The container is generic over the coefficient type:
// plain complex numbers here, interpolation functions of one or two variables
// in a0.hpp.  Coefficients with magnitude <= eps are dropped on cleanup.

#pragma once

#include "qds/core.hpp"
#include "qds/rng.hpp"

#include <map>

namespace qds {

inline bool value_small(const Cplx& v, double eps) { return std::abs(v) <= eps; }
inline double value_norm(const Cplx& v) { return std::abs(v); }

template <class V>
struct BandSeries {
    std::map<int, V> c; // exponent -> coefficient, only non-negligible entries
    int lo = kNegInf;   // exponents below this are unknown

    bool known(int m) const { return m >= lo; }
    bool exact() const { return lo == kNegInf; }

    // Structural top degree: above it all coefficients are known zeros.
    int top() const {
        if (!c.empty()) return c.rbegin()->first;
        return lo == kNegInf ? kNegInf : lo - 1;
    }

    const V& at(int m) const {
        if (m < lo)
            fail(ErrorKind::Truncation,
                 "coefficient of z^" + std::to_string(m) + " lies below the known window");
        static const V zero{};
        auto it = c.find(m);
        return it == c.end() ? zero : it->second;
    }

    void set(int m, V v, double eps = 1e-14) {
        if (m < lo) lo = m;
        if (value_small(v, eps)) c.erase(m); else c[m] = std::move(v);
    }

    void cleanup(double eps = 1e-14) {
        for (auto it = c.begin(); it != c.end();)
            it = value_small(it->second, eps) ? c.erase(it) : std::next(it);
    }

    // Forget everything below exponent m.
    void truncate_below(int m) {
        if (m <= lo) return;
        lo = m;
        c.erase(c.begin(), c.lower_bound(m));
    }

    double norm() const {
        double n = 0;
        for (const auto& [m, v] : c) n = std::max(n, value_norm(v));
        return n;
    }

    bool is_zero(double eps = 1e-14) const {
        for (const auto& [m, v] : c) if (!value_small(v, eps)) return false;
        return true;
    }
};

namespace detail {
inline int add_deg(int a, int b) { // saturating at -inf
    if (a <= kNegInf || b <= kNegInf) return kNegInf;
    return a + b;
}
} // namespace detail

template <class V>
BandSeries<V> series_add(const BandSeries<V>& a, const BandSeries<V>& b, double eps = 1e-14) {
    BandSeries<V> r;
    r.lo = std::max(a.lo, b.lo);
    for (const auto& [m, v] : a.c) if (m >= r.lo) r.c[m] = v;
    for (const auto& [m, v] : b.c) {
        if (m < r.lo) continue;
        auto it = r.c.find(m);
        if (it == r.c.end()) r.c[m] = v; else it->second = it->second + v;
    }
    r.cleanup(eps);
    return r;
}

template <class V, class S>
BandSeries<V> series_scale(const BandSeries<V>& a, const S& s, double eps = 1e-14) {
    BandSeries<V> r;
    r.lo = a.lo;
    for (const auto& [m, v] : a.c) r.c[m] = v * s;
    r.cleanup(eps);
    return r;
}

template <class V>
BandSeries<V> series_sub(const BandSeries<V>& a, const BandSeries<V>& b, double eps = 1e-14) {
    return series_add(a, series_scale(b, Cplx(-1.0, 0.0), 0.0), eps);
}

template <class V>
BandSeries<V> series_mul(const BandSeries<V>& a, const BandSeries<V>& b, double eps = 1e-14) {
    BandSeries<V> r;
    r.lo = std::max(detail::add_deg(a.lo, b.top()), detail::add_deg(b.lo, a.top()));
    for (const auto& [ma, va] : a.c)
        for (const auto& [mb, vb] : b.c) {
            int m = ma + mb;
            if (m < r.lo) continue;
            V prod = va * vb;
            auto it = r.c.find(m);
            if (it == r.c.end()) r.c[m] = std::move(prod); else it->second = it->second + prod;
        }
    r.cleanup(eps);
    return r;
}

// Dilation z -> q^a z multiplies the coefficient of z^m by q^{a m}.
template <class V>
BandSeries<V> series_dilate(const Context& ctx, const BandSeries<V>& a, const Cplx& power) {
    BandSeries<V> r;
    r.lo = a.lo;
    for (const auto& [m, v] : a.c) r.c[m] = v * ctx.qpow(power * double(m));
    r.cleanup(ctx.eps);
    return r;
}

using LaurentSeries = BandSeries<Cplx>;

inline LaurentSeries laurent_monomial(int m, const Cplx& v = Cplx(1, 0)) {
    LaurentSeries r;
    r.set(m, v);
    return r;
}

// res a = coefficient of z^0; zero when the window proves it, error when the
// window cannot see it.
inline Cplx res(const LaurentSeries& a) {
    if (a.lo > 0) fail(ErrorKind::Truncation, "residue lies below the known window");
    return a.at(0);
}

// <a,b> = res(a b) = sum_m a_m b_{-m}.
inline Cplx inner(const LaurentSeries& a, const LaurentSeries& b, double eps = 1e-14) {
    return res(series_mul(a, b, eps));
}

inline Cplx laurent_eval(const LaurentSeries& a, const Cplx& z) {
    Cplx s = 0;
    for (const auto& [m, v] : a.c) s += v * std::pow(z, m);
    return s;
}

inline double laurent_dist(const LaurentSeries& a, const LaurentSeries& b) {
    return series_sub(a, b, 0.0).norm();
}

inline LaurentSeries random_laurent(Rng& rng, int mlo, int mhi) {
    LaurentSeries r;
    for (int m = mlo; m <= mhi; ++m) r.set(m, rng.next_cplx());
    return r;
}

} // namespace qds
