// Quasi-polynomial interpolation functions and their summation calculus.
//
// A0 denotes the algebra of finite sums  f(w) = sum c_{m,n} w^m q^{n w}
// with integer m >= 0, integer n, complex coefficients.  These are the
// functions used to interpolate row-indexed data from matrices of integer
// size to matrices of complex size: a function in A0 is determined by its
// values on enough non-negative integers, and the class is closed under the
// discrete antiderivative ("partial sum") operator, under shifts w -> w + a,
// and under products.
//
// The key operator: given f in A0 and an integer weight l,
//     partial_sum(f, l) = F   with   F(0) = 0,  F(w+1) - F(w) = f(w) q^{l w}.
// On non-negative integers F(N) = sum_{j=0}^{N-1} f(j) q^{l j}, but F is a
// genuine element of A0 (geometric case) or of A0 + {polynomials} (Faulhaber
// case q^{n+l} = 1), so it can be evaluated at complex arguments.  This is
// the engine behind inverting 1 - (shift) and behind traces of complex-size
// matrices.
//
// A0Function2 is the two-variable analogue (tensor square, variables w and t)
// used for matrix entries that depend on both the row index and the size.

#pragma once

#include "qds/core.hpp"
#include "qds/laurent.hpp"

#include <map>
#include <utility>

namespace qds {

// Polynomial degree cap: interpolation is only meaningful while degrees stay
// moderate, and a runaway degree signals a divergent recursion upstream.
inline constexpr int kA0DegreeCap = 32;

struct A0Function {
    // (m, n) -> coefficient of w^m q^{n w}
    std::map<std::pair<int, int>, Cplx> t;

    static A0Function basis(int m, int n, const Cplx& c = Cplx(1, 0)) {
        A0Function f;
        if (m < 0) fail(ErrorKind::Shape, "A0 basis exponent m must be >= 0");
        f.t[{m, n}] = c;
        return f;
    }
    static A0Function constant(const Cplx& c) {
        A0Function f;
        f.t[{0, 0}] = c;
        return f;
    }

    bool is_zero(double eps = 1e-14) const {
        for (const auto& [k, v] : t) if (std::abs(v) > eps) return false;
        return true;
    }
    // Interpolation degree of w^m q^{n w} is m + |n|.
    int deg() const {
        int d = -1;
        for (const auto& [k, v] : t) d = std::max(d, k.first + std::abs(k.second));
        return d;
    }
    int poly_deg() const {
        int d = 0;
        for (const auto& [k, v] : t) d = std::max(d, k.first);
        return d;
    }
    double norm() const {
        double n = 0;
        for (const auto& [k, v] : t) n = std::max(n, std::abs(v));
        return n;
    }
    // Drops exact zeros by default.  Small coefficients are kept: identities
    // among these functions cancel across keys of wildly different magnitudes
    // once the exponentials are evaluated, and absolute trimming severs the
    // partner of a term that is tiny as a coefficient but huge at a sample
    // point.
    void cleanup(double eps = 0.0) {
        for (auto it = t.begin(); it != t.end();)
            it = (std::abs(it->second) <= eps) ? t.erase(it) : std::next(it);
    }
};

A0Function operator+(const A0Function& a, const A0Function& b);
A0Function operator-(const A0Function& a, const A0Function& b);
A0Function operator*(const A0Function& a, const A0Function& b);
A0Function operator*(const A0Function& a, const Cplx& s);
inline A0Function operator*(const Cplx& s, const A0Function& a) { return a * s; }

inline bool value_small(const A0Function& v, double eps) { return v.is_zero(eps); }
inline double value_norm(const A0Function& v) { return v.norm(); }

Cplx a0_eval(const Context& ctx, const A0Function& f, const Cplx& w);

// f(w + a) as an element of A0 (a may be complex; for integer a this is the
// exact in-basis shift).
A0Function a0_shift(const Context& ctx, const A0Function& f, const Cplx& a);

// The discrete antiderivative described above.
A0Function interpolate_partial_sum(const Context& ctx, const A0Function& f, int l);

// --- two-variable version ---------------------------------------------------

struct A0Key2 {
    int mw, nw, mt, nt;
    auto operator<=>(const A0Key2&) const = default;
};

struct A0Function2 {
    std::map<A0Key2, Cplx> t;

    static A0Function2 from_w(const A0Function& f);
    static A0Function2 from_t(const A0Function& f);
    static A0Function2 constant(const Cplx& c) { return from_w(A0Function::constant(c)); }

    bool is_zero(double eps = 1e-14) const {
        for (const auto& [k, v] : t) if (std::abs(v) > eps) return false;
        return true;
    }
    double norm() const {
        double n = 0;
        for (const auto& [k, v] : t) n = std::max(n, std::abs(v));
        return n;
    }
    // Exact zeros only, for the same reason as the one-variable cleanup.
    void cleanup(double eps = 0.0) {
        for (auto it = t.begin(); it != t.end();)
            it = (std::abs(it->second) <= eps) ? t.erase(it) : std::next(it);
    }
};

A0Function2 operator+(const A0Function2& a, const A0Function2& b);
A0Function2 operator-(const A0Function2& a, const A0Function2& b);
A0Function2 operator*(const A0Function2& a, const A0Function2& b);
A0Function2 operator*(const A0Function2& a, const Cplx& s);
inline A0Function2 operator*(const Cplx& s, const A0Function2& a) { return a * s; }

inline bool value_small(const A0Function2& v, double eps) { return v.is_zero(eps); }
inline double value_norm(const A0Function2& v) { return v.norm(); }

Cplx a0_eval2(const Context& ctx, const A0Function2& f, const Cplx& w, const Cplx& t);
// Sum of absolute term magnitudes at the same point: the natural scale against
// which a computed value of a0_eval2 should be judged.  Interpolants routinely
// contain keys q^{n t} with n < 0 whose values at moderate integers are
// astronomically large yet cancel; a residual is only meaningful relative to
// this scale.
double a0_eval2_scale(const Context& ctx, const A0Function2& f, const Cplx& w, const Cplx& t);
// Sum of basis-function magnitudes at the point (coefficients ignored).
double a0_eval2_basis(const Context& ctx, const A0Function2& f, const Cplx& w, const Cplx& t);
// Double-precision noise floor for a residual evaluated at the same point;
// values below it carry no information about whether the function vanishes.
double a0_eval2_floor(const Context& ctx, const A0Function2& f, const Cplx& w, const Cplx& t);
// Partial evaluations: fix one slot, return an A0 function of the other.
A0Function a0_eval_w(const Context& ctx, const A0Function2& f, const Cplx& w);
A0Function a0_eval_t(const Context& ctx, const A0Function2& f, const Cplx& t);

// Substitutions inside A0 (tensor) x A0:
//   w := w + a                        (a complex)
A0Function2 a0_shift_w(const Context& ctx, const A0Function2& f, const Cplx& a);
//   t := w + a, result a function of w
A0Function a0_diag_eval(const Context& ctx, const A0Function2& f, const Cplx& a);
//   w := t + a, result a function of t
A0Function a0_subst_w_from_t(const Context& ctx, const A0Function2& f, const Cplx& a);

// Partial sum over the first slot with the second slot as spectator.
A0Function2 interpolate_partial_sum_w(const Context& ctx, const A0Function2& f, int l);

// Laurent series in z whose coefficients are interpolation functions.
using A0Laurent = BandSeries<A0Function>;
using A0Laurent2 = BandSeries<A0Function2>;

LaurentSeries a0l_eval(const Context& ctx, const A0Laurent& f, const Cplx& w);
A0Laurent a0l2_eval_w(const Context& ctx, const A0Laurent2& f, const Cplx& w);
A0Laurent2 a0l2_shift_w(const Context& ctx, const A0Laurent2& f, const Cplx& a);
A0Laurent a0l2_eval_t(const Context& ctx, const A0Laurent2& f, const Cplx& t);
A0Laurent a0l_from_laurent(const LaurentSeries& f); // constants in w

} // namespace qds
