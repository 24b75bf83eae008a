// q-pseudodifference symbols of complex degree.
//
// A symbol is a finite-or-truncated sum  A = sum_k a_k(z) D^{base+k}  where D
// is the dilation operator (D f)(z) = f(qz) and `base` may be any complex
// number; k runs over integers ("offsets"), downward.  Multiplication follows
// D^s a(z) = a(q^s z) D^s, so the right factor's coefficients are dilated by
// the degree of the left factor acting on them.  Offsets below `klo` are
// unknown (truncated tails); the same window rule as for Laurent series
// applies in the offset direction, and the z-window rule applies inside each
// coefficient.
//
// The non-commutative residue tr A = res a_{-base}(z) vanishes by fiat on
// non-integer-degree symbols; on integer-degree symbols it is the usual
// Adler-style trace and satisfies tr(AB) = tr(BA).
//
// root(L) produces the degree-1 symbol M with M^lambda = L, in the sense of
// the interpolation calculus: the coefficients of the ordered products
// M^n = D^n (1 + W^(1-n)) ... (1 + W^(0)) depend on n through A0 functions,
// and W is solved so that the value at n = lambda reproduces L.

#pragma once

#include "qds/a0.hpp"
#include "qds/laurent.hpp"

#include <map>
#include <vector>

namespace qds {

struct QPsiSymbol {
    Cplx base{0, 0};
    std::map<int, LaurentSeries> c; // offset -> coefficient of D^{base+offset}
    int klo = kNegInf;              // offsets below this are unknown

    bool known(int k) const { return k >= klo; }
    int ktop() const {
        if (!c.empty()) return c.rbegin()->first;
        return klo == kNegInf ? kNegInf : klo - 1;
    }
    const LaurentSeries& at(int k) const {
        if (k < klo)
            fail(ErrorKind::Truncation,
                 "symbol coefficient at offset " + std::to_string(k) + " is truncated");
        static const LaurentSeries zero{};
        auto it = c.find(k);
        return it == c.end() ? zero : it->second;
    }
    void set(int k, LaurentSeries v) {
        if (k < klo) klo = k;
        if (v.is_zero() && v.exact()) c.erase(k); else c[k] = std::move(v);
    }
    void truncate_offsets_below(int k) {
        if (k <= klo) return;
        klo = k;
        c.erase(c.begin(), c.lower_bound(k));
    }
    double norm() const {
        double n = 0;
        for (const auto& [k, v] : c) n = std::max(n, v.norm());
        return n;
    }
    bool integer_base(double tol = 1e-9) const {
        return std::abs(base.imag()) <= tol &&
               std::abs(base.real() - std::round(base.real())) <= tol;
    }
    int base_int() const { return int(std::round(base.real())); }
};

// D^a as a symbol.
QPsiSymbol qsym_power_of_D(const Cplx& a);
QPsiSymbol qsym_one();
// a(z) D^{base+k}
QPsiSymbol qsym_term(const Cplx& base, int k, LaurentSeries a);
// L = D^lambda + u_1 D^{lambda-1} + ... + u_n D^{lambda-n}
QPsiSymbol qsym_from_u(const Cplx& lambda, const std::vector<LaurentSeries>& u);

QPsiSymbol qsym_add(const QPsiSymbol& a, const QPsiSymbol& b);
QPsiSymbol qsym_sub(const QPsiSymbol& a, const QPsiSymbol& b);
QPsiSymbol qsym_scale(const QPsiSymbol& a, const Cplx& s);
QPsiSymbol qsym_mul(const Context& ctx, const QPsiSymbol& a, const QPsiSymbol& b);
// whole-symbol dilation h^s: dilate every coefficient, degrees untouched
QPsiSymbol qsym_dilate(const Context& ctx, const QPsiSymbol& a, const Cplx& s);
// left/right multiplication by a plain series
QPsiSymbol qsym_lmul_series(const Context& ctx, const LaurentSeries& f, const QPsiSymbol& a);
QPsiSymbol qsym_rmul_series(const Context& ctx, const QPsiSymbol& a, const LaurentSeries& f);

// Reinterpret with a new base differing from a.base by an integer.
QPsiSymbol qsym_rebase(const QPsiSymbol& a, const Cplx& new_base);

Cplx qsym_tr(const Context& ctx, const QPsiSymbol& a);
inline Cplx qsym_inner(const Context& ctx, const QPsiSymbol& a, const QPsiSymbol& b) {
    return qsym_tr(ctx, qsym_mul(ctx, a, b));
}

// Graded projections; the argument must have integer base.
enum class Part { Plus, Zero, Minus, ZeroPrime, PlusZero };
QPsiSymbol qsym_part(const QPsiSymbol& a, Part p);
// R = (P_+ - P_-)/2
QPsiSymbol qsym_R(const QPsiSymbol& a);

// Neumann inverse; requires the leading coefficient to be a single monomial.
// Offsets of the result are correct down to depth-1 below its top.
QPsiSymbol qsym_inverse(const Context& ctx, const QPsiSymbol& a, int depth);

// Integer power via repeated multiplication (negative via qsym_inverse).
QPsiSymbol qsym_ipow(const Context& ctx, const QPsiSymbol& a, int n, int inv_depth);

// M with "M^lambda = L": L must be monic of base lambda (unit leading
// coefficient), lambda generic.  depth = number of sub-leading coefficients.
QPsiSymbol qsym_root(const Context& ctx, const QPsiSymbol& L, int depth);

// Spectral invariants H_m = (lambda/m) tr M^m and their differentials
// dH_m = M^m L^{-1} (degree m - lambda).
Cplx qsym_hamiltonian(const Context& ctx, const QPsiSymbol& L, int m, int depth);
QPsiSymbol qsym_dhamiltonian(const Context& ctx, const QPsiSymbol& L, int m, int depth);

// Generalized Lax flow right-hand side  [ (M^m)_{>=0}, L ].
QPsiSymbol qsym_lax_rhs(const Context& ctx, const QPsiSymbol& L, int m, int depth);

double qsym_dist(const QPsiSymbol& a, const QPsiSymbol& b, int k_from);
// per-offset relative distance: coefficients deep below the leading term grow
// like q^{-km}, so absolute comparison there only measures double precision
double qsym_dist_rel(const QPsiSymbol& a, const QPsiSymbol& b, int k_from);

} // namespace qds
