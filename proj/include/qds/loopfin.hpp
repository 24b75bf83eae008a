// Finite-size loop algebra: n x n matrices over Laurent series in z, the
// companion ("Frobenius") cross-section of the first-row gauge action, and
// the admissible diagonal r-matrix built from the Cayley transform of the
// twisted shift h-tau.
//
// Conventions: h dilates z in every entry; tau cyclically shifts diagonal
// entries, diag(f_0,...,f_{n-1}) -> diag(f_1,...,f_{n-1},f_0).  Diagonal
// fields decompose in the eigenbasis E_{m,a} = z^m diag(1, w^a, w^{2a}, ...),
// w = exp(2 pi i / n), where h tau acts by q^m w^a.  The subspace U_n
// consists of fields diag(f0, h^{-1} f0, ..., h^{-(n-1)} f0).

#pragma once

#include "qds/laurent.hpp"

#include <vector>

namespace qds {

// Odd multiplier on z-exponents: delta(0) = 0, delta(-m) = -delta(m).
struct DeltaSpec {
    std::map<int, Cplx> d;

    Cplx at(int m) const {
        auto it = d.find(m);
        return it == d.end() ? Cplx(0, 0) : it->second;
    }
    void set(int m, const Cplx& v) {
        if (m == 0) {
            if (std::abs(v) > 1e-14) fail(ErrorKind::Shape, "delta multiplier must vanish at 0");
            return;
        }
        d[m] = v;
        d[-m] = -v;
    }
    bool empty() const { return d.empty(); }
};

struct LoopMatrix {
    int n = 0;
    std::vector<LaurentSeries> e; // row-major

    LoopMatrix() = default;
    explicit LoopMatrix(int nn) : n(nn), e(nn * nn) {}
    LaurentSeries& at(int i, int j) { return e[i * n + j]; }
    const LaurentSeries& at(int i, int j) const { return e[i * n + j]; }
    double norm() const {
        double d = 0;
        for (const auto& v : e) d = std::max(d, v.norm());
        return d;
    }
};

struct DiagMatrixFin {
    int n = 0;
    std::vector<LaurentSeries> d;

    DiagMatrixFin() = default;
    explicit DiagMatrixFin(int nn) : n(nn), d(nn) {}
    double norm() const {
        double x = 0;
        for (const auto& v : d) x = std::max(x, v.norm());
        return x;
    }
};

LoopMatrix mat_identity(int n);
LoopMatrix mat_add(const LoopMatrix& a, const LoopMatrix& b);
LoopMatrix mat_sub(const LoopMatrix& a, const LoopMatrix& b);
LoopMatrix mat_scale(const LoopMatrix& a, const Cplx& s);
LoopMatrix mat_mul(const Context& ctx, const LoopMatrix& a, const LoopMatrix& b);
LoopMatrix mat_dilate(const Context& ctx, const LoopMatrix& a, const Cplx& power);
LoopMatrix mat_diag(const DiagMatrixFin& d);

// strict upper / diagonal / strict lower parts
LoopMatrix mat_upper(const LoopMatrix& a);
LoopMatrix mat_lower(const LoopMatrix& a);
DiagMatrixFin mat_diag_part(const LoopMatrix& a);

// <A,B> = integral dz/z Tr(A B)
Cplx mat_inner(const Context& ctx, const LoopMatrix& a, const LoopMatrix& b);
Cplx diag_inner(const Context& ctx, const DiagMatrixFin& a, const DiagMatrixFin& b);

// inverse of a unipotent upper-triangular matrix (exact, nilpotent Neumann)
LoopMatrix mat_inverse_unipotent(const Context& ctx, const LoopMatrix& t);

// gauge action  L -> (h T) L T^{-1}
LoopMatrix mat_gauge(const Context& ctx, const LoopMatrix& t, const LoopMatrix& l);

// Hessenberg-type source shape: unit subdiagonal, zero below it.
bool is_reduction_input(const LoopMatrix& l, double tol = 1e-12);

// Companion form: row 0 = (r_1, ..., r_n), unit subdiagonal.
struct CompanionFin {
    int n = 0;
    std::vector<LaurentSeries> r; // r[k] = entry (0, k), k = 0..n-1
};

LoopMatrix companion_matrix(const Context& ctx, const CompanionFin& c);

// Gauge a source-shaped matrix to companion form with a unipotent
// upper-triangular T, solved diagonal by diagonal.
struct FiniteReduction {
    CompanionFin companion;
    LoopMatrix t;
};
FiniteReduction reduce_finite(const Context& ctx, const LoopMatrix& l);

// --- diagonal r-matrix -------------------------------------------------------

// coefficients in the eigenbasis E_{m,a}: c[a] is a Laurent series in z whose
// z^m coefficient multiplies E_{m,a}
std::vector<LaurentSeries> diag_to_eigen(const Context& ctx, const DiagMatrixFin& f);
DiagMatrixFin diag_from_eigen(const Context& ctx, int n, const std::vector<LaurentSeries>& c);

// orthogonal projection onto U_n: returns the generator f0
LaurentSeries proj_U_fin(const Context& ctx, const DiagMatrixFin& f);
DiagMatrixFin u_field_fin(const Context& ctx, int n, const LaurentSeries& f0);

// r0 = 1/2 (1 + h tau)(1 - h tau)^{-1} on constants-free diagonals
//      + n Delta P_{U_n}
DiagMatrixFin r0_fin(const Context& ctx, const DiagMatrixFin& f, const DeltaSpec& delta);

// Cayley multiplier (1/2)(1+x)/(1-x)
inline Cplx cayley_half(const Cplx& x) { return 0.5 * (1.0 + x) / (1.0 - x); }

double mat_dist(const LoopMatrix& a, const LoopMatrix& b);

} // namespace qds
