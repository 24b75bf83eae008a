// Matrices of complex size: semi-infinite arrays A_{ij}(t, z) whose
// diagonals are interpolation functions A^{(d)}(w, t, z) of the row variable
// w, valid for rows beyond a finite regularity degree; rows 0..reg are stored
// explicitly.  Evaluation at t = lambda produces the "size lambda" matrix,
// the interpolated trace sums the main diagonal up to the formal row count t,
// and for integer t = m the decoupling condition makes the top-left m-block
// close under multiplication.

#pragma once

#include "qds/a0.hpp"
#include "qds/loopfin.hpp"

namespace qds {

struct GlqMatrix {
    int reg = 0;       // rows 0..reg are explicit; interpolants govern rows > reg
    int dmax = kPosInf; // diagonals above dmax are unknown (truncation cutoff)
    std::map<int, A0Laurent2> diag;            // diagonal index d -> interpolant
    std::vector<std::map<int, A0Laurent>> exc; // exc[i][j]: entry (i,j) as function of t

    GlqMatrix() : exc(1) {}
    explicit GlqMatrix(int r) : reg(r), exc(r + 1) {}

    // lowest structurally present diagonal (kPosInf when empty)
    int band_bottom() const;
    // highest structurally present diagonal (kNegInf when empty)
    int band_top() const;
    double norm() const;
};

// entry (i, j) as a function of t; absent structure reads as exact zero,
// diagonals beyond dmax must be avoided by the caller
A0Laurent glq_entry(const Context& ctx, const GlqMatrix& a, int i, int j);

GlqMatrix glq_zero(int reg = 0);
GlqMatrix glq_identity();
GlqMatrix glq_shift(); // the subdiagonal of ones

GlqMatrix glq_add(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b);
GlqMatrix glq_sub(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b);
GlqMatrix glq_scale(const GlqMatrix& a, const Cplx& s);
GlqMatrix glq_mul(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b);
GlqMatrix glq_dilate(const Context& ctx, const GlqMatrix& a, const Cplx& power);

// raise the explicit-row threshold (lossless: new rows come from interpolants)
GlqMatrix glq_with_reg(const Context& ctx, const GlqMatrix& a, int reg);

// interpolated trace: sum of the main diagonal over rows 0..t-1 as a
// function of t, explicit rows corrected exactly
A0Laurent tr_glq(const Context& ctx, const GlqMatrix& a);
LaurentSeries tr_at(const Context& ctx, const GlqMatrix& a, const Cplx& lambda);

// top-left block of the evaluation at t = lambda
LoopMatrix glq_evaluate(const Context& ctx, const GlqMatrix& a, const Cplx& lambda, int block);
LoopMatrix glq_restrict(const Context& ctx, const GlqMatrix& a, int m);

// decoupling condition: entries with reg < i < m <= j vanish at t = m;
// returns the worst residual over sample sizes m in (reg, reg+samples]
double glq_condition3_residual(const Context& ctx, const GlqMatrix& a, int samples = 5);

// interpolant zeros of a single diagonal: A^{(d)}(w, w+l) = 0 for l = 1..d,
// sampled at integer sizes, each value judged against its own term scale
double glq_diag_zero_residual(const Context& ctx, const GlqMatrix& a, int d);

// the vanishing factor prod_{l=1..d} (q^t - q^{w+l}) that realizes the
// decoupling condition on diagonal d
A0Function2 condition3_factor(const Context& ctx, int d);

// random homogeneous element supported on diagonal k (t-aware interpolant,
// decoupling factor attached for k > 0, explicit rows filled consistently)
// pdeg caps the polynomial degree of the generated keys in w and t; higher
// degrees are legitimate but condition the deep reduction recursion badly
GlqMatrix random_glq_homogeneous(const Context& ctx, Rng& rng, int k, int reg, int zlo, int zhi,
                                 double amp = 1.0, int pdeg = 1);

double glq_dist(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b);

} // namespace qds
