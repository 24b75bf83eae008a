// Diagonal fields of complex size: a single interpolant f(w, z) stands for
// the semi-infinite diagonal diag(f(0,z), f(1,z), ...), and every operation
// below acts on the interpolant exactly.  This is the calculus of the shift
// ŝ, the operator A = 1 - ĥŝ with its anchored inverse, the projection onto
// the twisted-constant subspace U, and the universal diagonal r-matrix.
//
// Subspace dictionary (all predicates on the interpolant):
//   V^lambda   : f(0, z) = 0
//   V_1^lambda : f(0, z) = f(lambda, z) = 0
//   U          : f(w, z) = F0(q^{-w} z), i.e. the z^m coefficient is a
//                multiple of q^{-m w}

#pragma once

#include "qds/a0.hpp"
#include "qds/loopfin.hpp"

namespace qds {

struct DiagField {
    A0Laurent f; // z-exponent -> A0 function of the row variable w
};

struct UniversalRMatrixSpec {
    Cplx lambda{2.3, -0.7};
    DeltaSpec delta;
};

DiagField df_add(const DiagField& a, const DiagField& b);
DiagField df_sub(const DiagField& a, const DiagField& b);
DiagField df_scale(const DiagField& a, const Cplx& s);
DiagField df_mul(const DiagField& a, const DiagField& b); // entrywise
DiagField df_dilate(const Context& ctx, const DiagField& a, const Cplx& power);

// row evaluation (w may be any complex number)
LaurentSeries df_eval(const Context& ctx, const DiagField& a, const Cplx& w);

// s: diag(f_0, f_1, ...) -> diag(f_1, f_2, ...)
DiagField df_shift(const Context& ctx, const DiagField& a);
DiagField df_apply_A(const Context& ctx, const DiagField& a);

// Anchored inverse: (A^{-1}F)_n = -q^{-nm} sum_{j<n} q^{jm} F_j^{[m]} per
// z-exponent m, realized by the interpolated partial sum; lands in V^lambda.
DiagField df_apply_A_inverse(const Context& ctx, const DiagField& a);

// U-field diag(F0(z), F0(q^{-1}z), ...) from its generator
DiagField df_from_generator(const LaurentSeries& f0);

// generator of the U-component: (P_U F)_0 = -(1/lambda) (A^{-1}F)(lambda, q^lambda z)
LaurentSeries df_proj_U_generator(const Context& ctx, const DiagField& a, const Cplx& lambda);
DiagField df_proj_U(const Context& ctx, const DiagField& a, const Cplx& lambda);

// r0 = -1/2 + A^{-1} + (Bbar + lambda/2) P_U, where Bbar + lambda/2 acts on
// the U-generator by the multiplier lambda (1/(1 - q^{lambda m}) + delta_m)
// for m != 0 and by lambda/2 at m = 0.
DiagField df_r0(const Context& ctx, const DiagField& a, const UniversalRMatrixSpec& spec);

// regularized pairing: interpolation of sum_{i<lambda} <a_i, b_i>
Cplx df_pair(const Context& ctx, const DiagField& a, const DiagField& b, const Cplx& lambda);

DiagMatrixFin df_restrict(const Context& ctx, const DiagField& a, int n);

bool df_in_U(const DiagField& a, double eps = 1e-12);

// distance in coefficient space (the A0 representation is unique)
double df_dist(const DiagField& a, const DiagField& b);

} // namespace qds
