// Quadratic Poisson brackets for q-difference operators of complex degree
// and their finite-size matrix counterparts.
//
// Scalar side.  On the space of symbols L = D^lambda + u_1 D^{lambda-1} + ...
// a bracket is specified by a 2x2 kernel of operators acting on the pair of
// gradients (nabla phi, nabla' phi) = (L dphi, dphi L):
//
//   {phi,psi} = < (R + a P0) nabla phi + b P0 nabla' phi , nabla  psi >
//             - < c P0 nabla phi + (R + d P0) nabla' phi , nabla' psi >,
//
// where R = (P_+ - P_-)/2 and a, b, c, d act on the D^0 component by a
// multiplier per z-exponent.  Skew-symmetry of the bracket corresponds to
// a_m = -a_{-m}, d_m = -d_{-m}, b_m = c_{-m}; the spectral invariants
// H_k = (lambda/k) tr L^{k/lambda} are in involution iff a + b = c + d.
//
// The distinguished kernel family (mu = degree of L, delta an odd multiplier)
//
//   a_m = cayley(Q) + delta_m          b_m = -(1/(1-Q) + delta_m) Q
//   c_m = (Q/(1-Q) + delta_m) Q^{-1}   d_m = -a_m,        Q = q^{mu m},
//
// (zero at m = 0) is skew, well defined on the quotient model, and has
// involutivity defect  a_m + b_m - c_m - d_m = delta_m (2 - Q - Q^{-1}),
// so delta = 0 gives the unique involutive bracket.
//
// Matrix side.  For a first-row coordinate functional on the companion
// cross-section the differential is normalized to lie in the lower-triangular
// (plus diagonal) loop algebra and is pinned by two conditions: its first
// column is minus the coordinate kernel, and the field
// Z = h^{-1}(L dphi) - dphi L is upper triangular (the gauge-invariance
// constraint).  The bracket uses the r-matrix r = (P_+ - P_-)/2 + r0 P_0 with
// the diagonal block r0 either the finite Cayley operator or the complex-size
// operator evaluated on the embedded block; both give the same bracket, and
// the scalar kernel family above reproduces it at mu = n through the quotient
// map.  The diagonal-twist part of the bracket (the delta term) is computable
// separately along two routes, as a projected diagonal pairing and as a 2x2
// scalar kernel.

#pragma once

#include "qds/loopfin.hpp"
#include "qds/psido.hpp"

#include <map>
#include <vector>

namespace qds {

// --- bracket kernels ---------------------------------------------------------

struct QuadOperatorSpec {
    // When family = true the multipliers come from the closed-form family
    // above with parameters (mu, delta); otherwise from the explicit maps.
    bool family = true;
    Cplx mu{0, 0};
    DeltaSpec delta;
    std::map<int, Cplx> ma, mb, mc, md;

    Cplx a(const Context& ctx, int m) const;
    Cplx b(const Context& ctx, int m) const;
    Cplx c(const Context& ctx, int m) const;
    Cplx d(const Context& ctx, int m) const;

    // the involutive bracket of degree mu (delta = 0)
    static QuadOperatorSpec involutive(const Cplx& mu);
    // the quotient bracket with a diagonal twist
    static QuadOperatorSpec twisted(const Cplx& mu, DeltaSpec delta);
    // explicit multipliers; validates the skew/pairing symmetry
    static QuadOperatorSpec raw(std::map<int, Cplx> a, std::map<int, Cplx> b,
                                std::map<int, Cplx> c, std::map<int, Cplx> d);
};

// |a_m + b_m - c_m - d_m| for every exponent in the window
std::map<int, double> involutivity_residual(const Context& ctx, const QuadOperatorSpec& spec,
                                            int mlo, int mhi);

// --- scalar functionals and gradients ----------------------------------------

// Functionals of L = D^lambda + u_1 D^{lambda-1} + ...: either the z^j
// Laurent coefficient of u_i (i >= 1; i = 0 probes the frozen leading
// coefficient), or a spectral invariant H_m.
struct FunctionalSpec {
    enum class Kind { Coefficient, Spectral };
    Kind kind = Kind::Coefficient;
    int i = 1, j = 0;
    int m = 1;

    static FunctionalSpec coefficient(int i, int j) {
        FunctionalSpec f;
        f.kind = Kind::Coefficient;
        f.i = i;
        f.j = j;
        return f;
    }
    static FunctionalSpec spectral(int m) {
        FunctionalSpec f;
        f.kind = Kind::Spectral;
        f.m = m;
        return f;
    }
};

Cplx functional_value(const Context& ctx, const QPsiSymbol& l, const FunctionalSpec& f,
                      int depth);
// dphi as a symbol of degree base -lambda (coefficient functionals are the
// single term D^{i-lambda} z^{-j}; spectral ones M^m L^{-1})
QPsiSymbol functional_differential(const Context& ctx, const QPsiSymbol& l,
                                   const FunctionalSpec& f, int depth);

struct GradientPair {
    QPsiSymbol dphi;
    QPsiSymbol nabla;  // L dphi
    QPsiSymbol nablap; // dphi L
};

GradientPair gradient_from_differential(const Context& ctx, const QPsiSymbol& l,
                                        const QPsiSymbol& dphi);
GradientPair gradient_scalar(const Context& ctx, const QPsiSymbol& l, const FunctionalSpec& f,
                             int depth);

// the 2x2 kernel evaluated on precomputed gradients
Cplx bracket_scalar(const Context& ctx, const QuadOperatorSpec& spec, const GradientPair& gphi,
                    const GradientPair& gpsi);
Cplx bracket_scalar(const Context& ctx, const QPsiSymbol& l, const QuadOperatorSpec& spec,
                    const FunctionalSpec& phi, const FunctionalSpec& psi, int depth);

// --- matrix side --------------------------------------------------------------

struct MatGradientPair {
    LoopMatrix dphi;
    LoopMatrix nabla;  // L dphi
    LoopMatrix nablap; // dphi L
};

// Differential of the z^j coefficient of the coordinate u_i = -(first row
// entry i-1), normalized as described in the header comment.  The companion
// matrix fixes the recursion  M_{w,k+1} = h^{-1} M_{w-1,k} - M_{w,0} r_k.
LoopMatrix mat_coordinate_differential(const Context& ctx, const CompanionFin& c, int i, int j);
MatGradientPair mat_gradient(const Context& ctx, const LoopMatrix& l, const LoopMatrix& dphi);

LoopMatrix mat_Z(const Context& ctx, const MatGradientPair& g);    // h^{-1} nabla - nabla'
LoopMatrix mat_Zbar(const Context& ctx, const MatGradientPair& g); // h^{-1} nabla + nabla'

// r-matrix action (P_+ - P_-)/2 + r0 P_0 with the finite diagonal block
LoopMatrix mat_r_apply(const Context& ctx, const LoopMatrix& z, const DeltaSpec& delta);

// {phi,psi} = <Z_phi, Zbar_psi/2 - r Z_psi>
Cplx bracket_matrix(const Context& ctx, const MatGradientPair& gphi, const MatGradientPair& gpsi,
                    const DeltaSpec& delta);
// the same bracket through the 2x2 r-matrix kernel; independent code path
Cplx bracket_matrix_kernel(const Context& ctx, const MatGradientPair& gphi,
                           const MatGradientPair& gpsi, const DeltaSpec& delta);

// The complex-size diagonal r-matrix evaluated on the embedded n x n block:
// per z-exponent m, with S = sum_j q^{jm} F_j and row partial sums P_w,
//   (r0 F)_w = -F_w/2 - q^{-mw} P_w + mult_m (S/n) q^{-mw},
// where mult_m = n (1/(1-q^{nm}) + delta_m) for m != 0 and n/2 at m = 0.
// Agrees with the finite Cayley operator r0_fin on all of the block.
DiagMatrixFin r0_universal_restricted(const Context& ctx, const DiagMatrixFin& f,
                                      const DeltaSpec& delta);
// e117 with the restricted complex-size r0 in place of the finite one
Cplx bracket_matrix_restricted(const Context& ctx, const MatGradientPair& gphi,
                               const MatGradientPair& gpsi, const DeltaSpec& delta);

// --- diagonal-twist contribution, two routes ----------------------------------

// the diagonal field diag(h^{-1} P0 nabla phi, 0, ..., 0, -P0 nabla' phi)
DiagMatrixFin twist_diag_field(const Context& ctx, int n, const GradientPair& g);
// <n delta P_U Z0_phi, Z0_psi> via the finite projection onto U_n
Cplx jdelta_matrix(const Context& ctx, int n, const GradientPair& gphi, const GradientPair& gpsi,
                   const DeltaSpec& delta);
// the scalar 2x2 kernel (delta, -delta h^n; delta h^{-n}, -delta) on P0 parts
Cplx jdelta_scalar(const Context& ctx, int n, const GradientPair& gphi, const GradientPair& gpsi,
                   const DeltaSpec& delta);

// --- quotient equivalence ------------------------------------------------------

// For random points of the degree-n model and random coordinate functionals,
// evaluates the bracket (a) on the matrix side with the finite r-matrix,
// (b) on the matrix side with the restricted complex-size r-matrix, and
// (c) with the scalar kernel family at mu = n, and reports the worst
// pairwise discrepancies.
struct QuotientEquivalenceReport {
    int trials = 0;
    double max_matrix_vs_scalar = 0;     // (a) vs (c)
    double max_finite_vs_restricted = 0; // (a) vs (b)
    double max_value = 0;                // largest bracket magnitude seen
};

QuotientEquivalenceReport quotient_equivalence_check(const Context& ctx, int n,
                                                     const DeltaSpec& delta, int trials,
                                                     uint64_t seed);

} // namespace qds
