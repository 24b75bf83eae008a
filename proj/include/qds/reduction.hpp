// Drinfeld-Sokolov reduction over matrices of complex size.
//
// The input is an element of the affine slice: unit subdiagonal, nothing
// below it, arbitrary band data on the diagonals d >= 0.  The output is a
// unipotent upper-triangular gauge T and companion entries r_1, ..., r_D
// (Laurent series in z whose coefficients interpolate in the size
// parameter t) with
//
//     h(T) . L = C . T        (h = loop dilation z -> qz)
//
// where C carries r_{d+1} in row 0, column d, a unit subdiagonal, and
// nothing else.  Each band level l determines r_{l+1} and the diagonal
// l+1 of T through a first-order recursion in the row index; the
// interpolated partial-sum calculus solves it in closed form, pinned by
// the requirement that T stays inside the finite block at every integer
// size.  Restricting to an integer size t = n therefore reproduces the
// classical finite reduction of the evaluated n x n block.

#pragma once

#include "qds/glq.hpp"
#include "qds/psido.hpp"

#include <vector>

namespace qds {

struct UniversalReduction {
    int dmax = 0;             // companion entries r_1..r_dmax are known
    std::vector<A0Laurent> r; // r[l] = r_{l+1}, a function of t per z-exponent
    GlqMatrix t;              // the gauge; diagonals 0..dmax known, unipotent
};

// structural membership in the affine slice (unit subdiagonal, band >= -1)
bool is_yq(const Context& ctx, const GlqMatrix& l, double tol = 1e-9);

// companion matrix with row-0 entries r; diagonals above r.size()-1 unknown
GlqMatrix companion_glq(const Context& ctx, const std::vector<A0Laurent>& r);

UniversalReduction reduce_universal(const Context& ctx, const GlqMatrix& l, int dmax);

// residual norms of h(T) L - C T per diagonal; entry i holds diagonal i-1,
// running over the verifiable range d = -1 .. dmax-1
std::vector<double> gauge_residuals(const Context& ctx, const GlqMatrix& l,
                                    const UniversalReduction& red);

// scalar q-difference symbol at size lambda:
//     D^lambda - r_1(lambda) D^{lambda-1} - ... - r_D(lambda) D^{lambda-D}
QPsiSymbol reduce_at(const Context& ctx, const UniversalReduction& red, const Cplx& lambda);

// random slice element: unit subdiagonal plus gated diagonals 0..dtop
GlqMatrix random_yq(const Context& ctx, Rng& rng, int reg, int dtop, int zlo, int zhi,
                    double amp = 1.0, int pdeg = 1);

} // namespace qds
