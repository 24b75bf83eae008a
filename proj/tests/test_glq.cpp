// Matrices of complex size: banded arrays whose diagonals are interpolated
// by two-variable A0 data (row index w, size parameter t) above finitely
// many explicit rows.  Exercises entry lookup, the ring operations, the
// interpolated trace and its cyclicity, integer-size restriction as a
// homomorphism, and the vanishing gates that make upper diagonals land
// inside finite blocks.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qds/glq.hpp"

using namespace qds;

namespace {

double entry_dist(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b, int i, int j) {
    return series_sub(glq_entry(ctx, a, i, j), glq_entry(ctx, b, i, j), 0).norm();
}

// brute-force product entry (i,j) straight from the definition
A0Laurent product_entry(const Context& ctx, const GlqMatrix& a, const GlqMatrix& b,
                        int i, int j, int kmax) {
    A0Laurent s;
    for (int k = 0; k <= kmax; ++k)
        s = series_add(s, series_mul(glq_entry(ctx, a, i, k), glq_entry(ctx, b, k, j), ctx.eps),
                       ctx.eps);
    return s;
}

} // namespace

TEST_CASE("entry layout of the identity and shift generators") {
    Context cc;
    GlqMatrix id = glq_identity();
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            double expect = (i == j) ? 1.0 : 0.0;
            CHECK(std::abs(a0l_eval(cc, glq_entry(cc, id, i, j), cc.lambda).at(0) - expect) <
                  1e-14);
        }
    GlqMatrix sh = glq_shift();
    CHECK(glq_entry(cc, sh, 0, 0).is_zero());
    for (int i = 1; i < 6; ++i) {
        CHECK(std::abs(a0l_eval(cc, glq_entry(cc, sh, i, i - 1), cc.lambda).at(0) - 1.0) < 1e-14);
        CHECK(glq_entry(cc, sh, i, i).is_zero());
    }
    CHECK(sh.band_bottom() == -1);
    CHECK(sh.band_top() == -1);
}

TEST_CASE("interpolated trace counts the identity and sums geometric diagonals") {
    Context cc;
    // Tr(1)(t) = t
    A0Laurent tr = tr_glq(cc, glq_identity());
    CHECK(std::abs(a0l_eval(cc, tr, cc.lambda).at(0) - cc.lambda) < 1e-13);
    CHECK(std::abs(a0l_eval(cc, tr, Cplx(7, 0)).at(0) - Cplx(7, 0)) < 1e-13);

    // diagonal interpolant q^w: Tr(t) = (q^t - 1)/(q - 1)
    GlqMatrix g;
    g.diag[0].set(0, A0Function2::from_w(A0Function::basis(0, 1)));
    g.exc[0][0].set(0, A0Function::constant(Cplx(1, 0))); // row 0 agrees with q^0
    Cplx want = (cc.qpow(cc.lambda) - Cplx(1, 0)) / (cc.q - Cplx(1, 0));
    CHECK(std::abs(a0l_eval(cc, tr_glq(cc, g), cc.lambda).at(0) - want) < 1e-13);

    // an overridden explicit row shifts the trace by (row value - interpolant)
    GlqMatrix h = glq_identity();
    h.exc[0][0] = A0Laurent{};
    h.exc[0][0].set(0, A0Function::basis(0, 1)); // entry (0,0) = q^t
    Cplx want2 = cc.lambda - Cplx(1, 0) + cc.qpow(cc.lambda);
    CHECK(std::abs(a0l_eval(cc, tr_glq(cc, h), cc.lambda).at(0) - want2) < 1e-13);
}

TEST_CASE("interpolated trace matches finite block sums at integer size") {
    Context cc;
    Rng rng = Rng::derive(11, "glq-trace-int");
    GlqMatrix a = random_glq_homogeneous(cc, rng, 0, 2, -1, 1);
    for (int n : {4, 7}) {
        LaurentSeries got = tr_at(cc, a, Cplx(n, 0));
        LaurentSeries want;
        for (int i = 0; i < n; ++i)
            want = series_add(want, a0l_eval(cc, glq_entry(cc, a, i, i), Cplx(n, 0)));
        CHECK(laurent_dist(got, want) < 1e-12 * std::max(1.0, want.norm()));
        // and through the evaluated block
        LoopMatrix block = glq_restrict(cc, a, n);
        LaurentSeries tr_block;
        for (int i = 0; i < n; ++i) tr_block = series_add(tr_block, block.at(i, i));
        CHECK(laurent_dist(got, tr_block) < 1e-12 * std::max(1.0, want.norm()));
    }
}

TEST_CASE("multiplication agrees with entrywise convolution") {
    Context cc;
    Rng rng = Rng::derive(23, "glq-mul");
    GlqMatrix a = glq_add(cc, random_glq_homogeneous(cc, rng, 1, 1, -1, 1),
                          random_glq_homogeneous(cc, rng, -1, 1, -1, 1));
    GlqMatrix b = glq_add(cc, random_glq_homogeneous(cc, rng, -1, 0, -1, 1),
                          random_glq_homogeneous(cc, rng, 0, 2, -1, 1));
    GlqMatrix ab = glq_mul(cc, a, b);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j) {
            A0Laurent want = product_entry(cc, a, b, i, j, 12);
            double d = series_sub(glq_entry(cc, ab, i, j), want, 0).norm();
            CHECK(d < 1e-11 * std::max(1.0, want.norm()));
        }
    // the product respects the structural band
    CHECK(ab.band_bottom() >= -2);
    CHECK(ab.band_top() <= 1);
}

TEST_CASE("shift generator acts by index translation") {
    Context cc;
    Rng rng = Rng::derive(31, "glq-shift-act");
    GlqMatrix a = glq_add(cc, random_glq_homogeneous(cc, rng, 1, 2, -1, 1),
                          random_glq_homogeneous(cc, rng, 0, 2, -1, 1));
    GlqMatrix sh = glq_shift();
    GlqMatrix left = glq_mul(cc, sh, a);   // (shift A)_{ij} = A_{i-1,j}
    GlqMatrix right = glq_mul(cc, a, sh);  // (A shift)_{ij} = A_{i,j+1}
    for (int j = 0; j <= 5; ++j) CHECK(glq_entry(cc, left, 0, j).is_zero(1e-14));
    for (int i = 1; i <= 5; ++i)
        for (int j = 0; j <= 5; ++j) {
            double d = series_sub(glq_entry(cc, left, i, j), glq_entry(cc, a, i - 1, j), 0).norm();
            CHECK(d < 1e-13);
        }
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j <= 5; ++j) {
            double d = series_sub(glq_entry(cc, right, i, j), glq_entry(cc, a, i, j + 1), 0).norm();
            CHECK(d < 1e-13);
        }
    // shift^2 lives two diagonals down with explicit top rows
    GlqMatrix sh2 = glq_mul(cc, sh, sh);
    CHECK(std::abs(a0l_eval(cc, glq_entry(cc, sh2, 2, 0), cc.lambda).at(0) - 1.0) < 1e-14);
    CHECK(glq_entry(cc, sh2, 1, 0).is_zero(1e-14));
}

TEST_CASE("traces of opposite-degree products commute") {
    Context cc;
    Rng rng = Rng::derive(47, "glq-cyclic");
    for (int k = 0; k <= 3; ++k) {
        GlqMatrix a = random_glq_homogeneous(cc, rng, k, 2, -2, 2);
        GlqMatrix b = random_glq_homogeneous(cc, rng, -k, 2, -2, 2);
        A0Laurent tr_ab = tr_glq(cc, glq_mul(cc, a, b));
        A0Laurent tr_ba = tr_glq(cc, glq_mul(cc, b, a));
        double scale = std::max(1.0, tr_ab.norm());
        CHECK(series_sub(tr_ab, tr_ba, 0).norm() < 1e-10 * scale);
        // and sampled at generic complex sizes
        for (const Cplx& t : {cc.lambda, Cplx(0.7, 0.3), Cplx(-1.2, 0.1)}) {
            LaurentSeries u = a0l_eval(cc, tr_ab, t);
            LaurentSeries v = a0l_eval(cc, tr_ba, t);
            CHECK(laurent_dist(u, v) < 1e-9 * std::max(1.0, u.norm()));
        }
    }
}

TEST_CASE("integer-size evaluation is multiplicative on enlarged blocks") {
    Context cc;
    Rng rng = Rng::derive(59, "glq-block-hom");
    GlqMatrix a = glq_add(cc, random_glq_homogeneous(cc, rng, 2, 1, -1, 1),
                          random_glq_homogeneous(cc, rng, -1, 1, -1, 1));
    GlqMatrix b = glq_add(cc, random_glq_homogeneous(cc, rng, 1, 2, -1, 1),
                          random_glq_homogeneous(cc, rng, -2, 2, -1, 1));
    GlqMatrix ab = glq_mul(cc, a, b);
    int block = 4, pad = 2; // pad by the top band width of a
    LoopMatrix big_a = glq_evaluate(cc, a, cc.lambda, block + pad);
    LoopMatrix big_b = glq_evaluate(cc, b, cc.lambda, block + pad);
    LoopMatrix big = mat_mul(cc, big_a, big_b);
    LoopMatrix got = glq_evaluate(cc, ab, cc.lambda, block);
    double scale = std::max(1.0, big.norm());
    for (int i = 0; i < block; ++i)
        for (int j = 0; j < block; ++j)
            CHECK(laurent_dist(got.at(i, j), big.at(i, j)) < 1e-10 * scale);
}

TEST_CASE("degree gates enforce the integer vanishing constraints") {
    Context cc;
    Rng rng = Rng::derive(61, "glq-gate");
    for (int k : {1, 2, 3}) {
        GlqMatrix a = random_glq_homogeneous(cc, rng, k, 1, -1, 1);
        CHECK(glq_condition3_residual(cc, a) < 1e-10);
        CHECK(glq_diag_zero_residual(cc, a, k) < 1e-12);
        // stripping the gate breaks the constraint
        GlqMatrix bare = glq_zero(0);
        A0Laurent2 f;
        f.set(0, A0Function2::from_w(A0Function::basis(0, 1)) + A0Function2::constant(Cplx(1, 0)));
        bare.diag[k] = f;
        CHECK(glq_condition3_residual(cc, glq_add(cc, a, bare)) > 1e-6);
    }
    // the gate itself vanishes on the first k shifted diagonals
    for (int k : {1, 2, 3})
        for (int l = 1; l <= k; ++l)
            CHECK(a0_diag_eval(cc, condition3_factor(cc, k), Cplx(l, 0)).norm() < 1e-13);
}

TEST_CASE("dilation twists each loop exponent") {
    Context cc;
    Rng rng = Rng::derive(67, "glq-dilate");
    GlqMatrix a = random_glq_homogeneous(cc, rng, 0, 1, -2, 2);
    GlqMatrix da = glq_dilate(cc, a, Cplx(1, 0));
    for (int i = 0; i <= 4; ++i) {
        A0Laurent want = series_dilate(cc, glq_entry(cc, a, i, i), Cplx(1, 0));
        CHECK(series_sub(glq_entry(cc, da, i, i), want, 0).norm() < 1e-13);
    }
}

TEST_CASE("window bookkeeping truncates products honestly") {
    Context cc;
    Rng rng = Rng::derive(71, "glq-window");
    GlqMatrix a = random_glq_homogeneous(cc, rng, 1, 1, 0, 0);
    a.dmax = 1; // nothing known above the gated diagonal
    GlqMatrix b = random_glq_homogeneous(cc, rng, -1, 1, 0, 0);
    GlqMatrix ab = glq_mul(cc, a, b);
    CHECK(ab.dmax == 0);
    bool threw = false;
    try {
        glq_evaluate(cc, ab, cc.lambda, 3);
    } catch (const Error& e) {
        threw = (e.kind == ErrorKind::Truncation);
    }
    CHECK(threw);
    // the known part still evaluates
    LoopMatrix low = glq_evaluate(cc, glq_with_reg(cc, ab, 2), cc.lambda, 1);
    CHECK(low.n == 1);
}

TEST_CASE("sums and regularity promotions preserve entries") {
    Context cc;
    Rng rng = Rng::derive(83, "glq-sum");
    GlqMatrix a = random_glq_homogeneous(cc, rng, 1, 0, -1, 1);
    GlqMatrix b = random_glq_homogeneous(cc, rng, 1, 2, -1, 1);
    GlqMatrix back = glq_sub(cc, glq_add(cc, a, b), b);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j <= 6; ++j) CHECK(entry_dist(cc, back, a, i, j) < 1e-12);
    GlqMatrix pro = glq_with_reg(cc, a, 3);
    CHECK(pro.reg == 3);
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j <= 6; ++j) CHECK(entry_dist(cc, pro, a, i, j) < 1e-13);
}

TEST_CASE("constant-diagonal interpolants evaluate to scalar blocks") {
    Context cc;
    GlqMatrix a;
    a.diag[0].set(0, A0Function2::from_t(A0Function::basis(1, 0))); // entry (w,w) = t
    a.exc[0][0].set(0, A0Function::basis(1, 0));
    LoopMatrix m = glq_evaluate(cc, a, cc.lambda, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Cplx want = (i == j) ? cc.lambda : Cplx(0, 0);
            CHECK(std::abs(m.at(i, j).at(0) - want) < 1e-13);
        }
}
