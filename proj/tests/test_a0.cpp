// Interpolation calculus: closed-form partial sums against brute force.
//
// The brute-force partial sum  sum_{j=0}^{N-1} f(j) q^{l j}  is the oracle;
// interpolate_partial_sum must reproduce it at every non-negative integer and
// then extend analytically.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qds/a0.hpp"
#include "qds/rng.hpp"

using namespace qds;

static Context ctx; // q = 0.4, lambda = 2.3 - 0.7i

static A0Function random_a0(Rng& rng, int max_m, int max_abs_n, int terms) {
    A0Function f;
    for (int i = 0; i < terms; ++i)
        f.t[{rng.next_int(0, max_m), rng.next_int(-max_abs_n, max_abs_n)}] += rng.next_cplx();
    f.cleanup();
    return f;
}

static Cplx brute_partial_sum(const A0Function& f, int l, int N) {
    Cplx s = 0;
    for (int j = 0; j < N; ++j) s += a0_eval(ctx, f, Cplx(j, 0)) * ctx.qpow(l * j);
    return s;
}

TEST_CASE("partial sums: geometric and Faulhaber branches") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        A0Function f = random_a0(rng, 4, 3, 3);
        int l = rng.next_int(-4, 4);
        A0Function F = interpolate_partial_sum(ctx, f, l);
        CHECK(std::abs(a0_eval(ctx, F, Cplx(0, 0))) < 1e-12);
        for (int N = 1; N <= 25; ++N) {
            Cplx want = brute_partial_sum(f, l, N);
            Cplx got = a0_eval(ctx, F, Cplx(N, 0));
            CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("partial sum satisfies the difference equation at complex arguments") {
    Rng rng(42);
    A0Function f = random_a0(rng, 3, 2, 4);
    int l = 2;
    A0Function F = interpolate_partial_sum(ctx, f, l);
    for (int k = 0; k < 5; ++k) {
        Cplx w = 3.0 * rng.next_cplx();
        Cplx lhs = a0_eval(ctx, F, w + 1.0) - a0_eval(ctx, F, w);
        Cplx rhs = a0_eval(ctx, f, w) * ctx.qpow(double(l) * w);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("pure Faulhaber case: sums of powers") {
    // f = w^3, l = 0: F(N) = (N(N-1)/2)^2 for the 0..N-1 sum
    A0Function f = A0Function::basis(3, 0);
    A0Function F = interpolate_partial_sum(ctx, f, 0);
    for (int N = 0; N <= 10; ++N) {
        double want = double(N) * (N - 1) / 2.0;
        want *= want;
        CHECK(std::abs(a0_eval(ctx, F, Cplx(N, 0)) - want) < 1e-10);
    }
}

TEST_CASE("shift w -> w+a composes with evaluation") {
    Rng rng(9);
    A0Function f = random_a0(rng, 4, 3, 5);
    Cplx a(0.3, -1.2);
    A0Function g = a0_shift(ctx, f, a);
    for (int k = 0; k < 6; ++k) {
        Cplx w = 2.0 * rng.next_cplx();
        CHECK(std::abs(a0_eval(ctx, g, w) - a0_eval(ctx, f, w + a)) < 1e-11);
    }
}

TEST_CASE("products evaluate pointwise") {
    Rng rng(13);
    A0Function f = random_a0(rng, 3, 2, 4);
    A0Function g = random_a0(rng, 3, 2, 4);
    A0Function p = f * g;
    for (int k = 0; k < 6; ++k) {
        Cplx w = 2.0 * rng.next_cplx();
        CHECK(std::abs(a0_eval(ctx, p, w) - a0_eval(ctx, f, w) * a0_eval(ctx, g, w)) < 1e-11);
    }
}

TEST_CASE("two-variable substitutions") {
    Rng rng(77);
    A0Function2 F;
    for (int i = 0; i < 6; ++i)
        F.t[{rng.next_int(0, 3), rng.next_int(-2, 2), rng.next_int(0, 3), rng.next_int(-2, 2)}] +=
            rng.next_cplx();

    Cplx a(1.4, 0.5);
    A0Function diag = a0_diag_eval(ctx, F, a);     // t := w + a
    A0Function sub = a0_subst_w_from_t(ctx, F, a); // w := t + a
    A0Function2 sh = a0_shift_w(ctx, F, a);        // w := w + a

    for (int k = 0; k < 6; ++k) {
        Cplx w = 1.5 * rng.next_cplx(), t = 1.5 * rng.next_cplx();
        CHECK(std::abs(a0_eval(ctx, diag, w) - a0_eval2(ctx, F, w, w + a)) < 1e-11);
        CHECK(std::abs(a0_eval(ctx, sub, t) - a0_eval2(ctx, F, t + a, t)) < 1e-11);
        CHECK(std::abs(a0_eval2(ctx, sh, w, t) - a0_eval2(ctx, F, w + a, t)) < 1e-11);
        CHECK(std::abs(a0_eval(ctx, a0_eval_w(ctx, F, w), t) - a0_eval2(ctx, F, w, t)) < 1e-11);
        CHECK(std::abs(a0_eval(ctx, a0_eval_t(ctx, F, t), w) - a0_eval2(ctx, F, w, t)) < 1e-11);
    }
}

TEST_CASE("two-variable partial sum keeps the spectator slot") {
    Rng rng(31);
    A0Function2 F;
    for (int i = 0; i < 5; ++i)
        F.t[{rng.next_int(0, 2), rng.next_int(-2, 2), rng.next_int(0, 2), rng.next_int(-2, 2)}] +=
            rng.next_cplx();
    int l = -1;
    A0Function2 S = interpolate_partial_sum_w(ctx, F, l);
    Cplx t(0.8, -1.1);
    for (int N = 0; N <= 12; ++N) {
        Cplx want = 0;
        for (int j = 0; j < N; ++j) want += a0_eval2(ctx, F, Cplx(j, 0), t) * ctx.qpow(l * j);
        CHECK(std::abs(a0_eval2(ctx, S, Cplx(N, 0), t) - want) <=
              1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("degree cap raises Cutoff") {
    A0Function f = A0Function::basis(kA0DegreeCap, 0);
    CHECK_THROWS_AS((void)(f * f), Error);
}
