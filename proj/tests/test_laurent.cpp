// Window discipline and residue semantics of the z-Laurent layer.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qds/laurent.hpp"

using namespace qds;

static Context ctx;

TEST_CASE("exact arithmetic matches convolution") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        LaurentSeries a = random_laurent(rng, -3, 2);
        LaurentSeries b = random_laurent(rng, -2, 4);
        LaurentSeries p = series_mul(a, b);
        CHECK(p.exact());
        // brute-force convolution
        for (int m = -5; m <= 6; ++m) {
            Cplx s = 0;
            for (int k = -3; k <= 2; ++k)
                if (m - k >= -2 && m - k <= 4) s += a.at(k) * b.at(m - k);
            CHECK(std::abs(p.at(m) - s) < 1e-13);
        }
    }
}

TEST_CASE("residue of z^-1 is a known zero") {
    LaurentSeries a = laurent_monomial(-1);
    CHECK(res(a) == Cplx(0, 0));
    CHECK(res(series_mul(a, a)) == Cplx(0, 0));
}

TEST_CASE("pairing picks out opposite exponents") {
    LaurentSeries a = laurent_monomial(3, Cplx(2, 1));
    LaurentSeries b = laurent_monomial(-3, Cplx(0, 1));
    CHECK(std::abs(inner(a, b) - Cplx(2, 1) * Cplx(0, 1)) < 1e-15);
    CHECK(std::abs(inner(a, a)) == 0.0);
}

TEST_CASE("truncation is tracked through products") {
    Rng rng(7);
    LaurentSeries a = random_laurent(rng, -4, 3);
    a.truncate_below(-2); // exponents < -2 now unknown
    LaurentSeries b = random_laurent(rng, -1, 2);

    LaurentSeries p = series_mul(a, b);
    // unknown exponents of a (< -2) meet b's top degree 2, so p is known
    // only from max(lo_a + hi_b, lo_b + hi_a) = max(-2+2, -inf) = 0 upward
    CHECK(p.lo == 0);
    CHECK_THROWS_AS((void)p.at(-1), Error);
    CHECK(std::abs(res(p)) >= 0.0); // residue is inside the known window

    // the known coefficients agree with the untruncated product
    Rng rng2(7);
    LaurentSeries ax = random_laurent(rng2, -4, 3);
    LaurentSeries bx = random_laurent(rng2, -1, 2);
    LaurentSeries px = series_mul(ax, bx);
    for (int m = 0; m <= 5; ++m) CHECK(std::abs(p.at(m) - px.at(m)) < 1e-13);

    // a doubly-truncated product loses the residue
    bx.truncate_below(1);
    LaurentSeries p2 = series_mul(a, bx); // lo = max(-2+2, 1+3) = 4
    CHECK(p2.lo == 4);
    CHECK_THROWS_AS((void)res(p2), Error);
}

TEST_CASE("addition keeps the tighter window") {
    Rng rng(3);
    LaurentSeries a = random_laurent(rng, -5, 1);
    LaurentSeries b = random_laurent(rng, -3, 1);
    b.truncate_below(-1);
    LaurentSeries s = series_add(a, b);
    CHECK(s.lo == -1);
    CHECK(std::abs(s.at(0) - (a.at(0) + b.at(0))) < 1e-14);
    CHECK_THROWS_AS((void)s.at(-2), Error);
}

TEST_CASE("dilation scales coefficients geometrically") {
    Rng rng(5);
    LaurentSeries a = random_laurent(rng, -3, 3);
    Cplx alpha(0.7, 0.2);
    LaurentSeries d = series_dilate(ctx, a, alpha);
    for (int m = -3; m <= 3; ++m)
        CHECK(std::abs(d.at(m) - a.at(m) * ctx.qpow(alpha * double(m))) < 1e-12);
    // h^a f (z) = f(q^a z) pointwise
    Cplx z(1.1, -0.3);
    CHECK(std::abs(laurent_eval(d, z) - laurent_eval(a, ctx.qpow(alpha) * z)) < 1e-12);
}
