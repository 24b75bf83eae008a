// Core scalar types, error taxonomy and the shared evaluation context.
//
// Everything downstream works over complex doubles with a fixed deformation
// parameter q (|q| < 1, q != 0) and a degree parameter lambda.  Powers q^w for
// complex w are always taken on the principal branch of the logarithm, so
// q^w = exp(w log q) with -pi < Im(log q) <= pi and log 1 = 0.  All value types
// are plain structs; the context is passed by const reference and never
// mutated, so any function here may be called concurrently.

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace qds {

using Cplx = std::complex<double>;

// Sentinel for "window extends to -infinity" (exact series, nothing unknown).
inline constexpr int kNegInf = std::numeric_limits<int>::min() / 4;
// Sentinel for "all diagonals above are known zero / band is exact".
inline constexpr int kPosInf = std::numeric_limits<int>::max() / 4;

enum class ErrorKind {
    Parse,          // malformed input file or functional spec
    Shape,          // structural violation (band, block size, basis cap, ...)
    DegreeMismatch, // incompatible symbol degrees in add/compare
    EmptyWindow,    // an operation produced a window with no known exponents
    Truncation,     // a required coefficient lies outside the known window
    NonGeneric,     // parameter hits a resonance (q^{lambda m} ~ 1 etc.)
    ZeroLambda,     // operation undefined at lambda = 0
    Consistency,    // internal cross-check failed (should not happen)
    Cutoff,         // iteration/degree cap exceeded
    Tolerance,      // a verification suite exceeded its tolerance
};

struct Error : std::runtime_error {
    ErrorKind kind;
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

// Exit codes used by the CLI; verification failures map to 4, resonances to 5.
inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return 2;
        case ErrorKind::Tolerance: return 4;
        case ErrorKind::NonGeneric:
        case ErrorKind::ZeroLambda: return 5;
        default: return 3;
    }
}

struct Context {
    Cplx q{0.4, 0.0};        // deformation parameter, 0 < |q| < 1
    Cplx lambda{2.3, -0.7};  // complex degree of the symbols under study
    double eps = 1e-14;      // coefficient cleanup threshold (absolute)
    double eps_generic = 1e-8; // genericity guard for resonance denominators

    Cplx logq() const { return std::log(q); }

    // q^w on the fixed branch.
    Cplx qpow(const Cplx& w) const { return std::exp(w * std::log(q)); }
    Cplx qpow(int n) const { return std::pow(q, n); }

    // 1 - q^{a m} guarded against resonances: these factors sit in
    // denominators throughout the r-matrix and interpolation formulas.
    Cplx one_minus_qpow(const Cplx& a, int m) const {
        Cplx d = 1.0 - qpow(a * double(m));
        if (std::abs(d) < eps_generic)
            fail(ErrorKind::NonGeneric,
                 "resonance: |1 - q^(a*m)| < eps_generic at m = " + std::to_string(m));
        return d;
    }
};

inline bool near(const Cplx& a, const Cplx& b, double tol) { return std::abs(a - b) <= tol; }
inline bool near_rel(const Cplx& a, const Cplx& b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Integer binomial coefficients as doubles (exact for the sizes used here).
double binom(int n, int k);

// Deterministic formatting for reports: fixed number of significant digits,
// locale-independent, "-0" normalized to "0".
std::string fmt_double(double x, int digits = 12);
std::string fmt_cplx(const Cplx& z, int digits = 12);

} // namespace qds
