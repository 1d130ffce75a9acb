//! Fractional part and the first periodized Bernoulli polynomial.
//!
//! `P1(x) = x - floor(x) - 1/2`, with `P1(n) = -1/2` at every integer `n`.
//! That integer convention is the one under which the first-order
//! Euler-MacLaurin identity over a half-open interval `(alpha, beta]` is
//! exact.

/// `x - floor(x)`, always in `[0, 1)`.
#[inline]
pub fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    // tiny negative x rounds to exactly 1.0
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// First periodized Bernoulli polynomial, range `[-1/2, 1/2)`.
#[inline]
pub fn p1(x: f64) -> f64 {
    frac(x) - 0.5
}
