//! Hurwitz-Lerch zeta `Phi(z, s, a) = sum_{n>=0} z^n (n + a)^(-s)`.
//!
//! [`lerch_series`] sums the defining series with a rigorous tail bound.
//! [`lerch_coffey`] uses the first-order Euler-MacLaurin representation
//!
//! ```text
//! Phi = a^(-s) + z (a+1)^(-s) / 2 + int_1^inf z^x (x+a)^(-s) dx
//!       + int_1^inf z^x (x+a)^(-s) (ln z - s/(x+a)) P1(x) dx
//! ```
//!
//! with principal branches, which is why it needs `Re a > 0` and `z` off
//! the cut `(-inf, 0]`.

use crate::bernoulli::p1;
use crate::complex::{CompensatedSum, Complex};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_half_line, integrate_segment};

const NONPOS_INT_GAP: f64 = 1e-9;
const UNIT_CIRCLE: f64 = 1e-12;
const BOUNDARY_MARGIN: f64 = 1e-6;
const MAX_TERMS: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchParams {
    pub z: Complex,
    pub s: Complex,
    pub a: Complex,
}

impl LerchParams {
    pub fn new(z: Complex, s: Complex, a: Complex) -> Result<Self> {
        for (name, v) in [("z", z), ("s", s), ("a", a)] {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidArgument(format!("non-finite {name}")));
            }
        }
        if a.re <= NONPOS_INT_GAP {
            let nearest = a.re.round();
            if (a - Complex::new(nearest, 0.0)).norm() <= NONPOS_INT_GAP {
                return Err(Error::DomainError(format!("a = {a} is a non-positive integer")));
            }
        }
        let r = z.norm();
        if r > 1.0 + UNIT_CIRCLE {
            return Err(Error::DomainError(format!("|z| = {r} exceeds 1")));
        }
        if r >= 1.0 - UNIT_CIRCLE && s.re <= 1.0 {
            return Err(Error::DomainError(format!("|z| = 1 requires Re s > 1, got {}", s.re)));
        }
        Ok(Self { z, s, a })
    }

    fn on_unit_circle(&self) -> bool {
        self.z.norm() >= 1.0 - UNIT_CIRCLE
    }

    fn z_is_one(&self) -> bool {
        (self.z - 1.0).norm() <= UNIT_CIRCLE
    }
}

/// `(x + a)^(-s)` on the principal branch.
#[inline]
fn power(x: Complex, s: Complex) -> Complex {
    (-s * x.ln()).exp()
}

/// Upper bound for `|(n0 + a)^(-s)|`, valid once `n0 + Re a >= 1`.
fn magnitude_bound(n0: f64, s: Complex, a: Complex) -> f64 {
    let lo = n0 + a.re;
    let hi = n0 + a.norm();
    let radial = lo.powf(-s.re).max(hi.powf(-s.re));
    radial * (s.im.abs() * a.im.abs() / lo).exp()
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")))
    }
}

/// `Phi(z, s, a)` by partial sums of the defining series.
///
/// Stopping rules: geometric tail bound for `|z| < 1`; for `z = 1` the tail
/// is replaced by `int_{N+1/2}^inf (x+a)^(-s) dx` and the bound on that
/// midpoint-rule replacement is what must drop below `tol`; for other `|z| = 1`
/// an Abel-summation bound.
pub fn lerch_series(p: &LerchParams, tol: f64) -> Result<Complex> {
    check_tol(tol)?;
    let (z, s, a) = (p.z, p.s, p.a);
    if p.on_unit_circle() && s.re <= 1.0 + BOUNDARY_MARGIN {
        return Err(Error::DomainError("series needs Re s > 1 on |z| = 1".into()));
    }
    let mut acc = CompensatedSum::new();
    // 0^0 = 1 so that Phi(0, s, a) = a^(-s)
    acc.add(power(a, s));
    if z == Complex::new(0.0, 0.0) {
        return Ok(acc.value());
    }
    let r = z.norm();
    let log_z = z.ln();
    let z_one = p.z_is_one();
    let abel = if p.on_unit_circle() && !z_one { 2.0 / (Complex::new(1.0, 0.0) - z).norm() } else { 0.0 };
    let mut n: u64 = 1;
    loop {
        let nf = n as f64;
        let zn = if z_one { Complex::new(1.0, 0.0) } else { (log_z * nf).exp() };
        acc.add(zn * power(Complex::new(nf, 0.0) + a, s));
        let next = nf + 1.0;
        if next + a.re >= 1.0 {
            let bound_next = magnitude_bound(next, s, a);
            let tail = if z_one {
                // midpoint rule error: sum_{n>N} g(n) - int_{N+1/2}^inf g <= int |g''| / 24
                let lo = nf + 0.5 + a.re;
                let shape = (s * (s + 1.0)).norm() / (24.0 * (s.re + 1.0));
                shape * lo.powf(-s.re - 1.0) * (s.im.abs() * a.im.abs() / lo.max(1.0)).exp()
            } else if abel > 0.0 {
                // partial sums of z^n are bounded by 2/|1-z|; b_n has variation |s| int |x+a|^(-Re s - 1)
                let lo = nf + a.re;
                let variation = s.norm() / s.re * lo.powf(-s.re) * (s.im.abs() * a.im.abs() / lo.max(1.0)).exp();
                abel * (bound_next + variation)
            } else {
                let growth = (1.0 + (1.0 + a.norm()) / (next + a.re)).powf(s.re.abs());
                let ratio = r * growth;
                if ratio < 1.0 {
                    r.powf(next) * bound_next / (1.0 - ratio)
                } else {
                    f64::INFINITY
                }
            };
            if tail < tol {
                if z_one {
                    let start = Complex::new(nf + 0.5, 0.0) + a;
                    acc.add(power(start, s - 1.0) / (s - 1.0));
                }
                return crate::complex::ensure_finite(acc.value(), "lerch_series");
            }
        }
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::SlowConvergence { terms: MAX_TERMS });
        }
    }
}

/// `Phi(z, s, a)` by the integral representation.
pub fn lerch_coffey(p: &LerchParams, tol: f64) -> Result<Complex> {
    check_tol(tol)?;
    let (z, s, a) = (p.z, p.s, p.a);
    if a.re <= 0.0 {
        return Err(Error::DomainError("integral representation needs Re a > 0".into()));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::DomainError(format!("z = {z} lies on the branch cut (-inf, 0]")));
    }
    let z_one = p.z_is_one();
    if p.on_unit_circle() && !z_one {
        return Err(Error::DomainError("integral representation needs |z| < 1 or z = 1".into()));
    }
    let log_z = if z_one { Complex::new(0.0, 0.0) } else { z.ln() };
    let g = |x: f64| -> Complex {
        let xa = Complex::new(x, 0.0) + a;
        let base = (log_z * x).exp() * power(xa, s);
        base * (1.0 + (log_z - s / xa) * p1(x))
    };
    let head = power(a, s) + z * power(a + 1.0, s) * 0.5;
    let integral = if z_one {
        integrate_half_line(g, 1.0, s - 1.0, 0.5 * tol)?.value
    } else {
        let end = truncation_point(z, s, a, 0.25 * tol)?;
        integrate_segment(g, 1.0, end, &[], true, 0.25 * tol)?.value
    };
    crate::complex::ensure_finite(head + integral, "lerch_coffey")
}

/// Integer `R` with `int_R^inf |g| < tol` for `|z| < 1`.
fn truncation_point(z: Complex, s: Complex, a: Complex, tol: f64) -> Result<f64> {
    let lambda = -z.norm().ln();
    let log_z = z.ln();
    // |z^x| = e^(-lambda x); |(x+a)^(-s)| <= bound * e^(|Im s| pi / 2) for Re a > 0
    let phase = (s.im.abs() * std::f64::consts::FRAC_PI_2).exp();
    let mut r = 2.0f64;
    loop {
        let lo = r + a.re;
        let growth = (-s.re).max(0.0) / lo;
        let rate = lambda - growth;
        if rate > 0.0 {
            let radial = lo.powf(-s.re).max((r + a.norm()).powf(-s.re));
            let factor = 1.0 + log_z.norm() + s.norm() / lo;
            let bound = (-lambda * r).exp() * radial * phase * factor / rate;
            if bound < tol {
                return Ok(r);
            }
        }
        r = (r * 1.25).ceil();
        if r > MAX_TERMS as f64 {
            return Err(Error::SlowConvergence { terms: MAX_TERMS });
        }
    }
}

/// `zeta(s, a) = Phi(1, s, a)`, `Re s > 1`.
pub fn hurwitz_zeta(s: Complex, a: Complex, tol: f64) -> Result<Complex> {
    if s.re <= 1.0 {
        return Err(Error::DomainError(format!("Hurwitz zeta needs Re s > 1, got {}", s.re)));
    }
    lerch_coffey(&LerchParams::new(Complex::new(1.0, 0.0), s, a)?, tol)
}

/// `zeta(s) = zeta(s, 1)`, `Re s > 1`.
pub fn riemann_zeta(s: Complex, tol: f64) -> Result<Complex> {
    hurwitz_zeta(s, Complex::new(1.0, 0.0), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn r(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    fn params(z: f64, s: f64, a: f64) -> LerchParams {
        LerchParams::new(r(z), r(s), r(a)).unwrap()
    }

    #[test]
    fn series_examples() {
        let v = lerch_series(&params(0.0, 2.0, 3.0), 1e-12).unwrap();
        assert!((v - 1.0 / 9.0).norm() < 1e-16);
        let v = lerch_series(&params(1.0, 2.0, 1.0), 1e-11).unwrap();
        assert!((v - PI * PI / 6.0).norm() < 1e-10);
        // 2 Li2(1/2) = pi^2/6 - ln^2 2
        let li2_half = PI * PI / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        let v = lerch_series(&params(0.5, 2.0, 1.0), 1e-12).unwrap();
        assert!((v - 2.0 * li2_half).norm() < 1e-11);
    }

    #[test]
    fn series_on_unit_circle_off_one() {
        // Phi(-1, 2, 1) = eta(2) = pi^2/12
        let v = lerch_series(&params(-1.0, 2.0, 1.0), 1e-9).unwrap();
        assert!((v - PI * PI / 12.0).norm() < 1e-8);
    }

    #[test]
    fn coffey_examples() {
        for (z, s) in [(0.5, 2.0), (0.5, 1.0), (1.0, 2.0)] {
            let p = params(z, s, 1.0);
            let a = lerch_series(&p, 1e-12).unwrap();
            let b = lerch_coffey(&p, 1e-11).unwrap();
            assert!((a - b).norm() < 1e-9, "z={z} s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn zeta_values() {
        assert!((riemann_zeta(r(2.0), 1e-11).unwrap() - PI * PI / 6.0).norm() < 1e-9);
        assert!((riemann_zeta(r(3.0), 1e-11).unwrap() - 1.202_056_903_159_594_3).norm() < 1e-9);
        assert!((riemann_zeta(r(6.0), 1e-11).unwrap() - PI.powi(6) / 945.0).norm() < 1e-9);
        assert!((hurwitz_zeta(r(4.0), r(1.0), 1e-11).unwrap() - PI.powi(4) / 90.0).norm() < 1e-9);
        assert!((hurwitz_zeta(r(2.0), r(2.0), 1e-11).unwrap() - (PI * PI / 6.0 - 1.0)).norm() < 1e-9);
    }

    #[test]
    fn shift_identity() {
        let z = Complex::new(0.3, 0.4);
        let s = Complex::new(2.5, 1.0);
        let a = Complex::new(0.7, 0.2);
        let lhs = lerch_coffey(&LerchParams::new(z, s, a).unwrap(), 1e-11).unwrap();
        let shifted = lerch_coffey(&LerchParams::new(z, s, a + 1.0).unwrap(), 1e-11).unwrap();
        assert!((lhs - (z * shifted + power(a, s))).norm() < 1e-9);
    }

    #[test]
    fn small_z_limit() {
        let a = 2.5;
        for z in [1e-3, 1e-6] {
            let v = lerch_coffey(&params(z, 3.0, a), 1e-12).unwrap();
            assert!((v - a.powf(-3.0)).norm() < 2.0 * z);
        }
    }

    #[test]
    fn domain_checks() {
        assert!(matches!(LerchParams::new(r(1.0), r(0.5), r(1.0)), Err(Error::DomainError(_))));
        assert!(matches!(LerchParams::new(r(1.2), r(2.0), r(1.0)), Err(Error::DomainError(_))));
        assert!(matches!(LerchParams::new(r(0.5), r(2.0), r(-2.0)), Err(Error::DomainError(_))));
        let p = params(-0.5, 2.0, 1.0);
        assert!(matches!(lerch_coffey(&p, 1e-8), Err(Error::DomainError(_))));
        let p = params(0.5, 2.0, -0.5);
        assert!(lerch_series(&p, 1e-10).is_ok());
        assert!(matches!(lerch_coffey(&p, 1e-8), Err(Error::DomainError(_))));
        assert!(matches!(riemann_zeta(r(1.0), 1e-8), Err(Error::DomainError(_))));
    }
}
