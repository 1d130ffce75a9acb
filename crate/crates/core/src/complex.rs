//! Complex scalar helpers: literal parsing/printing and integer powers.
//!
//! Literals use the form `a+bi`: an optional real part followed by an
//! optional signed imaginary part with a mandatory trailing `i`. `i`, `-i`,
//! `2`, `-1.5i`, `0.3+0.2i` and `1e-3-2.5e2i` are all valid.

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

fn parse_real(s: &str, full: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad complex literal {full:?}")))?;
    if !v.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite complex literal {full:?}")));
    }
    Ok(v)
}

/// Parses a complex literal such as `0.3+0.2i`, `-1.5i`, `2` or `i`.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty complex literal".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(s, text)?, 0.0));
    };
    // split at the last sign that is not the sign of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(p) => (Some(&body[..p]), &body[p..]),
        None => (None, body),
    };
    let re = match re_part {
        Some(r) => parse_real(r, text)?,
        None => 0.0,
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other, text)?,
    };
    Ok(Complex::new(re, im))
}

/// Formats `z` as `a+bi` using the shortest round-trip representation of
/// each component, so `parse_complex(&format_complex(z)) == z`.
pub fn format_complex(z: Complex) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// `z^n` by binary exponentiation; no logarithms, no branch cuts.
#[inline]
pub fn powi(z: Complex, n: u32) -> Complex {
    let mut result = ONE;
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result *= base;
        }
        e >>= 1;
        if e > 0 {
            base *= base;
        }
    }
    result
}

#[inline]
pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn ensure_finite(z: Complex, what: &'static str) -> Result<Complex> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Neumaier-compensated accumulator for long complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex,
    comp: Complex,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: Complex) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex::new(re, im);
        self.comp += Complex::new(cre, cim);
    }

    pub fn value(&self) -> Complex {
        self.sum + self.comp
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let c = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_forms() {
        assert_eq!(parse_complex("0.3+0.2i").unwrap(), Complex::new(0.3, 0.2));
        assert_eq!(parse_complex("-1.5i").unwrap(), Complex::new(0.0, -1.5));
        assert_eq!(parse_complex("2").unwrap(), Complex::new(2.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), I);
        assert_eq!(parse_complex("-i").unwrap(), -I);
        assert_eq!(parse_complex("1-i").unwrap(), Complex::new(1.0, -1.0));
        assert_eq!(parse_complex("1e-3-2.5e2i").unwrap(), Complex::new(1e-3, -250.0));
        assert_eq!(parse_complex("-1e-5i").unwrap(), Complex::new(0.0, -1e-5));
        assert_eq!(parse_complex("-0.5-1i").unwrap(), Complex::new(-0.5, -1.0));
        assert_eq!(parse_complex(" 3E2 ").unwrap(), Complex::new(300.0, 0.0));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1+2", "1+2j", "i1", "nan", "inf", "1++2i", "--i"] {
            assert!(parse_complex(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn format_round_trips() {
        for z in [
            Complex::new(0.1, -0.2),
            Complex::new(-1.0 / 3.0, 1e-300),
            Complex::new(2.5e17, 0.0),
            Complex::new(0.0, -0.0),
        ] {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!(back, z, "{}", format_complex(z));
        }
    }

    #[test]
    fn powi_matches_repeated_product() {
        let z = Complex::new(0.3, -1.1);
        let mut p = ONE;
        for n in 0..12 {
            assert!((powi(z, n) - p).norm() <= 1e-14 * p.norm().max(1.0));
            p *= z;
        }
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut acc = CompensatedSum::new();
        acc.add(Complex::new(1e16, 0.0));
        acc.add(Complex::new(1.0, 1.0));
        acc.add(Complex::new(-1e16, 0.0));
        assert_eq!(acc.value(), Complex::new(1.0, 1.0));
    }
}
