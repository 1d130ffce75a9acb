use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::weil::{weil, Method, WeilParams};

use super::output::csv_num;

pub const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let bounds = [self.re_min, self.re_max, self.im_min, self.im_max];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidArgument("grid bounds must be finite".into()));
        }
        if !(self.re_min < self.re_max && self.im_min < self.im_max) {
            return Err(Error::InvalidArgument("grid needs re_min < re_max and im_min < im_max".into()));
        }
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::InvalidArgument("grid needs at least one point per axis".into()));
        }
        if self.nx.saturating_mul(self.ny) > MAX_POINTS {
            return Err(Error::InvalidArgument(format!("grid exceeds {MAX_POINTS} points")));
        }
        Ok(())
    }

    fn axis(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    }

    /// Sample points, real part varying fastest.
    pub fn points(&self) -> impl Iterator<Item = Complex> + '_ {
        (0..self.ny).flat_map(move |j| {
            let im = Self::axis(self.im_min, self.im_max, self.ny, j);
            (0..self.nx).map(move |i| Complex::new(Self::axis(self.re_min, self.re_max, self.nx, i), im))
        })
    }
}

/// CSV table of `E_k(a, W)` over the grid; lattice points get empty value
/// fields.
pub fn render(
    spec: &GridSpec,
    lat: Lattice,
    k: u32,
    method: Method,
    eps: f64,
    tol: f64,
) -> Result<String> {
    spec.validate()?;
    let mut out = String::from("re_a,im_a,re_E,im_E,abs_E\n");
    for a in spec.points() {
        out.push_str(&csv_num(a.re));
        out.push(',');
        out.push_str(&csv_num(a.im));
        if lat.contains(a)? {
            out.push_str(",,,\n");
            continue;
        }
        let e = weil(&WeilParams::new(lat, a, k)?, method, eps, tol)?.value;
        for v in [e.re, e.im, e.norm()] {
            out.push(',');
            out.push_str(&csv_num(v));
        }
        out.push('\n');
    }
    Ok(out)
}
