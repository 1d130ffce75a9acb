//! Period lattices `W = {n*w1 + m*w2}` and real lattice coordinates.

use crate::complex::{is_finite, Complex};
use crate::error::{Error, Result};

/// A lattice in the complex plane given by two R-linearly independent
/// generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    w1: Complex,
    w2: Complex,
}

/// Real coordinates `(x0, y0)` with `x0*w1 + y0*w2 = p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeCoords {
    pub x0: f64,
    pub y0: f64,
}

const DEGENERACY_TOL: f64 = 1e-12;

impl Lattice {
    pub fn new(w1: Complex, w2: Complex) -> Result<Self> {
        if !is_finite(w1) || !is_finite(w2) {
            return Err(Error::InvalidArgument("non-finite lattice generator".into()));
        }
        if w1 == Complex::new(0.0, 0.0) || w2 == Complex::new(0.0, 0.0) {
            return Err(Error::ZeroGenerator);
        }
        let ratio_im = (w2 / w1).im;
        let scale = (w1.norm() + w2.norm()).powi(2) / w1.norm_sqr();
        if ratio_im.abs() <= DEGENERACY_TOL * scale {
            return Err(Error::DegenerateLattice { ratio_im });
        }
        Ok(Self { w1, w2 })
    }

    pub fn w1(&self) -> Complex {
        self.w1
    }

    pub fn w2(&self) -> Complex {
        self.w2
    }

    /// `w2 / w1`.
    pub fn tau(&self) -> Complex {
        self.w2 / self.w1
    }

    /// Determinant of the real 2x2 system `[Re w1, Re w2; Im w1, Im w2]`,
    /// i.e. the signed area of the fundamental cell.
    pub fn det(&self) -> f64 {
        self.w1.re * self.w2.im - self.w2.re * self.w1.im
    }

    /// The point `n*w1 + m*w2`.
    pub fn point(&self, n: f64, m: f64) -> Complex {
        self.w1 * n + self.w2 * m
    }

    /// Solves `x*w1 + y*w2 = p` for real `x, y` by Cramer's rule.
    pub fn coordinates(&self, p: Complex) -> Result<LatticeCoords> {
        let det = self.det();
        let scale = (self.w1.norm() + self.w2.norm()).powi(2);
        if det.abs() <= DEGENERACY_TOL * scale {
            return Err(Error::DegenerateLattice { ratio_im: (self.w2 / self.w1).im });
        }
        let x0 = (p.re * self.w2.im - self.w2.re * p.im) / det;
        let y0 = (self.w1.re * p.im - p.re * self.w1.im) / det;
        Ok(LatticeCoords { x0, y0 })
    }

    /// True when `p` is within `1e-9` (in both lattice coordinates) of a
    /// lattice point.
    pub fn contains(&self, p: Complex) -> Result<bool> {
        let c = self.coordinates(p)?;
        Ok((c.x0 - c.x0.round()).abs() <= 1e-9 && (c.y0 - c.y0.round()).abs() <= 1e-9)
    }

    /// Scales both generators by `lambda`.
    pub fn scaled(&self, lambda: Complex) -> Result<Self> {
        Self::new(self.w1 * lambda, self.w2 * lambda)
    }
}

impl LatticeCoords {
    pub fn reconstruct(&self, lat: &Lattice) -> Complex {
        lat.point(self.x0, self.y0)
    }
}

/// Free-function form of [`Lattice::coordinates`].
pub fn lattice_coordinates(lat: &Lattice, p: Complex) -> Result<LatticeCoords> {
    lat.coordinates(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn construction() {
        let sq = Lattice::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert_eq!(sq.w2(), c(0.0, 1.0));
        assert!(matches!(
            Lattice::new(c(1.0, 0.0), c(1.0, 0.0)),
            Err(Error::DegenerateLattice { .. })
        ));
        assert!(Lattice::new(c(2.0, 0.0), c(1.0, 1.0)).is_ok());
        assert!(matches!(Lattice::new(c(0.0, 0.0), c(1.0, 1.0)), Err(Error::ZeroGenerator)));
        assert!(matches!(Lattice::new(c(1.0, 1.0), c(0.0, 0.0)), Err(Error::ZeroGenerator)));
        // nearly collinear
        assert!(matches!(
            Lattice::new(c(1.0, 0.0), c(1.0, 1e-13)),
            Err(Error::DegenerateLattice { .. })
        ));
    }

    #[test]
    fn coordinate_examples() {
        let sq = Lattice::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let k = sq.coordinates(-c(0.3, 0.2)).unwrap();
        assert!((k.x0 + 0.3).abs() < 1e-15 && (k.y0 + 0.2).abs() < 1e-15);

        let l2 = Lattice::new(c(2.0, 0.0), c(1.0, 1.0)).unwrap();
        let k = l2.coordinates(c(-1.0, 0.0)).unwrap();
        assert!((k.x0 + 0.5).abs() < 1e-15 && k.y0.abs() < 1e-15);

        let l3 = Lattice::new(c(1.0, 0.0), c(0.5, 1.0)).unwrap();
        let k = l3.coordinates(-c(0.25, 0.5)).unwrap();
        assert!(k.x0.abs() < 1e-15 && (k.y0 + 0.5).abs() < 1e-15);
    }

    #[test]
    fn membership() {
        let sq = Lattice::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!(sq.contains(c(1.0, 1.0)).unwrap());
        assert!(sq.contains(c(-3.0, 0.0)).unwrap());
        assert!(!sq.contains(c(0.5, 1.0)).unwrap());
    }
}
