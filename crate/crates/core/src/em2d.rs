//! First-order Euler-MacLaurin summation in one and two dimensions.
//!
//! In one dimension, for `Phi` in `C^1[alpha, beta]`,
//!
//! ```text
//! sum_{alpha < n <= beta} Phi(n) = int Phi + int Phi' P1 + P1(alpha) Phi(alpha) - P1(beta) Phi(beta)
//! ```
//!
//! The two-dimensional version over `(alpha1, beta1] x (alpha2, beta2]`
//! splits the lattice-point sum into an area integral `I1`, the two pairs
//! of edge integrals `I2` (vertical edges) and `I3` (horizontal edges), and
//! the corner term `I4`. All integrals are taken with panels split at
//! integers, where `P1` jumps.

use rand::Rng;

use crate::bernoulli::p1;
use crate::complex::{CompensatedSum, Complex};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_rectangle, integrate_segment};

/// A function and its first partials plus the mixed second partial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub f: Complex,
    pub dx: Complex,
    pub dy: Complex,
    pub dxy: Complex,
}

/// A `C^2` function of two real variables with analytic partials.
pub trait Function2D {
    fn partials(&self, x: f64, y: f64) -> Partials;

    fn value(&self, x: f64, y: f64) -> Complex {
        self.partials(x, y).f
    }
}

/// [`Function2D`] assembled from four closures.
pub struct FnPartials<F, Fx, Fy, Fxy> {
    pub phi: F,
    pub dphi_dx: Fx,
    pub dphi_dy: Fy,
    pub d2phi_dxdy: Fxy,
}

impl<F, Fx, Fy, Fxy> Function2D for FnPartials<F, Fx, Fy, Fxy>
where
    F: Fn(f64, f64) -> Complex,
    Fx: Fn(f64, f64) -> Complex,
    Fy: Fn(f64, f64) -> Complex,
    Fxy: Fn(f64, f64) -> Complex,
{
    fn partials(&self, x: f64, y: f64) -> Partials {
        Partials {
            f: (self.phi)(x, y),
            dx: (self.dphi_dx)(x, y),
            dy: (self.dphi_dy)(x, y),
            dxy: (self.d2phi_dxdy)(x, y),
        }
    }

    fn value(&self, x: f64, y: f64) -> Complex {
        (self.phi)(x, y)
    }
}

/// The closed rectangle `[alpha1, beta1] x [alpha2, beta2]`; sums run over
/// the half-open `(alpha1, beta1] x (alpha2, beta2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
}

impl Rect {
    pub fn new(alpha1: f64, beta1: f64, alpha2: f64, beta2: f64) -> Result<Self> {
        let finite = [alpha1, beta1, alpha2, beta2].iter().all(|v| v.is_finite());
        if !finite || alpha1 >= beta1 || alpha2 >= beta2 {
            return Err(Error::InvalidArgument(format!(
                "rectangle needs alpha < beta on both axes, got [{alpha1}, {beta1}] x [{alpha2}, {beta2}]"
            )));
        }
        Ok(Self { alpha1, beta1, alpha2, beta2 })
    }

    pub fn shifted(&self, dx: f64, dy: f64) -> Self {
        Self {
            alpha1: self.alpha1 + dx,
            beta1: self.beta1 + dx,
            alpha2: self.alpha2 + dy,
            beta2: self.beta2 + dy,
        }
    }

    /// Number of integer points in the half-open rectangle.
    pub fn lattice_points(&self) -> u64 {
        let nx = (self.beta1.floor() - self.alpha1.floor()).max(0.0);
        let ny = (self.beta2.floor() - self.alpha2.floor()).max(0.0);
        (nx * ny) as u64
    }
}

/// The four pieces of the two-dimensional summation formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmBreakdown {
    pub i1: Complex,
    pub i2: Complex,
    pub i3: Complex,
    pub i4: Complex,
    pub total: Complex,
    /// sum of the component quadrature errors
    pub err: f64,
}

/// Value and quadrature error of a one-dimensional Euler-MacLaurin sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmSum {
    pub value: Complex,
    pub err: f64,
}

/// One-dimensional Euler-MacLaurin sum of `phi` over integers in
/// `(alpha, beta]`; `dphi` is the derivative of `phi`.
pub fn em_sum_1d<F, D>(phi: F, dphi: D, alpha: f64, beta: f64, tol: f64) -> Result<Complex>
where
    F: Fn(f64) -> Complex,
    D: Fn(f64) -> Complex,
{
    em_sum_1d_detailed(phi, dphi, alpha, beta, tol).map(|s| s.value)
}

/// [`em_sum_1d`] with its quadrature error.
pub fn em_sum_1d_detailed<F, D>(phi: F, dphi: D, alpha: f64, beta: f64, tol: f64) -> Result<EmSum>
where
    F: Fn(f64) -> Complex,
    D: Fn(f64) -> Complex,
{
    if !(alpha.is_finite() && beta.is_finite()) || alpha >= beta {
        return Err(Error::InvalidArgument(format!("need alpha < beta, got ({alpha}, {beta}]")));
    }
    let plain = integrate_segment(&phi, alpha, beta, &[], true, 0.5 * tol)?;
    let weighted = integrate_segment(|x| dphi(x) * p1(x), alpha, beta, &[], true, 0.5 * tol)?;
    let boundary = phi(alpha) * p1(alpha) - phi(beta) * p1(beta);
    Ok(EmSum { value: plain.value + weighted.value + boundary, err: plain.err + weighted.err })
}

/// Two-dimensional Euler-MacLaurin sum of `f` over the integer points of
/// `(alpha1, beta1] x (alpha2, beta2]`.
pub fn em_sum_2d<F: Function2D + ?Sized>(f: &F, r: &Rect, tol: f64) -> Result<EmBreakdown> {
    let Rect { alpha1, beta1, alpha2, beta2 } = *r;
    let (pa1, pb1, pa2, pb2) = (p1(alpha1), p1(beta1), p1(alpha2), p1(beta2));

    let area = integrate_rectangle(
        |x, y| {
            let d = f.partials(x, y);
            let (px, py) = (p1(x), p1(y));
            d.f + d.dx * px + d.dy * py + d.dxy * (px * py)
        },
        (alpha1, beta1),
        (alpha2, beta2),
        true,
        0.5 * tol,
    )?;

    let vertical = integrate_segment(
        |y| {
            let lo = f.partials(alpha1, y);
            let hi = f.partials(beta1, y);
            let py = p1(y);
            lo.f * pa1 - hi.f * pb1 + lo.dy * (py * pa1) - hi.dy * (py * pb1)
        },
        alpha2,
        beta2,
        &[],
        true,
        0.25 * tol,
    )?;

    let horizontal = integrate_segment(
        |x| {
            let lo = f.partials(x, alpha2);
            let hi = f.partials(x, beta2);
            let px = p1(x);
            lo.f * pa2 - hi.f * pb2 + lo.dx * (px * pa2) - hi.dx * (px * pb2)
        },
        alpha1,
        beta1,
        &[],
        true,
        0.25 * tol,
    )?;

    let i4 = f.value(alpha1, alpha2) * (pa2 * pa1) - f.value(beta1, alpha2) * (pa2 * pb1)
        - f.value(alpha1, beta2) * (pb2 * pa1)
        + f.value(beta1, beta2) * (pb2 * pb1);

    let (i1, i2, i3) = (area.value, vertical.value, horizontal.value);
    Ok(EmBreakdown {
        i1,
        i2,
        i3,
        i4,
        total: i1 + i2 + i3 + i4,
        err: area.err + vertical.err + horizontal.err,
    })
}

pub const BRUTE_FORCE_BUDGET: u64 = 10_000_000;

/// Direct double sum over `n in (alpha1, beta1]`, `m in (alpha2, beta2]`,
/// inner loop over `n`, in index order.
pub fn brute_force_sum_2d<F: Fn(f64, f64) -> Complex>(phi: F, r: &Rect) -> Result<Complex> {
    let points = r.lattice_points();
    if points > BRUTE_FORCE_BUDGET {
        return Err(Error::BudgetExceeded { points });
    }
    let (n0, n1) = (r.alpha1.floor() as i64 + 1, r.beta1.floor() as i64);
    let (m0, m1) = (r.alpha2.floor() as i64 + 1, r.beta2.floor() as i64);
    let mut acc = CompensatedSum::new();
    for m in m0..=m1 {
        for n in n0..=n1 {
            acc.add(phi(n as f64, m as f64));
        }
    }
    Ok(acc.value())
}

/// Largest relative discrepancy between the supplied partials and central
/// finite differences at `samples` random points of `r`.
pub fn partials_discrepancy<F: Function2D + ?Sized, R: Rng>(f: &F, r: &Rect, samples: usize, rng: &mut R) -> f64 {
    const H1: f64 = 1e-5;
    const H2: f64 = 1e-4;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = rng.gen_range(r.alpha1..r.beta1);
        let y = rng.gen_range(r.alpha2..r.beta2);
        let d = f.partials(x, y);
        let fd_x = (f.value(x + H1, y) - f.value(x - H1, y)) / (2.0 * H1);
        let fd_y = (f.value(x, y + H1) - f.value(x, y - H1)) / (2.0 * H1);
        let fd_xy = (f.value(x + H2, y + H2) - f.value(x + H2, y - H2) - f.value(x - H2, y + H2)
            + f.value(x - H2, y - H2))
            / (4.0 * H2 * H2);
        let scale = d.f.norm();
        for (fd, exact) in [(fd_x, d.dx), (fd_y, d.dy), (fd_xy, d.dxy)] {
            let rel = (fd - exact).norm() / (exact.norm() + scale + f64::MIN_POSITIVE);
            worst = worst.max(rel);
        }
    }
    worst
}

/// Fails unless the analytic partials agree with finite differences to
/// `1e-5` relative.
pub fn validate_partials<F: Function2D + ?Sized, R: Rng>(f: &F, r: &Rect, samples: usize, rng: &mut R) -> Result<()> {
    let worst = partials_discrepancy(f, r, samples, rng);
    if worst <= 1e-5 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "analytic partials disagree with finite differences (relative {worst:e})"
        )))
    }
}

/// One separable factor `g(x) h(y)` with
/// `g(x) = P((x - cx)/sx) e^{i wx x}` and `h` likewise, `P` cubic.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExpTerm {
    pub px: [f64; 4],
    pub py: [f64; 4],
    pub center: (f64, f64),
    pub scale: (f64, f64),
    pub omega: (f64, f64),
}

/// Sum of [`PolyExpTerm`]s: the random smooth test functions used to check
/// the summation formula.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExp {
    pub terms: Vec<PolyExpTerm>,
}

fn poly_factor(c: &[f64; 4], center: f64, scale: f64, omega: f64, t: f64) -> (Complex, Complex) {
    let u = (t - center) / scale;
    let p = c[0] + u * (c[1] + u * (c[2] + u * c[3]));
    let dp = (c[1] + u * (2.0 * c[2] + u * 3.0 * c[3])) / scale;
    let e = Complex::new(0.0, omega * t).exp();
    (e * p, e * Complex::new(dp, omega * p))
}

impl Function2D for PolyExp {
    fn partials(&self, x: f64, y: f64) -> Partials {
        let mut out = Partials {
            f: Complex::new(0.0, 0.0),
            dx: Complex::new(0.0, 0.0),
            dy: Complex::new(0.0, 0.0),
            dxy: Complex::new(0.0, 0.0),
        };
        for t in &self.terms {
            let (g, dg) = poly_factor(&t.px, t.center.0, t.scale.0, t.omega.0, x);
            let (h, dh) = poly_factor(&t.py, t.center.1, t.scale.1, t.omega.1, y);
            out.f += g * h;
            out.dx += dg * h;
            out.dy += g * dh;
            out.dxy += dg * dh;
        }
        out
    }
}

impl PolyExp {
    /// Random function normalized to magnitude `O(1)` on `r`: one or two
    /// terms, cubic coefficients in `[-1, 1]` of the rescaled variable,
    /// frequencies in `[-2, 2]` (or zero with probability 1/3).
    pub fn random<R: Rng>(r: &Rect, rng: &mut R) -> Self {
        let nterms = rng.gen_range(1..=2);
        let center = (0.5 * (r.alpha1 + r.beta1), 0.5 * (r.alpha2 + r.beta2));
        let scale = (0.5 * (r.beta1 - r.alpha1), 0.5 * (r.beta2 - r.alpha2));
        let terms = (0..nterms)
            .map(|_| {
                let mut coeffs = || {
                    let degree = rng.gen_range(0..=3);
                    let mut c = [0.0; 4];
                    for ci in c.iter_mut().take(degree + 1) {
                        *ci = rng.gen_range(-1.0..1.0);
                    }
                    c
                };
                let px = coeffs();
                let py = coeffs();
                let mut freq = || if rng.gen_bool(1.0 / 3.0) { 0.0 } else { rng.gen_range(-2.0..2.0) };
                let omega = (freq(), freq());
                PolyExpTerm { px, py, center, scale, omega }
            })
            .collect();
        Self { terms }
    }
}
