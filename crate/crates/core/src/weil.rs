//! Weil's elliptic functions `E_k(a, W) = sum_{w in W} (a + w)^(-k)` and the
//! Eisenstein series `G_k(W) = sum_{w != 0} w^(-k)`.
//!
//! Two independent evaluations are provided:
//!
//! * [`weil_direct`] sums rows `m` of the lattice, each row summed
//!   symmetrically over `n` first (Eisenstein summation). For `k >= 3` each
//!   row is truncated where a rigorous tail bound drops below tolerance;
//!   for `k = 1, 2` the symmetric row sums are accelerated with iterated
//!   Aitken over `N`-doubling. Rows decay geometrically away from the
//!   pole, so the outer sum stops where an exact bound on the remaining
//!   rows (from the Lipschitz series of a full row) is below tolerance.
//!
//! * [`weil_integral`] applies the two-dimensional Euler-MacLaurin formula
//!   to the half-planes above and below the pole row. With `(x0, y0)` the
//!   lattice coordinates of `-a`, the rows `m > y0 + eps` and
//!   `m <= y0 - eps` become two half-strip integrals `J2`, `J3` and one
//!   pair of line integrals `J1` along the strip edges. A lattice row that
//!   falls inside the gap `(y0 - eps, y0 + eps]` is summed separately by
//!   the one-dimensional formula (`row_correction`).

use crate::bernoulli::p1;
use crate::complex::{powi, CompensatedSum, Complex};
use crate::em2d::{em_sum_1d_detailed, Function2D, Partials};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::quadrature::{
    extrapolate_rings, integrate_half_strip, integrate_line, Direction, LineMode, QuadratureResult,
};

/// Input of `E_k(a, W)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeilParams {
    pub lat: Lattice,
    pub a: Complex,
    pub k: u32,
}

impl WeilParams {
    pub fn new(lat: Lattice, a: Complex, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite point a".into()));
        }
        if lat.contains(a)? {
            return Err(Error::PointOnLattice);
        }
        Ok(Self { lat, a, k })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Integral,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Integral => "integral",
        }
    }
}

/// Value of `E_k(a, W)` with its integral-path breakdown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeilReport {
    pub value: Complex,
    pub j1: Complex,
    pub j2: Complex,
    pub j3: Complex,
    pub eps_used: f64,
    pub row_correction: Complex,
    pub err: f64,
    pub method: Method,
}

/// `f(x, y) = (a + x w1 + y w2)^(-k)` with its partials.
#[derive(Debug, Clone, Copy)]
pub struct WeilIntegrand {
    w1: Complex,
    w2: Complex,
    a: Complex,
    k: u32,
}

impl WeilIntegrand {
    pub fn new(p: &WeilParams) -> Self {
        Self { w1: p.lat.w1(), w2: p.lat.w2(), a: p.a, k: p.k }
    }

    fn denominator(&self, x: f64, y: f64) -> Complex {
        self.a + self.w1 * x + self.w2 * y
    }

    /// `f + f_x P1(x) + f_y P1(y) + f_xy P1(x) P1(y)`, the area integrand.
    #[inline]
    fn area_integrand(&self, x: f64, y: f64) -> Complex {
        let inv = 1.0 / self.denominator(x, y);
        let kf = self.k as f64;
        let px = p1(x);
        let py = p1(y);
        let lin = (self.w1 * px + self.w2 * py) * inv * (-kf);
        let mixed = self.w1 * self.w2 * inv * inv * (kf * (kf + 1.0) * px * py);
        powi(inv, self.k) * (1.0 + lin + mixed)
    }

    /// `(f + f_x P1(x))` on the horizontal line at height `y`.
    #[inline]
    fn edge_integrand(&self, x: f64, y: f64) -> Complex {
        let inv = 1.0 / self.denominator(x, y);
        let kf = self.k as f64;
        powi(inv, self.k) * (1.0 - self.w1 * inv * (kf * p1(x)))
    }
}

impl Function2D for WeilIntegrand {
    fn partials(&self, x: f64, y: f64) -> Partials {
        let inv = 1.0 / self.denominator(x, y);
        let kf = self.k as f64;
        let f = powi(inv, self.k);
        let g = f * inv;
        Partials {
            f,
            dx: g * self.w1 * (-kf),
            dy: g * self.w2 * (-kf),
            dxy: g * inv * self.w1 * self.w2 * (kf * (kf + 1.0)),
        }
    }

    fn value(&self, x: f64, y: f64) -> Complex {
        powi(1.0 / self.denominator(x, y), self.k)
    }
}

const POLE_EPS: f64 = 1e-12;

/// `f`, `df/dx`, `df/dy` and `d2f/dxdy` of `(a + x w1 + y w2)^(-k)`.
pub fn weil_integrand(p: &WeilParams, x: f64, y: f64) -> Result<Partials> {
    let g = WeilIntegrand::new(p);
    if g.denominator(x, y).norm() <= POLE_EPS {
        return Err(Error::PoleHit);
    }
    Ok(g.partials(x, y))
}

// ---------------------------------------------------------------------------
// direct summation

const MAX_INDEX: u64 = 1 << 20;

/// Bound on `|sum_n (z + n)^(-k)|` (minus the constant `-/+ i pi` when
/// `k = 1`) for `|Im z| = h > 0`:
/// `(2 pi)^k / (k-1)! * sum_{r>=1} r^(k-1) e^(-2 pi r h)`.
fn row_bound(k: u32, h: f64) -> f64 {
    let q = (-2.0 * std::f64::consts::PI * h.abs()).exp();
    let mut coef = 1.0;
    for j in 1..k {
        coef *= 2.0 * std::f64::consts::PI / j as f64;
    }
    coef *= 2.0 * std::f64::consts::PI;
    let mut s = 0.0;
    let mut qr = q;
    let mut r = 1.0f64;
    loop {
        let term = r.powi(k as i32 - 1) * qr;
        s += term;
        if term <= 1e-17 * s || qr == 0.0 {
            break;
        }
        // terms decrease once r > (k-1)/(2 pi h); guard the plateau
        if r > 4.0 * k as f64 / (-q.ln()).max(1e-300) && term < 1e-30 {
            break;
        }
        r += 1.0;
        qr *= q;
        if r > 1e7 {
            return f64::INFINITY;
        }
    }
    coef * s
}

/// Smallest `M` such that the rows `|m| > M` contribute less than
/// `budget` (returned alongside the bound), where row `m` sits at
/// imaginary height `h_a + m t` in units of `w1`.
fn outer_truncation(k: u32, scale: f64, h_a: f64, t: f64, budget: f64) -> Result<(u64, f64)> {
    let tail = |m_lo: u64| -> f64 {
        let mut s = 0.0;
        let mut m = m_lo + 1;
        loop {
            let mf = m as f64;
            let term = (row_bound(k, h_a + mf * t) + row_bound(k, h_a - mf * t)) * scale;
            s += term;
            if term <= 1e-6 * s.max(f64::MIN_POSITIVE) || term == 0.0 {
                break;
            }
            m += 1;
            if m > m_lo + 100_000 {
                return f64::INFINITY;
            }
        }
        s
    };
    // rows beyond M must lie strictly on one side of the pole row
    let mut m = ((h_a.abs() / t.abs()).floor() as u64).max(1);
    loop {
        let bound = tail(m);
        if bound <= budget {
            return Ok((m, bound));
        }
        m += 1;
        if m > MAX_INDEX {
            return Err(Error::SlowConvergence { terms: MAX_INDEX });
        }
    }
}

/// Rigorous bound on `|sum_{n > N} [(c + n w)^(-k) + (c - n w)^(-k)]|`
/// for `k >= 2` via first-order Euler-MacLaurin on the tail.
fn inner_tail_bound(c: Complex, w: Complex, k: u32, n: f64) -> f64 {
    let gap = w.norm() * n - c.norm();
    if gap <= 0.0 {
        return f64::INFINITY;
    }
    let kf = k as f64;
    let wn = w * n;
    let integral = (powi(1.0 / (c + wn), k - 1) - powi(1.0 / (c - wn), k - 1)) / (w * (kf - 1.0));
    let edge = (powi(1.0 / (c + wn), k) + powi(1.0 / (c - wn), k)).norm();
    integral.norm() + 0.5 * edge + gap.powf(-kf)
}

/// Partial symmetric row sum over `|n| <= n_max`, extending `acc` from
/// `n_from` (exclusive). `skip_zero` drops the `n = 0` term.
fn accumulate_row(acc: &mut CompensatedSum, c: Complex, w: Complex, k: u32, n_from: u64, n_to: u64) {
    for n in (n_from + 1)..=n_to {
        let wn = w * n as f64;
        acc.add(powi(1.0 / (c + wn), k) + powi(1.0 / (c - wn), k));
    }
}

/// `sum_n (c + n w)^(-k)` over all `n` (symmetric limit), `|err| <= tol`.
fn row_sum(c: Complex, w: Complex, k: u32, skip_zero: bool, tol: f64) -> Result<(Complex, f64)> {
    let mut acc = CompensatedSum::new();
    if !skip_zero {
        acc.add(powi(1.0 / c, k));
    }
    if k >= 3 {
        let mut n = 32u64;
        while inner_tail_bound(c, w, k, n as f64) > tol {
            n *= 2;
            if n > MAX_INDEX {
                return Err(Error::SlowConvergence { terms: MAX_INDEX });
            }
        }
        accumulate_row(&mut acc, c, w, k, 0, n);
        return Ok((acc.value(), inner_tail_bound(c, w, k, n as f64)));
    }
    // Eisenstein summation for k = 1, 2
    let mut partials = Vec::new();
    let mut done = 0u64;
    let mut n = 32u64;
    let mut best = (Complex::new(0.0, 0.0), f64::INFINITY);
    while n <= MAX_INDEX {
        accumulate_row(&mut acc, c, w, k, done, n);
        done = n;
        partials.push(acc.value());
        if partials.len() >= 4 {
            let (v, inc) = crate::accel::aitken_iterated(&partials);
            best = (v, inc);
            if inc <= tol {
                return Ok(best);
            }
        }
        n *= 2;
    }
    if best.1 <= 1e3 * tol {
        // close enough to report, with its honest increment
        return Ok(best);
    }
    Err(Error::SlowConvergence { terms: MAX_INDEX })
}

fn lattice_sum(lat: &Lattice, a: Complex, k: u32, skip_origin: bool, tol: f64) -> Result<(Complex, f64)> {
    let w1 = lat.w1();
    let w2 = lat.w2();
    let t = lat.tau().im;
    let h_a = (a / w1).im;
    let scale = w1.norm().powi(-(k as i32));
    let (m_max, outer_bound) = outer_truncation(k, scale, h_a, t, 0.25 * tol)?;
    let row_tol = 0.5 * tol / (2 * m_max + 1) as f64;
    let mut total = CompensatedSum::new();
    let mut err = outer_bound;
    let (r0, e0) = row_sum(a, w1, k, skip_origin, row_tol)?;
    total.add(r0);
    err += e0;
    for m in 1..=m_max {
        let mf = m as f64;
        let (rp, ep) = row_sum(a + w2 * mf, w1, k, false, row_tol)?;
        let (rm, em) = row_sum(a - w2 * mf, w1, k, false, row_tol)?;
        total.add(rp + rm);
        err += ep + em;
    }
    Ok((total.value(), err))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")))
    }
}

/// `E_k(a, W)` by Eisenstein summation: rows `m = -M..M`, each summed
/// symmetrically over `n`.
pub fn weil_direct(p: &WeilParams, tol: f64) -> Result<WeilReport> {
    check_tol(tol)?;
    let (value, err) = lattice_sum(&p.lat, p.a, p.k, false, tol)?;
    let zero = Complex::new(0.0, 0.0);
    Ok(WeilReport {
        value: crate::complex::ensure_finite(value, "weil_direct")?,
        j1: zero,
        j2: zero,
        j3: zero,
        eps_used: 0.0,
        row_correction: zero,
        err,
        method: Method::Direct,
    })
}

/// `G_k(W)` for `k >= 3`.
pub fn eisenstein_series(lat: &Lattice, k: u32, tol: f64) -> Result<Complex> {
    check_tol(tol)?;
    if k < 3 {
        return Err(Error::UnsupportedDecay { order: k as f64 });
    }
    let (value, _) = lattice_sum(lat, Complex::new(0.0, 0.0), k, true, tol)?;
    crate::complex::ensure_finite(value, "eisenstein_series")
}

// ---------------------------------------------------------------------------
// integral representation

pub const DEFAULT_EPS: f64 = 0.25;
const SNAP: f64 = 1e-12;
const MIN_NUDGED_EPS: f64 = 0.1;
const MAX_NUDGE: f64 = 0.2;
const POLE_MARGIN: f64 = 1e-6;

/// Chooses the split half-width. When the gap `(y0 - eps, y0 + eps]`
/// contains an integer and `y0` itself is not one, `eps` is moved to
/// `0.75 * dist(y0, Z)` provided that stays above 0.1 and within 0.2 of the
/// request; otherwise `eps` is kept and the gap row is summed separately.
pub fn choose_eps(y0: f64, eps: f64) -> f64 {
    if gap_rows(y0 - eps, y0 + eps).is_none() {
        return eps;
    }
    let d = (y0 - y0.round()).abs();
    if d > 1e-9 {
        let cand = 0.75 * d;
        if cand >= MIN_NUDGED_EPS && (cand - eps).abs() <= MAX_NUDGE {
            return cand;
        }
    }
    eps
}

/// The integer in `(lo, hi]`, if any (`hi - lo < 1`).
fn gap_rows(lo: f64, hi: f64) -> Option<i64> {
    let m = hi.floor();
    (m > lo).then_some(m as i64)
}

fn snap(y: f64) -> f64 {
    if (y - y.round()).abs() <= SNAP {
        y.round()
    } else {
        y
    }
}

/// `E_k(a, W)` through `J1 + J2 + J3` (plus the gap row when needed).
pub fn weil_integral(p: &WeilParams, eps: f64, tol: f64) -> Result<WeilReport> {
    check_tol(tol)?;
    if p.k < 3 {
        return Err(Error::UnsupportedDecay { order: p.k as f64 });
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidArgument(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    let coords = p.lat.coordinates(-p.a)?;
    let (x0, y0) = (coords.x0, coords.y0);
    let eps_used = choose_eps(y0, eps);
    let y_up = snap(y0 + eps_used);
    let y_dn = snap(y0 - eps_used);

    // distance from the pole to the horizontal lines y = y_up, y_dn
    let height = p.lat.det().abs() / p.lat.w1().norm();
    let distance = (y_up - y0).abs().min((y0 - y_dn).abs()) * height;
    if distance < POLE_MARGIN {
        return Err(Error::PoleNearDomain { distance });
    }

    let g = WeilIntegrand::new(p);
    let kf = p.k as f64;
    let shift = x0.round();
    let (p_up, p_dn) = (p1(y_up), p1(y_dn));
    let part_tol = 0.25 * tol;

    let j1 = integrate_line(
        |x| {
            let xs = x + shift;
            g.edge_integrand(xs, y_up) * p_up - g.edge_integrand(xs, y_dn) * p_dn
        },
        LineMode::Absolute,
        kf,
        part_tol,
    )?;
    let area = |x: f64, y: f64| g.area_integrand(x + shift, y);
    let j2 = integrate_half_strip(area, y_up, Direction::Up, kf, part_tol)?;
    let j3 = integrate_half_strip(area, y_dn, Direction::Down, kf, part_tol)?;

    let (row_correction, row_err) = match gap_rows(y_dn, y_up) {
        Some(m) => {
            let r = row_by_euler_maclaurin(&g, m as f64, x0, part_tol)?;
            (r.value, r.err)
        }
        None => (Complex::new(0.0, 0.0), 0.0),
    };

    let value = j1.value + j2.value + j3.value + row_correction;
    Ok(WeilReport {
        value: crate::complex::ensure_finite(value, "weil_integral")?,
        j1: j1.value,
        j2: j2.value,
        j3: j3.value,
        eps_used,
        row_correction,
        err: j1.err + j2.err + j3.err + row_err,
        method: Method::Integral,
    })
}

/// Width of the window of terms next to the pole that are added directly.
const ROW_WINDOW: f64 = 16.0;

/// `sum_n f(n, m)` over the whole row via the one-dimensional formula.
///
/// The three integers nearest the pole abscissa `x0` are added directly;
/// the two half-infinite remainders are Euler-MacLaurin sums over growing
/// windows, extrapolated in the window size.
fn row_by_euler_maclaurin(g: &WeilIntegrand, m: f64, x0: f64, tol: f64) -> Result<QuadratureResult> {
    let n0 = x0.floor();
    let left_end = n0 - 1.0;
    let right_start = n0 + 2.0;
    let mut direct = Complex::new(0.0, 0.0);
    for n in [n0, n0 + 1.0, n0 + 2.0] {
        direct += g.value(n, m);
    }
    let phi = |x: f64| g.value(x, m);
    let dphi = |x: f64| g.partials(x, m).dx;
    let ring = |j: usize, ring_tol: f64| -> Result<QuadratureResult> {
        let outer = ROW_WINDOW * 2f64.powi(j as i32);
        let inner = if j == 0 { 0.0 } else { 0.5 * outer };
        let right = em_sum_1d_detailed(phi, dphi, right_start + inner, right_start + outer, 0.5 * ring_tol)?;
        let left = em_sum_1d_detailed(phi, dphi, left_end - outer, left_end - inner, 0.5 * ring_tol)?;
        let mut piece = QuadratureResult {
            value: right.value + left.value,
            err: right.err + left.err,
            panels: 0,
            evals: 0,
        };
        if j == 0 {
            piece.value += direct;
        }
        Ok(piece)
    };
    extrapolate_rings(ring, Complex::new(g.k as f64 - 1.0, 0.0), tol, 4, 12)
}

/// Evaluates `E_k(a, W)` with the chosen method.
pub fn weil(p: &WeilParams, method: Method, eps: f64, tol: f64) -> Result<WeilReport> {
    match method {
        Method::Direct => weil_direct(p, tol),
        Method::Integral => weil_integral(p, eps, tol),
    }
}
