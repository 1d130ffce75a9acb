//! Adaptive integration of complex-valued, piecewise-smooth integrands.
//!
//! Every finite integral is split into panels at caller breakpoints and,
//! on request, at every integer (the `P1` factors jump there). Each smooth
//! panel is integrated with a 16-point Gauss-Legendre rule and refined by
//! bisection until the whole-vs-halves difference meets its share of the
//! tolerance.
//!
//! Infinite domains are truncated at radii `R, 2R, 4R, ...`; the partial
//! results are Richardson-extrapolated in `1/R` using the known algebraic
//! decay of the integrand (absolutely convergent case) or accelerated with
//! iterated Aitken (symmetric principal-value limits).

mod gauss;

use std::sync::OnceLock;

use crate::accel::{aitken_iterated, Richardson};
use crate::complex::{is_finite, Complex};
use crate::error::{Error, Result};

use gauss::{adapt_1d, adapt_2d, Tally};


pub const DEFAULT_PANEL_BUDGET: usize = 1 << 16;

/// Panel budget per integration call; `LATZETA_PANEL_BUDGET` overrides.
pub fn panel_budget() -> usize {
    static BUDGET: OnceLock<usize> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var("LATZETA_PANEL_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v >= 1.0)
            .map(|v| v as usize)
            .unwrap_or(DEFAULT_PANEL_BUDGET)
    })
}

/// Value, error estimate and work counters of one integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex,
    pub err: f64,
    pub panels: usize,
    pub evals: usize,
}

impl QuadratureResult {
    pub fn zero() -> Self {
        Self { value: Complex::new(0.0, 0.0), err: 0.0, panels: 0, evals: 0 }
    }

    fn absorb(&mut self, other: &QuadratureResult) {
        self.value += other.value;
        self.err += other.err;
        self.panels += other.panels;
        self.evals += other.evals;
    }
}

/// How an integral over the whole real line is understood.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineMode {
    /// Absolutely convergent integral.
    Absolute,
    /// `lim_{N -> inf} int_{-N}^{N}`.
    Symmetric,
}

/// Which half-plane a strip extends into from its edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

fn finish(tally: Tally, tol: f64) -> Result<QuadratureResult> {
    let res = QuadratureResult {
        value: tally.value.value(),
        err: tally.err,
        panels: tally.panels,
        evals: tally.evals,
    };
    if !is_finite(res.value) || !res.err.is_finite() {
        return Err(Error::NonFinite("integrand"));
    }
    if tally.exhausted || (tally.unresolved && res.err > tol * (1.0 + res.value.norm())) {
        return Err(Error::NoConvergence { best: res });
    }
    Ok(res)
}

fn cut_points(a: f64, b: f64, breakpoints: &[f64], integers: bool, budget: usize) -> Result<Vec<f64>> {
    let mut cuts = vec![a, b];
    cuts.extend(breakpoints.iter().copied().filter(|&p| p > a && p < b));
    if integers {
        let first = a.floor() + 1.0;
        let last = b.ceil() - 1.0;
        if last - first + 1.0 > budget as f64 {
            return Err(Error::NoConvergence { best: QuadratureResult::zero() });
        }
        let mut n = first;
        while n <= last {
            cuts.push(n);
            n += 1.0;
        }
    }
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();
    Ok(cuts)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")))
    }
}

fn segment_into<F: Fn(f64) -> Complex>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    integers: bool,
    tol: f64,
    tally: &mut Tally,
) -> Result<()> {
    if a == b {
        return Ok(());
    }
    let cuts = cut_points(a, b, breakpoints, integers, tally.budget)?;
    let total = b - a;
    for w in cuts.windows(2) {
        adapt_1d(f, w[0], w[1], tol * (w[1] - w[0]) / total, tally);
    }
    Ok(())
}

/// Integrates `f` over `[a, b]`, splitting at `breakpoints` and, when
/// `integer_breaks` is set, at every integer in `(a, b)`.
///
/// On success `err <= tol * (1 + |value|)` unless the integrand is resolved
/// to roundoff first.
pub fn integrate_segment<F: Fn(f64) -> Complex>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    integer_breaks: bool,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidArgument(format!("bad interval [{a}, {b}]")));
    }
    let mut tally = Tally::new(panel_budget());
    segment_into(&f, a, b, breakpoints, integer_breaks, tol, &mut tally)?;
    finish(tally, tol)
}

/// Integrates `f` over the rectangle `[x0,x1] x [y0,y1]`; with
/// `integer_breaks` the cells are split along every integer line in both
/// directions.
pub fn integrate_rectangle<F: Fn(f64, f64) -> Complex>(
    f: F,
    (x0, x1): (f64, f64),
    (y0, y1): (f64, f64),
    integer_breaks: bool,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    if ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) || x0 > x1 || y0 > y1 {
        return Err(Error::InvalidArgument("bad rectangle".into()));
    }
    let mut tally = Tally::new(panel_budget());
    if x0 == x1 || y0 == y1 {
        return finish(tally, tol);
    }
    let xs = cut_points(x0, x1, &[], integer_breaks, tally.budget)?;
    let ys = cut_points(y0, y1, &[], integer_breaks, tally.budget)?;
    if (xs.len() - 1) * (ys.len() - 1) > tally.budget {
        return Err(Error::NoConvergence { best: QuadratureResult::zero() });
    }
    let area = (x1 - x0) * (y1 - y0);
    for wy in ys.windows(2) {
        for wx in xs.windows(2) {
            let share = tol * (wx[1] - wx[0]) * (wy[1] - wy[0]) / area;
            adapt_2d(&f, wx[0], wx[1], wy[0], wy[1], share, &mut tally);
        }
    }
    finish(tally, tol)
}

/// Radii at which decay is sampled.
const DECAY_SAMPLES: [f64; 5] = [16.37, 64.37, 256.37, 1024.37, 4096.37];

/// Fails with `TailEstimateFailed` when `max |f|` on the sampled circle of
/// radius `R` does not fall like `R^(-order)` (within a generous factor).
fn check_decay<G: Fn(f64) -> f64>(max_abs_at: G, order: f64) -> Result<f64> {
    let scaled: Vec<f64> = DECAY_SAMPLES.iter().map(|&r| max_abs_at(r) * r.powf(order)).collect();
    if scaled.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("integrand tail"));
    }
    let near = scaled[0].max(scaled[1]);
    let far = scaled[scaled.len() - 1];
    if far > 64.0 * near && max_abs_at(DECAY_SAMPLES[4]) > 0.0 {
        return Err(Error::TailEstimateFailed);
    }
    Ok(scaled.iter().copied().fold(0.0, f64::max))
}

/// Drives a sequence of truncations: `ring(j, tol)` integrates the region
/// added when going from level `j-1` to level `j`. Cumulative results are
/// Richardson-extrapolated with error exponents `leading + i`.
pub(crate) fn extrapolate_rings<F>(
    mut ring: F,
    leading: Complex,
    tol: f64,
    min_levels: usize,
    max_levels: usize,
) -> Result<QuadratureResult>
where
    F: FnMut(usize, f64) -> Result<QuadratureResult>,
{
    let mut total = QuadratureResult::zero();
    let mut table = Richardson::new(leading, 4);
    let ring_tol = 0.1 * tol;
    for j in 0..max_levels {
        let piece = match ring(j, ring_tol) {
            Ok(p) => p,
            Err(Error::NoConvergence { best }) => {
                total.absorb(&best);
                table.push(total.value);
                return Err(Error::NoConvergence { best: with_estimate(&total, &table) });
            }
            Err(e) => return Err(e),
        };
        total.absorb(&piece);
        table.push(total.value);
        if j + 1 >= min_levels {
            let est = with_estimate(&total, &table);
            if est.err <= tol * (1.0 + est.value.norm()) {
                return Ok(est);
            }
        }
    }
    Err(Error::NoConvergence { best: with_estimate(&total, &table) })
}

/// The extrapolation error is the spread of the two most extrapolated
/// entries of the newest row, guarded by a tenth of the change along the
/// diagonal.
fn with_estimate(total: &QuadratureResult, table: &Richardson) -> QuadratureResult {
    let row = table.last_row();
    let spread = match row.len() {
        0 | 1 => f64::INFINITY,
        n => (row[n - 1] - row[n - 2]).norm(),
    };
    let inc = spread.max(0.1 * table.increment());
    QuadratureResult {
        value: table.estimate(),
        err: if inc.is_finite() { inc + 3.0 * total.err } else { f64::INFINITY },
        panels: total.panels,
        evals: total.evals,
    }
}

const LINE_R0: f64 = 16.0;
const STRIP_R0: f64 = 8.0;

fn levels_within(r0: f64, cost: impl Fn(f64) -> f64, budget: usize, cap: usize) -> usize {
    let mut n = 0;
    while n < cap && cost(r0 * 2f64.powi(n as i32)) <= budget as f64 {
        n += 1;
    }
    n.max(1)
}

/// Integrates `f` over the real line.
///
/// `decay_order` is `k` in `|f(x)| <= C |x|^(-k)`. In `Absolute` mode
/// (`k > 1`) the truncated integrals over `[-R, R]` are extrapolated with
/// error terms `R^(1-k), R^(-k), ...`; in `Symmetric` mode `int_{-N}^{N}`
/// is accelerated by iterated Aitken over `N`-doubling.
pub fn integrate_line<F: Fn(f64) -> Complex>(
    f: F,
    mode: LineMode,
    decay_order: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    if !(decay_order.is_finite() && decay_order > 0.0) {
        return Err(Error::UnsupportedDecay { order: decay_order });
    }
    check_decay(|r| f(r).norm().max(f(-r).norm()), decay_order)?;
    let budget = panel_budget();
    let ring = |j: usize, ring_tol: f64| -> Result<QuadratureResult> {
        let r = LINE_R0 * 2f64.powi(j as i32);
        let mut tally = Tally::new(budget);
        if j == 0 {
            segment_into(&f, -r, r, &[], true, ring_tol, &mut tally)?;
        } else {
            let inner = 0.5 * r;
            segment_into(&f, -r, -inner, &[], true, 0.5 * ring_tol, &mut tally)?;
            segment_into(&f, inner, r, &[], true, 0.5 * ring_tol, &mut tally)?;
        }
        finish(tally, ring_tol)
    };
    let max_levels = levels_within(LINE_R0, |r| 2.0 * r, budget / 2, 16);
    match mode {
        LineMode::Absolute => {
            if decay_order <= 1.0 {
                return Err(Error::UnsupportedDecay { order: decay_order });
            }
            extrapolate_rings(ring, Complex::new(decay_order - 1.0, 0.0), tol, 4, max_levels)
        }
        LineMode::Symmetric => aitken_rings(ring, tol, 5, max_levels),
    }
}

fn aitken_rings<F>(mut ring: F, tol: f64, min_levels: usize, max_levels: usize) -> Result<QuadratureResult>
where
    F: FnMut(usize, f64) -> Result<QuadratureResult>,
{
    let mut total = QuadratureResult::zero();
    let mut partials = Vec::new();
    let mut best = QuadratureResult::zero();
    for j in 0..max_levels {
        let piece = ring(j, 0.1 * tol)?;
        total.absorb(&piece);
        partials.push(total.value);
        let (v, inc) = aitken_iterated(&partials);
        best = QuadratureResult { value: v, err: inc + 3.0 * total.err, ..total };
        if j + 1 >= min_levels && best.err <= tol * (1.0 + v.norm()) {
            return Ok(best);
        }
    }
    Err(Error::NoConvergence { best })
}

/// `int_start^inf f` for an integrand whose tail error after truncation at
/// integer `R` expands in `R^(-leading), R^(-leading-1), ...`.
pub(crate) fn integrate_half_line<F: Fn(f64) -> Complex>(
    f: F,
    start: f64,
    leading: Complex,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    if leading.re <= 0.0 {
        return Err(Error::UnsupportedDecay { order: leading.re + 1.0 });
    }
    let budget = panel_budget();
    let base = start.ceil();
    let ring = |j: usize, ring_tol: f64| -> Result<QuadratureResult> {
        let hi = base + LINE_R0 * 2f64.powi(j as i32);
        let lo = if j == 0 { start } else { base + LINE_R0 * 2f64.powi(j as i32 - 1) };
        let mut tally = Tally::new(budget);
        segment_into(&f, lo, hi, &[], true, ring_tol, &mut tally)?;
        finish(tally, ring_tol)
    };
    let max_levels = levels_within(LINE_R0, |r| r, budget / 2, 16);
    extrapolate_rings(ring, leading, tol, 4, max_levels)
}

/// Integrates `f(x, y)` over the half-plane strip `x in R`, `y >= y_edge`
/// (`Up`) or `y <= y_edge` (`Down`), with cells split along every integer
/// line.
///
/// `decay_order` is `q` in `|f| <= C r^(-q)`; only `q > 2` (absolute
/// convergence in two dimensions) is accepted. Truncated rectangles of
/// half-width `R` are Richardson-extrapolated with error terms
/// `R^(2-q), R^(1-q), ...`.
pub fn integrate_half_strip<F: Fn(f64, f64) -> Complex>(
    f: F,
    y_edge: f64,
    direction: Direction,
    decay_order: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    if !(decay_order.is_finite() && decay_order > 2.0) {
        return Err(Error::UnsupportedDecay { order: decay_order });
    }
    if !y_edge.is_finite() {
        return Err(Error::InvalidArgument("non-finite strip edge".into()));
    }
    let sign = match direction {
        Direction::Up => 1.0,
        Direction::Down => -1.0,
    };
    check_decay(
        |r| {
            let y_far = y_edge + sign * r;
            [f(r, y_edge + sign * 0.5), f(-r, y_edge + sign * 0.5), f(0.37, y_far), f(r, y_far), f(-r, y_far)]
                .iter()
                .map(|v| v.norm())
                .fold(0.0, f64::max)
        },
        decay_order,
    )?;

    // y-cell boundaries start at the edge, then run along integers
    let anchor = match direction {
        Direction::Up => y_edge.ceil(),
        Direction::Down => y_edge.floor(),
    };
    let budget = panel_budget();
    let y_cells = |r: f64| -> Vec<(f64, f64)> {
        let mut cells = Vec::new();
        if anchor != y_edge {
            cells.push(ordered(y_edge, anchor));
        }
        let mut m = 0.0;
        while m < r {
            cells.push(ordered(anchor + sign * m, anchor + sign * (m + 1.0)));
            m += 1.0;
        }
        cells
    };
    let ring = |j: usize, ring_tol: f64| -> Result<QuadratureResult> {
        let r = STRIP_R0 * 2f64.powi(j as i32);
        let inner = if j == 0 { 0.0 } else { 0.5 * r };
        let ys = y_cells(r);
        let inner_rows = if j == 0 { 0 } else { y_cells(inner).len() };
        let mut cells = Vec::new();
        for (iy, &(ya, yb)) in ys.iter().enumerate() {
            let mut n = -r;
            while n < r {
                let inside_old = iy < inner_rows && n >= -inner && n < inner;
                if !inside_old {
                    cells.push((n, n + 1.0, ya, yb));
                }
                n += 1.0;
            }
        }
        let area: f64 = cells.iter().map(|c| (c.1 - c.0) * (c.3 - c.2)).sum();
        // the unit-cell grid itself is mandatory; the budget caps refinement
        let mut tally = Tally::new(budget + cells.len());
        for &(xa, xb, ya, yb) in &cells {
            let share = ring_tol * (xb - xa) * (yb - ya) / area;
            adapt_2d(&f, xa, xb, ya, yb, share, &mut tally);
        }
        finish(tally, ring_tol)
    };
    let max_levels = levels_within(STRIP_R0, |r| 2.0 * r * (r + 1.0), 4 * budget, 8);
    extrapolate_rings(ring, Complex::new(decay_order - 2.0, 0.0), tol, 4, max_levels)
}

fn ordered(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::p1;
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn segment_examples() {
        let r = integrate_segment(re, 0.0, 1.0, &[], false, 1e-12).unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-14);
        let r = integrate_segment(|x| re(p1(x)), 0.0, 2.0, &[], true, 1e-12).unwrap();
        assert!(r.value.norm() < 1e-14);
        let r = integrate_segment(|x| re(p1(x) * x), 0.0, 1.0, &[], true, 1e-12).unwrap();
        assert!((r.value.re - 1.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn segment_rejects_bad_input() {
        assert!(integrate_segment(re, 1.0, 0.0, &[], false, 1e-8).is_err());
        assert!(integrate_segment(re, 0.0, 1.0, &[], false, 0.0).is_err());
        assert!(integrate_segment(re, 0.0, f64::INFINITY, &[], false, 1e-8).is_err());
    }

    #[test]
    fn segment_honours_breakpoints() {
        // |x - 0.3| has a kink at 0.3
        let f = |x: f64| re((x - 0.3).abs());
        let r = integrate_segment(f, 0.0, 1.0, &[0.3], false, 1e-13).unwrap();
        let exact = 0.5 * (0.09 + 0.49);
        assert!((r.value.re - exact).abs() < 1e-14);
        assert_eq!(r.panels, 2);
    }

    #[test]
    fn tiny_budget_reports_no_convergence() {
        // sqrt singularity forces deep refinement
        let mut tally = Tally::new(8);
        adapt_1d(&|x: f64| re(x.abs().sqrt()), -1.0, 1.0 + 1e-3, 1e-14, &mut tally);
        assert!(tally.exhausted);
        assert!(matches!(finish(tally, 1e-14), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn line_arctan() {
        let r = integrate_line(|x| re(1.0 / (1.0 + x * x)), LineMode::Absolute, 2.0, 1e-10).unwrap();
        assert!((r.value.re - PI).abs() < 1e-9, "{}", r.value.re - PI);
        assert!(r.err < 1e-9);
    }

    #[test]
    fn line_symmetric_odd() {
        let r = integrate_line(|x| re(x / (1.0 + x * x)), LineMode::Symmetric, 1.0, 1e-10).unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn line_symmetric_principal_value() {
        // int_{-N}^{N} dx/(x+a) -> -i*pi for Im a > 0
        let a = Complex::new(0.3, 0.2);
        let r = integrate_line(|x| 1.0 / (a + x), LineMode::Symmetric, 1.0, 1e-9).unwrap();
        assert!((r.value - Complex::new(0.0, -PI)).norm() < 1e-8, "{}", r.value);
    }

    #[test]
    fn line_inverse_square_vanishes() {
        let a = Complex::new(0.3, 0.2);
        let f = |x: f64| {
            let d = a + x;
            1.0 / (d * d)
        };
        let r = integrate_line(f, LineMode::Absolute, 2.0, 1e-10).unwrap();
        assert!(r.value.norm() < 1e-9, "{}", r.value);
        // finite windows against the antiderivative -1/(x+a)
        for n in [1e3, 1e4] {
            let seg = integrate_segment(f, -n, n, &[], false, 1e-12).unwrap();
            let exact = 1.0 / (a - n) - 1.0 / (a + n);
            assert!((seg.value - exact).norm() < 1e-10);
        }
    }

    #[test]
    fn line_rejects_non_decaying() {
        let r = integrate_line(|_| re(1.0), LineMode::Absolute, 2.0, 1e-8);
        assert!(matches!(r, Err(Error::TailEstimateFailed)));
        let r = integrate_line(|x| re(1.0 / (1.0 + x * x)), LineMode::Absolute, 1.0, 1e-8);
        assert!(matches!(r, Err(Error::UnsupportedDecay { .. })));
    }

    #[test]
    fn half_line_algebraic() {
        // int_1^inf dx / x^3 = 1/2
        let r = integrate_half_line(|x| re(x.powi(-3)), 1.0, re(2.0), 1e-11).unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-10);
    }

    #[test]
    fn strip_zero() {
        let r = integrate_half_strip(|_, _| Complex::new(0.0, 0.0), 0.0, Direction::Up, 3.0, 1e-8).unwrap();
        assert_eq!(r.value, Complex::new(0.0, 0.0));
        assert_eq!(r.err, 0.0);
    }

    #[test]
    fn strip_rejects_slow_decay() {
        let r = integrate_half_strip(|_, _| re(0.0), 0.0, Direction::Up, 2.0, 1e-8);
        assert!(matches!(r, Err(Error::UnsupportedDecay { .. })));
    }

    #[test]
    fn strip_polar_oracle() {
        // int over y > 0 of (1 + x^2 + y^2)^(-2) = pi/2 (polar coordinates)
        let f = |x: f64, y: f64| re((1.0 + x * x + y * y).powi(-2));
        let up = integrate_half_strip(f, 0.0, Direction::Up, 4.0, 1e-8).unwrap();
        assert!((up.value.re - PI / 2.0).abs() <= up.err.max(1e-8), "{}", up.value.re - PI / 2.0);
        let down = integrate_half_strip(f, 0.0, Direction::Down, 4.0, 1e-8).unwrap();
        assert!((down.value.re - PI / 2.0).abs() < 1e-8);
    }
}
