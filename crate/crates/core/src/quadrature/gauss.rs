//! Gauss-Legendre panel rules and local adaptive refinement.

use std::sync::OnceLock;

use crate::complex::{CompensatedSum, Complex};

pub(crate) const ORDER: usize = 16;

/// Order of the companion rule used for the 2-D error estimate.
const LOW_ORDER: usize = 8;

struct Rule<const N: usize> {
    nodes: [f64; N],
    weights: [f64; N],
}

impl<const N: usize> Rule<N> {
    fn build() -> Self {
        let (n, w) = legendre(N);
        let mut nodes = [0.0; N];
        let mut weights = [0.0; N];
        nodes.copy_from_slice(&n);
        weights.copy_from_slice(&w);
        Rule { nodes, weights }
    }
}

fn rule() -> &'static Rule<ORDER> {
    static RULE: OnceLock<Rule<ORDER>> = OnceLock::new();
    RULE.get_or_init(Rule::build)
}

fn low_rule() -> &'static Rule<LOW_ORDER> {
    static RULE: OnceLock<Rule<LOW_ORDER>> = OnceLock::new();
    RULE.get_or_init(Rule::build)
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// by Newton iteration on `P_n`.
pub(crate) fn legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_eval(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_eval(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// One Gauss-Legendre panel: integral and integral of `|f|`.
#[inline]
pub(crate) fn panel<F: Fn(f64) -> Complex>(f: &F, a: f64, b: f64) -> (Complex, f64) {
    let r = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = Complex::new(0.0, 0.0);
    let mut abs = 0.0;
    for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
        let v = f(mid + half * x);
        sum += v * *w;
        abs += v.norm() * w;
    }
    (sum * half, abs * half.abs())
}

/// Tensor-product panel on `[x0,x1] x [y0,y1]`.
#[inline]
pub(crate) fn cell<F: Fn(f64, f64) -> Complex>(f: &F, x0: f64, x1: f64, y0: f64, y1: f64) -> (Complex, f64) {
    tensor(rule(), f, x0, x1, y0, y1)
}

#[inline]
fn tensor<const N: usize, F: Fn(f64, f64) -> Complex>(
    r: &Rule<N>,
    f: &F,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
) -> (Complex, f64) {
    let hx = 0.5 * (x1 - x0);
    let mx = 0.5 * (x0 + x1);
    let hy = 0.5 * (y1 - y0);
    let my = 0.5 * (y0 + y1);
    let mut sum = Complex::new(0.0, 0.0);
    let mut abs = 0.0;
    for (ty, wy) in r.nodes.iter().zip(r.weights.iter()) {
        let y = my + hy * ty;
        let mut row = Complex::new(0.0, 0.0);
        let mut row_abs = 0.0;
        for (tx, wx) in r.nodes.iter().zip(r.weights.iter()) {
            let v = f(mx + hx * tx, y);
            row += v * *wx;
            row_abs += v.norm() * wx;
        }
        sum += row * *wy;
        abs += row_abs * wy;
    }
    let area = (hx * hy).abs();
    (sum * area, abs * area)
}

/// Running totals for one adaptive integration call.
#[derive(Debug)]
pub(crate) struct Tally {
    pub value: CompensatedSum,
    pub err: f64,
    pub panels: usize,
    pub evals: usize,
    pub budget: usize,
    /// the panel budget ran out; remaining panels were accepted unrefined
    pub exhausted: bool,
    /// some panel hit the depth limit above tolerance
    pub unresolved: bool,
}

impl Tally {
    pub fn new(budget: usize) -> Self {
        Self {
            value: CompensatedSum::new(),
            err: 0.0,
            panels: 0,
            evals: 0,
            budget,
            exhausted: false,
            unresolved: false,
        }
    }

    fn accept(&mut self, v: Complex, err: f64) {
        self.value.add(v);
        self.err += err;
        self.panels += 1;
    }
}

const ROUNDOFF: f64 = 64.0 * f64::EPSILON;
const MAX_DEPTH_1D: u32 = 48;
const MAX_DEPTH_2D: u32 = 24;

/// Integrates a smooth panel to absolute tolerance `tol` by bisection;
/// the error estimate is `|Q[a,b] - (Q[a,m] + Q[m,b])|`.
pub(crate) fn adapt_1d<F: Fn(f64) -> Complex>(f: &F, a: f64, b: f64, tol: f64, tally: &mut Tally) {
    let whole = panel(f, a, b);
    tally.evals += ORDER;
    adapt_1d_inner(f, a, b, whole.0, tol, 0, tally);
}

fn adapt_1d_inner<F: Fn(f64) -> Complex>(
    f: &F,
    a: f64,
    b: f64,
    whole: Complex,
    tol: f64,
    depth: u32,
    tally: &mut Tally,
) {
    let m = 0.5 * (a + b);
    let (left, labs) = panel(f, a, m);
    let (right, rabs) = panel(f, m, b);
    tally.evals += 2 * ORDER;
    let halves = left + right;
    let floor = ROUNDOFF * (labs + rabs);
    let err = (whole - halves).norm().max(floor);
    if err <= tol || err <= floor {
        tally.accept(halves, err);
        return;
    }
    if depth >= MAX_DEPTH_1D || tally.exhausted {
        tally.unresolved |= depth >= MAX_DEPTH_1D;
        tally.accept(halves, err);
        return;
    }
    if tally.panels + 2 > tally.budget {
        tally.exhausted = true;
        tally.accept(halves, err);
        return;
    }
    adapt_1d_inner(f, a, m, left, 0.5 * tol, depth + 1, tally);
    adapt_1d_inner(f, m, b, right, 0.5 * tol, depth + 1, tally);
}

/// Integrates a smooth cell to absolute tolerance `tol`. The error of the
/// 16x16 tensor rule is estimated by its distance to the 8x8 rule on the
/// same cell; failing cells are quadrisected.
pub(crate) fn adapt_2d<F: Fn(f64, f64) -> Complex>(
    f: &F,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    tol: f64,
    tally: &mut Tally,
) {
    adapt_2d_inner(f, [x0, x1, y0, y1], tol, 0, tally);
}

fn adapt_2d_inner<F: Fn(f64, f64) -> Complex>(
    f: &F,
    [x0, x1, y0, y1]: [f64; 4],
    tol: f64,
    depth: u32,
    tally: &mut Tally,
) {
    let (high, abs) = cell(f, x0, x1, y0, y1);
    let (low, _) = tensor(low_rule(), f, x0, x1, y0, y1);
    tally.evals += ORDER * ORDER + LOW_ORDER * LOW_ORDER;
    let floor = ROUNDOFF * abs;
    let err = (high - low).norm().max(floor);
    if err <= tol || err <= floor {
        tally.accept(high, err);
        return;
    }
    if depth >= MAX_DEPTH_2D || tally.exhausted {
        tally.unresolved |= depth >= MAX_DEPTH_2D;
        tally.accept(high, err);
        return;
    }
    if tally.panels + 4 > tally.budget {
        tally.exhausted = true;
        tally.accept(high, err);
        return;
    }
    let xm = 0.5 * (x0 + x1);
    let ym = 0.5 * (y0 + y1);
    for q in [[x0, xm, y0, ym], [xm, x1, y0, ym], [x0, xm, ym, y1], [xm, x1, ym, y1]] {
        adapt_2d_inner(f, q, 0.25 * tol, depth + 1, tally);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_symmetric_and_normalized() {
        let r = rule();
        let total: f64 = r.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        for i in 0..ORDER {
            assert!((r.nodes[i] + r.nodes[ORDER - 1 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_for_degree_31() {
        // integral of x^30 over [-1,1] = 2/31
        let f = |x: f64| Complex::new(x.powi(30), x.powi(31));
        let (v, _) = panel(&f, -1.0, 1.0);
        assert!((v.re - 2.0 / 31.0).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn cell_integrates_separable_product() {
        let f = |x: f64, y: f64| Complex::new(x * x * y, 0.0);
        let (v, _) = cell(&f, 0.0, 1.0, 0.0, 2.0);
        assert!((v.re - 2.0 / 3.0).abs() < 1e-14);
    }
}
