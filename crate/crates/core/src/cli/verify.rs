//! Seeded self-checks behind `latzeta verify`.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::complex::{powi, Complex};
use crate::em2d::{brute_force_sum_2d, em_sum_1d, em_sum_2d, Function2D, PolyExp, Rect};
use crate::error::Result;
use crate::lattice::Lattice;
use crate::lerch::{lerch_coffey, lerch_series, riemann_zeta, LerchParams};
use crate::weil::{eisenstein_series, weil_direct, weil_integral, WeilParams};

use super::registry::Builtin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Em2d,
    Weil,
    Lerch,
    All,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub limit: f64,
    pub note: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.note.is_none() && self.measured <= self.limit
    }

    fn from_result(name: &'static str, limit: f64, r: Result<f64>) -> Self {
        match r {
            Ok(measured) => Check { name, measured, limit, note: None },
            Err(e) => Check { name, measured: f64::INFINITY, limit, note: Some(format!("{}: {e}", e.code())) },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "measured": if self.measured.is_finite() { json!(self.measured) } else { Value::Null },
            "limit": self.limit,
            "passed": self.passed(),
            "note": self.note,
        })
    }

    pub fn to_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status}  {:<26} measured {:>10.3e}  limit {:.1e}", self.name, self.measured, self.limit);
        if let Some(n) = &self.note {
            line.push_str("  ");
            line.push_str(n);
        }
        line
    }
}

pub fn run(suite: Suite, seed: u64, tol: f64) -> Vec<Check> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Em2d | Suite::All) {
        checks.extend(em2d_suite(seed, tol));
    }
    if matches!(suite, Suite::Weil | Suite::All) {
        checks.extend(weil_suite(seed, tol));
    }
    if matches!(suite, Suite::Lerch | Suite::All) {
        checks.extend(lerch_suite(seed, tol));
    }
    checks
}

fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for v in values {
        worst = worst.max(v?);
    }
    Ok(worst)
}

/// Random rectangle with sides at most 12; endpoints are integers half the
/// time.
pub fn random_rect(rng: &mut impl Rng) -> Rect {
    let side = |rng: &mut dyn rand::RngCore| -> (f64, f64) {
        let integer = rng.gen_bool(0.5);
        let lo: f64 = rng.gen_range(-6.0..6.0);
        let len: f64 = rng.gen_range(1.0..12.0);
        if integer {
            (lo.round(), (lo + len).round().max(lo.round() + 1.0))
        } else {
            (lo, lo + len)
        }
    };
    let (a1, b1) = side(rng);
    let (a2, b2) = side(rng);
    Rect::new(a1, b1, a2, b2).expect("valid random rectangle")
}

fn em2d_suite(seed: u64, tol: f64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limit = 10.0 * tol;
    let convention = max_of([1.0, 5.0, 10.0].into_iter().flat_map(|beta: f64| {
        let n = beta;
        [
            em_sum_1d(re, |_| re(1.0), 0.0, beta, tol).map(|v| (v.re - n * (n + 1.0) / 2.0).abs()),
            em_sum_1d(|x| re(x * x), |x| re(2.0 * x), 0.0, beta, tol)
                .map(|v| (v.re - n * (n + 1.0) * (2.0 * n + 1.0) / 6.0).abs()),
        ]
    }));
    let identity = max_of((0..50).map(|_| {
        let rect = random_rect(&mut rng);
        let f = PolyExp::random(&rect, &mut rng);
        let b = em_sum_2d(&f, &rect, tol)?;
        let brute = brute_force_sum_2d(|x, y| f.value(x, y), &rect)?;
        Ok((b.total - brute).norm())
    }));
    let registry = max_of(Builtin::all().into_iter().map(|b| {
        let rect = Rect::new(-1.5, 4.0, 0.0, 4.0)?;
        let f = b.instantiate(&rect, seed);
        let total = em_sum_2d(f.as_ref(), &rect, tol)?.total;
        let brute = brute_force_sum_2d(|x, y| f.value(x, y), &rect)?;
        Ok((total - brute).norm())
    }));
    vec![
        Check::from_result("em1d.convention", limit, convention),
        Check::from_result("em2d.identity", limit, identity),
        Check::from_result("em2d.registry", limit, registry),
    ]
}

/// Random lattice with `w1` on a random ray and `a` inside the fundamental
/// cell, away from its corners.
pub fn random_weil_case(rng: &mut impl Rng) -> (Lattice, Complex) {
    let w1 = Complex::from_polar(rng.gen_range(0.7..1.5), rng.gen_range(-0.6..0.6));
    let tau = Complex::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.7..1.6));
    let lat = Lattice::new(w1, w1 * tau).expect("non-degenerate random lattice");
    let a = lat.point(rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
    (lat, a)
}

fn relative(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

fn weil_suite(seed: u64, tol: f64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (lat, a) = random_weil_case(&mut rng);
    let direct = |lat: Lattice, a: Complex, k: u32| -> Result<Complex> {
        Ok(weil_direct(&WeilParams::new(lat, a, k)?, tol)?.value)
    };
    // the integral path is compared at the 1e-6 level, so it runs at 1e-7
    let itol = tol.max(1e-7);
    let integral = |lat: Lattice, a: Complex, k: u32, eps: f64| -> Result<Complex> {
        Ok(weil_integral(&WeilParams::new(lat, a, k)?, eps, itol)?.value)
    };

    let parity = max_of((1..=4).map(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let e = direct(lat, a, k)?;
        Ok(relative(direct(lat, -a, k)?, e * sign))
    }));
    let lambda = Complex::new(0.0, 2.0);
    let homogeneity = max_of((1..=4).map(|k| {
        let e = direct(lat, a, k)?;
        let scaled = direct(lat.scaled(lambda)?, a * lambda, k)?;
        Ok(relative(scaled, e / powi(lambda, k)))
    }));
    let periodicity = max_of((3..=4).flat_map(|k| {
        [lat.w1(), lat.w2()].map(|w| Ok(relative(direct(lat, a + w, k)?, direct(lat, a, k)?)))
    }));
    let h = 1e-4;
    let derivative = max_of((3..=5).map(|k| {
        let fd = (direct(lat, a + h, k)? - direct(lat, a - h, k)?) / (2.0 * h);
        let exact = direct(lat, a, k + 1)? * -(k as f64);
        Ok((fd - exact).norm() / exact.norm())
    }));
    let equivalence = max_of((3..=6).map(|k| {
        let (lat, a) = random_weil_case(&mut rng);
        let d = direct(lat, a, k)?;
        Ok(relative(integral(lat, a, k, 0.25)?, d))
    }));
    let eps_invariance = {
        let r = (|| -> Result<f64> {
            Ok(relative(integral(lat, a, 4, 0.4)?, integral(lat, a, 4, 0.25)?))
        })();
        Check::from_result("weil.eps_invariance", 1e-6, r)
    };
    let row_correction = {
        let sq = Lattice::new(re(1.0), Complex::new(0.0, 1.0));
        let r = (|| -> Result<f64> {
            let p = WeilParams::new(sq?, Complex::new(-0.5, -1.0), 4)?;
            let rep = weil_integral(&p, 0.25, itol)?;
            if rep.row_correction.norm() == 0.0 {
                return Ok(f64::INFINITY);
            }
            Ok(relative(rep.value, weil_direct(&p, tol)?.value))
        })();
        Check::from_result("weil.row_correction", 1e-6, r)
    };
    let zeros = {
        let r = (|| -> Result<f64> {
            let sq = Lattice::new(re(1.0), Complex::new(0.0, 1.0))?;
            let hex = Lattice::new(re(1.0), Complex::new(-0.5, 3f64.sqrt() / 2.0))?;
            let values = [
                eisenstein_series(&lat, 3, tol)?,
                eisenstein_series(&lat, 5, tol)?,
                eisenstein_series(&sq, 6, tol)?,
                eisenstein_series(&hex, 4, tol)?,
            ];
            Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max))
        })();
        Check::from_result("weil.structural_zeros", 1e-8, r)
    };
    vec![
        Check::from_result("weil.parity", 1e-8, parity),
        Check::from_result("weil.homogeneity", 1e-8, homogeneity),
        Check::from_result("weil.periodicity", 1e-7, periodicity),
        Check::from_result("weil.derivative", 1e-4, derivative),
        Check::from_result("weil.equivalence", (10.0 * tol).max(1e-6), equivalence),
        eps_invariance,
        row_correction,
        zeros,
    ]
}

/// A point of the region where both Lerch evaluations apply.
pub fn random_lerch_case(rng: &mut impl Rng, complex_s: bool) -> LerchParams {
    let z = re(rng.gen_range(0.01..=0.9));
    let s = if complex_s {
        Complex::new(rng.gen_range(1.2..5.0), rng.gen_range(-2.0..2.0))
    } else {
        re(rng.gen_range(1.2..5.0))
    };
    let a = re(rng.gen_range(0.5..4.0));
    LerchParams::new(z, s, a).expect("valid Lerch parameters")
}

fn lerch_suite(seed: u64, tol: f64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1e4c);
    let limit = 10.0 * tol;
    let equivalence = max_of((0..50).map(|i| {
        let p = random_lerch_case(&mut rng, i % 2 == 1);
        Ok((lerch_series(&p, tol)? - lerch_coffey(&p, tol)?).norm())
    }));
    let shift = max_of((0..10).map(|_| {
        let p = random_lerch_case(&mut rng, true);
        let next = LerchParams::new(p.z, p.s, p.a + 1.0)?;
        let lhs = lerch_coffey(&p, tol)?;
        let rhs = p.z * lerch_coffey(&next, tol)? + (-p.s * p.a.ln()).exp();
        Ok((lhs - rhs).norm())
    }));
    let zeta2 = riemann_zeta(re(2.0), tol).map(|v| (v - std::f64::consts::PI.powi(2) / 6.0).norm());
    vec![
        Check::from_result("lerch.equivalence", limit, equivalence),
        Check::from_result("lerch.shift", limit, shift),
        Check::from_result("lerch.zeta2", limit.max(1e-8), zeta2),
    ]
}
