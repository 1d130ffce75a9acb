//! Sequence acceleration for truncated infinite sums and integrals.
//!
//! Both accelerators act on partial results taken at geometrically
//! doubling truncation radii `R, 2R, 4R, ...`.

use crate::complex::Complex;

/// Richardson extrapolation for a sequence `S(R_j)`, `R_j = R_0 * 2^j`,
/// whose error has the asymptotic form `sum_i c_i R^(-(p0 + i))`.
///
/// The exponent may be complex (algebraic tails `(x+a)^(-s)`).
#[derive(Debug, Clone)]
pub struct Richardson {
    leading: Complex,
    max_order: usize,
    rows: Vec<Vec<Complex>>,
}

impl Richardson {
    /// `leading` is the exponent of the slowest error term; `max_order`
    /// caps the number of eliminated terms.
    pub fn new(leading: Complex, max_order: usize) -> Self {
        Self { leading, max_order, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push(&mut self, s: Complex) {
        let mut row = vec![s];
        if let Some(prev) = self.rows.last() {
            let depth = prev.len().min(self.max_order);
            for j in 0..depth {
                let p = self.leading + j as f64;
                let factor = Complex::new(2.0, 0.0).powc(p);
                let next = (factor * row[j] - prev[j]) / (factor - 1.0);
                row.push(next);
            }
        }
        self.rows.push(row);
    }

    /// Most extrapolated value of the latest row.
    pub fn estimate(&self) -> Complex {
        *self.rows.last().and_then(|r| r.last()).expect("empty Richardson table")
    }

    pub fn last_row(&self) -> &[Complex] {
        self.rows.last().map(|r| r.as_slice()).unwrap_or(&[])
    }

    /// Change of the best estimate since the previous row.
    pub fn increment(&self) -> f64 {
        match self.rows.len() {
            0 | 1 => f64::INFINITY,
            n => {
                let last = self.rows[n - 1].last().unwrap();
                let prev = self.rows[n - 2].last().unwrap();
                (last - prev).norm()
            }
        }
    }
}

/// Repeated Aitken delta-squared on a sequence of partial results.
///
/// Returns the most accelerated value and the size of its last increment.
/// Degenerate differences (already converged sequences) fall back to the
/// latest element at that level.
pub fn aitken_iterated(seq: &[Complex]) -> (Complex, f64) {
    assert!(!seq.is_empty());
    let mut level: Vec<Complex> = seq.to_vec();
    let mut best = *level.last().unwrap();
    let mut err = if level.len() >= 2 {
        (level[level.len() - 1] - level[level.len() - 2]).norm()
    } else {
        f64::INFINITY
    };
    while level.len() >= 3 {
        let next: Vec<Complex> = level
            .windows(3)
            .map(|w| aitken_step(w[0], w[1], w[2]))
            .collect();
        best = *next.last().unwrap();
        if next.len() >= 2 {
            err = (next[next.len() - 1] - next[next.len() - 2]).norm();
        }
        level = next;
    }
    (best, err)
}

fn aitken_step(s0: Complex, s1: Complex, s2: Complex) -> Complex {
    let d1 = s1 - s0;
    let d2 = s2 - s1;
    let denom = d2 - d1;
    let scale = s0.norm().max(s1.norm()).max(s2.norm());
    if denom.norm() <= 1e-14 * scale || denom.norm() == 0.0 {
        s2
    } else {
        s2 - d2 * d2 / denom
    }
}
