//! Sums of n and n^2 over 0 < n <= beta from the one-dimensional
//! Euler-MacLaurin identity. The boundary terms only come out right with
//! P1(integer) = -1/2.

use latzeta::em2d::em_sum_1d;
use latzeta::Complex;

fn main() -> latzeta::Result<()> {
    let re = |x: f64| Complex::new(x, 0.0);
    for beta in [1.0, 5.0, 10.0, 100.0] {
        let linear = em_sum_1d(re, |_| re(1.0), 0.0, beta, 1e-12)?;
        let square = em_sum_1d(|x| re(x * x), |x| re(2.0 * x), 0.0, beta, 1e-12)?;
        println!("beta = {beta:>5}:  sum n = {:>12.6}   sum n^2 = {:>14.6}", linear.re, square.re);
    }
    Ok(())
}
