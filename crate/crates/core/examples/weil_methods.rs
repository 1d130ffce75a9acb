//! E_k(a, W) by direct Eisenstein summation and by the integral
//! representation, with the J1/J2/J3 split and the gap-row correction.

use latzeta::weil::{weil_direct, weil_integral, WeilParams};
use latzeta::{Complex, Lattice};
use std::time::Instant;

fn main() -> latzeta::Result<()> {
    let c = Complex::new;
    let square = Lattice::new(c(1.0, 0.0), c(0.0, 1.0))?;
    let skew = Lattice::new(c(1.2, 0.3), c(0.4, 1.1))?;
    let cases = [
        (square, c(0.3, 0.2), 4, 0.25),
        (square, c(0.3, 0.2), 4, 0.4),
        (square, c(-0.5, -1.0), 4, 0.25), // pole row falls inside the band
        (skew, c(0.55, 0.7), 3, 0.25),
        (skew, c(0.55, 0.7), 6, 0.25),
    ];
    for (lat, a, k, eps) in cases {
        let p = WeilParams::new(lat, a, k)?;
        let direct = weil_direct(&p, 1e-12)?;
        let t = Instant::now();
        let r = weil_integral(&p, eps, 1e-8)?;
        println!("k={k} a={a} eps={eps} (used {:.3})", r.eps_used);
        println!("  J1 = {:.10}  J2 = {:.10}  J3 = {:.10}", r.j1, r.j2, r.j3);
        if r.row_correction.norm() > 0.0 {
            println!("  gap row = {:.10}", r.row_correction);
        }
        println!(
            "  integral {:.12}  direct {:.12}  rel diff {:.1e}  ({:.2?})",
            r.value,
            direct.value,
            (r.value - direct.value).norm() / (1.0 + direct.value.norm()),
            t.elapsed()
        );
    }
    Ok(())
}
