//! Hurwitz-Lerch zeta by its series and by the integral representation,
//! plus a few zeta values.

use latzeta::lerch::{hurwitz_zeta, lerch_coffey, lerch_series, riemann_zeta, LerchParams};
use latzeta::Complex;

fn main() -> latzeta::Result<()> {
    let c = Complex::new;
    let cases = [
        (c(0.5, 0.0), c(2.0, 0.0), c(1.0, 0.0)),
        (c(0.3, 0.4), c(2.5, 1.0), c(0.7, 0.2)),
        (c(0.9, 0.0), c(1.2, -2.0), c(3.5, 0.0)),
    ];
    for (z, s, a) in cases {
        let p = LerchParams::new(z, s, a)?;
        let series = lerch_series(&p, 1e-12)?;
        let integral = lerch_coffey(&p, 1e-12)?;
        println!("Phi({z}, {s}, {a}) = {series:.14}  (integral differs by {:.1e})", (series - integral).norm());
    }
    println!("zeta(2)      = {:.14}  pi^2/6 = {:.14}", riemann_zeta(c(2.0, 0.0), 1e-12)?.re, std::f64::consts::PI.powi(2) / 6.0);
    println!("zeta(3)      = {:.14}", riemann_zeta(c(3.0, 0.0), 1e-12)?.re);
    println!("zeta(2, 1/2) = {:.14}  pi^2/2 = {:.14}", hurwitz_zeta(c(2.0, 0.0), c(0.5, 0.0), 1e-12)?.re, std::f64::consts::PI.powi(2) / 2.0);
    Ok(())
}
