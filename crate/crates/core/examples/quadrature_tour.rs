//! The integrators underneath: a segment with sawtooth weight, the real
//! line in both modes, and a half-plane strip.

use latzeta::bernoulli::p1;
use latzeta::quadrature::{integrate_half_strip, integrate_line, integrate_segment, Direction, LineMode};
use latzeta::Complex;

fn main() -> latzeta::Result<()> {
    let re = |x: f64| Complex::new(x, 0.0);

    let r = integrate_segment(|x| re(x * p1(x)), 0.0, 3.0, &[], true, 1e-12)?;
    println!("int_0^3 x P1(x) dx         = {:.15}  (exact 1/4)  err {:.1e}, {} panels", r.value.re, r.err, r.panels);

    let r = integrate_line(|x| re(1.0 / (1.0 + x * x)), LineMode::Absolute, 2.0, 1e-10)?;
    println!("int 1/(1+x^2) dx           = {:.15}  (exact pi)   err {:.1e}", r.value.re, r.err);

    // only the symmetric limit of int_{-N}^{N} exists here
    let a = Complex::new(0.3, 0.5);
    let r = integrate_line(|x| 1.0 / (re(x) + a), LineMode::Symmetric, 1.0, 1e-8)?;
    println!("sym. int 1/(x+0.3+0.5i) dx = {:.12}  (exact -i pi)", r.value);

    let r = integrate_half_strip(
        |x, y| re(1.0 / (1.0 + x * x + y * y).powf(1.5)),
        0.0,
        Direction::Up,
        3.0,
        1e-8,
    )?;
    println!("half-plane (1+r^2)^(-3/2)  = {:.12}  (exact pi)   err {:.1e}", r.value.re, r.err);
    Ok(())
}
