//! Writes |E_3(a, W)| over a patch of the complex plane as CSV, the same
//! table `latzeta grid` prints. Lattice points are left empty.

use latzeta::weil::{weil_direct, WeilParams};
use latzeta::{Complex, Lattice};

fn main() -> latzeta::Result<()> {
    let lat = Lattice::new(Complex::new(1.0, 0.0), Complex::new(0.5, 0.9))?;
    let n = 9;
    println!("re_a,im_a,re_E,im_E,abs_E");
    for j in 0..n {
        for i in 0..n {
            let a = Complex::new(-1.0 + 2.0 * i as f64 / (n - 1) as f64, -1.0 + 2.0 * j as f64 / (n - 1) as f64);
            if lat.contains(a)? {
                println!("{:.11e},{:.11e},,,", a.re, a.im);
                continue;
            }
            let e = weil_direct(&WeilParams::new(lat, a, 3)?, 1e-10)?.value;
            println!("{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}", a.re, a.im, e.re, e.im, e.norm());
        }
    }
    Ok(())
}
