//! Eisenstein series G_k of the square and hexagonal lattices. Symmetry
//! forces G_6 = 0 on the square lattice and G_4 = 0 on the hexagonal one.

use latzeta::weil::eisenstein_series;
use latzeta::{Complex, Lattice};

fn main() -> latzeta::Result<()> {
    let square = Lattice::new(Complex::new(1.0, 0.0), Complex::new(0.0, 1.0))?;
    let hexagonal = Lattice::new(Complex::new(1.0, 0.0), Complex::new(-0.5, 3f64.sqrt() / 2.0))?;
    for (name, lat) in [("square", square), ("hexagonal", hexagonal)] {
        for k in 3..=8 {
            let g = eisenstein_series(&lat, k, 1e-12)?;
            println!("{name:>9}  G_{k} = {:+.14e} {:+.14e}i", g.re, g.im);
        }
    }
    Ok(())
}
