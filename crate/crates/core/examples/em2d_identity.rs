//! The four pieces I1..I4 of the two-dimensional summation formula for a
//! random smooth function, next to the brute-force lattice sum.

use latzeta::em2d::{brute_force_sum_2d, em_sum_2d, Function2D, PolyExp, Rect};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> latzeta::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for rect in [Rect::new(0.0, 6.0, -2.0, 3.0)?, Rect::new(-1.3, 7.6, 0.25, 9.9)?] {
        let f = PolyExp::random(&rect, &mut rng);
        let b = em_sum_2d(&f, &rect, 1e-11)?;
        let brute = brute_force_sum_2d(|x, y| f.value(x, y), &rect)?;
        println!("rect {rect:?}");
        println!("  I1 = {:.12}", b.i1);
        println!("  I2 = {:.12}", b.i2);
        println!("  I3 = {:.12}", b.i3);
        println!("  I4 = {:.12}", b.i4);
        println!("  total       {:.12}", b.total);
        println!("  brute force {:.12}   |diff| = {:.1e}", brute, (b.total - brute).norm());
    }
    Ok(())
}
