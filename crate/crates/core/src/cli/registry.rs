//! Built-in test functions for the `em2d` subcommand.

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::em2d::{Function2D, Partials, PolyExp, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// constant 1
    One,
    /// x y
    Xy,
    /// x^2 + y^2
    X2y2,
    /// (1 + x^2 + y^2)^(-3)
    InvCube,
    /// seeded random cubic-times-exponential function
    PolyExp,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::One => "one",
            Builtin::Xy => "xy",
            Builtin::X2y2 => "x2y2",
            Builtin::InvCube => "inv-cube",
            Builtin::PolyExp => "poly-exp",
        }
    }

    pub fn all() -> [Builtin; 5] {
        [Builtin::One, Builtin::Xy, Builtin::X2y2, Builtin::InvCube, Builtin::PolyExp]
    }

    pub fn instantiate(self, rect: &Rect, seed: u64) -> Box<dyn Function2D> {
        match self {
            Builtin::PolyExp => Box::new(PolyExp::random(rect, &mut ChaCha8Rng::seed_from_u64(seed))),
            other => Box::new(Elementary(other)),
        }
    }
}

struct Elementary(Builtin);

fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

impl Function2D for Elementary {
    fn partials(&self, x: f64, y: f64) -> Partials {
        let (f, dx, dy, dxy) = match self.0 {
            Builtin::One => (1.0, 0.0, 0.0, 0.0),
            Builtin::Xy => (x * y, y, x, 1.0),
            Builtin::X2y2 => (x * x + y * y, 2.0 * x, 2.0 * y, 0.0),
            Builtin::InvCube => {
                let u = 1.0 / (1.0 + x * x + y * y);
                let u3 = u * u * u;
                (u3, -6.0 * x * u3 * u, -6.0 * y * u3 * u, 48.0 * x * y * u3 * u * u)
            }
            Builtin::PolyExp => unreachable!("handled by PolyExp"),
        };
        Partials { f: re(f), dx: re(dx), dy: re(dy), dxy: re(dxy) }
    }
}
