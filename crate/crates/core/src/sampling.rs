//! Seeded random elements of `A(S,S)` and the three-way stability comparison.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::burnside::{Basis, BurnsideElement, Context};
use crate::charidem::PlacedSystem;
use crate::error::Result;
use crate::fusion::Scope;
use crate::rational::{frac, int};
use crate::stability::{absorbs, is_stable, Method, Side};

pub const DEFAULT_SEED: u64 = 0x5eed_f05e;

/// `count` bifree elements of `A(S,S)`: sparse integer combinations, about half of
/// them pushed through `ω_F` on one or both sides so stable elements occur too.
pub fn sample_elements(f: &PlacedSystem, count: usize, seed: u64) -> Result<Vec<BurnsideElement>> {
    let ctx = Context::square(f.fusion.group().clone(), f.p());
    let basis = Basis::new(&ctx, true);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let terms = rng.gen_range(1..=3);
        let mut x = BurnsideElement::zero(&ctx);
        for _ in 0..terms {
            let b = &basis.pairs()[rng.gen_range(0..basis.len())];
            let c = if rng.gen_bool(0.2) {
                frac(rng.gen_range(-3..=3), 1 + 2 * rng.gen_range(1..=2))
            } else {
                int(rng.gen_range(-3..=3))
            };
            x = x.checked_add(&BurnsideElement::from_hom(&ctx, b.hom(), c))?;
        }
        let x = match rng.gen_range(0..6) {
            0 => x.compose(&f.omega)?,
            1 => f.omega.compose(&x)?,
            2 => f.omega.compose(&x)?.compose(&f.omega)?,
            _ => x,
        };
        out.push(x);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleVerdict {
    pub side: Side,
    pub definitional: bool,
    pub marks: bool,
    pub absorption: bool,
}

impl TripleVerdict {
    pub fn agree(&self) -> bool {
        self.definitional == self.marks && self.marks == self.absorption
    }
}

/// Stability of `x` on both sides by definition, by marks, and by `x ∘ ω = x`.
pub fn triple_verdicts(x: &BurnsideElement, f: &PlacedSystem) -> Result<[TripleVerdict; 2]> {
    let one = |side: Side| -> Result<TripleVerdict> {
        Ok(TripleVerdict {
            side,
            definitional: is_stable(x, &f.fusion, side, Method::Definitional, Scope::Generators)?,
            marks: is_stable(x, &f.fusion, side, Method::Marks, Scope::All)?,
            absorption: absorbs(x, &f.omega, side)?,
        })
    };
    Ok([one(Side::Right)?, one(Side::Left)?])
}
