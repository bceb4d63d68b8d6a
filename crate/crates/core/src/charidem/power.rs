use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::burnside::{BasisPair, BurnsideElement, Context};
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::rational::{rational_reconstruct, PLocalRational};

use super::characteristic_element_from_group;

/// Moduli stay below this so products of two residues fit in an `i128`.
const MODULUS_CAP: i128 = 1 << 62;
const START_BITS: u32 = 30;
const K_STEP: u32 = 8;

/// Integral structure constants of `A(S,S)` on the pairs met so far.
struct Ring {
    ctx: Context,
    pairs: Vec<BasisPair>,
    index: HashMap<BasisPair, usize>,
    table: HashMap<(usize, usize), Vec<(usize, i128)>>,
}

impl Ring {
    fn intern(&mut self, pair: &BasisPair) -> usize {
        if let Some(&i) = self.index.get(pair) {
            return i;
        }
        self.pairs.push(pair.clone());
        self.index.insert(pair.clone(), self.pairs.len() - 1);
        self.pairs.len() - 1
    }

    fn product(&mut self, i: usize, j: usize) -> Result<Vec<(usize, i128)>> {
        if let Some(v) = self.table.get(&(i, j)) {
            return Ok(v.clone());
        }
        let a = BurnsideElement::basis(&self.ctx, self.pairs[i].clone());
        let b = BurnsideElement::basis(&self.ctx, self.pairs[j].clone());
        let c = a.compose(&b)?;
        let mut out = Vec::new();
        for (pair, q) in c.terms() {
            let v = q.to_integer().to_i128().filter(|_| q.is_integer()).expect("integral structure constant");
            out.push((self.intern(pair), v));
        }
        self.table.insert((i, j), out.clone());
        Ok(out)
    }

    fn mul(&mut self, a: &[i128], b: &[i128], m: i128) -> Result<Vec<i128>> {
        let mut out = vec![0i128; self.pairs.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y % m;
                for (k, c) in self.product(i, j)? {
                    if k >= out.len() {
                        out.resize(self.pairs.len(), 0);
                    }
                    out[k] = (out[k] + xy * c.rem_euclid(m)) % m;
                }
            }
        }
        out.resize(self.pairs.len(), 0);
        Ok(out)
    }

    fn pow(&mut self, a: &[i128], mut e: u64, m: i128) -> Result<Vec<i128>> {
        let mut base = a.to_vec();
        let mut acc: Option<Vec<i128>> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(x) => self.mul(&x, &base, m)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base, m)?;
            }
        }
        Ok(acc.expect("positive exponent"))
    }
}

fn padded(v: &[i128], len: usize) -> Vec<i128> {
    let mut v = v.to_vec();
    v.resize(len, 0);
    v
}

/// `ω_F` as the `p`-adic limit of `Ω^{n!}`, found modulo `p^k` and reconstructed;
/// `k` grows until an exactly verified idempotent appears.
pub fn power_iteration(f: &FusionSystem) -> Result<BurnsideElement> {
    let omega = characteristic_element_from_group(f)?.element;
    let p = f.p() as i128;
    let mut ring =
        Ring { ctx: omega.context().clone(), pairs: Vec::new(), index: HashMap::new(), table: HashMap::new() };
    let mut start = Vec::new();
    for (pair, c) in omega.terms() {
        let i = ring.intern(pair);
        start.resize(i + 1, 0);
        start[i] = c.to_integer().to_i128().expect("integral Ω");
    }

    let mut k = 1u32;
    while p.pow(k) < (1i128 << START_BITS) {
        k += 1;
    }
    loop {
        let Some(m) = p.checked_pow(k).filter(|&m| m < MODULUS_CAP) else {
            return Err(Error::Reconstruction { k });
        };
        let mut y: Vec<i128> = start.iter().map(|c| c.rem_euclid(m)).collect();
        let max_n = 64 + 4 * k as u64;
        let mut stable = None;
        for n in 2..=max_n {
            y = ring.pow(&y, n, m)?;
            let len = ring.pairs.len();
            y = padded(&y, len);
            let sq = ring.mul(&y, &y, m)?;
            if padded(&sq, ring.pairs.len()) == padded(&y, ring.pairs.len()) {
                stable = Some(y.clone());
                break;
            }
        }
        if let Some(y) = stable {
            if let Some(candidate) = reconstruct(&ring, &y, m) {
                if super::accept(&candidate, f)? {
                    return Ok(candidate);
                }
            }
        }
        k += K_STEP;
    }
}

fn reconstruct(ring: &Ring, y: &[i128], m: i128) -> Option<BurnsideElement> {
    let mut terms = Vec::new();
    for (pair, &r) in ring.pairs.iter().zip(y) {
        if r == 0 {
            continue;
        }
        let (n, d) = rational_reconstruct(r, m)?;
        let q = PLocalRational::new(BigInt::from(n), BigInt::from(d));
        if !q.is_zero() {
            terms.push((pair.hom().clone(), q));
        }
    }
    Some(BurnsideElement::from_terms(&ring.ctx, terms))
}
