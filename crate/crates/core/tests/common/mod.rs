#![allow(dead_code)]

use std::sync::Arc;

use fusionkit::burnside::{Basis, BurnsideElement, Context};
use fusionkit::catalog::scenarios;
use fusionkit::charidem::PlacedSystem;
use fusionkit::fusion::FusionSystem;
use fusionkit::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use fusionkit::lattice::sylow_subgroup;
use fusionkit::linalg::Matrix;
use fusionkit::rational::{int, PLocalRational};
use fusionkit::scenario::resolve;
use num_traits::Zero;

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::builtin(name, DEFAULT_MAX_ORDER).unwrap())
}

pub fn realized(name: &str, p: u64) -> FusionSystem {
    let g = group(name);
    let s = sylow_subgroup(&g, p);
    FusionSystem::from_group(&g, &s, p).unwrap()
}

fn coords(x: &BurnsideElement, basis: &Basis) -> Vec<PLocalRational> {
    let mut v = vec![int(0); basis.len()];
    for (pair, c) in x.terms() {
        v[basis.index_of(pair).expect("bifree support")] = c.clone();
    }
    v
}

/// `ω` from the spectral decomposition of `Ω`: the exact minimal polynomial of `Ω`
/// must split into distinct integer roots, and `ω` is the sum of the Lagrange
/// idempotents `Π_{μ≠λ} (Ω - μ)/(λ - μ)` over the roots `λ` prime to `p`.
/// Returns `None` when `Ω` is not split semisimple over `Q`.
pub fn spectral_idempotent(omega: &BurnsideElement, p: u64, root_bound: i64) -> Option<BurnsideElement> {
    let ctx = omega.context().clone();
    let basis = Basis::new(&ctx, true);
    let one = BurnsideElement::identity(&ctx).unwrap();
    let mut powers = vec![one.clone()];
    let min_poly: Vec<PLocalRational> = loop {
        let d = powers.len();
        let next = powers.last().unwrap().compose(omega).unwrap();
        let cols: Vec<Vec<PLocalRational>> = powers.iter().map(|x| coords(x, &basis)).collect();
        let m = Matrix::from_columns(cols, basis.len());
        if let Ok(c) = m.solve(&coords(&next, &basis)) {
            // Ω^d = Σ c_i Ω^i, so the polynomial is t^d - Σ c_i t^i
            let mut poly: Vec<PLocalRational> = c.into_iter().map(|x| -x).collect();
            poly.push(int(1));
            break poly;
        }
        assert!(d < basis.len() + 2, "no relation found");
        powers.push(next);
    };
    let eval = |t: i64| min_poly.iter().rev().fold(int(0), |acc, c| acc * int(t) + c);
    let roots: Vec<i64> = (-root_bound..=root_bound).filter(|&t| eval(t).is_zero()).collect();
    if roots.len() != min_poly.len() - 1 {
        return None;
    }
    let mut out = BurnsideElement::zero(&ctx);
    for &lambda in roots.iter().filter(|&&l| l.rem_euclid(p as i64) != 0) {
        let mut e = one.clone();
        for &mu in roots.iter().filter(|&&m| m != lambda) {
            let factor = omega.checked_sub(&one.scale(&int(mu))).unwrap().scale(&(int(1) / int(lambda - mu)));
            e = e.compose(&factor).unwrap();
        }
        out = out.checked_add(&e).unwrap();
    }
    Some(out)
}

/// Every system (F, H and K) placed by a catalog scenario, with the scenario name.
pub fn catalog_systems() -> Vec<(String, PlacedSystem)> {
    let mut out = Vec::new();
    for sc in scenarios() {
        let r = resolve(&sc, DEFAULT_MAX_ORDER).unwrap();
        out.push((sc.name.clone(), r.f.clone()));
        if let Some(h) = r.h {
            out.push((sc.name.clone(), h));
        }
        if let Some(k) = r.k {
            out.push((sc.name.clone(), k));
        }
    }
    out
}

pub fn square(s: &Arc<FiniteGroup>, p: u64) -> Context {
    Context::square(s.clone(), p)
}
