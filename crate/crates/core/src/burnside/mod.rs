//! The `p`-localized double Burnside module `A(G,H)`.
//!
//! An element of `A(G,H)` is a formal combination of transitive left-free
//! `(G,H)`-bisets `H ×_{K,φ} G` (left `H`-action, right `G`-action), indexed by
//! conjugacy classes of pairs `(K ≤ G, φ: K → H)`. The pair `(K, φ)` is conjugate to
//! `(g^-1 K g, c_h ∘ φ ∘ c_g)` for `g ∈ G`, `h ∈ H`, where `c_x(y) = x y x^-1`.

mod biset;
mod element;
mod json;
mod marks;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub use biset::ConcreteBiset;
pub use element::{special_element, BurnsideElement, SpecialKind};
pub use json::ElementJson;
pub use marks::{mark, mark_matrix, marks, marks_by_counting_points};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::hom::{enumerate_homs, GroupHom};

/// The groups and prime of `A(G,H)_(p)`: `source` is `G` (acting on the right),
/// `target` is `H` (acting on the left).
#[derive(Clone, Debug)]
pub struct Context {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub p: u64,
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && *self.source == *other.source && *self.target == *other.target
    }
}

impl Context {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, p: u64) -> Self {
        Context { source, target, p }
    }

    pub fn square(g: Arc<FiniteGroup>, p: u64) -> Self {
        Context { source: g.clone(), target: g, p }
    }

    pub fn is_square(&self) -> bool {
        *self.source == *self.target
    }

    pub fn opposite(&self) -> Self {
        Context { source: self.target.clone(), target: self.source.clone(), p: self.p }
    }

    pub fn describe(&self) -> String {
        format!("A({}, {})_({})", self.source.label(), self.target.label(), self.p)
    }
}

/// Canonical representative `[K, φ]` of a conjugacy class of pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisPair {
    hom: GroupHom,
}

impl BasisPair {
    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn source(&self) -> &Subgroup {
        self.hom.source()
    }

    pub fn images(&self) -> &[Elem] {
        self.hom.images()
    }

    pub fn is_injective(&self) -> bool {
        self.hom.is_injective()
    }
}

/// Larger sources first, then lexicographic.
impl Ord for BasisPair {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .source()
            .order()
            .cmp(&self.source().order())
            .then_with(|| self.source().cmp(other.source()))
            .then_with(|| self.images().cmp(other.images()))
    }
}

impl PartialOrd for BasisPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.source().elements(), self.images())
    }
}

/// Canonical representative of the class of `(K, φ)`: the source is moved to its
/// lattice class leader `L`, then the images are minimized over `N_G(L) × H`.
pub fn canonicalize(ctx: &Context, hom: &GroupHom) -> BasisPair {
    let g = &*ctx.source;
    let h = &*ctx.target;
    let lat = g.lattice();
    let id = lat.id_of(hom.source()).expect("source of a pair must be a subgroup of G");
    let class = lat.class_of(id);
    let leader = lat.leader(class);
    // g0 K g0^-1 = L, so φ' = φ ∘ c_{g0^-1} is defined on L
    let g0 = lat.conjugator_to_leader(id);
    let g0_inv = g.inv(g0);
    let shifted: Vec<Elem> = leader.elements().iter().map(|&l| hom.apply(g.conj(g0_inv, l))).collect();
    let norm = lat.leader_normalizer(class);
    let mut best: Option<Vec<Elem>> = None;
    let mut candidate = vec![0; shifted.len()];
    for &n in norm.elements() {
        // (φ' ∘ c_n)(l) = φ'(n l n^-1)
        let pre: Vec<Elem> =
            leader.elements().iter().map(|&l| shifted[leader.position(g.conj(n, l)).unwrap()]).collect();
        for y in h.elements() {
            for (c, &v) in candidate.iter_mut().zip(&pre) {
                *c = h.conj(y, v);
            }
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate.clone());
            }
        }
    }
    BasisPair { hom: GroupHom::from_parts(leader.clone(), best.unwrap()) }
}

/// One canonical pair per conjugacy class, ordered as [`BasisPair`] orders.
pub fn standard_basis(ctx: &Context, bifree_only: bool) -> Vec<BasisPair> {
    let g = &*ctx.source;
    let mut set = BTreeSet::new();
    for leader in g.lattice().leaders() {
        for hom in enumerate_homs(g, leader, &ctx.target, bifree_only) {
            set.insert(canonicalize(ctx, &hom));
        }
    }
    set.into_iter().collect()
}

/// A standard basis with index lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    pub ctx: Context,
    pairs: Vec<BasisPair>,
    index: HashMap<BasisPair, usize>,
}

impl Basis {
    pub fn new(ctx: &Context, bifree_only: bool) -> Self {
        let pairs = standard_basis(ctx, bifree_only);
        let index = pairs.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Basis { ctx: ctx.clone(), pairs, index }
    }

    pub fn from_pairs(ctx: &Context, pairs: Vec<BasisPair>) -> Self {
        let index = pairs.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Basis { ctx: ctx.clone(), pairs, index }
    }

    pub fn pairs(&self) -> &[BasisPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, pair: &BasisPair) -> Option<usize> {
        self.index.get(pair).copied()
    }

    /// Index of the class of an arbitrary pair.
    pub fn locate(&self, hom: &GroupHom) -> Option<usize> {
        self.index_of(&canonicalize(&self.ctx, hom))
    }
}

pub(crate) fn require_same(a: &Context, b: &Context, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch(format!("{what}: {} vs {}", a.describe(), b.describe())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name, DEFAULT_MAX_ORDER).unwrap())
    }

    /// Oracle: explicit orbit of a pair under G × H.
    fn orbit(ctx: &Context, hom: &GroupHom) -> BTreeSet<(Subgroup, Vec<Elem>)> {
        let g = &*ctx.source;
        let h = &*ctx.target;
        let mut out = BTreeSet::new();
        for x in g.elements() {
            // K^x = x^-1 K x, map k' ↦ c_y(φ(x k' x^-1))
            let k = g.conjugate_subgroup(g.inv(x), hom.source());
            for y in h.elements() {
                let m = GroupHom::from_fn(k.clone(), |kk| h.conj(y, hom.apply(g.conj(x, kk))));
                out.insert((m.source().clone(), m.images().to_vec()));
            }
        }
        out
    }

    #[test]
    fn c2_bases() {
        let c2 = group("C2");
        let ctx = Context::square(c2, 2);
        assert_eq!(standard_basis(&ctx, false).len(), 3);
        assert_eq!(standard_basis(&ctx, true).len(), 2);
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        for name in ["S3", "D8", "Q8"] {
            let g = group(name);
            let ctx = Context::square(g.clone(), 2);
            for s in g.lattice().subgroups() {
                for hom in enumerate_homs(&g, s, &g, false) {
                    let c = canonicalize(&ctx, &hom);
                    assert_eq!(canonicalize(&ctx, c.hom()), c);
                    let orb = orbit(&ctx, &hom);
                    assert!(orb.contains(&(c.source().clone(), c.images().to_vec())));
                    for (k, imgs) in orb {
                        let other = GroupHom::from_parts(k, imgs);
                        assert_eq!(canonicalize(&ctx, &other), c);
                    }
                }
            }
        }
    }

    #[test]
    fn basis_size_matches_orbit_count() {
        let g = group("D8");
        let ctx = Context::square(g.clone(), 2);
        let mut seen: Vec<BTreeSet<(Subgroup, Vec<Elem>)>> = Vec::new();
        for s in g.lattice().subgroups() {
            for hom in enumerate_homs(&g, s, &g, true) {
                if !seen.iter().any(|o| o.contains(&(hom.source().clone(), hom.images().to_vec()))) {
                    seen.push(orbit(&ctx, &hom));
                }
            }
        }
        assert_eq!(standard_basis(&ctx, true).len(), seen.len());
    }

    #[test]
    fn identity_pair_is_a_class() {
        for name in ["S3", "D8", "V4"] {
            let g = group(name);
            let ctx = Context::square(g.clone(), 2);
            let id = canonicalize(&ctx, &GroupHom::identity_on(g.whole()));
            assert!(standard_basis(&ctx, true).contains(&id));
            assert_eq!(standard_basis(&ctx, true)[0].source().order(), g.order());
        }
    }

    #[test]
    fn conjugation_by_target_absorbs() {
        let g = group("D8");
        let ctx = Context::square(g.clone(), 2);
        for s in g.lattice().subgroups() {
            let incl = canonicalize(&ctx, &GroupHom::identity_on(s.clone()));
            for x in g.elements() {
                let c = GroupHom::conjugation(&g, x, s.clone());
                assert_eq!(canonicalize(&ctx, &c), incl);
            }
        }
    }
}
