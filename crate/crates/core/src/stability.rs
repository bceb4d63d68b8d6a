//! Left and right `F`-stability of Burnside elements, `F`-generation, and the
//! absorption test against an idempotent.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::burnside::{canonicalize, mark, BasisPair, BurnsideElement, Context};
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, Scope};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::{enumerate_homs, Embedding, GroupHom};
use crate::rational::{int, PLocalRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `X ∈ A(S, H)`, tested by precomposition.
    Right,
    /// `X ∈ A(H, S)`, tested by postcomposition.
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Compare `X ∘ [P, φ]` with `X ∘ [P, incl]` (or the left analogue) as elements.
    Definitional,
    /// Compare marks at `⟨Q, ψ⟩` and at the `φ`-moved pair.
    Marks,
}

/// The morphism (and for the marks method the pair `⟨Q, ψ⟩`) where stability fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityWitness {
    pub side: Side,
    pub phi: GroupHom,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<GroupHom>,
}

/// `P ≤ S` as a standalone group, labelled by its lattice position.
pub fn sub_embedding(s: &Arc<FiniteGroup>, p: &Subgroup) -> Embedding {
    let id = s.lattice().id_of(p).expect("subgroup of S");
    Embedding::of_subgroup(s, p, format!("{}.{}", s.label(), id)).expect("lattice subgroups are subgroups")
}

/// `[P, φ]_P^S ∈ A(P, S)` for `φ: P → S`.
pub fn twisted_restriction(s: &Arc<FiniteGroup>, phi: &GroupHom, p: u64) -> BurnsideElement {
    let emb = sub_embedding(s, phi.source());
    let ctx = Context::new(emb.source.clone(), s.clone(), p);
    BurnsideElement::from_hom(&ctx, &GroupHom::from_parts(emb.source.whole(), phi.images().to_vec()), int(1))
}

/// `[φ(P), φ^-1]_S^P ∈ A(S, P)` for `φ: P → S` injective.
pub fn twisted_induction(s: &Arc<FiniteGroup>, phi: &GroupHom, p: u64) -> BurnsideElement {
    let emb = sub_embedding(s, phi.source());
    let ctx = Context::new(s.clone(), emb.source.clone(), p);
    let inv = phi.inverse();
    let pos = GroupHom::from_fn(inv.source().clone(), |q| phi.source().position(inv.apply(q)).unwrap() as u32);
    BurnsideElement::from_hom(&ctx, &pos, int(1))
}

fn check_side(x: &BurnsideElement, f: &FusionSystem, side: Side) -> Result<()> {
    let ctx = x.context();
    let s_side = match side {
        Side::Right => &ctx.source,
        Side::Left => &ctx.target,
    };
    if **s_side != **f.group() || ctx.p != f.p() {
        return Err(Error::ContextMismatch(format!(
            "{:?} stability of an element of {} against a system on {}",
            side,
            ctx.describe(),
            f.group().label()
        )));
    }
    Ok(())
}

/// `None` when `x` is `F`-stable on `side`; otherwise the first failing morphism.
pub fn stability_witness(
    x: &BurnsideElement,
    f: &FusionSystem,
    side: Side,
    method: Method,
    scope: Scope,
) -> Result<Option<StabilityWitness>> {
    check_side(x, f, side)?;
    match method {
        Method::Definitional => definitional(x, f, side, scope),
        Method::Marks => by_marks(x, f, side, scope),
    }
}

pub fn is_stable(x: &BurnsideElement, f: &FusionSystem, side: Side, method: Method, scope: Scope) -> Result<bool> {
    Ok(stability_witness(x, f, side, method, scope)?.is_none())
}

fn definitional(x: &BurnsideElement, f: &FusionSystem, side: Side, scope: Scope) -> Result<Option<StabilityWitness>> {
    let s = f.group();
    let p = f.p();
    for phi in f.quantifier(scope, false) {
        let incl = GroupHom::identity_on(phi.source().clone());
        let (lhs, rhs) = match side {
            Side::Right => {
                (x.compose(&twisted_restriction(s, &phi, p))?, x.compose(&twisted_restriction(s, &incl, p))?)
            }
            Side::Left => (twisted_induction(s, &phi, p).compose(x)?, twisted_induction(s, &incl, p).compose(x)?),
        };
        if lhs != rhs {
            return Ok(Some(StabilityWitness { side, phi, at: None }));
        }
    }
    Ok(None)
}

/// Morphisms `Q → S` of `F` to pair with a fixed `Q`: restrictions of generators whose
/// domain contains `Q`, or all of `Hom_F(Q, S)`.
pub(crate) fn moves_at(f: &FusionSystem, q: &Subgroup, scope: Scope) -> Vec<GroupHom> {
    match scope {
        Scope::All => f.hom_set(q),
        Scope::Generators => f
            .quantifier(Scope::Generators, false)
            .iter()
            .filter(|g| q.is_subset_of(g.source()))
            .map(|g| g.restrict(q))
            .collect(),
    }
}

struct MarkCache<'a> {
    x: &'a BurnsideElement,
    memo: HashMap<BasisPair, PLocalRational>,
}

impl MarkCache<'_> {
    fn at(&mut self, pair: &GroupHom) -> PLocalRational {
        let key = canonicalize(self.x.context(), pair);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let ctx = self.x.context();
        let v = self.x.terms().iter().fold(int(0), |acc, (b, c)| acc + c * int(mark(ctx, b.hom(), key.hom()) as i64));
        self.memo.insert(key, v.clone());
        v
    }
}

fn by_marks(x: &BurnsideElement, f: &FusionSystem, side: Side, scope: Scope) -> Result<Option<StabilityWitness>> {
    let ctx = x.context();
    let injective_only = x.is_bifree();
    let mut cache = MarkCache { x, memo: HashMap::new() };
    match side {
        Side::Right => {
            // Φ⟨Q, ψ⟩ = Φ⟨φ(Q), ψ ∘ φ^-1⟩ for Q ≤ S, ψ: Q → H
            let s = &ctx.source;
            for q in s.lattice().subgroups() {
                let moves = moves_at(f, q, scope);
                if moves.is_empty() {
                    continue;
                }
                for psi in enumerate_homs(s, q, &ctx.target, injective_only) {
                    let base = cache.at(&psi);
                    for phi in &moves {
                        let moved = psi.after(&phi.inverse());
                        if cache.at(&moved) != base {
                            return Ok(Some(StabilityWitness { side, phi: phi.clone(), at: Some(psi) }));
                        }
                    }
                }
            }
        }
        Side::Left => {
            // Φ⟨Q, ψ⟩ = Φ⟨Q, φ ∘ ψ⟩ for Q ≤ H, ψ: Q → S, φ ∈ Hom_F(ψ(Q), S)
            let h = &ctx.source;
            for q in h.lattice().subgroups() {
                for psi in enumerate_homs(h, q, &ctx.target, injective_only) {
                    let img = psi.image();
                    let moves = moves_at(f, &img, scope);
                    if moves.is_empty() {
                        continue;
                    }
                    let base = cache.at(&psi);
                    for phi in &moves {
                        if cache.at(&phi.after(&psi)) != base {
                            return Ok(Some(StabilityWitness { side, phi: phi.clone(), at: Some(psi) }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `x ∘ ω = x` (right) or `ω ∘ x = x` (left).
pub fn absorbs(x: &BurnsideElement, omega: &BurnsideElement, side: Side) -> Result<bool> {
    Ok(match side {
        Side::Right => x.compose(omega)? == *x,
        Side::Left => omega.compose(x)? == *x,
    })
}

/// First basis pair of the support whose map is not a morphism of `F` (or is not injective).
pub fn f_generation_witness(x: &BurnsideElement, f: &FusionSystem) -> Result<Option<BasisPair>> {
    let ctx = x.context();
    if !ctx.is_square() || *ctx.source != **f.group() {
        return Err(Error::ContextMismatch(format!("{} is not A(S,S) for the system's S", ctx.describe())));
    }
    Ok(x.terms().keys().find(|b| !b.is_injective() || !f.contains(b.hom())).cloned())
}

pub fn is_f_generated(x: &BurnsideElement, f: &FusionSystem) -> Result<bool> {
    Ok(f_generation_witness(x, f)?.is_none())
}
