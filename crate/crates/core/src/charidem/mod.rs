//! Characteristic elements and idempotents of saturated fusion systems, and
//! exact checks of the identities relating the idempotents of a system and of
//! a pair of subsystems.

mod checks;
mod power;
mod solve;

use std::sync::Arc;

use serde::Serialize;

use crate::burnside::{BurnsideElement, ConcreteBiset, Context};
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, Scope};
use crate::group::FiniteGroup;
use crate::hom::{Embedding, GroupHom};
use crate::lattice::double_cosets_unchecked;
use crate::rational::{int, is_p_unit, NumDen, PLocalRational};
use crate::stability::{absorbs, is_f_generated, is_stable, Method, Side};

pub use checks::{
    check_commutation, check_conjecture_general, check_corollaries, check_lemma_normal_case, check_normalizer_support,
    check_prop_equivalents, check_star_identity, ConjectureEvidence, CorollaryOutcome, LemmaNormalOutcome,
    NormalizerSupport, PropOutcome, StarOutcome,
};
pub use power::power_iteration;
pub use solve::linear_solve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacteristicChecks {
    pub generated: bool,
    pub left_stable: bool,
    pub right_stable: bool,
    pub aug_unit: bool,
}

impl CharacteristicChecks {
    pub fn all(&self) -> bool {
        self.generated && self.left_stable && self.right_stable && self.aug_unit
    }
}

#[derive(Clone, Debug)]
pub struct CharacteristicElement {
    pub element: BurnsideElement,
    pub augmentation: PLocalRational,
    pub checks: CharacteristicChecks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    LinearSolve,
    PowerIteration,
}

#[derive(Clone, Debug)]
pub struct CharacteristicIdempotent {
    pub element: BurnsideElement,
    pub method: SolveMethod,
    pub verified: bool,
}

/// Generation, both stabilities, and whether `ε(x)` is a unit of `Z_(p)`.
pub fn characteristic_checks(x: &BurnsideElement, f: &FusionSystem, scope: Scope) -> Result<CharacteristicChecks> {
    let aug = x.augmentation()?;
    Ok(CharacteristicChecks {
        generated: is_f_generated(x, f)?,
        left_stable: is_stable(x, f, Side::Left, Method::Definitional, scope)?,
        right_stable: is_stable(x, f, Side::Right, Method::Definitional, scope)?,
        aug_unit: is_p_unit(&aug, f.p()),
    })
}

fn sylow_of(f: &FusionSystem) -> Result<&Embedding> {
    match f.realization() {
        Some(r) if r.is_sylow => Ok(&r.sylow),
        Some(_) => Err(Error::Precondition(format!("{}: S is not Sylow in the realizing group", f.label()))),
        None => Err(Error::Precondition(format!("{}: no realizing group", f.label()))),
    }
}

/// `Σ_x [S ∩ x^-1 S x, c_x]` over representatives of `S \ G / S`.
pub fn omega_by_double_cosets(f: &FusionSystem) -> Result<BurnsideElement> {
    let emb = sylow_of(f)?;
    let g: &Arc<FiniteGroup> = &emb.target;
    let s_in_g = emb.image();
    let ctx = Context::square(f.group().clone(), f.p());
    let mut terms = Vec::new();
    for dc in double_cosets_unchecked(g, &s_in_g, &s_in_g) {
        let x = dc.representative;
        let mut k = Vec::new();
        let mut images = Vec::new();
        for s in f.group().elements() {
            if let Some(y) = emb.preimage(g.conj(x, emb.apply(s))) {
                k.push(s);
                images.push(y);
            }
        }
        let hom = GroupHom::new(f.group(), crate::group::Subgroup::from_sorted(k), f.group(), images)?;
        terms.push((hom, int(1)));
    }
    Ok(BurnsideElement::from_terms(&ctx, terms))
}

/// The same element read off the orbits of `G` as an `(S, S)`-biset.
pub fn omega_by_orbits(f: &FusionSystem) -> Result<BurnsideElement> {
    let emb = sylow_of(f)?;
    ConcreteBiset::from_ambient(emb, emb, f.p())?.decompose()
}

/// `Ω` for a group-realized `F`, computed both ways and checked.
pub fn characteristic_element_from_group(f: &FusionSystem) -> Result<CharacteristicElement> {
    let by_cosets = omega_by_double_cosets(f)?;
    let by_orbits = omega_by_orbits(f)?;
    if by_cosets != by_orbits {
        return Err(Error::NotCharacteristic("double coset and orbit decompositions differ".into()));
    }
    let checks = characteristic_checks(&by_cosets, f, Scope::All)?;
    if !checks.all() {
        return Err(Error::NotCharacteristic(format!("{}: {:?}", f.label(), checks)));
    }
    let augmentation = by_cosets.augmentation()?;
    Ok(CharacteristicElement { element: by_cosets, augmentation, checks })
}

/// Exact report on a candidate idempotent.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IdempotentReport {
    pub idempotent: bool,
    pub augmentation: NumDen,
    pub augmentation_one: bool,
    pub characteristic: CharacteristicChecks,
    /// `y ∘ x = y` and `x ∘ y' = y'` for each supplied stable element.
    pub absorption: Vec<bool>,
}

impl IdempotentReport {
    pub fn passed(&self) -> bool {
        self.idempotent && self.augmentation_one && self.characteristic.all() && self.absorption.iter().all(|&b| b)
    }
}

/// `stable` holds elements that are both left and right `F`-stable in `A(S,S)`.
pub fn verify_characteristic_idempotent(
    x: &BurnsideElement,
    f: &FusionSystem,
    stable: &[BurnsideElement],
) -> Result<IdempotentReport> {
    let ctx = x.context();
    if !ctx.is_square() || *ctx.source != **f.group() {
        return Err(Error::ContextMismatch(format!("{} is not A(S,S) for {}", ctx.describe(), f.label())));
    }
    let aug = x.augmentation()?;
    let mut absorption = Vec::new();
    for y in stable {
        absorption.push(absorbs(y, x, Side::Right)?);
        absorption.push(absorbs(y, x, Side::Left)?);
    }
    Ok(IdempotentReport {
        idempotent: x.compose(x)? == *x,
        augmentation_one: aug == int(1),
        augmentation: NumDen(aug),
        characteristic: characteristic_checks(x, f, Scope::All)?,
        absorption,
    })
}

/// Dispatches to one of the two solvers and marks the result verified.
pub fn characteristic_idempotent(f: &FusionSystem, method: SolveMethod) -> Result<CharacteristicIdempotent> {
    let element = match method {
        SolveMethod::LinearSolve => linear_solve(f)?,
        SolveMethod::PowerIteration => power_iteration(f)?,
    };
    Ok(CharacteristicIdempotent { element, method, verified: true })
}

/// Both solvers where a realizing group exists, otherwise the linear one; the
/// results must agree.
pub fn omega(f: &FusionSystem) -> Result<BurnsideElement> {
    let lin = linear_solve(f)?;
    if f.realization().is_some_and(|r| r.is_sylow) {
        let pow = power_iteration(f)?;
        if pow != lin {
            return Err(Error::NotCharacteristic(format!("{}: the two solvers disagree", f.label())));
        }
    }
    Ok(lin)
}

/// Exact acceptance test shared by both solvers.
pub(crate) fn accept(x: &BurnsideElement, f: &FusionSystem) -> Result<bool> {
    let r = verify_characteristic_idempotent(x, f, &[])?;
    Ok(r.passed())
}

/// A saturated system on a subgroup of `S`, its embedding and its idempotent.
#[derive(Clone, Debug)]
pub struct PlacedSystem {
    pub fusion: FusionSystem,
    pub embedding: Embedding,
    pub omega: BurnsideElement,
}

impl PlacedSystem {
    pub fn new(fusion: FusionSystem, embedding: Embedding) -> Result<Self> {
        if *embedding.source != **fusion.group() {
            return Err(Error::ContextMismatch(format!("embedding does not start at the group of {}", fusion.label())));
        }
        let omega = omega(&fusion)?;
        Ok(PlacedSystem { fusion, embedding, omega })
    }

    /// A system on `S` itself.
    pub fn top(fusion: FusionSystem) -> Result<Self> {
        let emb = Embedding::identity(fusion.group());
        Self::new(fusion, emb)
    }

    pub fn p(&self) -> u64 {
        self.fusion.p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;
    use crate::lattice::sylow_subgroup;
    use crate::rational::frac;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name, DEFAULT_MAX_ORDER).unwrap())
    }

    fn realized(name: &str, p: u64) -> FusionSystem {
        let g = group(name);
        let s = sylow_subgroup(&g, p);
        FusionSystem::from_group(&g, &s, p).unwrap()
    }

    #[test]
    fn s3_omega_and_idempotent() {
        let f = realized("S3", 2);
        let big = characteristic_element_from_group(&f).unwrap();
        assert_eq!(big.element.len(), 2);
        assert_eq!(big.augmentation, int(3));
        let lin = linear_solve(&f).unwrap();
        let pow = power_iteration(&f).unwrap();
        assert_eq!(lin, pow);
        assert_eq!(lin, BurnsideElement::identity(lin.context()).unwrap());
    }

    #[test]
    fn s3_at_three_has_fractional_idempotent() {
        let f = realized("S3", 3);
        let lin = linear_solve(&f).unwrap();
        assert_eq!(lin, power_iteration(&f).unwrap());
        assert!(lin.terms().values().any(|c| *c == frac(1, 2) || *c == frac(-1, 2)), "{lin:?}");
    }

    #[test]
    fn solvers_agree_on_a4_and_s4() {
        for (name, p) in [("A4", 2), ("S4", 2)] {
            let f = realized(name, p);
            let lin = linear_solve(&f).unwrap();
            let pow = power_iteration(&f).unwrap();
            assert_eq!(lin, pow, "{name}");
            let big = characteristic_element_from_group(&f).unwrap().element;
            let report = verify_characteristic_idempotent(&lin, &f, &[big]).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn scaled_group_biset_is_not_idempotent() {
        let f = realized("S4", 2);
        let big = characteristic_element_from_group(&f).unwrap();
        assert_eq!(big.augmentation, int(3));
        let third = big.element.scale(&frac(1, 3));
        let report = verify_characteristic_idempotent(&third, &f, &[]).unwrap();
        assert!(!report.idempotent);
        assert!(report.augmentation_one);
    }
}
