use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::burnside::{special_element, BurnsideElement, Context, SpecialKind};
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::hom::{Embedding, GroupHom};
use crate::lattice::core_subgroups;
use crate::rational::int;
use crate::stability::{is_stable, Method, Side};

use super::PlacedSystem;

fn on_s(f: &PlacedSystem, h: &PlacedSystem) -> Result<()> {
    if **h.fusion.group() != **f.fusion.group() || *h.embedding.target != **f.fusion.group() {
        return Err(Error::ContextMismatch(format!(
            "{} is not a system on the group of {}",
            h.fusion.label(),
            f.fusion.label()
        )));
    }
    Ok(())
}

fn inside(f: &PlacedSystem, k: &PlacedSystem) -> Result<()> {
    if *k.embedding.target != **f.fusion.group() || k.p() != f.p() {
        return Err(Error::ContextMismatch(format!("{} does not sit inside {}", k.fusion.label(), f.fusion.label())));
    }
    Ok(())
}

fn restriction(k: &PlacedSystem) -> BurnsideElement {
    special_element(SpecialKind::Restriction, &k.embedding, k.p())
}

fn induction(k: &PlacedSystem) -> BurnsideElement {
    special_element(SpecialKind::Induction, &k.embedding, k.p())
}

fn composition_product(f: &PlacedSystem, h: &PlacedSystem, k: &PlacedSystem) -> bool {
    f.fusion.is_composition_product(&h.fusion, &h.embedding, &k.fusion, &k.embedding)
}

#[derive(Clone, Debug, Serialize)]
pub struct StarOutcome {
    pub holds: bool,
    /// `lhs - rhs` when the sides differ.
    #[serde(skip)]
    pub difference: Option<BurnsideElement>,
}

/// `ω_F ∘ [T, incl]_T^S` against `ω_H ∘ [T, incl]_T^S ∘ ω_K` in `A(T, S)`.
pub fn check_star_identity(f: &PlacedSystem, h: &PlacedSystem, k: &PlacedSystem) -> Result<StarOutcome> {
    on_s(f, h)?;
    inside(f, k)?;
    let res = restriction(k);
    let lhs = f.omega.compose(&res)?;
    let rhs = h.omega.compose(&res)?.compose(&k.omega)?;
    let holds = lhs == rhs;
    Ok(StarOutcome { holds, difference: (!holds).then(|| lhs.checked_sub(&rhs)).transpose()? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropOutcome {
    pub star: bool,
    pub cond1: bool,
    pub cond2: bool,
}

impl PropOutcome {
    pub fn agree(&self) -> bool {
        self.star == self.cond1 && self.cond1 == self.cond2
    }
}

/// The identity above and its two reformulations through `[T, id]_S^T`; only
/// meaningful when `F` is the composition product of `H` and `K`.
pub fn check_prop_equivalents(f: &PlacedSystem, h: &PlacedSystem, k: &PlacedSystem) -> Result<PropOutcome> {
    on_s(f, h)?;
    inside(f, k)?;
    if !composition_product(f, h, k) {
        return Err(Error::Precondition(format!(
            "{} is not the composition product of {} and {}",
            f.fusion.label(),
            h.fusion.label(),
            k.fusion.label()
        )));
    }
    let star = check_star_identity(f, h, k)?.holds;
    let res = restriction(k);
    let ind = induction(k);
    let middle = ind.compose(&h.omega)?.compose(&res)?;
    let x1 = middle.compose(&k.omega)?;
    let x2 = k.omega.compose(&middle)?;
    Ok(PropOutcome {
        star,
        cond1: is_stable(&x1, &k.fusion, Side::Left, Method::Definitional, crate::fusion::Scope::All)?,
        cond2: is_stable(&x2, &k.fusion, Side::Right, Method::Definitional, crate::fusion::Scope::All)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaNormalOutcome {
    pub cp: bool,
    pub aut_factor: bool,
    pub cp_with_normalizer: bool,
}

impl LemmaNormalOutcome {
    pub fn agree(&self) -> bool {
        self.cp == self.aut_factor && self.aut_factor == self.cp_with_normalizer
    }
}

/// For weakly normal `K`: `F = HK`, `Aut_F(T) = Aut_H(T) Aut_K(T)`, and `F = N_H(T) K`.
pub fn check_lemma_normal_case(f: &PlacedSystem, h: &PlacedSystem, k: &PlacedSystem) -> Result<LemmaNormalOutcome> {
    on_s(f, h)?;
    inside(f, k)?;
    if let Some(w) = f.fusion.weak_normality_witness(&k.fusion, &k.embedding, crate::fusion::Scope::Generators) {
        return Err(Error::Precondition(format!("{} is not weakly normal: {}", k.fusion.label(), w.reason)));
    }
    let t = k.embedding.image();
    let t_in_h = h.embedding.preimage_of(&t).expect("T lies in S");
    let aut_f: BTreeSet<Vec<Elem>> = f.fusion.automorphisms(&t).into_iter().map(|a| a.images().to_vec()).collect();
    let aut_h: Vec<GroupHom> = h.fusion.automorphisms(&t_in_h).iter().map(|a| h.embedding.push_hom(a)).collect();
    let aut_k: Vec<GroupHom> =
        k.fusion.automorphisms(&k.fusion.group().whole()).iter().map(|a| k.embedding.push_hom(a)).collect();
    let product: BTreeSet<Vec<Elem>> =
        aut_h.iter().flat_map(|eta| aut_k.iter().map(move |kappa| eta.after(kappa).images().to_vec())).collect();
    let nh = h.fusion.normalizer(&t_in_h)?;
    Ok(LemmaNormalOutcome {
        cp: composition_product(f, h, k),
        aut_factor: product == aut_f,
        cp_with_normalizer: f.fusion.is_composition_product(&nh, &h.embedding, &k.fusion, &k.embedding),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalizerSupport {
    pub is_normalizer: bool,
    pub support_ok: bool,
}

/// Whether `F = N_F(U)`, and whether `ω_F` lives on pairs `[P, φ]` with `U ≤ P`
/// and `φ ∈ N_F(U)`.
pub fn check_normalizer_support(f: &PlacedSystem, u: &Subgroup) -> Result<NormalizerSupport> {
    let n = f.fusion.normalizer(u)?;
    Ok(NormalizerSupport {
        is_normalizer: n == f.fusion,
        support_ok: f.omega.support_all(|b| u.is_subset_of(b.source()) && n.contains(b.hom())),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorollaryOutcome {
    pub hyperfocal: bool,
    pub pprime: bool,
    pub hyperfocal_order: usize,
    pub o_p_prime_order: usize,
    pub normalizer_order: usize,
}

/// Elements of the standalone `S` of `f` as elements of the group `g`; `x` is the
/// realizing subgroup of `g` the system was built from.
fn in_ambient(f: &FusionSystem, x: &Subgroup) -> Vec<Elem> {
    let sylow = &f.realization().expect("realized system").sylow;
    f.group().elements().map(|e| x.elements()[sylow.apply(e) as usize]).collect()
}

/// The hyperfocal identity `ω_F ∘ [T, incl] = [T, incl] ∘ ω_K` for
/// `K = F_T(O^p(G))`, and `ω_F = ω_{N_F(S)} ∘ ω_{O^{p'}(F)}`, with the
/// subsystems realized inside `G`.
pub fn check_corollaries(g: &Arc<FiniteGroup>, p: u64) -> Result<CorollaryOutcome> {
    let cores = core_subgroups(g, p);
    let s = cores.sylow;
    let t = g.intersect(&s, &cores.o_p);
    let f = PlacedSystem::top(FusionSystem::from_subgroup_of(g, &g.whole(), &s, p, format!("F_S({})", g.label()))?)?;
    let label = |what: &str| format!("F({}, {what})", g.label());

    let k_sys = FusionSystem::from_subgroup_of(g, &cores.o_p, &t, p, label("O^p"))?;
    let s_elems = in_ambient(&f.fusion, &g.whole());
    let t_map: Vec<Elem> = in_ambient(&k_sys, &cores.o_p)
        .into_iter()
        .map(|e| s_elems.iter().position(|&x| x == e).expect("T lies in S") as Elem)
        .collect();
    let t_emb = Embedding::from_map(k_sys.group(), f.fusion.group(), t_map)?;
    let k = PlacedSystem::new(k_sys, t_emb)?;
    let res = restriction(&k);
    let hyperfocal = f.omega.compose(&res)? == res.compose(&k.omega)?;

    let ng = g.normalizer(&s);
    let n = PlacedSystem::top(FusionSystem::from_subgroup_of(g, &ng, &s, p, label("N_G(S)"))?)?;
    let o = PlacedSystem::top(FusionSystem::from_subgroup_of(g, &cores.o_p_prime, &s, p, label("O^p'"))?)?;
    let pprime = f.omega == n.omega.compose(&o.omega)?;
    Ok(CorollaryOutcome {
        hyperfocal,
        pprime,
        hyperfocal_order: t.order(),
        o_p_prime_order: cores.o_p_prime.order(),
        normalizer_order: ng.order(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureEvidence {
    pub scenario: String,
    pub cp: bool,
    pub identity: bool,
    #[serde(rename = "lhs-hash")]
    pub lhs_hash: String,
    #[serde(rename = "rhs-hash")]
    pub rhs_hash: String,
}

fn element_hash(x: &BurnsideElement) -> String {
    let terms = serde_json::to_string(&x.to_json().terms).expect("terms serialize");
    hex::encode(Sha256::digest(terms.as_bytes()))
}

/// Both sides of `[R, id]_S^R ∘ ω_F ∘ [T, incl]_T^S = ω_H ∘ [R, id]_S^R ∘ [T, incl]_T^S ∘ ω_K`
/// together with the composition product predicate. Records, never asserts.
pub fn check_conjecture_general(
    scenario: &str,
    f: &PlacedSystem,
    h: &PlacedSystem,
    k: &PlacedSystem,
) -> Result<ConjectureEvidence> {
    inside(f, h)?;
    inside(f, k)?;
    let s = f.fusion.group();
    if s.product_set(&h.embedding.image(), &k.embedding.image()).len() != s.order() {
        return Err(Error::Precondition("S is not the product RT".into()));
    }
    let ind_r = induction(h);
    let res_t = restriction(k);
    let lhs = ind_r.compose(&f.omega)?.compose(&res_t)?;
    let rhs = h.omega.compose(&ind_r)?.compose(&res_t)?.compose(&k.omega)?;
    Ok(ConjectureEvidence {
        scenario: scenario.to_string(),
        cp: composition_product(f, h, k),
        identity: lhs == rhs,
        lhs_hash: element_hash(&lhs),
        rhs_hash: element_hash(&rhs),
    })
}

/// For `K` weakly normal: `ω_K ∘ [T, α] ∘ ω_K = ω_K ∘ [T, α]` for every
/// `α ∈ Aut_F(T)`. Returns the first `α` (in `T`'s own coordinates) that fails.
pub fn check_commutation(f: &PlacedSystem, k: &PlacedSystem) -> Result<Option<GroupHom>> {
    inside(f, k)?;
    let t = k.fusion.group();
    let ctx = Context::square(t.clone(), k.p());
    for alpha in f.fusion.automorphisms(&k.embedding.image()) {
        let a = k.embedding.pull_hom(&alpha).expect("automorphism of T");
        let x = BurnsideElement::from_hom(&ctx, &a, int(1));
        let left = k.omega.compose(&x)?;
        if left.compose(&k.omega)? != left {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
