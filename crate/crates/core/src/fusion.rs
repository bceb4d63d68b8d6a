//! Fusion systems on finite `p`-groups, stored extensionally: for every subgroup
//! `P ≤ S` the full set `Hom_F(P, S)` of image arrays.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::hom::{generating_set, Embedding, GroupHom};
use crate::lattice::{double_cosets_unchecked, is_sylow};

/// How far a quantification over morphisms reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// A generating set; sound because every checked condition is closed under
    /// composition, restriction and inverses.
    Generators,
    /// Every morphism of the system.
    All,
}

/// The group that realizes a fusion system, with `S` embedded in it.
#[derive(Clone, Debug)]
pub struct Realization {
    pub sylow: Embedding,
    pub is_sylow: bool,
}

impl Realization {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.sylow.target
    }
}

#[derive(Clone)]
pub struct FusionSystem {
    label: String,
    p: u64,
    s: Arc<FiniteGroup>,
    /// `homs[id]` holds the image arrays of `Hom_F(P, S)` for the lattice subgroup `id`.
    homs: Vec<BTreeSet<Vec<Elem>>>,
    generators: Vec<GroupHom>,
    realization: Option<Realization>,
}

impl fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionSystem")
            .field("label", &self.label)
            .field("p", &self.p)
            .field("S", &self.s.label())
            .field("morphisms", &self.morphism_count())
            .finish()
    }
}

impl PartialEq for FusionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && *self.s == *other.s && self.homs == other.homs
    }
}

/// A failed factorization or invariance check, naming the morphism that broke it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MorphismWitness {
    pub phi: GroupHom,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<GroupHom>,
    pub reason: String,
}

impl FusionSystem {
    /// `F_S(G)`: all conjugation maps `c_g|_P` with `g P g^-1 ≤ S`, for `S ≤ G` a `p`-subgroup.
    pub fn from_group(g: &Arc<FiniteGroup>, s: &Subgroup, p: u64) -> Result<Self> {
        let emb = Embedding::of_subgroup(g, s, format!("Syl_{p}({})", g.label()))?;
        Self::from_realization(emb, p, format!("F_S({})", g.label()))
    }

    /// `F_S(X)` for `S ≤ X ≤ G`, everything given in the coordinates of `G`.
    pub fn from_subgroup_of(
        g: &Arc<FiniteGroup>,
        x: &Subgroup,
        s: &Subgroup,
        p: u64,
        label: impl Into<String>,
    ) -> Result<Self> {
        let label = label.into();
        if !s.is_subset_of(x) {
            return Err(Error::NotASubgroup(format!("{label}: S is not contained in the realizing group")));
        }
        let xg = Embedding::of_subgroup(g, x, format!("{label}:group"))?;
        let s_in_x = xg.preimage_of(s).expect("S lies in X");
        let emb = Embedding::of_subgroup(&xg.source, &s_in_x, format!("{label}:S"))?;
        Self::from_realization(emb, p, label)
    }

    /// `F_S(X)` from an embedding of the standalone group `S` into `X`.
    pub fn from_realization(sylow: Embedding, p: u64, label: impl Into<String>) -> Result<Self> {
        let s = sylow.source.clone();
        if !s.is_p_group(p) {
            return Err(Error::InvalidFusion(format!("|S| = {} is not a power of {p}", s.order())));
        }
        let x = sylow.target.clone();
        let s_in_x = sylow.image();
        let lat = s.lattice();
        let mut homs = vec![BTreeSet::new(); lat.len()];
        for (id, sub) in lat.subgroups().iter().enumerate() {
            let in_x: Vec<Elem> = sub.elements().iter().map(|&e| sylow.apply(e)).collect();
            for g in x.elements() {
                let conj: Option<Vec<Elem>> = in_x
                    .iter()
                    .map(|&e| {
                        let c = x.conj(g, e);
                        if s_in_x.contains(c) {
                            sylow.preimage(c)
                        } else {
                            None
                        }
                    })
                    .collect();
                if let Some(images) = conj {
                    homs[id].insert(images);
                }
            }
        }
        let mut generators = Vec::new();
        for dc in double_cosets_unchecked(&x, &s_in_x, &s_in_x) {
            let r = dc.representative;
            if s_in_x.contains(r) {
                continue;
            }
            let src: Vec<Elem> = s.elements().filter(|&e| s_in_x.contains(x.conj(r, sylow.apply(e)))).collect();
            let src = Subgroup::from_sorted(src);
            generators.push(GroupHom::from_fn(src, |e| sylow.preimage(x.conj(r, sylow.apply(e))).unwrap()));
        }
        let is_syl = is_sylow(&x, &s_in_x, p);
        Ok(FusionSystem {
            label: label.into(),
            p,
            s,
            homs,
            generators,
            realization: Some(Realization { sylow, is_sylow: is_syl }),
        })
    }

    /// The least fusion system on `S` containing the `S`-conjugations and `generators`.
    pub fn closure(s: &Arc<FiniteGroup>, p: u64, generators: Vec<GroupHom>, label: impl Into<String>) -> Result<Self> {
        if !s.is_p_group(p) {
            return Err(Error::InvalidFusion(format!("|S| = {} is not a power of {p}", s.order())));
        }
        let mut gens = Vec::new();
        for g in generators {
            let checked = GroupHom::new(s, s.check_subgroup(g.source().elements())?, s, g.images().to_vec())?;
            if !checked.is_injective() {
                return Err(Error::NotInjective(format!("generator on {:?}", checked.source().elements())));
            }
            if !gens.contains(&checked) {
                gens.push(checked);
            }
        }
        let mut moves: Vec<GroupHom> =
            generating_set(s, &s.whole()).into_iter().map(|x| GroupHom::conjugation(s, x, s.whole())).collect();
        for g in &gens {
            moves.push(g.clone());
            moves.push(g.inverse());
        }
        let lat = s.lattice();
        let mut homs = Vec::with_capacity(lat.len());
        for sub in lat.subgroups() {
            let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
            let start = sub.elements().to_vec();
            seen.insert(start.clone());
            let mut queue = vec![start];
            while let Some(images) = queue.pop() {
                for m in &moves {
                    if images.iter().all(|&y| m.source().contains(y)) {
                        let next: Vec<Elem> = images.iter().map(|&y| m.apply(y)).collect();
                        if seen.insert(next.clone()) {
                            queue.push(next);
                        }
                    }
                }
            }
            homs.push(seen);
        }
        Ok(FusionSystem { label: label.into(), p, s: s.clone(), homs, generators: gens, realization: None })
    }

    /// `F_S(S)`, realized by `S` itself.
    pub fn trivial(s: &Arc<FiniteGroup>, p: u64) -> Result<Self> {
        Self::from_realization(Embedding::identity(s), p, format!("F_S({})", s.label()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The `p`-group the system lives on.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.s
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    /// Generators beyond the `S`-conjugations.
    pub fn generators(&self) -> &[GroupHom] {
        &self.generators
    }

    /// `true` for Sylow-realized systems, which are saturated by construction.
    pub fn saturated_by_construction(&self) -> bool {
        self.realization.as_ref().is_some_and(|r| r.is_sylow)
    }

    fn id_of(&self, p: &Subgroup) -> usize {
        self.s.lattice().id_of(p).expect("not a subgroup of S")
    }

    /// `Hom_F(P, S)` in canonical order.
    pub fn hom_set(&self, p: &Subgroup) -> Vec<GroupHom> {
        self.homs[self.id_of(p)].iter().map(|imgs| GroupHom::from_parts(p.clone(), imgs.clone())).collect()
    }

    /// `Hom_F(P, Q)`.
    pub fn homs_between(&self, p: &Subgroup, q: &Subgroup) -> Vec<GroupHom> {
        self.hom_set(p).into_iter().filter(|h| h.images().iter().all(|&y| q.contains(y))).collect()
    }

    /// `Aut_F(P)`.
    pub fn automorphisms(&self, p: &Subgroup) -> Vec<GroupHom> {
        self.homs_between(p, p)
    }

    /// Membership of a map between subgroups of `S`.
    pub fn contains(&self, h: &GroupHom) -> bool {
        match self.s.lattice().id_of(h.source()) {
            Some(id) => self.homs[id].contains(h.images()),
            None => false,
        }
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().map(BTreeSet::len).sum()
    }

    /// Every morphism `P → S`, by lattice order of `P`.
    pub fn all_morphisms(&self) -> Vec<GroupHom> {
        self.s.lattice().subgroups().iter().flat_map(|p| self.hom_set(p)).collect()
    }

    /// Morphisms to quantify over. The generator scope also lists inverses and the
    /// conjugations by a generating set of `S` when `complete` is set, which is what
    /// conditions that are not automatically conjugation-invariant need.
    pub fn quantifier(&self, scope: Scope, complete: bool) -> Vec<GroupHom> {
        match scope {
            Scope::All => self.all_morphisms(),
            Scope::Generators => {
                let mut out: Vec<GroupHom> = Vec::new();
                if complete {
                    for x in generating_set(&self.s, &self.s.whole()) {
                        out.push(GroupHom::conjugation(&self.s, x, self.s.whole()));
                    }
                }
                for g in &self.generators {
                    out.push(g.clone());
                    if complete {
                        out.push(g.inverse());
                    }
                }
                out.sort();
                out.dedup();
                out
            }
        }
    }

    /// `None` if every morphism of `self`, pushed along `emb`, lies in `parent`.
    pub fn subsystem_witness(&self, parent: &FusionSystem, emb: &Embedding) -> Option<MorphismWitness> {
        if self.p != parent.p || *emb.source != *self.s || *emb.target != *parent.s {
            return Some(MorphismWitness {
                phi: GroupHom::identity_on(self.s.whole()),
                psi: None,
                reason: "prime or underlying groups do not match".into(),
            });
        }
        self.all_morphisms().into_iter().find(|h| !parent.contains(&emb.push_hom(h))).map(|h| MorphismWitness {
            phi: h,
            psi: None,
            reason: "morphism missing from the larger system".into(),
        })
    }

    pub fn is_subsystem_of(&self, parent: &FusionSystem, emb: &Embedding) -> bool {
        self.subsystem_witness(parent, emb).is_none()
    }

    /// `None` when `T` is strongly closed: every morphism maps subgroups of `T` into `T`.
    pub fn strong_closure_witness(&self, t: &Subgroup) -> Option<MorphismWitness> {
        let lat = self.s.lattice();
        for id in lat.subgroups_of(t) {
            let p = lat.get(id);
            for h in self.hom_set(p) {
                if !h.images().iter().all(|&y| t.contains(y)) {
                    return Some(MorphismWitness { phi: h, psi: None, reason: "image leaves T".into() });
                }
            }
        }
        None
    }

    pub fn is_strongly_closed(&self, t: &Subgroup) -> bool {
        self.strong_closure_witness(t).is_none()
    }

    /// Weak normality of `k` (on `T`, embedded by `emb`): `T` strongly closed and
    /// `φ ψ φ^-1 ∈ K` for all `φ ∈ Hom_F(P, S)`, `ψ ∈ Hom_K(Q, R)` with `Q, R ≤ P`.
    pub fn weak_normality_witness(&self, k: &FusionSystem, emb: &Embedding, scope: Scope) -> Option<MorphismWitness> {
        if let Some(w) = k.subsystem_witness(self, emb) {
            return Some(w);
        }
        let t = emb.image();
        if let Some(w) = self.strong_closure_witness(&t) {
            return Some(w);
        }
        let k_maps: Vec<GroupHom> = k.all_morphisms().iter().map(|h| emb.push_hom(h)).collect();
        for phi in self.quantifier(scope, true) {
            let dom = phi.source();
            for psi in &k_maps {
                if !psi.source().is_subset_of(dom) || !psi.images().iter().all(|&y| dom.contains(y)) {
                    continue;
                }
                let conj = phi.after(psi).after(&phi.restrict(psi.source()).inverse());
                let ok = emb.pull_hom(&conj).is_some_and(|c| k.contains(&c));
                if !ok {
                    return Some(MorphismWitness {
                        phi,
                        psi: Some(psi.clone()),
                        reason: "conjugate of a K-morphism is not in K".into(),
                    });
                }
            }
        }
        None
    }

    pub fn is_weakly_normal(&self, k: &FusionSystem, emb: &Embedding) -> bool {
        self.weak_normality_witness(k, emb, Scope::Generators).is_none()
    }

    /// `N_F(U)` for `U ⊴ S`: morphisms `φ: P → Q` extending to `φ̃: PU → QU` with `φ̃(U) = U`.
    pub fn normalizer(&self, u: &Subgroup) -> Result<FusionSystem> {
        self.s.check_subgroup(u.elements())?;
        if !self.s.is_normal(u) {
            return Err(Error::Precondition("N_F(U) is only supported for U normal in S".into()));
        }
        let lat = self.s.lattice();
        let mut gens = Vec::new();
        for q in lat.subgroups().iter().filter(|q| u.is_subset_of(q)) {
            for h in self.hom_set(q) {
                if u.elements().iter().all(|&x| u.contains(h.apply(x))) {
                    gens.push(h);
                }
            }
        }
        let label = format!("N_{{{}}}({:?})", self.label, u.elements());
        FusionSystem::closure(&self.s, self.p, gens, label)
    }

    /// Definition of `{}_R F_T = H K`: `S = R T` as a set product and every
    /// `φ ∈ Hom_F(P, Q)` with `P ≤ T`, `Q ≤ R` factors as `η ∘ κ`, `κ ∈ K`, `η ∈ H`.
    pub fn composition_product_witness(
        &self,
        h: &FusionSystem,
        r_emb: &Embedding,
        k: &FusionSystem,
        t_emb: &Embedding,
    ) -> Option<MorphismWitness> {
        for (sys, emb) in [(h, r_emb), (k, t_emb)] {
            if let Some(w) = sys.subsystem_witness(self, emb) {
                return Some(w);
            }
        }
        let r = r_emb.image();
        let t = t_emb.image();
        if self.s.product_set(&r, &t).len() != self.s.order() {
            return Some(MorphismWitness {
                phi: GroupHom::identity_on(self.s.whole()),
                psi: None,
                reason: "S is not the product RT".into(),
            });
        }
        let lat = self.s.lattice();
        for id in lat.subgroups_of(&t) {
            let p = lat.get(id);
            let kappas: Vec<GroupHom> = t_emb
                .preimage_of(p)
                .map(|pt| k.hom_set(&pt).iter().map(|m| t_emb.push_hom(m)).collect())
                .unwrap_or_default();
            for phi in self.hom_set(p) {
                if !phi.images().iter().all(|&y| r.contains(y)) {
                    continue;
                }
                let factors = kappas.iter().any(|kappa| {
                    // η = φ ∘ κ^-1 on κ(P)
                    let eta = phi.after(&kappa.inverse());
                    r_emb.pull_hom(&eta).is_some_and(|e| h.contains(&e))
                });
                if !factors {
                    return Some(MorphismWitness { phi, psi: None, reason: "no factorization η ∘ κ".into() });
                }
            }
        }
        None
    }

    pub fn is_composition_product(
        &self,
        h: &FusionSystem,
        r_emb: &Embedding,
        k: &FusionSystem,
        t_emb: &Embedding,
    ) -> bool {
        self.composition_product_witness(h, r_emb, k, t_emb).is_none()
    }

    fn aut_by_conjugation(&self, p: &Subgroup) -> HashSet<Vec<Elem>> {
        let s = &*self.s;
        s.normalizer(p).elements().iter().map(|&x| p.elements().iter().map(|&y| s.conj(x, y)).collect()).collect()
    }

    /// Sylow and extension axioms checked exhaustively; `None` when saturated.
    pub fn saturation_failure(&self) -> Option<String> {
        let s = &*self.s;
        let lat = s.lattice();
        let p = self.p as usize;
        let class_of = |sub: &Subgroup| -> Vec<Subgroup> {
            let mut v: Vec<Subgroup> = self.hom_set(sub).iter().map(GroupHom::image).collect();
            v.sort();
            v.dedup();
            v
        };
        let norm = |q: &Subgroup| s.normalizer(q).order();
        let cent = |q: &Subgroup| s.centralizer(q).order();
        for sub in lat.subgroups() {
            let class = class_of(sub);
            let max_norm = class.iter().map(norm).max().unwrap();
            let max_cent = class.iter().map(cent).max().unwrap();
            if norm(sub) == max_norm {
                if cent(sub) != max_cent {
                    return Some(format!("{:?} is fully normalized but not fully centralized", sub.elements()));
                }
                let aut_f = self.automorphisms(sub).len();
                let aut_s = self.aut_by_conjugation(sub).len();
                if !aut_f.is_multiple_of(aut_s) || (aut_f / aut_s).is_multiple_of(p) {
                    return Some(format!("Aut_S({:?}) is not Sylow in Aut_F", sub.elements()));
                }
            }
            for phi in self.hom_set(sub) {
                let q = phi.image();
                if cent(&q) != max_cent {
                    continue;
                }
                let aut_s_q = self.aut_by_conjugation(&q);
                let inv = phi.inverse();
                let n_phi: Vec<Elem> = s
                    .normalizer(sub)
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&g| {
                        let m: Vec<Elem> = q.elements().iter().map(|&y| phi.apply(s.conj(g, inv.apply(y)))).collect();
                        aut_s_q.contains(&m)
                    })
                    .collect();
                let n_phi = Subgroup::from_sorted(n_phi);
                let extends =
                    self.hom_set(&n_phi).iter().any(|ext| sub.elements().iter().all(|&x| ext.apply(x) == phi.apply(x)));
                if !extends {
                    return Some(format!(
                        "morphism {:?} -> {:?} does not extend to N_phi of order {}",
                        sub.elements(),
                        phi.images(),
                        n_phi.order()
                    ));
                }
            }
        }
        None
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation_failure().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;
    use crate::lattice::sylow_subgroup;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name, DEFAULT_MAX_ORDER).unwrap())
    }

    #[test]
    fn c2_in_s3_has_no_extra_automorphisms() {
        let g = group("S3");
        let s = sylow_subgroup(&g, 2);
        let f = FusionSystem::from_group(&g, &s, 2).unwrap();
        let sg = f.group().clone();
        assert_eq!(f.automorphisms(&sg.whole()).len(), 1);
        assert!(f.saturated_by_construction());
    }

    #[test]
    fn a4_on_v4_has_aut_of_order_three() {
        let g = group("A4");
        let s = sylow_subgroup(&g, 2);
        let f = FusionSystem::from_group(&g, &s, 2).unwrap();
        assert_eq!(f.automorphisms(&f.group().whole()).len(), 3);
    }

    #[test]
    fn closure_of_generators_reproduces_group_system() {
        for (name, p) in [("S4", 2), ("A4", 2), ("S3", 3), ("D8", 2)] {
            let g = group(name);
            let s = sylow_subgroup(&g, p);
            let f = FusionSystem::from_group(&g, &s, p).unwrap();
            let c = FusionSystem::closure(f.group(), p, f.generators().to_vec(), "c").unwrap();
            assert_eq!(c, f, "{name}");
            let again = FusionSystem::closure(f.group(), p, f.all_morphisms(), "c2").unwrap();
            assert_eq!(again, f);
        }
    }

    #[test]
    fn non_sylow_is_flagged() {
        let g = group("S4");
        let c2 = g.generate(&[g.find_permutation(&[1, 0, 2, 3]).unwrap()]);
        let f = FusionSystem::from_group(&g, &c2, 2).unwrap();
        assert!(!f.saturated_by_construction());
    }

    #[test]
    fn empty_closure_is_conjugation_only() {
        let s = group("D8");
        let f = FusionSystem::trivial(&s, 2).unwrap();
        let g = FusionSystem::from_group(&s, &s.whole(), 2).unwrap();
        assert_eq!(f, g);
        assert!(f.is_saturated());
    }

    #[test]
    fn order_three_automorphism_of_v4() {
        let s = group("V4");
        let auts = crate::hom::enumerate_homs(&s, &s.whole(), &s, true);
        let alpha = auts.iter().find(|a| {
            let sq = a.after(a);
            sq != GroupHom::identity_on(s.whole()) && sq.after(a) == GroupHom::identity_on(s.whole())
        });
        let f = FusionSystem::closure(&s, 2, vec![alpha.unwrap().clone()], "V4:C3").unwrap();
        assert_eq!(f.automorphisms(&s.whole()).len(), 3);
        for c2 in s.lattice().subgroups().iter().filter(|x| x.order() == 2) {
            assert_eq!(f.hom_set(c2).len(), 3);
        }
        assert!(f.is_saturated());
        let full = FusionSystem::closure(&s, 2, auts, "V4:S3").unwrap();
        assert_eq!(full.automorphisms(&s.whole()).len(), 6);
        // Aut_S(V4) = 1 is not a Sylow 2-subgroup of Aut_F(V4) = S3
        assert!(!full.is_saturated());
    }

    #[test]
    fn v4_with_an_involutive_automorphism_is_not_saturated() {
        let s = group("V4");
        let auts = crate::hom::enumerate_homs(&s, &s.whole(), &s, true);
        let tau = auts
            .iter()
            .find(|a| **a != GroupHom::identity_on(s.whole()) && a.after(a) == GroupHom::identity_on(s.whole()))
            .unwrap();
        let f = FusionSystem::closure(&s, 2, vec![tau.clone()], "bad").unwrap();
        assert!(f.saturation_failure().is_some());
    }
}
