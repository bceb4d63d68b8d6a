//! Homomorphisms between subgroups and embeddings of subgroups as standalone groups.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// A homomorphism defined on a subgroup, stored as the images of the sorted source elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GroupHom {
    source: Subgroup,
    images: Vec<Elem>,
}

impl GroupHom {
    /// Builds a homomorphism, checking that it respects multiplication.
    pub fn new(domain_group: &FiniteGroup, source: Subgroup, target: &FiniteGroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        if images.iter().any(|&y| y as usize >= target.order()) {
            return Err(Error::NotAHomomorphism("image out of range".into()));
        }
        let hom = GroupHom { source, images };
        for &a in hom.source.elements() {
            for &b in hom.source.elements() {
                let ab = domain_group.mul(a, b);
                let Some(pos) = hom.source.position(ab) else {
                    return Err(Error::NotASubgroup("source is not closed".into()));
                };
                if hom.images[pos] != target.mul(hom.apply(a), hom.apply(b)) {
                    return Err(Error::NotAHomomorphism(format!("fails at ({a}, {b})")));
                }
            }
        }
        Ok(hom)
    }

    /// Trusted constructor for maps already known to be homomorphisms.
    pub(crate) fn from_parts(source: Subgroup, images: Vec<Elem>) -> Self {
        debug_assert_eq!(source.order(), images.len());
        GroupHom { source, images }
    }

    /// Builds a map from `f`, assumed to be a homomorphism on `source`.
    pub(crate) fn from_fn(source: Subgroup, f: impl Fn(Elem) -> Elem) -> Self {
        let images = source.elements().iter().map(|&x| f(x)).collect();
        GroupHom { source, images }
    }

    pub fn identity_on(source: Subgroup) -> Self {
        let images = source.elements().to_vec();
        GroupHom { source, images }
    }

    /// Conjugation `x ↦ g x g^-1` restricted to `source`.
    pub fn conjugation(group: &FiniteGroup, g: Elem, source: Subgroup) -> Self {
        Self::from_fn(source, |x| group.conj(g, x))
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.images[self.source.position(x).expect("element outside the source")]
    }

    pub fn try_apply(&self, x: Elem) -> Option<Elem> {
        self.source.position(x).map(|i| self.images[i])
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::from_unsorted(self.images.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.image().order() == self.source.order()
    }

    /// `self ∘ inner`; requires the image of `inner` to lie in the source of `self`.
    pub fn after(&self, inner: &GroupHom) -> GroupHom {
        GroupHom { source: inner.source.clone(), images: inner.images.iter().map(|&y| self.apply(y)).collect() }
    }

    pub fn restrict(&self, sub: &Subgroup) -> GroupHom {
        GroupHom::from_fn(sub.clone(), |x| self.apply(x))
    }

    /// Inverse of an injective map, defined on its image.
    pub fn inverse(&self) -> GroupHom {
        let mut pairs: Vec<(Elem, Elem)> =
            self.images.iter().copied().zip(self.source.elements().iter().copied()).collect();
        pairs.sort_unstable();
        let (src, imgs): (Vec<Elem>, Vec<Elem>) = pairs.into_iter().unzip();
        GroupHom { source: Subgroup::from_sorted(src), images: imgs }
    }

    /// Transports both sides along maps of the ambient groups.
    pub fn transport(&self, on_source: impl Fn(Elem) -> Elem, on_target: impl Fn(Elem) -> Elem) -> GroupHom {
        let mut pairs: Vec<(Elem, Elem)> =
            self.source.elements().iter().zip(&self.images).map(|(&x, &y)| (on_source(x), on_target(y))).collect();
        pairs.sort_unstable();
        let (src, imgs): (Vec<Elem>, Vec<Elem>) = pairs.into_iter().unzip();
        GroupHom { source: Subgroup::from_sorted(src), images: imgs }
    }
}

/// A subgroup realized as a standalone group, with its inclusion into the parent.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl Embedding {
    /// Realizes `sub ≤ parent` as a group whose element `i` is the `i`-th smallest element of `sub`.
    /// The standalone group is cached on the parent, so repeated calls share one `Arc`.
    pub fn of_subgroup(parent: &Arc<FiniteGroup>, sub: &Subgroup, label: impl Into<String>) -> Result<Self> {
        let group = parent.standalone(sub, label.into())?;
        Ok(Embedding { source: group, target: parent.clone(), map: sub.elements().to_vec() })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Embedding { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &Embedding) -> Result<Embedding> {
        if *self.target != *outer.source {
            return Err(Error::ContextMismatch("embeddings do not compose".into()));
        }
        Ok(Embedding {
            source: self.source.clone(),
            target: outer.target.clone(),
            map: self.map.iter().map(|&x| outer.apply(x)).collect(),
        })
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// Image of the whole source as a subgroup of the target.
    pub fn image(&self) -> Subgroup {
        Subgroup::from_unsorted(self.map.clone())
    }

    pub fn image_of(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_unsorted(s.elements().iter().map(|&x| self.apply(x)).collect())
    }

    /// Preimage of a target element, if it lies in the image.
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        // the map is increasing for subgroup embeddings; fall back to a scan otherwise
        match self.map.binary_search(&y) {
            Ok(i) if self.map[i] == y => Some(i as Elem),
            _ => self.map.iter().position(|&x| x == y).map(|i| i as Elem),
        }
    }

    pub fn preimage_of(&self, s: &Subgroup) -> Option<Subgroup> {
        s.elements().iter().map(|&y| self.preimage(y)).collect::<Option<Vec<_>>>().map(Subgroup::from_unsorted)
    }

    /// Builds an embedding from an explicit injective homomorphism of whole groups.
    pub fn from_map(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, map: Vec<Elem>) -> Result<Self> {
        let hom = GroupHom::new(source, source.whole(), target, map)?;
        if !hom.is_injective() {
            return Err(Error::NotInjective("embedding map".into()));
        }
        Ok(Embedding { source: source.clone(), target: target.clone(), map: hom.images })
    }

    /// Moves a map between subgroups of the source to the corresponding map in the target.
    pub fn push_hom(&self, h: &GroupHom) -> GroupHom {
        h.transport(|x| self.apply(x), |y| self.apply(y))
    }

    /// Inverse of [`Embedding::push_hom`]; `None` unless source and image lie in the image.
    pub fn pull_hom(&self, h: &GroupHom) -> Option<GroupHom> {
        let src = self.preimage_of(h.source())?;
        let imgs =
            h.source().elements().iter().zip(h.images()).map(|(_, &y)| self.preimage(y)).collect::<Option<Vec<_>>>()?;
        let mut pairs: Vec<(Elem, Elem)> =
            h.source().elements().iter().map(|&x| self.preimage(x).unwrap()).zip(imgs).collect();
        pairs.sort_unstable();
        debug_assert_eq!(pairs.len(), src.order());
        Some(GroupHom::from_parts(src, pairs.into_iter().map(|(_, y)| y).collect()))
    }

    /// The embedding as a homomorphism from the whole source group.
    pub fn as_hom(&self) -> GroupHom {
        GroupHom::from_parts(self.source.whole(), self.map.clone())
    }
}

/// Greedy generating set: walk the elements in order, keep those not yet generated.
pub fn generating_set(g: &FiniteGroup, p: &Subgroup) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut current = g.trivial_subgroup();
    for &x in p.elements() {
        if !current.contains(x) {
            gens.push(x);
            current = g.join(&current, &[x]);
        }
    }
    gens
}

/// All homomorphisms `P → H` (injective ones only when asked), in lexicographic
/// order of the images of the greedy generating set of `P`.
pub fn enumerate_homs(
    domain_group: &FiniteGroup,
    p: &Subgroup,
    target: &FiniteGroup,
    injective_only: bool,
) -> Vec<GroupHom> {
    let gens = generating_set(domain_group, p);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| {
            let ord = domain_group.elem_order(x);
            target
                .elements()
                .filter(|&y| {
                    let oy = target.elem_order(y);
                    if injective_only {
                        oy == ord
                    } else {
                        ord.is_multiple_of(oy)
                    }
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let images: Vec<Elem> = choice.iter().enumerate().map(|(i, &c)| candidates[i][c]).collect();
        if let Some(h) = extend(domain_group, p, target, &gens, &images) {
            if !injective_only || h.is_injective() {
                out.push(h);
            }
        }
        // odometer
        let mut i = gens.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Extends generator images along the Cayley graph; `None` if inconsistent.
fn extend(g: &FiniteGroup, p: &Subgroup, target: &FiniteGroup, gens: &[Elem], images: &[Elem]) -> Option<GroupHom> {
    let mut map: Vec<Option<Elem>> = vec![None; p.order()];
    let id_pos = p.position(g.identity())?;
    map[id_pos] = Some(target.identity());
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        let fx = map[p.position(x).unwrap()].unwrap();
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = target.mul(fx, t);
            let pos = p.position(y).unwrap();
            match map[pos] {
                None => {
                    map[pos] = Some(fy);
                    stack.push(y);
                }
                Some(existing) if existing != fy => return None,
                Some(_) => {}
            }
        }
    }
    Some(GroupHom::from_parts(p.clone(), map.into_iter().map(Option::unwrap).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name, DEFAULT_MAX_ORDER).unwrap())
    }

    #[test]
    fn c2_to_c2() {
        let c2 = group("C2");
        let all = enumerate_homs(&c2, &c2.whole(), &c2, false);
        assert_eq!(all.len(), 2);
        assert_eq!(all.iter().filter(|h| h.is_injective()).count(), 1);
    }

    #[test]
    fn automorphisms_of_klein_four() {
        let v4 = group("V4");
        assert_eq!(enumerate_homs(&v4, &v4.whole(), &v4, true).len(), 6);
        assert_eq!(enumerate_homs(&v4, &v4.whole(), &v4, false).len(), 16);
    }

    #[test]
    fn involutions_of_d8() {
        let d8 = group("D8");
        let c2 = d8.generate(&[d8.elements().find(|&x| d8.elem_order(x) == 2).unwrap()]);
        assert_eq!(enumerate_homs(&d8, &c2, &d8, true).len(), 5);
    }

    #[test]
    fn hom_counts_match_brute_force() {
        // brute force over all maps for tiny groups
        let s3 = group("S3");
        let c2 = group("C2");
        let n = enumerate_homs(&s3, &s3.whole(), &c2, false).len();
        let mut brute = 0;
        for code in 0..(1u32 << 6) {
            let images: Vec<Elem> = (0..6).map(|i| (code >> i) & 1).collect();
            if GroupHom::new(&s3, s3.whole(), &c2, images).is_ok() {
                brute += 1;
            }
        }
        assert_eq!(n, brute);
        assert_eq!(n, 2);
    }

    #[test]
    fn checked_constructor_rejects_non_homs() {
        let c4 = group("C4");
        let bad = GroupHom::new(&c4, c4.whole(), &c4, vec![0, 1, 1, 1]);
        assert!(bad.is_err());
    }

    #[test]
    fn embedding_round_trip() {
        let s4 = group("S4");
        let syl = crate::lattice::sylow_subgroup(&s4, 2);
        let emb = Embedding::of_subgroup(&s4, &syl, "D8").unwrap();
        assert_eq!(emb.source.order(), 8);
        assert_eq!(emb.image(), syl);
        for x in emb.source.elements() {
            assert_eq!(emb.preimage(emb.apply(x)), Some(x));
            for y in emb.source.elements() {
                assert_eq!(emb.apply(emb.source.mul(x, y)), s4.mul(emb.apply(x), emb.apply(y)));
            }
        }
        assert_eq!(emb.source.lattice().len(), 10);
    }

    #[test]
    fn inverse_and_composition() {
        let v4 = group("V4");
        let autos = enumerate_homs(&v4, &v4.whole(), &v4, true);
        for a in &autos {
            let inv = a.inverse();
            assert_eq!(inv.after(a), GroupHom::identity_on(v4.whole()));
        }
    }
}
