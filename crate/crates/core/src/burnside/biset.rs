use std::collections::HashMap;

use super::{BurnsideElement, Context};
use crate::error::{Error, Result};
use crate::group::{Elem, Subgroup};
use crate::hom::{Embedding, GroupHom};
use crate::rational::int;

/// An explicit finite `(G,H)`-biset: left `H`-action and right `G`-action on points `0..n`.
///
/// Used as the set-level oracle for composition and marks.
#[derive(Clone, Debug)]
pub struct ConcreteBiset {
    ctx: Context,
    points: usize,
    /// `left[h * points + x] = h · x`
    left: Vec<u32>,
    /// `right[x * |G| + g] = x · g`
    right: Vec<u32>,
}

impl ConcreteBiset {
    /// Builds a biset from explicit action tables and validates it.
    pub fn new(ctx: &Context, points: usize, left: Vec<u32>, right: Vec<u32>) -> Result<Self> {
        let b = ConcreteBiset { ctx: ctx.clone(), points, left, right };
        b.validate()?;
        Ok(b)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    #[inline]
    pub fn act_left(&self, h: Elem, x: u32) -> u32 {
        self.left[h as usize * self.points + x as usize]
    }

    #[inline]
    pub fn act_right(&self, x: u32, g: Elem) -> u32 {
        self.right[x as usize * self.ctx.source.order() + g as usize]
    }

    /// Checks action axioms, commutation and left-freeness.
    pub fn validate(&self) -> Result<()> {
        let g = &*self.ctx.source;
        let h = &*self.ctx.target;
        let n = self.points;
        if self.left.len() != h.order() * n || self.right.len() != g.order() * n {
            return Err(Error::InvalidBiset("action table sizes do not match".into()));
        }
        if self.left.iter().chain(&self.right).any(|&x| x as usize >= n) {
            return Err(Error::InvalidBiset("action leaves the point set".into()));
        }
        for x in 0..n as u32 {
            if self.act_left(h.identity(), x) != x || self.act_right(x, g.identity()) != x {
                return Err(Error::InvalidBiset("identity does not act trivially".into()));
            }
            for a in h.elements() {
                for b in h.elements() {
                    if self.act_left(a, self.act_left(b, x)) != self.act_left(h.mul(a, b), x) {
                        return Err(Error::InvalidBiset("left action is not an action".into()));
                    }
                }
                for c in g.elements() {
                    if self.act_right(self.act_left(a, x), c) != self.act_left(a, self.act_right(x, c)) {
                        return Err(Error::InvalidBiset("actions do not commute".into()));
                    }
                }
                if a != h.identity() && self.act_left(a, x) == x {
                    return Err(Error::NotLeftFree);
                }
            }
            for a in g.elements() {
                for b in g.elements() {
                    if self.act_right(self.act_right(x, a), b) != self.act_right(x, g.mul(a, b)) {
                        return Err(Error::InvalidBiset("right action is not an action".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `H ×_{K,φ} G`: classes of `(h, g)` under `(h, k g) ~ (h φ(k), g)`.
    pub fn realize(ctx: &Context, pair: &GroupHom) -> ConcreteBiset {
        let g = &*ctx.source;
        let h = &*ctx.target;
        let (ng, nh) = (g.order(), h.order());
        let mut class = vec![u32::MAX; ng * nh];
        let mut reps: Vec<(Elem, Elem)> = Vec::new();
        for a in h.elements() {
            for b in g.elements() {
                if class[a as usize * ng + b as usize] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push((a, b));
                // (a φ(k), k^-1 b) for all k
                for (&k, &fk) in pair.source().elements().iter().zip(pair.images()) {
                    let a2 = h.mul(a, fk);
                    let b2 = g.mul(g.inv(k), b);
                    class[a2 as usize * ng + b2 as usize] = id;
                }
            }
        }
        let n = reps.len();
        let mut left = vec![0u32; nh * n];
        let mut right = vec![0u32; n * ng];
        for (x, &(a, b)) in reps.iter().enumerate() {
            for y in h.elements() {
                left[y as usize * n + x] = class[h.mul(y, a) as usize * ng + b as usize];
            }
            for y in g.elements() {
                right[x * ng + y as usize] = class[a as usize * ng + g.mul(b, y) as usize];
            }
        }
        ConcreteBiset { ctx: ctx.clone(), points: n, left, right }
    }

    /// An ambient group `X` as a `(G,H)`-biset by multiplication, where `G` and `H`
    /// are embedded in `X`: `h · x · g`.
    pub fn from_ambient(right: &Embedding, left: &Embedding, p: u64) -> Result<ConcreteBiset> {
        if *right.target != *left.target {
            return Err(Error::ContextMismatch("embeddings into different ambient groups".into()));
        }
        let x = &*right.target;
        let ctx = Context::new(right.source.clone(), left.source.clone(), p);
        let n = x.order();
        let mut l = vec![0u32; left.source.order() * n];
        let mut r = vec![0u32; n * right.source.order()];
        for pt in x.elements() {
            for h in left.source.elements() {
                l[h as usize * n + pt as usize] = x.mul(left.apply(h), pt);
            }
            for g in right.source.elements() {
                r[pt as usize * right.source.order() + g as usize] = x.mul(pt, right.apply(g));
            }
        }
        Ok(ConcreteBiset { ctx, points: n, left: l, right: r })
    }

    /// Number of points `x` with `x q = ψ(q) x` for all `q ∈ Q`.
    pub fn twisted_fixed_points(&self, at: &GroupHom) -> usize {
        (0..self.points as u32)
            .filter(|&x| {
                at.source()
                    .elements()
                    .iter()
                    .zip(at.images())
                    .all(|(&q, &pq)| self.act_right(x, q) == self.act_left(pq, x))
            })
            .count()
    }

    /// Splits into orbits and reads each orbit's stabilizer pair
    /// `K = {g : x g ∈ H x}`, `φ(k) = the h with x k = h x`.
    pub fn decompose(&self) -> Result<BurnsideElement> {
        let g = &*self.ctx.source;
        let h = &*self.ctx.target;
        let mut seen = vec![false; self.points];
        let mut out = BurnsideElement::zero(&self.ctx);
        for x in 0..self.points as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut left_orbit: HashMap<u32, Elem> = HashMap::new();
            for a in h.elements() {
                if left_orbit.insert(self.act_left(a, x), a).is_some() {
                    return Err(Error::NotLeftFree);
                }
            }
            for a in h.elements() {
                for b in g.elements() {
                    seen[self.act_right(self.act_left(a, x), b) as usize] = true;
                }
            }
            let mut k = Vec::new();
            let mut phi = Vec::new();
            for b in g.elements() {
                if let Some(&a) = left_orbit.get(&self.act_right(x, b)) {
                    k.push(b);
                    phi.push(a);
                }
            }
            let hom = GroupHom::from_parts(Subgroup::from_sorted(k), phi);
            out = out.checked_add(&BurnsideElement::from_hom(&self.ctx, &hom, int(1)))?;
        }
        Ok(out)
    }

    /// `X ×_H Y` for `X` a `(H,K)`-biset (`self`) and `Y` a `(G,H)`-biset.
    pub fn amalgamate(&self, inner: &ConcreteBiset) -> Result<ConcreteBiset> {
        if *self.ctx.source != *inner.ctx.target {
            return Err(Error::ContextMismatch("amalgamation over different middle groups".into()));
        }
        let mid = &*self.ctx.source;
        let ctx = Context::new(inner.ctx.source.clone(), self.ctx.target.clone(), self.ctx.p);
        let (nx, ny) = (self.points, inner.points);
        let mut class = vec![u32::MAX; nx * ny];
        let mut reps = Vec::new();
        for x in 0..nx as u32 {
            for y in 0..ny as u32 {
                if class[x as usize * ny + y as usize] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push((x, y));
                // (x h^-1, h y)
                for m in mid.elements() {
                    let x2 = self.act_right(x, mid.inv(m));
                    let y2 = inner.act_left(m, y);
                    class[x2 as usize * ny + y2 as usize] = id;
                }
            }
        }
        let n = reps.len();
        let (nk, ng) = (ctx.target.order(), ctx.source.order());
        let mut left = vec![0u32; nk * n];
        let mut right = vec![0u32; n * ng];
        for (pt, &(x, y)) in reps.iter().enumerate() {
            for k in ctx.target.elements() {
                left[k as usize * n + pt] = class[self.act_left(k, x) as usize * ny + y as usize];
            }
            for g in ctx.source.elements() {
                right[pt * ng + g as usize] = class[x as usize * ny + inner.act_right(y, g) as usize];
            }
        }
        Ok(ConcreteBiset { ctx, points: n, left, right })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::burnside::{canonicalize, standard_basis};
    use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER};

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::builtin(name, DEFAULT_MAX_ORDER).unwrap())
    }

    #[test]
    fn realize_trivial_pair_of_c2() {
        let c2 = group("C2");
        let ctx = Context::square(c2.clone(), 2);
        let triv = GroupHom::identity_on(c2.trivial_subgroup());
        let b = ConcreteBiset::realize(&ctx, &triv);
        assert_eq!(b.len(), 4);
        b.validate().unwrap();
    }

    #[test]
    fn s3_as_c2_biset() {
        let s3 = group("S3");
        let t = s3.generate(&[s3.find_permutation(&[1, 0, 2]).unwrap()]);
        let emb = Embedding::of_subgroup(&s3, &t, "C2").unwrap();
        let b = ConcreteBiset::from_ambient(&emb, &emb, 2).unwrap();
        b.validate().unwrap();
        let x = b.decompose().unwrap();
        let ctx = b.context().clone();
        let c2 = &emb.source;
        let expected = BurnsideElement::from_hom(&ctx, &GroupHom::identity_on(c2.whole()), int(1))
            .checked_add(&BurnsideElement::from_hom(&ctx, &GroupHom::identity_on(c2.trivial_subgroup()), int(1)))
            .unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn realize_then_decompose_is_identity() {
        for name in ["V4", "S3", "C4"] {
            let g = group(name);
            let ctx = Context::square(g, 2);
            for b in standard_basis(&ctx, false) {
                let x = ConcreteBiset::realize(&ctx, b.hom());
                x.validate().unwrap();
                assert_eq!(x.decompose().unwrap(), BurnsideElement::basis(&ctx, b.clone()));
            }
        }
    }

    #[test]
    fn stabilizer_of_base_point_is_the_pair() {
        let g = group("D8");
        let ctx = Context::square(g, 2);
        for b in standard_basis(&ctx, true) {
            let x = ConcreteBiset::realize(&ctx, b.hom());
            let e = x.decompose().unwrap();
            assert_eq!(e.terms().len(), 1);
            assert_eq!(canonicalize(&ctx, b.hom()), *e.terms().keys().next().unwrap());
        }
    }

    #[test]
    fn decompose_rejects_non_free_left_action() {
        // C2 acting trivially on one point on both sides
        let c2 = group("C2");
        let ctx = Context::square(c2, 2);
        let bad = ConcreteBiset { ctx, points: 1, left: vec![0, 0], right: vec![0, 0] };
        assert!(matches!(bad.validate(), Err(Error::NotLeftFree)));
        assert!(matches!(bad.decompose(), Err(Error::NotLeftFree)));
    }
}
