use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{canonicalize, require_same, BasisPair, Context};
use crate::error::{Error, Result};
use crate::group::{Elem, Subgroup};
use crate::hom::{Embedding, GroupHom};
use crate::lattice::double_cosets_unchecked;
use crate::rational::{check_p_local, int, PLocalRational};

/// A finite `p`-local combination of standard basis elements of `A(G,H)`.
///
/// Coefficients are exact; zero coefficients are never stored, so equality of
/// elements is equality of the coefficient maps.
#[derive(Clone, Debug)]
pub struct BurnsideElement {
    ctx: Context,
    terms: BTreeMap<BasisPair, PLocalRational>,
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl BurnsideElement {
    pub fn zero(ctx: &Context) -> Self {
        BurnsideElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// `coeff · [K, φ]` for an arbitrary (not necessarily canonical) pair.
    pub fn from_hom(ctx: &Context, hom: &GroupHom, coeff: PLocalRational) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(canonicalize(ctx, hom), coeff);
        e
    }

    pub fn basis(ctx: &Context, pair: BasisPair) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(pair, int(1));
        e
    }

    /// Builds an element from `(pair, coefficient)` terms, canonicalizing pairs.
    pub fn from_terms(ctx: &Context, terms: impl IntoIterator<Item = (GroupHom, PLocalRational)>) -> Self {
        let mut e = Self::zero(ctx);
        for (hom, c) in terms {
            e.add_term(canonicalize(ctx, &hom), c);
        }
        e
    }

    /// The unit `[G, id]` of `A(G,G)`.
    pub fn identity(ctx: &Context) -> Result<Self> {
        if !ctx.is_square() {
            return Err(Error::ContextMismatch(format!("{} is not square", ctx.describe())));
        }
        Ok(Self::from_hom(ctx, &GroupHom::identity_on(ctx.source.whole()), int(1)))
    }

    pub(crate) fn add_term(&mut self, pair: BasisPair, coeff: PLocalRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(pair);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<BasisPair, PLocalRational> {
        &self.terms
    }

    pub fn coefficient(&self, pair: &BasisPair) -> PLocalRational {
        self.terms.get(pair).cloned().unwrap_or_else(PLocalRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_bifree(&self) -> bool {
        self.terms.keys().all(BasisPair::is_injective)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        require_same(&self.ctx, &other.ctx, "addition")?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-int(1)))
    }

    pub fn scale(&self, c: &PLocalRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        BurnsideElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Asserts every coefficient is `p`-local.
    pub fn check_p_local(&self) -> Result<()> {
        self.terms.values().try_for_each(|c| check_p_local(c, self.ctx.p))
    }

    /// `self ∘ rhs` for `self ∈ A(H,K)` and `rhs ∈ A(G,H)`, landing in `A(G,K)`.
    pub fn compose(&self, rhs: &BurnsideElement) -> Result<BurnsideElement> {
        if *self.ctx.source != *rhs.ctx.target || self.ctx.p != rhs.ctx.p {
            return Err(Error::ContextMismatch(format!(
                "cannot compose {} after {}",
                self.ctx.describe(),
                rhs.ctx.describe()
            )));
        }
        let ctx = Context::new(rhs.ctx.source.clone(), self.ctx.target.clone(), self.ctx.p);
        let mut out = BurnsideElement::zero(&ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let coeff = ca * cb;
                for (pair, mult) in compose_pairs(&self.ctx, a.hom(), &rhs.ctx, b.hom(), &ctx) {
                    out.add_term(pair, &coeff * int(mult as i64));
                }
            }
        }
        Ok(out)
    }

    /// `[K, φ] ↦ [φ(K), φ^-1]`, extended linearly; needs every pair injective.
    pub fn opposite(&self) -> Result<BurnsideElement> {
        let ctx = self.ctx.opposite();
        let mut out = BurnsideElement::zero(&ctx);
        for (pair, c) in &self.terms {
            if !pair.is_injective() {
                return Err(Error::NotInjective(format!("pair {pair} has no opposite")));
            }
            out.add_term(canonicalize(&ctx, &pair.hom().inverse()), c.clone());
        }
        Ok(out)
    }

    /// `ε([P, φ]) = |S/P|` on a square context.
    pub fn augmentation(&self) -> Result<PLocalRational> {
        if !self.ctx.is_square() {
            return Err(Error::ContextMismatch(format!("augmentation on non-square {}", self.ctx.describe())));
        }
        let n = self.ctx.source.order();
        Ok(self
            .terms
            .iter()
            .map(|(pair, c)| c * int((n / pair.source().order()) as i64))
            .fold(PLocalRational::zero(), |a, b| a + b))
    }

    /// Moves the element to an equal context object (for example a rebuilt copy of the same groups).
    pub fn with_context(&self, ctx: &Context) -> Result<Self> {
        require_same(&self.ctx, ctx, "context swap")?;
        Ok(BurnsideElement { ctx: ctx.clone(), terms: self.terms.clone() })
    }

    /// `true` if every pair in the support satisfies `pred`.
    pub fn support_all(&self, pred: impl FnMut(&BasisPair) -> bool) -> bool {
        self.terms.keys().all(pred)
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (pair, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{pair}")?;
            } else {
                write!(f, "({c})·{pair}")?;
            }
        }
        Ok(())
    }
}

/// Double coset formula for `[P, φ] ∘ [Q, ψ]` with `[P, φ] ∈ A(H,K)`, `[Q, ψ] ∈ A(G,H)`:
/// the sum over `x ∈ P \ H / ψ(Q)` of `[ψ^-1(ψ(Q) ∩ x^-1 P x), φ ∘ c_x ∘ ψ]`.
pub(crate) fn compose_pairs(
    outer_ctx: &Context,
    outer: &GroupHom,
    inner_ctx: &Context,
    inner: &GroupHom,
    result_ctx: &Context,
) -> Vec<(BasisPair, u64)> {
    let h = &*outer_ctx.source;
    let g = &*inner_ctx.source;
    let p = outer.source();
    let psi_q = inner.image();
    let mut out: Vec<(BasisPair, u64)> = Vec::new();
    for dc in double_cosets_unchecked(h, p, &psi_q) {
        let x = dc.representative;
        let source: Vec<Elem> = inner
            .source()
            .elements()
            .iter()
            .zip(inner.images())
            .filter(|(_, &y)| p.contains(h.conj(x, y)))
            .map(|(&q, _)| q)
            .collect();
        let source = Subgroup::from_sorted(source);
        debug_assert!(g.check_subgroup(source.elements()).is_ok());
        let map = GroupHom::from_fn(source, |q| outer.apply(h.conj(x, inner.apply(q))));
        let pair = canonicalize(result_ctx, &map);
        match out.iter_mut().find(|(b, _)| *b == pair) {
            Some((_, m)) => *m += 1,
            None => out.push((pair, 1)),
        }
    }
    out
}

/// Which of the three special elements to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    /// `[T, incl]_T^S ∈ A(T, S)`.
    Restriction,
    /// `[T, id]_S^T ∈ A(S, T)`.
    Induction,
    /// `[S, id] ∈ A(S, S)`.
    Identity,
}

/// Builds `[T, incl]`, `[T, id]` or `[S, id]` from the embedding `T → S`.
pub fn special_element(kind: SpecialKind, t_in_s: &Embedding, p: u64) -> BurnsideElement {
    let t = &t_in_s.source;
    let s = &t_in_s.target;
    match kind {
        SpecialKind::Restriction => {
            let ctx = Context::new(t.clone(), s.clone(), p);
            BurnsideElement::from_hom(&ctx, &t_in_s.as_hom(), int(1))
        }
        SpecialKind::Induction => {
            let ctx = Context::new(s.clone(), t.clone(), p);
            BurnsideElement::from_hom(&ctx, &t_in_s.as_hom().inverse(), int(1))
        }
        SpecialKind::Identity => {
            let ctx = Context::square(s.clone(), p);
            BurnsideElement::identity(&ctx).expect("square context")
        }
    }
}
