use num_traits::Zero;

use super::{Basis, BurnsideElement, ConcreteBiset, Context};
use crate::hom::{generating_set, GroupHom};
use crate::rational::{int, PLocalRational};

/// Mark of the basis element `[K, φ]` at the pair `⟨Q, ψ⟩`:
/// `(1/|K|) · #{(h, g) : g Q g^-1 ≤ K and ψ(q) h = h φ(g q g^-1) for all q ∈ Q}`.
pub fn mark(ctx: &Context, basis_pair: &GroupHom, at: &GroupHom) -> u64 {
    let g = &*ctx.source;
    let h = &*ctx.target;
    let k = basis_pair.source();
    let q = at.source();
    if q.order() > k.order() || !k.order().is_multiple_of(q.order()) {
        return 0;
    }
    let gens = generating_set(g, q);
    let mut count = 0u64;
    for x in g.elements() {
        let conj: Vec<_> = gens.iter().map(|&y| g.conj(x, y)).collect();
        if !conj.iter().all(|&c| k.contains(c)) {
            continue;
        }
        let targets: Vec<_> = conj.iter().map(|&c| basis_pair.apply(c)).collect();
        let sources: Vec<_> = gens.iter().map(|&y| at.apply(y)).collect();
        for y in h.elements() {
            if sources.iter().zip(&targets).all(|(&s, &t)| h.mul(s, y) == h.mul(y, t)) {
                count += 1;
            }
        }
    }
    debug_assert_eq!(count % k.order() as u64, 0);
    count / k.order() as u64
}

/// Mark of an element at one pair.
pub fn mark_of(x: &BurnsideElement, at: &GroupHom) -> PLocalRational {
    x.terms()
        .iter()
        .map(|(pair, c)| c * int(mark(x.context(), pair.hom(), at) as i64))
        .fold(PLocalRational::zero(), |a, b| a + b)
}

/// Mark vector of `x`, indexed by the pairs of `index`.
pub fn marks(x: &BurnsideElement, index: &Basis) -> Vec<PLocalRational> {
    index.pairs().iter().map(|at| mark_of(x, at.hom())).collect()
}

/// `m[i][j]` is the mark of basis element `j` at pair `i`.
pub fn mark_matrix(basis: &Basis) -> Vec<Vec<u64>> {
    basis.pairs().iter().map(|at| basis.pairs().iter().map(|b| mark(&basis.ctx, b.hom(), at.hom())).collect()).collect()
}

/// Set-level mark: realize `[K, φ]` and count the points fixed by `⟨Q, ψ⟩`.
pub fn marks_by_counting_points(ctx: &Context, basis_pair: &GroupHom, at: &GroupHom) -> u64 {
    let biset = ConcreteBiset::realize(ctx, basis_pair);
    biset.twisted_fixed_points(at) as u64
}
