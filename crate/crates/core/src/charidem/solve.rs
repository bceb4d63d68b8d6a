use std::collections::{BTreeMap, BTreeSet};

use crate::burnside::{mark, Basis, BasisPair, BurnsideElement, Context};
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, Scope};
use crate::group::Subgroup;
use crate::hom::enumerate_homs;
use crate::linalg::{Matrix, SolveFailure};
use crate::rational::{int, PLocalRational};
use crate::stability::moves_at;

/// Pairs of bifree classes whose marks on `ω` must agree, from stability of `ω` on
/// both sides under the generating morphisms.
fn mark_identifications(f: &FusionSystem, at: &Basis) -> BTreeSet<(usize, usize)> {
    let s = f.group();
    let mut out = BTreeSet::new();
    let mut link = |a: usize, b: usize| {
        if a != b {
            out.insert((a.min(b), a.max(b)));
        }
    };
    for q in s.lattice().subgroups() {
        let right_moves = moves_at(f, q, Scope::Generators);
        for psi in enumerate_homs(s, q, s, true) {
            let here = at.locate(&psi).expect("bifree pair");
            for phi in &right_moves {
                link(here, at.locate(&psi.after(&phi.inverse())).expect("bifree pair"));
            }
            for phi in moves_at(f, &psi.image(), Scope::Generators) {
                link(here, at.locate(&phi.after(&psi)).expect("bifree pair"));
            }
        }
    }
    out
}

/// Solves for `ω_F` over the `F`-generated bifree classes: stability as equalities
/// of marks, then `Σ_{K = S} c = 1` and `Σ c = 0` over each class of proper sources.
pub fn linear_solve(f: &FusionSystem) -> Result<BurnsideElement> {
    let s = f.group();
    let ctx = Context::square(s.clone(), f.p());
    let at = Basis::new(&ctx, true);
    let unknowns: Vec<&BasisPair> = at.pairs().iter().filter(|b| f.contains(b.hom())).collect();
    let n = unknowns.len();
    let marks: Vec<Vec<u64>> =
        at.pairs().iter().map(|a| unknowns.iter().map(|u| mark(&ctx, u.hom(), a.hom())).collect()).collect();

    let mut rows: Vec<Vec<PLocalRational>> = Vec::new();
    let mut rhs = Vec::new();
    for (i, j) in mark_identifications(f, &at) {
        if marks[i] != marks[j] {
            rows.push(marks[i].iter().zip(&marks[j]).map(|(&a, &b)| int(a as i64 - b as i64)).collect());
            rhs.push(int(0));
        }
    }
    let mut by_source: BTreeMap<&Subgroup, Vec<usize>> = BTreeMap::new();
    for (j, u) in unknowns.iter().enumerate() {
        by_source.entry(u.source()).or_default().push(j);
    }
    for (k, cols) in by_source {
        let mut row = vec![int(0); n];
        for j in cols {
            row[j] = int(1);
        }
        rows.push(row);
        rhs.push(int(if k.order() == s.order() { 1 } else { 0 }));
    }

    let m = Matrix::from_rows(rows);
    let coeffs = m.solve(&rhs).map_err(|e| match e {
        SolveFailure::Inconsistent { rank } => Error::Singular { kind: "inconsistent", rank, unknowns: n },
        SolveFailure::Underdetermined { rank } => Error::Singular { kind: "underdetermined", rank, unknowns: n },
    })?;
    let omega = BurnsideElement::from_terms(&ctx, unknowns.iter().zip(coeffs).map(|(u, c)| (u.hom().clone(), c)));
    if !super::accept(&omega, f)? {
        return Err(Error::NotCharacteristic(format!(
            "{}: solution of the linear system fails verification",
            f.label()
        )));
    }
    Ok(omega)
}
