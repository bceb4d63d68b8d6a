//! Representable Mackey functors `M = A(-, K₀)_(p)`, their `F`-stable elements,
//! and the transfer and restriction maps between a system and its subsystems.

use std::sync::Arc;

use serde::Serialize;

use crate::burnside::{special_element, Basis, BurnsideElement, Context, SpecialKind};
use crate::charidem::PlacedSystem;
use crate::error::{Error, Result};
use crate::fusion::Scope;
use crate::group::FiniteGroup;
use crate::linalg::{is_identity, Matrix};
use crate::rational::{int, PLocalRational};
use crate::stability::twisted_restriction;

/// `P ↦ A(P, K₀)_(p)`, acting contravariantly by precomposition.
#[derive(Clone, Debug)]
pub struct MackeyFunctor {
    anchor: Arc<FiniteGroup>,
    p: u64,
}

impl MackeyFunctor {
    pub fn representable(anchor: Arc<FiniteGroup>, p: u64) -> Self {
        MackeyFunctor { anchor, p }
    }

    pub fn anchor(&self) -> &Arc<FiniteGroup> {
        &self.anchor
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Full standard basis of `M(P)`.
    pub fn value_basis(&self, g: &Arc<FiniteGroup>) -> Basis {
        Basis::new(&Context::new(g.clone(), self.anchor.clone(), self.p), false)
    }

    pub fn dimension(&self, g: &Arc<FiniteGroup>) -> usize {
        self.value_basis(g).len()
    }

    /// Coordinates of `y ∈ M(P)` in [`MackeyFunctor::value_basis`].
    pub fn coordinates(&self, y: &BurnsideElement) -> Result<Vec<PLocalRational>> {
        let basis = self.value_basis(&y.context().source);
        if *y.context() != basis.ctx {
            return Err(Error::ContextMismatch(format!("{} is not a value of this functor", y.context().describe())));
        }
        Ok(basis.pairs().iter().map(|b| y.coefficient(b)).collect())
    }

    /// `M(X): M(Q) → M(P)` for `X ∈ A(P, Q)`; column `j` holds `b_j ∘ X`.
    pub fn matrix(&self, x: &BurnsideElement) -> Result<Matrix> {
        let ctx = x.context();
        if ctx.p != self.p {
            return Err(Error::ContextMismatch(format!("prime {} vs {}", ctx.p, self.p)));
        }
        let from = self.value_basis(&ctx.target);
        let to = self.value_basis(&ctx.source);
        let mut cols = Vec::with_capacity(from.len());
        for b in from.pairs() {
            let y = BurnsideElement::basis(&from.ctx, b.clone()).compose(x)?;
            cols.push(to.pairs().iter().map(|c| y.coefficient(c)).collect());
        }
        Ok(Matrix::from_columns(cols, to.len()))
    }
}

/// `M(F) ⊆ M(S)` with a canonical (reduced echelon) basis.
#[derive(Clone, Debug)]
pub struct StableModule {
    pub basis: Vec<Vec<PLocalRational>>,
    /// Columns are the basis vectors: the inclusion `M(F) → M(S)`.
    pub inclusion: Matrix,
    pub omega_matrix: Matrix,
    pivots: Vec<usize>,
}

impl StableModule {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn from_basis(basis: Vec<Vec<PLocalRational>>, dim: usize, omega_matrix: Matrix) -> Self {
        let pivots = basis.iter().map(|v| v.iter().position(|c| *c != int(0)).expect("nonzero basis vector")).collect();
        let inclusion = Matrix::from_columns(basis.clone(), dim);
        StableModule { basis, inclusion, omega_matrix, pivots }
    }
}

fn kernel_basis(m: &Matrix) -> Vec<Vec<PLocalRational>> {
    Matrix::row_space_basis(&m.kernel(), m.cols())
}

fn stack(blocks: &[Matrix], cols: usize) -> Matrix {
    let rows: Vec<Vec<PLocalRational>> = blocks.iter().flat_map(|b| (0..b.rows()).map(|i| b.row(i).to_vec())).collect();
    if rows.is_empty() {
        Matrix::zeros(0, cols)
    } else {
        Matrix::from_rows(rows)
    }
}

/// Fixed points of `M(ω_F)`, checked against the elements with
/// `M([P, φ]) x = M([P, incl]) x` for every morphism `φ` of `F`.
pub fn stable_module(m: &MackeyFunctor, f: &PlacedSystem) -> Result<StableModule> {
    let s = f.fusion.group();
    let dim = m.dimension(s);
    let omega_matrix = m.matrix(&f.omega)?;
    let fixed = kernel_basis(&omega_matrix.sub(&Matrix::identity(dim)));

    let mut blocks = Vec::new();
    for phi in f.fusion.quantifier(Scope::All, false) {
        let incl = crate::hom::GroupHom::identity_on(phi.source().clone());
        let twisted = m.matrix(&twisted_restriction(s, &phi, m.p))?;
        let plain = m.matrix(&twisted_restriction(s, &incl, m.p))?;
        blocks.push(twisted.sub(&plain));
    }
    let definitional = if blocks.is_empty() {
        let id = Matrix::identity(dim);
        (0..dim).map(|i| id.row(i).to_vec()).collect()
    } else {
        kernel_basis(&stack(&blocks, dim))
    };
    if fixed != definitional {
        return Err(Error::StableSpaceMismatch(format!(
            "{}: fixed space of rank {} vs stable space of rank {}",
            f.fusion.label(),
            fixed.len(),
            definitional.len()
        )));
    }
    Ok(StableModule::from_basis(fixed, dim, omega_matrix))
}

#[derive(Clone, Debug)]
pub struct TransferRestriction {
    /// `res_S^F: M(F) → M(S)`.
    pub res: Matrix,
    /// `tr_S^F: M(S) → M(F)`.
    pub tr: Matrix,
}

impl TransferRestriction {
    /// `tr ∘ res = id` on `M(F)`.
    pub fn tr_res_is_identity(&self) -> bool {
        is_identity(&self.tr.mul(&self.res))
    }

    /// `res ∘ tr = M(ω_F)`.
    pub fn res_tr_is_omega(&self, module: &StableModule) -> bool {
        self.res.mul(&self.tr) == module.omega_matrix
    }
}

/// Restriction is the inclusion; transfer is `M(ω_F)` read in the stable basis.
pub fn transfer_restriction(module: &StableModule) -> TransferRestriction {
    let a = &module.omega_matrix;
    let rows: Vec<Vec<PLocalRational>> = module.pivots.iter().map(|&r| a.row(r).to_vec()).collect();
    let tr = if rows.is_empty() { Matrix::zeros(0, a.cols()) } else { Matrix::from_rows(rows) };
    TransferRestriction { res: module.inclusion.clone(), tr }
}

/// A system together with its stable module and maps.
#[derive(Clone, Debug)]
pub struct MackeyData {
    pub module: StableModule,
    pub maps: TransferRestriction,
}

impl MackeyData {
    pub fn new(m: &MackeyFunctor, f: &PlacedSystem) -> Result<Self> {
        let module = stable_module(m, f)?;
        let maps = transfer_restriction(&module);
        Ok(MackeyData { module, maps })
    }
}

/// `tr_K^F = tr_S^F ∘ tr_T^S ∘ res_T^K` and `res_K^F = tr_T^K ∘ res_T^S ∘ res_S^F`,
/// with `tr_T^S = M([T, id]_S^T)` and `res_T^S = M([T, incl]_T^S)`.
pub fn subsystem_maps(
    m: &MackeyFunctor,
    f: &MackeyData,
    k_sys: &PlacedSystem,
    k: &MackeyData,
) -> Result<(Matrix, Matrix)> {
    let p = k_sys.p();
    let tr_ts = m.matrix(&special_element(SpecialKind::Induction, &k_sys.embedding, p))?;
    let res_ts = m.matrix(&special_element(SpecialKind::Restriction, &k_sys.embedding, p))?;
    if tr_ts.rows() != f.maps.tr.cols() || res_ts.cols() != f.maps.res.rows() {
        return Err(Error::ContextMismatch("subsystem does not sit in the system's group".into()));
    }
    let tr_kf = f.maps.tr.mul(&tr_ts).mul(&k.maps.res);
    let res_kf = k.maps.tr.mul(&res_ts).mul(&f.maps.res);
    Ok((tr_kf, res_kf))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MackeyCorollary {
    pub anchor: String,
    pub equal: bool,
    pub ranks: [usize; 3],
    #[serde(skip)]
    pub difference: Option<Matrix>,
}

/// `res_K^F ∘ tr_H^F` against `tr_T^K ∘ res_T^S ∘ res_S^H` as maps `M(H) → M(K)`,
/// for `H` on `S` and `K` on `T`.
pub fn check_corollary_mackey(
    m: &MackeyFunctor,
    f: &PlacedSystem,
    h: &PlacedSystem,
    k: &PlacedSystem,
) -> Result<MackeyCorollary> {
    if !f.fusion.is_composition_product(&h.fusion, &h.embedding, &k.fusion, &k.embedding) {
        return Err(Error::Precondition("not a composition product".into()));
    }
    if !f.fusion.is_weakly_normal(&k.fusion, &k.embedding) {
        return Err(Error::Precondition(format!("{} is not weakly normal", k.fusion.label())));
    }
    if **h.fusion.group() != **f.fusion.group() {
        return Err(Error::Precondition("H must be a system on S".into()));
    }
    let fd = MackeyData::new(m, f)?;
    let hd = MackeyData::new(m, h)?;
    let kd = MackeyData::new(m, k)?;
    let (tr_hf, _) = subsystem_maps(m, &fd, h, &hd)?;
    let (_, res_kf) = subsystem_maps(m, &fd, k, &kd)?;
    let lhs = res_kf.mul(&tr_hf);
    let res_ts = m.matrix(&special_element(SpecialKind::Restriction, &k.embedding, k.p()))?;
    let rhs = kd.maps.tr.mul(&res_ts).mul(&hd.maps.res);
    let equal = lhs == rhs;
    Ok(MackeyCorollary {
        anchor: m.anchor.label().to_string(),
        equal,
        ranks: [fd.module.rank(), hd.module.rank(), kd.module.rank()],
        difference: (!equal).then(|| lhs.sub(&rhs)),
    })
}
