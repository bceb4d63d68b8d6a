mod common;

use std::sync::OnceLock;

use common::{group, realized, square};
use fusionkit::burnside::{Basis, BurnsideElement, Context, ElementJson};
use fusionkit::charidem::PlacedSystem;
use fusionkit::linalg::Matrix;
use fusionkit::mackey::{stable_module, MackeyFunctor, StableModule};
use fusionkit::rational::{frac, rational_reconstruct, reduce_mod, PLocalRational};
use fusionkit::sampling::triple_verdicts;
use proptest::prelude::*;

struct Fixture {
    ctx: Context,
    basis: Basis,
    s4: PlacedSystem,
    mackey: MackeyFunctor,
    module: StableModule,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let s4 = PlacedSystem::top(realized("S4", 2)).unwrap();
        let ctx = square(s4.fusion.group(), 2);
        let basis = Basis::new(&ctx, true);
        let mackey = MackeyFunctor::representable(group("C2"), 2);
        let module = stable_module(&mackey, &s4).unwrap();
        Fixture { ctx, basis, s4, mackey, module }
    })
}

fn coefficient() -> impl Strategy<Value = PLocalRational> {
    prop_oneof![
        4 => (-3i64..=3).prop_map(|n| frac(n, 1)),
        1 => (-3i64..=3, 0i64..=2).prop_map(|(n, k)| frac(n, 2 * k + 1)),
    ]
}

/// Sparse bifree elements of `A(D8, D8)` (the Sylow 2-subgroup of `S4`).
fn element() -> impl Strategy<Value = BurnsideElement> {
    let n = fixture().basis.len();
    prop::collection::vec((0..n, coefficient()), 0..4).prop_map(|terms| {
        let fx = fixture();
        let mut x = BurnsideElement::zero(&fx.ctx);
        for (i, c) in terms {
            x = x.checked_add(&BurnsideElement::from_hom(&fx.ctx, fx.basis.pairs()[i].hom(), c)).unwrap();
        }
        x
    })
}

/// Elements pushed through `ω` on either side, so stable ones show up.
fn maybe_stable() -> impl Strategy<Value = BurnsideElement> {
    (element(), 0u8..4).prop_map(|(x, mode)| {
        let w = &fixture().s4.omega;
        match mode {
            0 => x,
            1 => x.compose(w).unwrap(),
            2 => w.compose(&x).unwrap(),
            _ => w.compose(&x).unwrap().compose(w).unwrap(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(x in element(), y in element(), z in element()) {
        let lhs = x.compose(&y).unwrap().compose(&z).unwrap();
        let rhs = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_bilinear(x in element(), y in element(), z in element()) {
        let lhs = x.checked_add(&y).unwrap().compose(&z).unwrap();
        let rhs = x.compose(&z).unwrap().checked_add(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn augmentation_is_multiplicative(x in element(), y in element()) {
        let xy = x.compose(&y).unwrap();
        prop_assert_eq!(xy.augmentation().unwrap(), x.augmentation().unwrap() * y.augmentation().unwrap());
    }

    #[test]
    fn opposite_reverses_composition(x in element(), y in element()) {
        let lhs = x.compose(&y).unwrap().opposite().unwrap();
        let rhs = y.opposite().unwrap().compose(&x.opposite().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.opposite().unwrap().opposite().unwrap(), x);
    }

    #[test]
    fn element_json_round_trips(x in element()) {
        let parsed: ElementJson = serde_json::from_str(&x.to_json_string()).unwrap();
        prop_assert_eq!(parsed.into_element_in(&fixture().ctx).unwrap(), x);
    }

    #[test]
    fn stability_routes_agree(x in maybe_stable()) {
        for v in triple_verdicts(&x, &fixture().s4).unwrap() {
            prop_assert!(v.agree(), "{:?} on {}", v, x);
        }
    }

    #[test]
    fn omega_absorbs_stable_elements(x in element()) {
        let w = &fixture().s4.omega;
        let y = w.compose(&x).unwrap().compose(w).unwrap();
        prop_assert_eq!(w.compose(&y).unwrap(), y.clone());
        prop_assert_eq!(y.compose(w).unwrap(), y);
    }

    #[test]
    fn mackey_functor_is_contravariant(x in element(), y in element()) {
        let m = &fixture().mackey;
        let lhs = m.matrix(&x.compose(&y).unwrap()).unwrap();
        let rhs = m.matrix(&y).unwrap().mul(&m.matrix(&x).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_omega_lands_in_stable_module(x in element()) {
        // M(x ∘ ω) = M(ω) M(x), so its columns lie in M(F)
        let fx = fixture();
        let image = fx.mackey.matrix(&x.compose(&fx.s4.omega).unwrap()).unwrap();
        let mut rows = fx.module.basis.clone();
        rows.extend((0..image.cols()).map(|c| image.column(c)));
        prop_assert_eq!(Matrix::from_rows(rows).rank(), fx.module.rank());
    }

    #[test]
    fn reconstruction_inverts_reduction(n in -5000i64..5000, d in 1i64..5000) {
        let q = frac(n, 2 * d - 1);
        let m: i128 = 1 << 62;
        let (rn, rd) = rational_reconstruct(reduce_mod(&q, m), m).unwrap();
        prop_assert_eq!(frac(rn as i64, rd as i64), q);
    }
}
