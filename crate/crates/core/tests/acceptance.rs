//! One line per acceptance criterion. Everything is exact; each criterion also has
//! a wall-clock budget.

mod common;

use std::time::{Duration, Instant};

use common::{catalog_systems, group, realized, square};
use fusionkit::burnside::{mark_matrix, Basis, BurnsideElement, ConcreteBiset};
use fusionkit::catalog::{scenario, scenarios};
use fusionkit::charidem::{
    characteristic_element_from_group, check_corollaries, check_lemma_normal_case, check_normalizer_support,
    check_prop_equivalents, check_star_identity, linear_solve, power_iteration, verify_characteristic_idempotent,
};
use fusionkit::fusion::FusionSystem;
use fusionkit::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use fusionkit::linalg::Matrix;
use fusionkit::mackey::{check_corollary_mackey, MackeyData, MackeyFunctor};
use fusionkit::rational::int;
use fusionkit::report::Status;
use fusionkit::sampling::{sample_elements, triple_verdicts, DEFAULT_SEED};
use fusionkit::scenario::{resolve, run_scenario};
use fusionkit::Error;

type Outcome = Result<(bool, String), Error>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn c1_marks() -> Outcome {
    let mut ok = true;
    let mut sizes = Vec::new();
    for name in ["C2", "V4", "D8"] {
        let basis = Basis::new(&square(&group(name), 2), false);
        let rank = Matrix::from_u64_rows(&mark_matrix(&basis)).rank();
        ok &= rank == basis.len();
        sizes.push(format!("{name}: rank {rank}/{}", basis.len()));
    }
    Ok((ok, sizes.join(", ")))
}

fn c2_composition() -> Outcome {
    let (mut pairs, mut bad) = (0usize, 0usize);
    for name in ["C2", "V4", "D8"] {
        let ctx = square(&group(name), 2);
        let basis = Basis::new(&ctx, true);
        let sets: Vec<ConcreteBiset> = basis.pairs().iter().map(|b| ConcreteBiset::realize(&ctx, b.hom())).collect();
        for (a, xa) in basis.pairs().iter().zip(&sets) {
            for (b, xb) in basis.pairs().iter().zip(&sets) {
                let formula =
                    BurnsideElement::basis(&ctx, a.clone()).compose(&BurnsideElement::basis(&ctx, b.clone()))?;
                let by_sets = xa.amalgamate(xb)?.decompose()?;
                pairs += 1;
                bad += usize::from(formula != by_sets);
            }
        }
    }
    Ok((bad == 0, format!("{pairs} ordered pairs, {bad} mismatches")))
}

fn c3_idempotents() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for name in ["C2", "C4", "V4", "D8", "Q8"] {
        let f = FusionSystem::trivial(&group(name), 2)?;
        let one = BurnsideElement::identity(&square(f.group(), 2))?;
        ok &= linear_solve(&f)? == one && power_iteration(&f)? == one;
    }
    notes.push(format!("trivial systems {}", if ok { "ok" } else { "wrong" }));

    let s3 = realized("S3", 2);
    let s3_ok = linear_solve(&s3)? == BurnsideElement::identity(&square(s3.group(), 2))?;
    ok &= s3_ok;
    notes.push(format!("S3 {s3_ok}"));

    let s4 = realized("S4", 2);
    let big = characteristic_element_from_group(&s4)?.element;
    let w = linear_solve(&s4)?;
    let report = verify_characteristic_idempotent(&w, &s4, std::slice::from_ref(&big))?;
    let s4_ok = report.passed() && report.augmentation.0 == int(1);
    let absorbs = big.compose(&w)? == big && w.compose(&big)? == big;
    ok &= s4_ok && absorbs;
    notes.push(format!("S4 verify {s4_ok}, absorption {absorbs}"));

    let systems = catalog_systems();
    let mut agree = 0;
    for (name, sys) in &systems {
        let both = linear_solve(&sys.fusion)? == power_iteration(&sys.fusion)?;
        if !both {
            notes.push(format!("solvers disagree on {name}/{}", sys.fusion.label()));
        }
        agree += usize::from(both);
    }
    ok &= agree == systems.len();
    notes.push(format!("solvers agree on {agree}/{} catalog systems", systems.len()));
    Ok((ok, notes.join("; ")))
}

fn c4_biconditional() -> Outcome {
    let mut verdicts = Vec::new();
    for name in ["s4-d8-a4", "s4-d8-v4-negative"] {
        let r = resolve(&scenario(name).unwrap(), DEFAULT_MAX_ORDER)?;
        let (h, k) = (r.h.unwrap(), r.k.unwrap());
        let cp = r.f.fusion.is_composition_product(&h.fusion, &h.embedding, &k.fusion, &k.embedding);
        let weak = r.f.fusion.is_weakly_normal(&k.fusion, &k.embedding);
        let star = check_star_identity(&r.f, &h, &k)?.holds;
        verdicts.push((cp, star, weak));
    }
    let ok = verdicts[0] == (true, true, true) && !verdicts[1].0 && !verdicts[1].1;
    Ok((ok, format!("positive (cp, star, weakly normal) = {:?}, negative = {:?}", verdicts[0], verdicts[1])))
}

/// Runs `check` on every catalog scenario with `H` on `S` and a `K`; refusals are
/// counted, not failed.
fn over_catalog<T>(
    check: impl Fn(&fusionkit::scenario::Resolved) -> fusionkit::Result<T>,
) -> Result<(Vec<(String, T)>, usize), Error> {
    let mut out = Vec::new();
    let mut refused = 0;
    for sc in scenarios() {
        let r = resolve(&sc, DEFAULT_MAX_ORDER)?;
        let on_s = r.h.as_ref().is_some_and(|h| **h.fusion.group() == **r.f.fusion.group());
        if !on_s || r.k.is_none() {
            continue;
        }
        match check(&r) {
            Ok(v) => out.push((sc.name.clone(), v)),
            Err(Error::Precondition(_)) => refused += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((out, refused))
}

fn c5_prop() -> Outcome {
    let (rows, refused) = over_catalog(|r| check_prop_equivalents(&r.f, r.h.as_ref().unwrap(), r.k.as_ref().unwrap()))?;
    let bad: Vec<&String> = rows.iter().filter(|(_, v)| !v.agree()).map(|(n, _)| n).collect();
    Ok((
        !rows.is_empty() && bad.is_empty(),
        format!("{} scenarios agree, {} outside hypothesis, disagreements {bad:?}", rows.len(), refused),
    ))
}

fn c6_lemmas() -> Outcome {
    let (rows, refused) =
        over_catalog(|r| check_lemma_normal_case(&r.f, r.h.as_ref().unwrap(), r.k.as_ref().unwrap()))?;
    let bad: Vec<&String> = rows.iter().filter(|(_, v)| !v.agree()).map(|(n, _)| n).collect();
    let positives = rows.iter().filter(|(_, v)| v.cp).count();

    let r = resolve(&scenario("s4-d8-a4").unwrap(), DEFAULT_MAX_ORDER)?;
    let mut support = Vec::new();
    for u in &r.u {
        let v = check_normalizer_support(&r.f, u)?;
        support.push((u.order(), v.is_normalizer, v.support_ok));
    }
    let support_ok = support.len() == 3 && support.iter().all(|&(_, a, b)| a == b);
    Ok((
        bad.is_empty() && !rows.is_empty() && support_ok,
        format!(
            "normal case: {} scenarios agree ({positives} products), {refused} not weakly normal, disagreements {bad:?}; \
             (|U|, isNormalizer, supportOK) = {support:?}",
            rows.len()
        ),
    ))
}

fn c7_corollaries() -> Outcome {
    let s4 = check_corollaries(&group("S4"), 2)?;
    let s4c3 = check_corollaries(&group("S4 x C3"), 2)?;
    let ok = s4.hyperfocal && s4.hyperfocal_order == 4 && s4.pprime && s4c3.pprime;
    Ok((
        ok,
        format!(
            "S4: (1) {} with |T| = {}, (2) {}; S4xC3: (2) {}",
            s4.hyperfocal, s4.hyperfocal_order, s4.pprime, s4c3.pprime
        ),
    ))
}

fn c8_mackey() -> Outcome {
    let r = resolve(&scenario("s4-mackey").unwrap(), DEFAULT_MAX_ORDER)?;
    let (h, k) = (r.h.unwrap(), r.k.unwrap());
    let mut ok = true;
    let mut notes = Vec::new();
    for anchor in ["trivial", "C2"] {
        let m = MackeyFunctor::representable(group(anchor), 2);
        let c = check_corollary_mackey(&m, &r.f, &h, &k)?;
        ok &= c.equal;
        notes.push(format!("anchor {anchor}: equal {} ranks {:?}", c.equal, c.ranks));
    }
    let systems = catalog_systems();
    let mut good = 0;
    for (_, sys) in &systems {
        let mut this = true;
        for anchor in ["trivial", "C2"] {
            let m = MackeyFunctor::representable(group(anchor), sys.p());
            match MackeyData::new(&m, sys) {
                Ok(d) => this &= d.maps.tr_res_is_identity() && d.maps.res_tr_is_omega(&d.module),
                Err(Error::StableSpaceMismatch(_)) => this = false,
                Err(e) => return Err(e),
            }
        }
        good += usize::from(this);
    }
    ok &= good == systems.len();
    notes.push(format!("tr/res and stable space on {good}/{} catalog systems", systems.len()));
    Ok((ok, notes.join("; ")))
}

fn c9_stability() -> Outcome {
    let mut elements = 0;
    let mut bad = 0;
    for (_, sys) in catalog_systems() {
        for x in sample_elements(&sys, 8, DEFAULT_SEED)? {
            elements += 1;
            bad += triple_verdicts(&x, &sys)?.iter().filter(|v| !v.agree()).count();
        }
    }
    Ok((elements >= 200 && bad == 0, format!("{elements} sampled elements, {bad} disagreeing verdicts")))
}

fn c10_probe() -> Outcome {
    let sc = scenario("c4-v4-probe").unwrap();
    let first = run_scenario(&sc, DEFAULT_MAX_ORDER, false)?;
    let second = run_scenario(&sc, DEFAULT_MAX_ORDER, false)?;
    let same = serde_json::to_string(&first).unwrap() == serde_json::to_string(&second).unwrap();
    let row = first.check("conjecture_general").expect("evidence row");
    let has_both = row.value.get("cp").is_some_and(|v| v.is_boolean())
        && row.value.get("identity").is_some_and(|v| v.is_boolean());
    Ok((same && has_both && row.status == Status::Evidence, format!("deterministic {same}, row {}", row.value)))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("marks injectivity", 30, c1_marks),
        ("composition oracle equivalence", 120, c2_composition),
        ("characteristic idempotents", 120, c3_idempotents),
        ("composition product vs star identity", 120, c4_biconditional),
        ("three equivalent conditions", 60, c5_prop),
        ("normal case and normalizer support", 120, c6_lemmas),
        ("hyperfocal and p' corollaries", 180, c7_corollaries),
        ("Mackey functor maps", 180, c8_mackey),
        ("stability triple equivalence", 120, c9_stability),
        ("general probe", 60, c10_probe),
    ];
    let mut failed = Vec::new();
    for (i, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*budget);
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "{} criterion {:>2}: {title}: {detail} [{:.2}s of {budget}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn builtin_ambient_orders() {
    for (name, n) in [("S3", 6), ("A4", 12), ("S4", 24), ("S4 x C3", 72)] {
        assert_eq!(FiniteGroup::builtin(name, DEFAULT_MAX_ORDER).unwrap().order(), n);
    }
}
