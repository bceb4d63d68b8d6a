//! Scenario files: an ambient group, a prime, subsystems `H` on `R` and `K` on
//! `T`, and the checks to run on them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::burnside::{special_element, ConcreteBiset, SpecialKind};
use crate::charidem::{
    check_commutation, check_conjecture_general, check_corollaries, check_lemma_normal_case, check_normalizer_support,
    check_prop_equivalents, check_star_identity, omega_by_orbits, PlacedSystem,
};
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, Scope};
use crate::group::{is_prime, Elem, FiniteGroup, GroupSpec, Subgroup};
use crate::hom::{Embedding, GroupHom};
use crate::lattice::{core_subgroups, is_sylow, sylow_subgroup};
use crate::mackey::{check_corollary_mackey, MackeyData, MackeyFunctor};
use crate::report::{sha256_hex, CheckRecord, Report, Status};
use crate::sampling::{sample_elements, triple_verdicts, DEFAULT_SEED};
use crate::stability::{is_stable, Method, Side};

/// A subgroup of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    /// `auto` or `S` (the Sylow subgroup), `G`, `trivial`, `O^p`, `O^p'`,
    /// `hyperfocal`, `Z(S)`, `N(S)`.
    Named(String),
    Elements {
        elements: Vec<Elem>,
    },
    Generators {
        generators: Vec<Elem>,
    },
    /// Generators given as permutations, for permutation groups.
    Permutations {
        permutations: Vec<Vec<u32>>,
    },
}

impl Default for SubgroupSpec {
    fn default() -> Self {
        SubgroupSpec::Named("auto".into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Place {
    S,
    R,
    T,
}

/// A morphism in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: Vec<Elem>,
    pub images: Vec<Elem>,
}

/// A saturated system on `S`, `R` or `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemSpec {
    /// `full` (the system `F` itself, on `S` only) or `trivial` (`F_Q(Q)`).
    Named(String),
    AmbientSubgroup {
        ambient_subgroup: SubgroupSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        on: Option<Place>,
    },
    Generators {
        generators: Vec<MorphismSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        on: Option<Place>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    CompositionProduct,
    StarIdentity,
    PropEquivalents,
    LemmaNormalCase,
    NormalizerSupport,
    Corollaries,
    ConjectureGeneral,
    MackeyCorollary,
    MackeyMaps,
    SaturationOracle,
    StabilityTriple,
}

impl CheckKind {
    fn needs_subsystems(self) -> bool {
        matches!(
            self,
            CheckKind::CompositionProduct
                | CheckKind::StarIdentity
                | CheckKind::PropEquivalents
                | CheckKind::LemmaNormalCase
                | CheckKind::ConjectureGeneral
                | CheckKind::MackeyCorollary
        )
    }

    pub fn name(self) -> String {
        serde_json::to_value(self).unwrap().as_str().unwrap().to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub p: u64,
    pub ambient: GroupSpec,
    #[serde(default)]
    pub sylow: SubgroupSpec,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<SubgroupSpec>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<SubgroupSpec>,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<SystemSpec>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<SystemSpec>,
    #[serde(rename = "U", default, skip_serializing_if = "Vec::is_empty")]
    pub u: Vec<SubgroupSpec>,
    pub checks: Vec<CheckKind>,
    /// Expected verdicts for boolean checks; unlisted checks are expected to hold.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<CheckKind, bool>,
    /// Anchor groups `K₀` of the representable functors; default the trivial group.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchors: Vec<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub oracle: bool,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical serialization, the input to the report hash.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("scenario serializes")
    }
}

/// A scenario with groups built and every system placed inside `S`.
pub struct Resolved {
    pub g: Arc<FiniteGroup>,
    pub p: u64,
    /// `S`, `R`, `T` in ambient coordinates.
    pub s: Subgroup,
    pub r: Subgroup,
    pub t: Subgroup,
    pub f: PlacedSystem,
    pub h: Option<PlacedSystem>,
    pub k: Option<PlacedSystem>,
    /// The subgroups `U` in the coordinates of `S`.
    pub u: Vec<Subgroup>,
    s_pos: HashMap<Elem, Elem>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Scenario(msg.into())
}

fn resolve_subgroup(g: &FiniteGroup, p: u64, spec: &SubgroupSpec, s: Option<&Subgroup>) -> Result<Subgroup> {
    match spec {
        SubgroupSpec::Named(n) => {
            let cores = || core_subgroups(g, p);
            let need_s = || s.cloned().ok_or_else(|| invalid(format!("{n:?} cannot be used to define S itself")));
            Ok(match n.as_str() {
                "auto" | "S" => match s {
                    Some(s) => s.clone(),
                    None => sylow_subgroup(g, p),
                },
                "G" => g.whole(),
                "trivial" | "1" => g.trivial_subgroup(),
                "O^p" => cores().o_p,
                "O^p'" => cores().o_p_prime,
                "hyperfocal" => g.intersect(&need_s()?, &cores().o_p),
                "Z(S)" => {
                    let s = need_s()?;
                    Subgroup::from_sorted(
                        s.elements()
                            .iter()
                            .copied()
                            .filter(|&x| s.elements().iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
                            .collect(),
                    )
                }
                "N(S)" => g.normalizer(&need_s()?),
                other => return Err(invalid(format!("unknown subgroup name {other:?}"))),
            })
        }
        SubgroupSpec::Elements { elements } => {
            let mut e = elements.clone();
            e.sort_unstable();
            e.dedup();
            if let Some(&bad) = e.iter().find(|&&x| x as usize >= g.order()) {
                return Err(invalid(format!("element {bad} out of range")));
            }
            g.check_subgroup(&e).map_err(|err| invalid(err.to_string()))
        }
        SubgroupSpec::Generators { generators } => {
            if let Some(&bad) = generators.iter().find(|&&x| x as usize >= g.order()) {
                return Err(invalid(format!("element {bad} out of range")));
            }
            Ok(g.generate(generators))
        }
        SubgroupSpec::Permutations { permutations } => {
            let gens = permutations
                .iter()
                .map(|perm| {
                    g.find_permutation(perm).ok_or_else(|| invalid(format!("permutation {perm:?} is not in the group")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(g.generate(&gens))
        }
    }
}

impl Resolved {
    /// `sub ≤ S` (ambient coordinates) in the coordinates of the standalone `S`.
    fn in_s(&self, sub: &Subgroup) -> Result<Subgroup> {
        sub.elements()
            .iter()
            .map(|x| self.s_pos.get(x).copied().ok_or_else(|| invalid("subgroup is not contained in S")))
            .collect::<Result<Vec<_>>>()
            .map(Subgroup::from_unsorted)
    }

    fn embed(&self, sys: &FusionSystem, ambient_of: impl Fn(Elem) -> Elem) -> Result<Embedding> {
        let map = sys.group().elements().map(|e| self.s_pos[&ambient_of(e)]).collect();
        Embedding::from_map(sys.group(), self.f.fusion.group(), map)
    }

    fn place(&self, spec: &SystemSpec, default: Place, name: &str) -> Result<PlacedSystem> {
        let on = match spec {
            SystemSpec::Named(_) => None,
            SystemSpec::AmbientSubgroup { on, .. } | SystemSpec::Generators { on, .. } => *on,
        }
        .unwrap_or(default);
        let q = match on {
            Place::S => &self.s,
            Place::R => &self.r,
            Place::T => &self.t,
        };
        let label = format!("{name}:{on:?}");
        let g = &self.g;
        match spec {
            SystemSpec::Named(n) if n == "full" => {
                if q.order() != self.s.order() {
                    return Err(invalid(format!("{name} = full needs the system to live on S")));
                }
                PlacedSystem::top(self.f.fusion.clone().with_label(label))
            }
            SystemSpec::Named(n) if n == "trivial" => {
                let sys = FusionSystem::from_subgroup_of(g, q, q, self.p, label)?;
                let emb = self.embed(&sys, |e| q.elements()[sys.realization().unwrap().sylow.apply(e) as usize])?;
                PlacedSystem::new(sys, emb)
            }
            SystemSpec::Named(n) => Err(invalid(format!("unknown system name {n:?}"))),
            SystemSpec::AmbientSubgroup { ambient_subgroup, .. } => {
                let x = resolve_subgroup(g, self.p, ambient_subgroup, Some(&self.s))?;
                if !q.is_subset_of(&x) {
                    return Err(invalid(format!("{name}: {on:?} is not contained in the realizing subgroup")));
                }
                if q.order() as u64 != crate::group::p_part(x.order() as u64, self.p) {
                    return Err(invalid(format!("{name}: {on:?} is not Sylow in the realizing subgroup")));
                }
                let sys = FusionSystem::from_subgroup_of(g, &x, q, self.p, label)?;
                let emb = self.embed(&sys, |e| x.elements()[sys.realization().unwrap().sylow.apply(e) as usize])?;
                PlacedSystem::new(sys, emb)
            }
            SystemSpec::Generators { generators, .. } => {
                let qg = Embedding::of_subgroup(g, q, format!("{label}:group"))?;
                let mut homs = Vec::new();
                for m in generators {
                    let src =
                        resolve_subgroup(g, self.p, &SubgroupSpec::Elements { elements: m.source.clone() }, None)?;
                    let hom = GroupHom::new(g, src, g, m.images.clone()).map_err(|e| invalid(e.to_string()))?;
                    let pulled =
                        qg.pull_hom(&hom).ok_or_else(|| invalid(format!("{name}: generator leaves {on:?}")))?;
                    homs.push(pulled);
                }
                let sys = FusionSystem::closure(&qg.source, self.p, homs, label)?;
                if let Some(why) = sys.saturation_failure() {
                    return Err(invalid(format!("{name} is not saturated: {why}")));
                }
                let emb = self.embed(&sys, |e| qg.apply(e))?;
                PlacedSystem::new(sys, emb)
            }
        }
    }
}

pub fn resolve(sc: &Scenario, max_order: usize) -> Result<Resolved> {
    if !is_prime(sc.p) {
        return Err(invalid(format!("p = {} is not prime", sc.p)));
    }
    let g = sc.ambient.build(max_order)?;
    let s = resolve_subgroup(&g, sc.p, &sc.sylow, None)?;
    if !is_sylow(&g, &s, sc.p) {
        return Err(invalid("S is not a Sylow subgroup of the ambient group"));
    }
    let fusion = FusionSystem::from_subgroup_of(&g, &g.whole(), &s, sc.p, format!("F_S({})", g.label()))?;
    let sylow = &fusion.realization().expect("realized").sylow;
    let s_pos: HashMap<Elem, Elem> = fusion.group().elements().map(|e| (sylow.apply(e), e)).collect();
    let f = PlacedSystem::top(fusion)?;
    let sub_of_s = |spec: &Option<SubgroupSpec>, what: &str| -> Result<Subgroup> {
        let sub = match spec {
            Some(spec) => resolve_subgroup(&g, sc.p, spec, Some(&s))?,
            None => s.clone(),
        };
        if !sub.is_subset_of(&s) {
            return Err(invalid(format!("{what} is not contained in S")));
        }
        Ok(sub)
    };
    let r = sub_of_s(&sc.r, "R")?;
    let t = sub_of_s(&sc.t, "T")?;
    let mut out = Resolved { g: g.clone(), p: sc.p, s: s.clone(), r, t, f, h: None, k: None, u: Vec::new(), s_pos };
    for spec in &sc.u {
        let u = resolve_subgroup(&g, sc.p, spec, Some(&s))?;
        out.u.push(out.in_s(&u)?);
    }
    let h_default = if sc.r.is_some() { Place::R } else { Place::S };
    out.h = sc.h.as_ref().map(|spec| out.place(spec, h_default, "H")).transpose()?;
    out.k = sc.k.as_ref().map(|spec| out.place(spec, Place::T, "K")).transpose()?;
    Ok(out)
}

fn validate(sc: &Scenario, res: &Resolved) -> Result<()> {
    for c in &sc.checks {
        if c.needs_subsystems() && (res.h.is_none() || res.k.is_none()) {
            return Err(invalid(format!("check {} needs both H and K", c.name())));
        }
        let h_on_s = res.h.as_ref().is_some_and(|h| h.fusion.group().order() == res.s.order());
        if matches!(
            c,
            CheckKind::StarIdentity
                | CheckKind::PropEquivalents
                | CheckKind::LemmaNormalCase
                | CheckKind::MackeyCorollary
        ) && !h_on_s
        {
            return Err(invalid(format!("check {} needs H to be a system on S", c.name())));
        }
        if *c == CheckKind::NormalizerSupport {
            if sc.u.is_empty() {
                return Err(invalid("normalizer_support needs a list U"));
            }
            let s = res.f.fusion.group();
            if let Some(u) = res.u.iter().find(|u| !s.is_normal(u)) {
                return Err(invalid(format!("U = {:?} is not normal in S", u.elements())));
            }
        }
    }
    Ok(())
}

fn subgroup_json(sub: &Subgroup) -> Value {
    json!(sub.elements())
}

fn hom_json(h: &GroupHom) -> Value {
    json!({"source": h.source().elements(), "images": h.images()})
}

/// Runs one check, turning internal errors into failures with the message attached.
fn guarded(kind: CheckKind, f: impl FnOnce() -> Result<Vec<CheckRecord>>) -> Vec<CheckRecord> {
    match f() {
        Ok(v) => v,
        Err(Error::Precondition(why)) => vec![CheckRecord::refused(kind.name(), why)],
        Err(e) => vec![CheckRecord::new(kind.name(), Status::Fail, Value::Null).with_detail(format!("error: {e}"))],
    }
}

/// Builds everything and runs the requested checks in a fixed order. Parse and
/// validation problems are returned as errors; check outcomes go in the report.
pub fn run_scenario(sc: &Scenario, max_order: usize, oracle: bool) -> Result<Report> {
    let res = resolve(sc, max_order)?;
    validate(sc, &res)?;
    let oracle = oracle || sc.oracle;
    let checks: BTreeSet<CheckKind> = sc.checks.iter().copied().collect();
    let expect = |k: CheckKind| sc.expect.get(&k).copied();
    let mut records = vec![idempotent_record(&res)];

    let (h, k) = (res.h.as_ref(), res.k.as_ref());
    let f = &res.f;
    let cp = match (h, k) {
        (Some(h), Some(k)) => {
            Some(f.fusion.composition_product_witness(&h.fusion, &h.embedding, &k.fusion, &k.embedding))
        }
        _ => None,
    };
    let weakly_normal = k.map(|k| f.fusion.weak_normality_witness(&k.fusion, &k.embedding, Scope::Generators));

    for kind in checks {
        let new = guarded(kind, || {
            Ok(match kind {
                CheckKind::CompositionProduct => {
                    let w = cp.clone().expect("validated");
                    let mut r = CheckRecord::verdict(kind.name(), w.is_none(), expect(kind), json!(w.is_none()));
                    if let Some(w) = w {
                        r = r.with_detail(w.reason.clone()).with_witness(hom_json(&w.phi));
                    }
                    vec![r]
                }
                CheckKind::StarIdentity => {
                    let out = check_star_identity(f, h.unwrap(), k.unwrap())?;
                    let mut r = CheckRecord::verdict(kind.name(), out.holds, expect(kind), json!(out.holds));
                    if let Some(d) = &out.difference {
                        r = r.with_witness(serde_json::to_value(d.to_json())?);
                    }
                    let cp_holds = cp.as_ref().unwrap().is_none();
                    let wn = weakly_normal.as_ref().unwrap().is_none();
                    let consistent = if wn { cp_holds == out.holds } else { !out.holds || cp_holds };
                    vec![
                        r,
                        CheckRecord::verdict(
                            "biconditional",
                            consistent,
                            None,
                            json!({"weakly_normal": wn, "composition_product": cp_holds, "star_identity": out.holds}),
                        ),
                    ]
                }
                CheckKind::PropEquivalents => {
                    let out = check_prop_equivalents(f, h.unwrap(), k.unwrap())?;
                    vec![CheckRecord::verdict(kind.name(), out.agree(), expect(kind), serde_json::to_value(out)?)]
                }
                CheckKind::LemmaNormalCase => {
                    let out = check_lemma_normal_case(f, h.unwrap(), k.unwrap())?;
                    let comm = check_commutation(f, k.unwrap())?;
                    let mut c = CheckRecord::verdict("commutation", comm.is_none(), None, json!(comm.is_none()));
                    if let Some(a) = comm {
                        c = c.with_witness(hom_json(&a));
                    }
                    vec![CheckRecord::verdict(kind.name(), out.agree(), expect(kind), serde_json::to_value(out)?), c]
                }
                CheckKind::NormalizerSupport => {
                    let mut rows = Vec::new();
                    let mut ok = true;
                    for u in &res.u {
                        let out = check_normalizer_support(f, u)?;
                        ok &= out.is_normalizer == out.support_ok;
                        rows.push(json!({"U": subgroup_json(u), "isNormalizer": out.is_normalizer, "supportOK": out.support_ok}));
                    }
                    vec![CheckRecord::verdict(kind.name(), ok, expect(kind), Value::Array(rows))]
                }
                CheckKind::Corollaries => {
                    let out = check_corollaries(&res.g, res.p)?;
                    vec![CheckRecord::verdict(
                        kind.name(),
                        out.hyperfocal && out.pprime,
                        expect(kind),
                        serde_json::to_value(out)?,
                    )]
                }
                CheckKind::ConjectureGeneral => {
                    let ev = check_conjecture_general(&sc.name, f, h.unwrap(), k.unwrap())?;
                    vec![CheckRecord::new(kind.name(), Status::Evidence, serde_json::to_value(ev)?)]
                }
                CheckKind::MackeyCorollary => {
                    let mut rows = Vec::new();
                    let mut ok = true;
                    for m in functors(sc, &res, max_order)? {
                        let out = check_corollary_mackey(&m, f, h.unwrap(), k.unwrap())?;
                        ok &= out.equal;
                        rows.push(serde_json::to_value(out)?);
                    }
                    vec![CheckRecord::verdict(kind.name(), ok, expect(kind), Value::Array(rows))]
                }
                CheckKind::MackeyMaps => {
                    let mut rows = Vec::new();
                    let mut ok = true;
                    for m in functors(sc, &res, max_order)? {
                        for sys in std::iter::once(f).chain(h).chain(k) {
                            let d = MackeyData::new(&m, sys)?;
                            let a = d.maps.tr_res_is_identity();
                            let b = d.maps.res_tr_is_omega(&d.module);
                            ok &= a && b;
                            rows.push(json!({
                                "anchor": m.anchor().label(),
                                "system": sys.fusion.label(),
                                "rank": d.module.rank(),
                                "trRes": a,
                                "resTr": b,
                            }));
                        }
                    }
                    vec![CheckRecord::verdict(kind.name(), ok, expect(kind), Value::Array(rows))]
                }
                CheckKind::SaturationOracle => {
                    let mut rows = Vec::new();
                    let mut ok = true;
                    for sys in std::iter::once(f).chain(h).chain(k) {
                        let why = sys.fusion.saturation_failure();
                        ok &= why.is_none();
                        rows.push(json!({"system": sys.fusion.label(), "saturated": why.is_none(), "reason": why}));
                    }
                    vec![CheckRecord::verdict(kind.name(), ok, expect(kind), Value::Array(rows))]
                }
                CheckKind::StabilityTriple => {
                    let seed = sc.seed.unwrap_or(DEFAULT_SEED);
                    let count = sc.samples.unwrap_or(16);
                    let mut agree = 0;
                    let mut stable = 0;
                    let mut first_bad = None;
                    for (i, x) in sample_elements(f, count, seed)?.iter().enumerate() {
                        let v = triple_verdicts(x, f)?;
                        if v.iter().all(|t| t.agree()) {
                            agree += 1;
                        } else if first_bad.is_none() {
                            first_bad = Some(i);
                        }
                        stable += v.iter().filter(|t| t.definitional).count();
                    }
                    let mut r = CheckRecord::verdict(
                        kind.name(),
                        agree == count,
                        expect(kind),
                        json!({"seed": seed, "samples": count, "agree": agree, "stableSides": stable}),
                    );
                    if let Some(i) = first_bad {
                        r = r.with_detail(format!("sample {i} disagrees"));
                    }
                    vec![r]
                }
            })
        });
        records.extend(new);
    }
    if oracle {
        records.extend(guarded(CheckKind::SaturationOracle, || Ok(vec![biset_oracle(&res)?])));
    }
    Ok(Report::new(&sc.name, sha256_hex(sc.canonical_json().as_bytes()), records))
}

fn functors(sc: &Scenario, res: &Resolved, max_order: usize) -> Result<Vec<MackeyFunctor>> {
    if sc.anchors.is_empty() {
        let one = Arc::new(FiniteGroup::builtin("trivial", max_order)?.with_label("1"));
        return Ok(vec![MackeyFunctor::representable(one, res.p)]);
    }
    sc.anchors.iter().map(|a| Ok(MackeyFunctor::representable(a.build(max_order)?, res.p))).collect()
}

fn idempotent_record(res: &Resolved) -> CheckRecord {
    let rows: Vec<Value> = std::iter::once(&res.f)
        .chain(&res.h)
        .chain(&res.k)
        .map(|sys| {
            json!({
                "system": sys.fusion.label(),
                "order": sys.fusion.group().order(),
                "support": sys.omega.len(),
                "solvers": if sys.fusion.realization().is_some_and(|r| r.is_sylow) { "linear_solve = power_iteration" } else { "linear_solve" },
            })
        })
        .collect();
    CheckRecord::new("idempotents", Status::Pass, Value::Array(rows))
}

/// Set-level cross-checks: `Ω_F ∘ [T, incl]` against the decomposition of the
/// amalgamated biset `G ×_S [T, incl]`, and marks-based stability of every `ω`.
fn biset_oracle(res: &Resolved) -> Result<CheckRecord> {
    let f = &res.f;
    let sylow = &f.fusion.realization().expect("realized").sylow;
    let omega_big = omega_by_orbits(&f.fusion)?;
    let big = ConcreteBiset::from_ambient(sylow, sylow, res.p)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for sys in std::iter::once(f).chain(&res.h).chain(&res.k) {
        let res_t = special_element(SpecialKind::Restriction, &sys.embedding, res.p);
        let incl = ConcreteBiset::realize(res_t.context(), &sys.embedding.as_hom());
        let by_sets = big.amalgamate(&incl)?.decompose()?;
        let by_formula = omega_big.compose(&res_t)?;
        let mut marks_ok = true;
        for side in [Side::Left, Side::Right] {
            marks_ok &= is_stable(&sys.omega, &sys.fusion, side, Method::Marks, Scope::All)?;
        }
        ok &= by_sets == by_formula && marks_ok;
        rows.push(
            json!({"system": sys.fusion.label(), "amalgamation": by_sets == by_formula, "marksStable": marks_ok}),
        );
    }
    Ok(CheckRecord::verdict("biset_oracle", ok, None, Value::Array(rows)))
}
