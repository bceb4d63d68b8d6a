//! The built-in verification suite.

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{CatalogReport, Report, TOOL, VERSION};
use crate::sampling::DEFAULT_SEED;
use crate::scenario::{run_scenario, Scenario};

const ALL_P_GROUP_CHECKS: &[&str] = &[
    "composition_product",
    "star_identity",
    "prop_equivalents",
    "lemma_normal_case",
    "normalizer_support",
    "corollaries",
    "mackey_corollary",
    "mackey_maps",
    "saturation_oracle",
    "stability_triple",
];

fn p_group(name: &str, builtin: &str) -> serde_json::Value {
    json!({
        "name": name,
        "p": 2,
        "ambient": {"builtin": builtin},
        "H": "full",
        "K": "full",
        "U": ["S", "Z(S)"],
        "checks": ALL_P_GROUP_CHECKS,
    })
}

// S4 on four points, S = <(0 1 2 3), (0 2)>, T = V4 the normal Klein group.
const S4_D8: &[&[u32]] = &[&[1, 2, 3, 0], &[2, 1, 0, 3]];
const S4_V4: &[&[u32]] = &[&[1, 0, 3, 2], &[2, 3, 0, 1]];

fn raw() -> Vec<serde_json::Value> {
    vec![
        p_group("trivial-c2", "C2"),
        p_group("trivial-c4", "C4"),
        p_group("trivial-v4", "V4"),
        p_group("trivial-d8", "D8"),
        p_group("trivial-q8", "Q8"),
        json!({
            "name": "s3-c2",
            "p": 2,
            "ambient": {"builtin": "S3"},
            "H": "full",
            "K": "full",
            "U": ["S"],
            "checks": ALL_P_GROUP_CHECKS,
        }),
        json!({
            "name": "s3-c3-p3",
            "p": 3,
            "ambient": {"builtin": "S3"},
            "H": "trivial",
            "K": "full",
            "U": ["S", "trivial"],
            "checks": ALL_P_GROUP_CHECKS,
        }),
        json!({
            "name": "a4-v4",
            "p": 2,
            "ambient": {"builtin": "A4"},
            "H": "trivial",
            "K": "full",
            "U": ["S", "trivial"],
            "checks": ALL_P_GROUP_CHECKS,
        }),
        json!({
            "name": "d8-internal",
            "p": 2,
            "ambient": {"builtin": "D8"},
            "T": {"permutations": [[2, 3, 0, 1], [0, 3, 2, 1]]},
            "H": "full",
            "K": "trivial",
            "U": ["S", "Z(S)", {"permutations": [[2, 3, 0, 1], [0, 3, 2, 1]]}],
            "checks": ALL_P_GROUP_CHECKS,
        }),
        json!({
            "name": "s4-d8-a4",
            "p": 2,
            "ambient": {"builtin": "S4"},
            "sylow": {"permutations": S4_D8},
            "T": {"permutations": S4_V4},
            "H": "trivial",
            "K": {"ambient_subgroup": "O^p"},
            "U": [{"permutations": S4_V4}, "Z(S)", "S"],
            "checks": [
                "composition_product",
                "star_identity",
                "prop_equivalents",
                "lemma_normal_case",
                "normalizer_support",
                "mackey_maps",
                "saturation_oracle",
                "stability_triple",
            ],
        }),
        json!({
            "name": "s4-d8-v4-negative",
            "p": 2,
            "ambient": {"builtin": "S4"},
            "sylow": {"permutations": S4_D8},
            "T": {"permutations": S4_V4},
            "H": "trivial",
            "K": "trivial",
            "checks": ["composition_product", "star_identity", "prop_equivalents", "lemma_normal_case", "mackey_maps"],
            "expect": {"composition_product": false, "star_identity": false},
        }),
        json!({
            "name": "s4-corollary-1",
            "p": 2,
            "ambient": {"builtin": "S4"},
            "T": "hyperfocal",
            "H": "trivial",
            "K": {"ambient_subgroup": "O^p"},
            "checks": ["corollaries", "star_identity", "composition_product"],
        }),
        json!({
            "name": "s4xc3-corollary-2",
            "p": 2,
            "ambient": {"builtin": "S4 x C3"},
            "checks": ["corollaries"],
        }),
        json!({
            "name": "c4-v4-probe",
            "p": 2,
            "ambient": {"builtin": "S4"},
            "sylow": {"permutations": S4_D8},
            "R": {"permutations": [[1, 2, 3, 0]]},
            "T": {"permutations": S4_V4},
            "H": "trivial",
            "K": {"ambient_subgroup": "O^p"},
            "checks": ["conjecture_general"],
        }),
        json!({
            "name": "s4-mackey",
            "p": 2,
            "ambient": {"builtin": "S4"},
            "sylow": {"permutations": S4_D8},
            "T": {"permutations": S4_V4},
            "H": "trivial",
            "K": {"ambient_subgroup": "O^p"},
            "anchors": [{"builtin": "trivial", "label": "1"}, {"builtin": "C2"}],
            "checks": ["mackey_corollary", "mackey_maps"],
        }),
    ]
}

pub fn scenarios() -> Vec<Scenario> {
    raw().into_iter().map(|v| serde_json::from_value(v).expect("catalog scenario parses")).collect()
}

pub fn scenario(name: &str) -> Option<Scenario> {
    scenarios().into_iter().find(|s| s.name == name)
}

/// Runs every catalog scenario on `jobs` threads (`0` = rayon's default) and
/// merges the reports by name.
pub fn run_catalog(max_order: usize, oracle: bool, jobs: usize) -> Result<CatalogReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Scenario(format!("thread pool: {e}")))?;
    let mut reports: Vec<Report> = pool
        .install(|| scenarios().par_iter().map(|sc| run_scenario(sc, max_order, oracle)).collect::<Result<Vec<_>>>())?;
    reports.sort_by(|a, b| a.scenario.cmp(&b.scenario));
    Ok(CatalogReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        oracle,
        seed: DEFAULT_SEED,
        passed: reports.iter().all(|r| r.passed),
        reports,
    })
}
