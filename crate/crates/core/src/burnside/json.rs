use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BurnsideElement, Context};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::hom::GroupHom;
use crate::rational::{as_num_den, PLocalRational};

/// Wire format of a Burnside element. Group tables travel with the element so a
/// file can be re-imported on its own.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub context: ContextJson,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextJson {
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "H")]
    pub h: String,
    pub p: u64,
    #[serde(rename = "G_cayley", default, skip_serializing_if = "Option::is_none")]
    pub g_cayley: Option<Vec<Vec<u32>>>,
    #[serde(rename = "H_cayley", default, skip_serializing_if = "Option::is_none")]
    pub h_cayley: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(rename = "K")]
    pub k: Vec<Elem>,
    pub phi: Vec<Elem>,
    #[serde(flatten, with = "as_num_den")]
    pub coeff: PLocalRational,
}

impl BurnsideElement {
    pub fn to_json(&self) -> ElementJson {
        let ctx = self.context();
        ElementJson {
            context: ContextJson {
                g: ctx.source.label().to_string(),
                h: ctx.target.label().to_string(),
                p: ctx.p,
                g_cayley: Some(ctx.source.cayley_rows()),
                h_cayley: Some(ctx.target.cayley_rows()),
            },
            terms: self
                .terms()
                .iter()
                .map(|(pair, c)| TermJson {
                    k: pair.source().elements().to_vec(),
                    phi: pair.images().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("element serializes")
    }
}

impl ElementJson {
    /// Rebuilds the groups from the embedded tables and validates every term.
    pub fn into_element(&self, max_order: usize) -> Result<BurnsideElement> {
        let (Some(gt), Some(ht)) = (&self.context.g_cayley, &self.context.h_cayley) else {
            return Err(Error::Scenario("element file carries no group tables; use into_element_in".into()));
        };
        let g = Arc::new(FiniteGroup::from_cayley(self.context.g.clone(), gt, max_order)?);
        let h = if gt == ht && self.context.g == self.context.h {
            g.clone()
        } else {
            Arc::new(FiniteGroup::from_cayley(self.context.h.clone(), ht, max_order)?)
        };
        self.into_element_in(&Context::new(g, h, self.context.p))
    }

    /// Reads the terms against an existing context.
    pub fn into_element_in(&self, ctx: &Context) -> Result<BurnsideElement> {
        if ctx.p != self.context.p {
            return Err(Error::ContextMismatch(format!("prime {} vs {}", self.context.p, ctx.p)));
        }
        for (table, group) in [(&self.context.g_cayley, &ctx.source), (&self.context.h_cayley, &ctx.target)] {
            if let Some(t) = table {
                if *t != group.cayley_rows() {
                    return Err(Error::ContextMismatch("group table differs from the context".into()));
                }
            }
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            let k = ctx.source.check_subgroup(&t.k)?;
            if k.elements() != t.k.as_slice() {
                return Err(Error::InvalidBiset("subgroup elements must be sorted and distinct".into()));
            }
            let hom = GroupHom::new(&ctx.source, k, &ctx.target, t.phi.clone())?;
            terms.push((hom, t.coeff.clone()));
        }
        let e = BurnsideElement::from_terms(ctx, terms);
        e.check_p_local()?;
        Ok(e)
    }
}
