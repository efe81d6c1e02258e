//! The catalog: every presented algebra the engine ships with, together
//! with its expected series, Bockstein data, and relation-solver setup,
//! plus a one-command verification sweep.
//!
//! Stored action tables are assembled, never hand-typed: the listed input
//! values are combined with the ambient Dickson recomputation for
//! invariant-theoretic generators, and the remaining slots are filled by
//! the completion engine. The verification sweep re-derives everything.

mod entries;
pub mod format;
mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;

use once_cell::sync::Lazy;

use crate::bockstein::{
    b2_page, higher_table, page_factor, BocksteinPage, FactorKind, HigherBocksteinTable,
    TemplateEntry,
};
use crate::error::{Error, Result};
use crate::poly::parse_poly;
use crate::presentation::AlgebraPresentation;
use crate::series::TensorFactor;
use crate::solver::{AnsatzSkeleton, ChainStep, RelationAnsatz};
use crate::steenrod::table::{ActionTable, Provenance};

pub use verify::{verify, verify_all, VerifyCheck, VerifyOptions, VerifyReport};

/// Per-entry setup for the relation-coefficient solver.
#[derive(Clone, Debug)]
pub struct AnsatzSpec {
    pub lhs: String,
    /// Unknown names in presentation order, with their candidate monomials.
    pub ordering: Vec<(String, String)>,
    pub chain: Vec<ChainStep>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub presentation: AlgebraPresentation,
    /// The input subset of the table (listed values plus the ambient
    /// recomputation); completion reproduces the rest.
    pub given_table: ActionTable,
    pub expected_leading_terms: Vec<String>,
    pub splitting_factors: Vec<TensorFactor>,
    pub b2_factors: Vec<(String, FactorKind)>,
    pub bockstein_template: Vec<TemplateEntry>,
    pub dickson_rank: Option<u32>,
    pub ansatz: Option<AnsatzSpec>,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn vars(&self) -> &crate::poly::VarSet {
        self.presentation.vars()
    }

    /// The structured second page, with the factor series verified against
    /// the actual Sq1-homology.
    pub fn b2(&self, n: usize) -> Result<BocksteinPage> {
        let factors = self
            .b2_factors
            .iter()
            .map(|(text, kind)| page_factor(&self.presentation, text, *kind))
            .collect::<Result<Vec<_>>>()?;
        b2_page(&self.presentation, factors, n)
    }

    /// The higher-Bockstein table at an odd prime power.
    pub fn bockstein_table(&self, q: u64, epsilon: bool) -> Result<HigherBocksteinTable> {
        if self.bockstein_template.is_empty() {
            return Err(Error::Bockstein(format!(
                "entry `{}` carries no higher Bockstein data",
                self.name
            )));
        }
        higher_table(&self.presentation, &self.bockstein_template, q, epsilon)
    }

    /// The relation ansatz (skeleton, candidates, constraint chain).
    pub fn relation_ansatz(&self) -> Result<RelationAnsatz> {
        let spec = self.ansatz.as_ref().ok_or_else(|| {
            Error::SolverOutcome(format!("entry `{}` has no relation ansatz", self.name))
        })?;
        let vars = self.presentation.vars().clone();
        // Relation-free skeleton: the module caps come from the quotient's
        // leading terms, the action from the given table plus zero-target
        // propagation (nothing may reduce modulo the unknown relation).
        let mut free = AlgebraPresentation::new(
            self.name.clone(),
            vars.clone(),
            Vec::new(),
            self.given_table.clone(),
        )?;
        zero_target_pass(&mut free);
        let caps = self.presentation.standard_caps();
        let skeleton = AnsatzSkeleton { free, caps };
        let lhs = parse_poly(&vars, &spec.lhs)?;
        let ordering: Vec<(&str, &str)> = spec
            .ordering
            .iter()
            .map(|(n, m)| (n.as_str(), m.as_str()))
            .collect();
        RelationAnsatz::build(skeleton, lhs, spec.chain.clone(), Some(&ordering))
    }
}

/// Fills zero-target slots only; used for ansatz skeletons where the full
/// completion must not run.
fn zero_target_pass(alg: &mut AlgebraPresentation) {
    loop {
        let mut progress = false;
        for (g, i) in alg.table().missing_slots(alg.vars()) {
            let target = alg.vars().degree(g) + i;
            if alg.basis_of_degree(target).is_empty() {
                let zero = crate::poly::Poly::zero(alg.vars());
                let rule = format!("zero target: degree {target} is empty");
                alg.table_mut().set(g, i, zero, Provenance::Forced { rule });
                progress = true;
            }
        }
        if !progress {
            return;
        }
    }
}

static ENTRIES: Lazy<BTreeMap<String, Arc<CatalogEntry>>> = Lazy::new(|| {
    entries::build_all()
        .expect("catalog construction is internally consistent")
        .into_iter()
        .map(|e| (e.name.clone(), Arc::new(e)))
        .collect()
});

/// Names of all catalog entries, alphabetically.
pub fn names() -> Vec<String> {
    ENTRIES.keys().cloned().collect()
}

/// Fetches an immutable entry.
pub fn get(name: &str) -> Result<Arc<CatalogEntry>> {
    ENTRIES
        .get(name)
        .cloned()
        .ok_or_else(|| Error::UnknownEntry {
            name: name.to_string(),
            available: names().join(", "),
        })
}
