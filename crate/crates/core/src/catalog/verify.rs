//! The verification sweep: every stored claim of an entry is recomputed.

use serde::Serialize;

use crate::bockstein::{b2_dimensions, factors_series, verify_table_on_b2};
use crate::dickson::dickson_generators;
use crate::error::Result;
use crate::groebner::{buchberger, poincare_series};
use crate::poly::Poly;
use crate::series::factor_series;
use crate::steenrod::complete::complete_action;
use crate::steenrod::eval::{sq, verify_ideal_closure};

use super::{get, names, CatalogEntry};

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub imax: u32,
    pub max_degree: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            imax: 30,
            max_degree: 60,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub entry: String,
    pub checks: Vec<VerifyCheck>,
    pub failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn push(&mut self, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        self.checks.push(VerifyCheck {
            name: name.to_string(),
            ok,
            detail,
        });
    }
}

/// Runs the full sweep for one entry.
pub fn verify(name: &str, options: VerifyOptions) -> Result<VerifyReport> {
    let entry = get(name)?;
    let mut report = VerifyReport {
        entry: name.to_string(),
        checks: Vec::new(),
        failures: 0,
    };
    check_groebner(&entry, &mut report)?;
    check_series(&entry, options, &mut report);
    check_closure(&entry, options, &mut report)?;
    check_unstability(&entry, &mut report)?;
    check_completion(&entry, &mut report)?;
    check_b2(&entry, options, &mut report)?;
    check_bockstein_tables(&entry, &mut report)?;
    check_dickson(&entry, &mut report)?;
    Ok(report)
}

/// Sweeps every entry.
pub fn verify_all(options: VerifyOptions) -> Result<Vec<VerifyReport>> {
    names().iter().map(|n| verify(n, options)).collect()
}

fn check_groebner(entry: &CatalogEntry, report: &mut VerifyReport) -> Result<()> {
    let gb = entry.presentation.groebner_basis();
    let recomputed = buchberger(entry.presentation.relations(), gb.order().clone())?;
    let stable = recomputed.generators() == gb.generators();
    report.push(
        "groebner/recompute",
        stable,
        "reduced basis from the stored relations".to_string(),
    );
    let idempotent =
        buchberger(gb.generators(), gb.order().clone())?.generators() == gb.generators();
    report.push(
        "groebner/idempotent",
        idempotent,
        "basis of the basis".to_string(),
    );
    let vars = entry.presentation.vars();
    let mut lts: Vec<String> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.display(vars))
        .collect();
    lts.sort();
    let mut expected = entry.expected_leading_terms.clone();
    expected.sort();
    if !expected.is_empty() {
        report.push(
            "groebner/leading-terms",
            lts == expected,
            format!("{lts:?} vs expected {expected:?}"),
        );
    }
    Ok(())
}

fn check_series(entry: &CatalogEntry, options: VerifyOptions, report: &mut VerifyReport) {
    let n = options.max_degree.max(100);
    let actual = poincare_series(entry.presentation.groebner_basis(), n);
    let expected = factor_series(&entry.splitting_factors, n);
    let ok = actual == expected;
    let detail = if ok {
        format!("splitting product matches degreewise to {n}")
    } else {
        let d = (0..=n)
            .find(|&d| actual.coeff(d) != expected.coeff(d))
            .unwrap();
        format!(
            "first mismatch at degree {d}: {} vs {}",
            actual.coeff(d),
            expected.coeff(d)
        )
    };
    report.push("series/splitting", ok, detail);
}

fn check_closure(
    entry: &CatalogEntry,
    options: VerifyOptions,
    report: &mut VerifyReport,
) -> Result<()> {
    let closure = verify_ideal_closure(&entry.presentation, options.imax)?;
    report.push(
        "steenrod/ideal-closure",
        closure.passed(),
        format!(
            "{} checks, {} failures",
            closure.checks.len(),
            closure.failures
        ),
    );
    Ok(())
}

fn check_unstability(entry: &CatalogEntry, report: &mut VerifyReport) -> Result<()> {
    let alg = &entry.presentation;
    let vars = alg.vars();
    let mut ok = true;
    let mut detail = String::new();
    for g in 0..vars.len() {
        let dg = vars.degree(g);
        let gen = Poly::var(vars, g);
        let top = sq(dg, &gen, alg)?;
        let square = alg.normal_form(&gen.mul(&gen)?);
        if top != square {
            ok = false;
            detail = format!("Sq{dg} {} is not the square", vars.name(g));
            break;
        }
        if !sq(dg + 1, &gen, alg)?.is_zero() {
            ok = false;
            detail = format!("Sq{} {} is nonzero", dg + 1, vars.name(g));
            break;
        }
    }
    if ok {
        detail = "top squares and vanishing above the degree".to_string();
    }
    report.push("steenrod/unstability", ok, detail);
    Ok(())
}

fn check_completion(entry: &CatalogEntry, report: &mut VerifyReport) -> Result<()> {
    let completion = complete_action(&entry.presentation, &entry.given_table, 60)?;
    let mut ok = completion.report.contradiction.is_none();
    let mut detail = String::new();
    if !ok {
        detail = format!("contradiction: {:?}", completion.report.contradiction);
    }
    for (&(g, i), derived) in completion.table.iter() {
        match entry.presentation.table().get(g, i) {
            Some(stored) if stored.value == derived.value => {}
            Some(stored) => {
                ok = false;
                detail = format!(
                    "Sq{i} {} re-derives to {} but the catalog stores {}",
                    entry.presentation.vars().name(g),
                    derived.value,
                    stored.value
                );
                break;
            }
            None => {
                ok = false;
                detail = format!(
                    "Sq{i} {} derived but missing from the catalog",
                    entry.presentation.vars().name(g)
                );
                break;
            }
        }
    }
    if !completion.report.undetermined.is_empty() {
        ok = false;
        detail = format!("undetermined slots: {:?}", completion.report.undetermined);
    }
    if ok {
        detail = format!(
            "completion reproduces all {} stored slots",
            entry.presentation.table().iter().count()
        );
    }
    report.push("steenrod/completion", ok, detail);
    Ok(())
}

fn check_b2(entry: &CatalogEntry, options: VerifyOptions, report: &mut VerifyReport) -> Result<()> {
    let n = options.max_degree;
    let dims = b2_dimensions(&entry.presentation, n)?;
    let page = entry.b2(n);
    match page {
        Ok(page) => {
            let expected = factors_series(&page.factors, n);
            report.push(
                "bockstein/b2-series",
                dims == expected,
                format!("Sq1-homology matches the stated page factors to degree {n}"),
            );
        }
        Err(e) => report.push("bockstein/b2-series", false, e.to_string()),
    }
    Ok(())
}

fn check_bockstein_tables(entry: &CatalogEntry, report: &mut VerifyReport) -> Result<()> {
    if entry.bockstein_template.is_empty() {
        return Ok(());
    }
    for q in [3u64, 5, 7, 9, 11] {
        for epsilon in [false, true] {
            let table = match entry.bockstein_table(q, epsilon) {
                Ok(t) => t,
                Err(e) => {
                    report.push(
                        "bockstein/table",
                        false,
                        format!("q={q} eps={} rejected: {e}", u8::from(epsilon)),
                    );
                    continue;
                }
            };
            let membership = verify_table_on_b2(&entry.presentation, &table, 40)?;
            report.push(
                "bockstein/table",
                membership.failures == 0,
                format!(
                    "q={q} eps={}: k={}, {} membership checks",
                    u8::from(epsilon),
                    table.k,
                    membership.checks.len()
                ),
            );
        }
    }
    Ok(())
}

fn check_dickson(entry: &CatalogEntry, report: &mut VerifyReport) -> Result<()> {
    let Some(rank) = entry.dickson_rank else {
        return Ok(());
    };
    let sys = dickson_generators(rank)?;
    let invariance = sys.verify_invariance()?;
    report.push(
        "dickson/invariance",
        invariance.passed(),
        format!("{} checks", invariance.checks.len()),
    );
    let ambient = sys.action_table()?;
    let ok = ambient == *entry.presentation.table();
    report.push(
        "dickson/ambient-recompute",
        ok,
        "stored table equals the ambient recomputation".to_string(),
    );
    Ok(())
}
