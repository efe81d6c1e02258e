//! Construction of the built-in entries.

use crate::bockstein::{FactorKind, TemplateEntry};
use crate::dickson::dickson_generators;
use crate::error::Result;
use crate::poly::{parse_poly, Poly, VarSet};
use crate::presentation::AlgebraPresentation;
use crate::series::TensorFactor;
use crate::solver::{ChainStep, StepKind};
use crate::steenrod::complete::complete_action;
use crate::steenrod::table::{ActionTable, Provenance};

use super::{AnsatzSpec, CatalogEntry};

const INPUT: &str = "input data";

fn set_given(table: &mut ActionTable, vars: &VarSet, gen: &str, i: u32, value: &str) -> Result<()> {
    let g = vars.index_of(gen).expect("known generator");
    table.set(
        g,
        i,
        parse_poly(vars, value)?,
        Provenance::Given {
            source: INPUT.to_string(),
        },
    );
    Ok(())
}

/// Re-embeds a table over the rank-n Dickson generators into a larger
/// variable set, matching generators by name.
fn transport_dickson_table(rank: u32, target: &VarSet, into: &mut ActionTable) -> Result<()> {
    let sys = dickson_generators(rank)?;
    let source_vars = sys.invariant_vars().clone();
    for (&(g, i), entry) in sys.action_table()?.iter() {
        let name = source_vars.name(g);
        let target_index = target.index_of(name).expect("Dickson generator present");
        let mut terms = Vec::new();
        for m in entry.value.terms() {
            let mut exps = vec![0u16; target.len()];
            for (j, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let tj = target
                        .index_of(source_vars.name(j))
                        .expect("generator present");
                    exps[tj] = e;
                }
            }
            terms.push(crate::poly::Monomial::from_exps(target, exps));
        }
        into.set(
            target_index,
            i,
            Poly::from_terms(target, terms),
            entry.provenance.clone(),
        );
    }
    Ok(())
}

/// Builds the full stored table: given values plus completion. Construction
/// fails loudly on any contradiction or unresolved slot.
fn completed_presentation(
    name: &str,
    vars: VarSet,
    relations: Vec<Poly>,
    given: &ActionTable,
) -> Result<AlgebraPresentation> {
    let base = AlgebraPresentation::new(name, vars.clone(), relations.clone(), given.clone())?;
    let completion = complete_action(&base, given, 60)?;
    assert!(
        completion.report.contradiction.is_none(),
        "{name}: completion contradiction {:?}",
        completion.report.contradiction
    );
    assert!(
        completion.report.undetermined.is_empty(),
        "{name}: unresolved slots {:?}",
        completion.report.undetermined
    );
    AlgebraPresentation::new(name, vars, relations, completion.table)
}

pub fn build_all() -> Result<Vec<CatalogEntry>> {
    Ok(vec![
        build_dickson_entry(1)?,
        build_dickson_entry(2)?,
        build_dickson_entry(3)?,
        build_dickson_entry(4)?,
        build_bdi4()?,
        build_di4()?,
        build_bsol()?,
        build_bg2()?,
        build_g2fiber()?,
        build_bg2q()?,
    ])
}

fn dickson_splitting(rank: u32) -> Vec<TensorFactor> {
    dickson_generators(rank)
        .expect("rank in range")
        .degrees()
        .into_iter()
        .map(|degree| TensorFactor::Polynomial { degree })
        .collect()
}

/// B2 of a polynomial algebra on Dickson generators: the (top-degree,
/// top-degree-minus-one) pair cancels and the top generator squares.
fn dickson_b2(rank: u32) -> Vec<(String, FactorKind)> {
    let sys = dickson_generators(rank).expect("rank in range");
    let vars = sys.invariant_vars();
    let n = vars.len();
    let mut out = Vec::new();
    match rank {
        1 => {}
        _ => {
            for i in 0..n - 2 {
                out.push((vars.name(i).to_string(), FactorKind::Polynomial));
            }
            out.push((format!("{}^2", vars.name(n - 2)), FactorKind::Polynomial));
        }
    }
    out
}

fn build_dickson_entry(rank: u32) -> Result<CatalogEntry> {
    let sys = dickson_generators(rank)?;
    let vars = sys.invariant_vars().clone();
    let given = sys.action_table()?;
    let presentation =
        AlgebraPresentation::new(format!("dickson{rank}"), vars, Vec::new(), given.clone())?;
    Ok(CatalogEntry {
        name: format!("dickson{rank}"),
        description: format!(
            "Rank-{rank} Dickson invariants: the polynomial algebra of GL({rank},F2)-invariants \
             with its ambient Steenrod action"
        ),
        presentation,
        given_table: given,
        expected_leading_terms: Vec::new(),
        splitting_factors: dickson_splitting(rank),
        b2_factors: dickson_b2(rank),
        bockstein_template: Vec::new(),
        dickson_rank: Some(rank),
        ansatz: None,
        notes: vec![
            "generators are read off the orbit product over all linear forms".to_string(),
            "the action table is recomputed ambiently on every verification".to_string(),
        ],
    })
}

fn build_bdi4() -> Result<CatalogEntry> {
    let mut entry = build_dickson_entry(4)?;
    entry.name = "bdi4".to_string();
    entry.description = "Polynomial algebra on u8, u12, u14, u15 (rank-4 Dickson invariants) with \
         Sq4 u8 = u12, Sq2 u12 = u14, Sq1 u14 = u15"
        .to_string();
    let mut presentation = entry.presentation.clone();
    // Same data under the headline name.
    presentation = AlgebraPresentation::new(
        "bdi4",
        presentation.vars().clone(),
        presentation.relations().to_vec(),
        presentation.table().clone(),
    )?;
    entry.presentation = presentation;
    entry
        .notes
        .push("base factor of the bsol splitting".to_string());
    Ok(entry)
}

fn build_di4() -> Result<CatalogEntry> {
    let vars = VarSet::new(vec![("x7", 7), ("x11", 11), ("x13", 13)])?;
    let relations = vec![
        parse_poly(&vars, "x7^4")?,
        parse_poly(&vars, "x11^2")?,
        parse_poly(&vars, "x13^2")?,
    ];
    let mut given = ActionTable::new();
    set_given(&mut given, &vars, "x7", 1, "0")?;
    set_given(&mut given, &vars, "x7", 4, "x11")?;
    set_given(&mut given, &vars, "x11", 1, "0")?;
    set_given(&mut given, &vars, "x11", 2, "x13")?;
    set_given(&mut given, &vars, "x13", 1, "x7^2")?;
    let presentation = completed_presentation("di4", vars, relations, &given)?;
    Ok(CatalogEntry {
        name: "di4".to_string(),
        description: "Truncated tensor algebra P[x7]/x7^4 (x) E[x11, x13]: the fiber \
                      algebra under bsol"
            .to_string(),
        presentation,
        given_table: given,
        expected_leading_terms: vec!["x7^4".into(), "x11^2".into(), "x13^2".into()],
        splitting_factors: vec![
            TensorFactor::Truncated {
                degree: 7,
                height: 4,
            },
            TensorFactor::Exterior { degree: 11 },
            TensorFactor::Exterior { degree: 13 },
        ],
        b2_factors: vec![
            ("x7".into(), FactorKind::Exterior),
            ("x11".into(), FactorKind::Exterior),
            ("x7^2*x13".into(), FactorKind::Exterior),
        ],
        bockstein_template: Vec::new(),
        dickson_rank: None,
        ansatz: None,
        notes: vec![
            "fiber classes are stored with x-names; the lifted classes of the total \
             space carry y-names"
                .to_string(),
            "x11 = Sq4 x7, x13 = Sq2 Sq4 x7, and x7^2 = Sq1 x13".to_string(),
        ],
    })
}

fn bsol_vars() -> Result<VarSet> {
    VarSet::new(vec![
        ("y7", 7),
        ("y11", 11),
        ("y13", 13),
        ("u8", 8),
        ("u12", 12),
        ("u14", 14),
        ("u15", 15),
    ])
}

fn build_bsol() -> Result<CatalogEntry> {
    let vars = bsol_vars()?;
    let relations = vec![
        parse_poly(&vars, "y11^2 + u8*y7^2 + u15*y7")?,
        parse_poly(&vars, "y13^2 + u12*y7^2 + u15*y11")?,
        parse_poly(&vars, "y7^4 + u14*y7^2 + u15*y13")?,
    ];
    let mut given = ActionTable::new();
    // Listed input values.
    set_given(&mut given, &vars, "u8", 4, "u12")?;
    set_given(&mut given, &vars, "u12", 1, "0")?;
    set_given(&mut given, &vars, "u12", 2, "u14")?;
    set_given(&mut given, &vars, "u14", 1, "u15")?;
    set_given(&mut given, &vars, "y7", 1, "0")?;
    set_given(&mut given, &vars, "y7", 4, "y11")?;
    set_given(&mut given, &vars, "y11", 1, "0")?;
    set_given(&mut given, &vars, "y11", 2, "y13")?;
    set_given(&mut given, &vars, "y13", 1, "y7^2")?;
    // Ambient recomputation for the Dickson subalgebra (consistent with and
    // extending the listed u-values).
    transport_dickson_table(4, &vars, &mut given)?;
    let presentation = completed_presentation("bsol", vars, relations, &given)?;
    Ok(CatalogEntry {
        name: "bsol".to_string(),
        description: "F2[u8,u12,u14,u15,y7,y11,y13] modulo three relations: the \
                      nonsplit unstable algebra over the rank-4 Dickson invariants"
            .to_string(),
        presentation,
        given_table: given,
        expected_leading_terms: vec!["y11^2".into(), "y13^2".into(), "y7^4".into()],
        splitting_factors: vec![
            TensorFactor::Polynomial { degree: 8 },
            TensorFactor::Polynomial { degree: 12 },
            TensorFactor::Polynomial { degree: 14 },
            TensorFactor::Polynomial { degree: 15 },
            TensorFactor::Truncated {
                degree: 7,
                height: 4,
            },
            TensorFactor::Exterior { degree: 11 },
            TensorFactor::Exterior { degree: 13 },
        ],
        b2_factors: vec![
            ("u8".into(), FactorKind::Polynomial),
            ("u12".into(), FactorKind::Polynomial),
            ("u14^2".into(), FactorKind::Polynomial),
            ("y7".into(), FactorKind::Exterior),
            ("y11".into(), FactorKind::Exterior),
            ("y7^2*y13".into(), FactorKind::Exterior),
        ],
        bockstein_template: vec![
            TemplateEntry {
                source: "y7".into(),
                source_eps: None,
                order_offset: 1,
                target: "u8".into(),
                target_eps: None,
            },
            TemplateEntry {
                source: "y11".into(),
                source_eps: None,
                order_offset: 0,
                target: "u12".into(),
                target_eps: None,
            },
            TemplateEntry {
                source: "y7*u8*u12".into(),
                source_eps: None,
                order_offset: 0,
                target: "u8^2*u12".into(),
                target_eps: None,
            },
            TemplateEntry {
                source: "y7^2*y13".into(),
                source_eps: Some("u8^2*y11".into()),
                order_offset: -1,
                target: "u14^2".into(),
                target_eps: None,
            },
        ],
        dickson_rank: None,
        ansatz: Some(AnsatzSpec {
            lhs: "y11^2".into(),
            ordering: vec![
                ("A".into(), "y7^2*u8".into()),
                ("B".into(), "y7*u15".into()),
                ("C".into(), "u8*u14".into()),
            ],
            chain: vec![
                ChainStep {
                    index: 1,
                    kind: StepKind::Constrain,
                },
                ChainStep {
                    index: 4,
                    kind: StepKind::Derive,
                },
                ChainStep {
                    index: 2,
                    kind: StepKind::Derive,
                },
                ChainStep {
                    index: 1,
                    kind: StepKind::Constrain,
                },
            ],
        }),
        notes: vec![
            "u-generators are the rank-4 Dickson invariants; their action is the \
             ambient recomputation"
                .to_string(),
            "y11 = Sq4 y7 and y13 = Sq2 Sq4 y7; the relation coefficients are the \
             nonsplit branch of the coefficient solver"
                .to_string(),
            "the class-level pairing (y7*u8*u12 -> u8^2*u12) conflicts with the \
             Leibniz rule as a derivation value; the page simulation verifies it as \
             a boundary instead"
                .to_string(),
            "epsilon in the order-(k-1) pairing is carried as a free parameter; both \
             values are simulated"
                .to_string(),
        ],
    })
}

fn build_bg2() -> Result<CatalogEntry> {
    let mut entry = build_dickson_entry(3)?;
    entry.name = "bg2".to_string();
    entry.description = "Polynomial algebra on d4, d6, d7 (rank-3 Dickson invariants) with \
         Sq2 d4 = d6, Sq1 d6 = d7"
        .to_string();
    entry.presentation = AlgebraPresentation::new(
        "bg2",
        entry.presentation.vars().clone(),
        entry.presentation.relations().to_vec(),
        entry.presentation.table().clone(),
    )?;
    entry
        .notes
        .push("base factor of the bg2q splitting".to_string());
    Ok(entry)
}

fn build_g2fiber() -> Result<CatalogEntry> {
    let vars = VarSet::new(vec![("u3", 3), ("u5", 5)])?;
    let relations = vec![parse_poly(&vars, "u3^4")?, parse_poly(&vars, "u5^2")?];
    let mut given = ActionTable::new();
    set_given(&mut given, &vars, "u3", 2, "u5")?;
    set_given(&mut given, &vars, "u5", 1, "u3^2")?;
    let presentation = completed_presentation("g2fiber", vars, relations, &given)?;
    Ok(CatalogEntry {
        name: "g2fiber".to_string(),
        description: "P[u3]/u3^4 (x) E[u5] with u5 = Sq2 u3: the fiber algebra \
                      under bg2q"
            .to_string(),
        presentation,
        given_table: given,
        expected_leading_terms: vec!["u3^4".into(), "u5^2".into()],
        splitting_factors: vec![
            TensorFactor::Truncated {
                degree: 3,
                height: 4,
            },
            TensorFactor::Exterior { degree: 5 },
        ],
        b2_factors: vec![
            ("u3".into(), FactorKind::Exterior),
            ("u3^2*u5".into(), FactorKind::Exterior),
        ],
        bockstein_template: Vec::new(),
        dickson_rank: None,
        ansatz: None,
        notes: vec!["u5 = Sq2 u3 and Sq1 u5 = u3^2".to_string()],
    })
}

fn bg2q_vars() -> Result<VarSet> {
    VarSet::new(vec![("y3", 3), ("y5", 5), ("d4", 4), ("d6", 6), ("d7", 7)])
}

fn build_bg2q() -> Result<CatalogEntry> {
    let vars = bg2q_vars()?;
    let relations = vec![
        parse_poly(&vars, "y5^2 + y3*d7 + y3^2*d4")?,
        parse_poly(&vars, "y3^4 + y5*d7 + y3^2*d6")?,
    ];
    let mut given = ActionTable::new();
    set_given(&mut given, &vars, "d4", 1, "0")?;
    set_given(&mut given, &vars, "d4", 2, "d6")?;
    set_given(&mut given, &vars, "d6", 1, "d7")?;
    set_given(&mut given, &vars, "y3", 1, "0")?;
    set_given(&mut given, &vars, "y3", 2, "y5")?;
    // The listed Sq1 value on y5 names the fiber class; in the quotient
    // presentation it reads y3^2.
    set_given(&mut given, &vars, "y5", 1, "y3^2")?;
    transport_dickson_table(3, &vars, &mut given)?;
    let presentation = completed_presentation("bg2q", vars, relations, &given)?;
    Ok(CatalogEntry {
        name: "bg2q".to_string(),
        description: "F2[d4,d6,d7,y3,y5] modulo two relations: the nonsplit unstable \
                      algebra over the rank-3 Dickson invariants"
            .to_string(),
        presentation,
        given_table: given,
        expected_leading_terms: vec!["y5^2".into(), "y3^4".into()],
        splitting_factors: vec![
            TensorFactor::Polynomial { degree: 4 },
            TensorFactor::Polynomial { degree: 6 },
            TensorFactor::Polynomial { degree: 7 },
            TensorFactor::Truncated {
                degree: 3,
                height: 4,
            },
            TensorFactor::Exterior { degree: 5 },
        ],
        b2_factors: vec![
            ("d4".into(), FactorKind::Polynomial),
            ("d6^2".into(), FactorKind::Polynomial),
            ("y3".into(), FactorKind::Exterior),
            ("y3^2*y5".into(), FactorKind::Exterior),
        ],
        bockstein_template: vec![
            TemplateEntry {
                source: "y3".into(),
                source_eps: None,
                order_offset: 0,
                target: "d4".into(),
                target_eps: None,
            },
            TemplateEntry {
                source: "y3^2*y5".into(),
                source_eps: None,
                order_offset: -1,
                target: "d6^2".into(),
                target_eps: Some("d4^3".into()),
            },
        ],
        dickson_rank: None,
        ansatz: Some(AnsatzSpec {
            lhs: "y5^2".into(),
            ordering: vec![
                ("A".into(), "y3*d7".into()),
                ("B".into(), "y3^2*d4".into()),
                ("C".into(), "d4*d6".into()),
            ],
            chain: vec![
                ChainStep {
                    index: 1,
                    kind: StepKind::Constrain,
                },
                ChainStep {
                    index: 2,
                    kind: StepKind::Derive,
                },
                ChainStep {
                    index: 1,
                    kind: StepKind::Constrain,
                },
            ],
        }),
        notes: vec![
            "d-generators are the rank-3 Dickson invariants; their action is the \
             ambient recomputation"
                .to_string(),
            "the listed Sq1 value on y5 names the fiber class; the catalog records \
             Sq1 y5 = y3^2, its image in the quotient presentation"
                .to_string(),
            "the degree-8 product y3*y5 is not an Sq1-cycle (Sq1(y3*y5) = y3^3), so \
             the exterior page generator is y3^2*y5 in degree 11, matching the \
             order-(k-1) pairing with d6^2"
                .to_string(),
        ],
    })
}
