//! The relation-coefficient derivation on the two stored ansatzes, and the
//! internal consistency of both surviving branches.

use sqring::catalog;
use sqring::presentation::AlgebraPresentation;
use sqring::solver::select_nonsplit;
use sqring::steenrod::complete_action;
use sqring::steenrod::eval::verify_ideal_closure;

fn survivors_of(name: &str) -> (Vec<Vec<u8>>, sqring::solver::SolveReport) {
    let entry = catalog::get(name).unwrap();
    let ansatz = entry.relation_ansatz().unwrap();
    let report = ansatz.solve().unwrap();
    let survivors: Vec<Vec<u8>> = report
        .survivors
        .iter()
        .map(|s| s.iter().map(|&b| u8::from(b)).collect())
        .collect();
    (survivors, report)
}

#[test]
fn both_ansatzes_leave_exactly_the_split_and_nonsplit_branches() {
    for name in ["bsol", "bg2q"] {
        let (survivors, report) = survivors_of(name);
        assert_eq!(report.unknowns, vec!["A", "B", "C"], "{name}");
        assert_eq!(survivors, vec![vec![0, 0, 0], vec![1, 1, 0]], "{name}");
    }
}

#[test]
fn the_trace_pins_c_first_and_a_equals_b_last() {
    for name in ["bsol", "bg2q"] {
        let (_, report) = survivors_of(name);
        let constrain_steps: Vec<_> = report
            .trace
            .iter()
            .filter(|s| !s.forced.is_empty())
            .collect();
        assert_eq!(constrain_steps.len(), 2, "{name}");
        assert!(
            constrain_steps[0].forced.contains(&"C = 0".to_string()),
            "{name}: first constraint {:?}",
            constrain_steps[0].forced
        );
        assert!(
            constrain_steps[1].forced.contains(&"A = B".to_string()),
            "{name}: final constraint {:?}",
            constrain_steps[1].forced
        );
        assert_eq!(constrain_steps[0].applied, "Sq1");
        assert_eq!(constrain_steps[1].applied, "Sq1");
    }
}

#[test]
fn selecting_the_nonsplit_branch_recovers_the_stored_relations() {
    for name in ["bsol", "bg2q"] {
        let entry = catalog::get(name).unwrap();
        let ansatz = entry.relation_ansatz().unwrap();
        let report = ansatz.solve().unwrap();
        let branch = select_nonsplit(&report).unwrap();
        assert!(branch.selected["A"]);
        assert!(branch.selected["B"]);
        assert!(!branch.selected["C"]);
        assert!(branch.provenance.contains("external input"));

        let nonsplit: Vec<bool> = report.survivors[1].clone();
        let mut relations = ansatz.instantiate(&nonsplit).unwrap();
        let mut stored: Vec<_> = entry.presentation.relations().to_vec();
        let key = |p: &sqring::Poly| p.to_string();
        relations.sort_by_key(key);
        stored.sort_by_key(key);
        assert_eq!(relations, stored, "{name}");
    }
}

#[test]
fn select_nonsplit_rejects_a_lone_survivor() {
    let report = sqring::solver::SolveReport {
        unknowns: vec!["A".into()],
        survivors: vec![vec![false]],
        trace: Vec::new(),
    };
    assert!(select_nonsplit(&report).is_err());
}

/// Both branches are Steenrod-consistent; only the external geometric input
/// distinguishes them.
#[test]
fn the_split_branch_is_also_closed_under_the_action() {
    for name in ["bsol", "bg2q"] {
        let entry = catalog::get(name).unwrap();
        let ansatz = entry.relation_ansatz().unwrap();
        let report = ansatz.solve().unwrap();
        let split: Vec<bool> = report.survivors[0].clone();
        assert!(split.iter().all(|&b| !b));
        let relations = ansatz.instantiate(&split).unwrap();
        let base = AlgebraPresentation::new(
            format!("{name}-split"),
            entry.vars().clone(),
            relations.clone(),
            entry.given_table.clone(),
        )
        .unwrap();
        let completion = complete_action(&base, &entry.given_table, 60).unwrap();
        assert!(completion.report.contradiction.is_none(), "{name}");
        assert!(completion.report.undetermined.is_empty(), "{name}");
        let complete = AlgebraPresentation::new(
            format!("{name}-split"),
            entry.vars().clone(),
            relations,
            completion.table,
        )
        .unwrap();
        let closure = verify_ideal_closure(&complete, 30).unwrap();
        assert!(closure.passed(), "{name}: {:?}", closure.failures);
    }
}

/// A left side whose degree has no candidates is forced to zero: the empty
/// ansatz has exactly one (empty) surviving assignment and instantiates to
/// the relation `lhs = 0`.
#[test]
fn an_empty_ansatz_forces_the_left_side_to_vanish() {
    use sqring::poly::{parse_poly, VarSet};
    use sqring::solver::{AnsatzSkeleton, ChainStep, RelationAnsatz, StepKind};
    use sqring::steenrod::ActionTable;

    let vars = VarSet::new(vec![("a3", 3), ("b5", 5)]).unwrap();
    let free =
        AlgebraPresentation::new("tiny", vars.clone(), Vec::new(), ActionTable::new()).unwrap();
    // Module caps a3 <= 3, b5 <= 1: degree 10 has no monomial besides b5^2.
    let skeleton = AnsatzSkeleton {
        free,
        caps: vec![3, 1],
    };
    let lhs = parse_poly(&vars, "b5^2").unwrap();
    let chain = vec![ChainStep {
        index: 1,
        kind: StepKind::Constrain,
    }];
    let ansatz = RelationAnsatz::build(skeleton, lhs.clone(), chain, None).unwrap();
    assert!(ansatz.candidates().is_empty());
    let report = ansatz.solve().unwrap();
    assert_eq!(report.survivors, vec![Vec::<bool>::new()]);
    assert_eq!(ansatz.instantiate(&[]).unwrap(), vec![lhs]);
}
