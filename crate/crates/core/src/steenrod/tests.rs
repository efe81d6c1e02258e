use crate::poly::{parse_poly, Poly, VarSet};
use crate::presentation::AlgebraPresentation;
use crate::steenrod::adem::{parse_composite, Composite};
use crate::steenrod::complete::complete_action;
use crate::steenrod::eval::{apply_composite, sq, verify_ideal_closure};
use crate::steenrod::table::{ActionTable, Provenance, SlotStatus};

fn given(source: &str) -> Provenance {
    Provenance::Given {
        source: source.to_string(),
    }
}

/// The loop-space algebra P[x7]/x7^4 (x) E[x11,x13] with its listed action.
fn di4() -> AlgebraPresentation {
    let vars = VarSet::new(vec![("x7", 7), ("x11", 11), ("x13", 13)]).unwrap();
    let relations = vec![
        parse_poly(&vars, "x7^4").unwrap(),
        parse_poly(&vars, "x11^2").unwrap(),
        parse_poly(&vars, "x13^2").unwrap(),
    ];
    let mut table = ActionTable::new();
    let p = |s: &str| parse_poly(&vars, s).unwrap();
    table.set(0, 1, p("0"), given("input"));
    table.set(0, 4, p("x11"), given("input"));
    table.set(1, 1, p("0"), given("input"));
    table.set(1, 2, p("x13"), given("input"));
    table.set(2, 1, p("x7^2"), given("input"));
    AlgebraPresentation::new("di4", vars, relations, table).unwrap()
}

/// P[u3]/u3^4 (x) E[u5] with Sq2 u3 = u5, Sq1 u5 = u3^2.
fn g2fiber() -> AlgebraPresentation {
    let vars = VarSet::new(vec![("u3", 3), ("u5", 5)]).unwrap();
    let relations = vec![
        parse_poly(&vars, "u3^4").unwrap(),
        parse_poly(&vars, "u5^2").unwrap(),
    ];
    let mut table = ActionTable::new();
    table.set(0, 2, parse_poly(&vars, "u5").unwrap(), given("input"));
    table.set(1, 1, parse_poly(&vars, "u3^2").unwrap(), given("input"));
    AlgebraPresentation::new("g2fiber", vars, relations, table).unwrap()
}

#[test]
fn evaluation_on_the_loop_space_generators() {
    let alg = di4();
    let p = |s: &str| parse_poly(alg.vars(), s).unwrap();
    assert_eq!(sq(4, &p("x7"), &alg).unwrap(), p("x11"));
    assert_eq!(sq(7, &p("x7"), &alg).unwrap(), p("x7^2"));
    assert_eq!(sq(1, &p("x13"), &alg).unwrap(), p("x7^2"));
    // Decomposable square through Adem: Sq6 = Sq2 Sq4 + Sq5 Sq1.
    assert_eq!(sq(6, &p("x7"), &alg).unwrap(), p("x13"));
    // Above the degree everything vanishes.
    assert_eq!(sq(8, &p("x7"), &alg).unwrap(), p("0"));
    // Top square of a product: (x7*x11)^2 contains x11^2, so it dies mod I.
    assert!(sq(18, &p("x7*x11"), &alg).unwrap().is_zero());
}

#[test]
fn composite_application_matches_normalized_form() {
    let alg = di4();
    let p = |s: &str| parse_poly(alg.vars(), s).unwrap();
    let x7 = p("x7");
    // Sq2 Sq4 applies Sq4 first.
    let c = Composite::new(vec![2, 4]);
    assert_eq!(apply_composite(&c, &x7, &alg).unwrap(), p("x13"));
    let e = parse_composite("Sq2 Sq4").unwrap();
    let n = crate::steenrod::adem::adem_normalize(&e);
    assert_eq!(
        crate::steenrod::eval::apply_element(&e, &x7, &alg).unwrap(),
        crate::steenrod::eval::apply_element(&n, &x7, &alg).unwrap()
    );
}

#[test]
fn completion_fills_the_whole_loop_space_table() {
    let alg = di4();
    let completion = complete_action(&alg, alg.table(), 40).unwrap();
    let table = &completion.table;
    let vars = alg.vars();
    let zero = Poly::zero(vars);
    let idx = |n: &str| vars.index_of(n).unwrap();

    // Zero targets.
    assert_eq!(table.get(idx("x7"), 2).unwrap().value, zero);
    assert_eq!(table.get(idx("x13"), 2).unwrap().value, zero);
    assert_eq!(table.get(idx("x13"), 4).unwrap().value, zero);
    assert_eq!(table.get(idx("x11"), 8).unwrap().value, zero);
    assert_eq!(table.get(idx("x11"), 4).unwrap().value, zero);
    assert_eq!(table.status(idx("x11"), 4), SlotStatus::Forced);

    // Sq8 x13 has the candidate x7^3, but Sq8 Sq6 consistency on x7 pins it
    // to zero: Sq8 Sq6 = Sq11 Sq3 + Sq10 Sq4, and both terms die on x7.
    assert_eq!(table.get(idx("x13"), 8).unwrap().value, zero);
    assert_eq!(table.status(idx("x13"), 8), SlotStatus::Forced);
    assert!(completion.report.undetermined.is_empty());

    // The trace records the Adem route for Sq6 x7 = x13.
    let sq6 = completion
        .report
        .derived_ops
        .iter()
        .find(|op| op.generator == "x7" && op.i == 6)
        .expect("Sq6 x7 derived");
    assert_eq!(sq6.value, "x13");
    assert_eq!(sq6.route, "Sq6 = Sq2 Sq4 + Sq5 Sq1");
}

#[test]
fn completion_reproduces_the_fiber_action() {
    let alg = g2fiber();
    let completion = complete_action(&alg, alg.table(), 40).unwrap();
    let table = &completion.table;
    let vars = alg.vars();
    let zero = Poly::zero(vars);
    let u3 = vars.index_of("u3").unwrap();
    let u5 = vars.index_of("u5").unwrap();
    assert_eq!(table.get(u3, 1).unwrap().value, zero);
    assert_eq!(table.get(u5, 2).unwrap().value, zero);
    // Sq4 u5 = 0 is pinned by the linear phase (Sq2 Sq4 consistency),
    // even though degree 9 has the candidate u3^3.
    assert_eq!(table.get(u5, 4).unwrap().value, zero);
    assert_eq!(table.status(u5, 4), SlotStatus::Forced);
    assert!(completion.report.undetermined.is_empty());
    assert!(completion.report.contradiction.is_none());
}

#[test]
fn closure_passes_for_the_fiber_algebras() {
    let mut alg = di4();
    let completion = complete_action(&alg, alg.table(), 40).unwrap();
    alg.replace_table(completion.table);
    let report = verify_ideal_closure(&alg, 30).unwrap();
    assert!(
        report.passed(),
        "closure failures: {:?}",
        report.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>()
    );

    let mut fiber = g2fiber();
    let completion = complete_action(&fiber, fiber.table(), 40).unwrap();
    fiber.replace_table(completion.table);
    let report = verify_ideal_closure(&fiber, 30).unwrap();
    assert!(report.passed());
}

#[test]
fn squares_are_sq1_cycles() {
    let alg = di4();
    let p = parse_poly(alg.vars(), "x7*x11 + x13").unwrap();
    let square = p.mul(&p).unwrap();
    assert!(sq(1, &square, &alg).unwrap().is_zero());
}

#[test]
fn cartan_formula_on_products() {
    let mut alg = di4();
    let completion = complete_action(&alg, alg.table(), 40).unwrap();
    alg.replace_table(completion.table);
    let vars = alg.vars();
    let p = parse_poly(vars, "x7 + x11").unwrap();
    let q = parse_poly(vars, "x7^2 + x13").unwrap();
    let pq = p.mul(&q).unwrap();
    for n in 0..=12u32 {
        let direct = sq(n, &pq, &alg).unwrap();
        let mut cartan = Poly::zero(vars);
        for a in 0..=n {
            let left = sq(a, &p, &alg).unwrap();
            let right = sq(n - a, &q, &alg).unwrap();
            cartan = cartan.add(&left.mul(&right).unwrap()).unwrap();
        }
        cartan = alg.normal_form(&cartan);
        assert_eq!(direct, cartan, "Cartan mismatch at Sq{n}");
    }
}
