//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Every tolerance and threshold is pinned here.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sqring::bockstein::{b2_dimensions, factors_series, nu2, run_bss};
use sqring::catalog;
use sqring::groebner::poincare_series;
use sqring::poly::{Monomial, Poly};
use sqring::series::{factor_series, TensorFactor};
use sqring::solver::select_nonsplit;
use sqring::steenrod::eval::{apply_composite, sq, verify_ideal_closure, SqEvaluator, SymPoly};
use sqring::steenrod::{adem_normalize, complete_action, Composite, SteenrodElement};

fn report(criterion: u32, name: &str, pass: bool) {
    println!(
        "criterion {criterion} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed");
}

#[test]
fn criterion_01_relation_reproduction() {
    let start = Instant::now();
    let bsol = catalog::get("bsol").unwrap();
    let nf = |entry: &catalog::CatalogEntry, s: &str| {
        entry
            .presentation
            .normal_form(&sqring::parse_poly(entry.vars(), s).unwrap())
            .to_string()
    };
    let mut pass = nf(&bsol, "y11^2") == "u8*y7^2 + u15*y7";
    pass &= nf(&bsol, "y13^2") == "u12*y7^2 + u15*y11";
    pass &= nf(&bsol, "y7^4") == "u14*y7^2 + u15*y13";
    let bg2q = catalog::get("bg2q").unwrap();
    pass &= nf(&bg2q, "y5^2") == "d4*y3^2 + d7*y3";
    pass &= nf(&bg2q, "y3^4") == "d6*y3^2 + d7*y5";
    pass &= start.elapsed().as_secs_f64() < 1.0;
    report(1, "relation reproduction", pass);
}

#[test]
fn criterion_02_module_splitting_series() {
    let n = 100usize;
    let dickson4 = [
        TensorFactor::Polynomial { degree: 8 },
        TensorFactor::Polynomial { degree: 12 },
        TensorFactor::Polynomial { degree: 14 },
        TensorFactor::Polynomial { degree: 15 },
    ];
    let di4_fiber = [
        TensorFactor::Truncated {
            degree: 7,
            height: 4,
        },
        TensorFactor::Exterior { degree: 11 },
        TensorFactor::Exterior { degree: 13 },
    ];
    let start = Instant::now();
    let bsol = catalog::get("bsol").unwrap();
    let actual = poincare_series(bsol.presentation.groebner_basis(), n);
    let expected = factor_series(&dickson4, n).mul(&factor_series(&di4_fiber, n));
    let mut pass = actual == expected;
    pass &= start.elapsed().as_secs_f64() < 5.0;

    let dickson3 = [
        TensorFactor::Polynomial { degree: 4 },
        TensorFactor::Polynomial { degree: 6 },
        TensorFactor::Polynomial { degree: 7 },
    ];
    let g2_fiber = [
        TensorFactor::Truncated {
            degree: 3,
            height: 4,
        },
        TensorFactor::Exterior { degree: 5 },
    ];
    let start = Instant::now();
    let bg2q = catalog::get("bg2q").unwrap();
    let actual = poincare_series(bg2q.presentation.groebner_basis(), n);
    let expected = factor_series(&dickson3, n).mul(&factor_series(&g2_fiber, n));
    pass &= actual == expected;
    pass &= start.elapsed().as_secs_f64() < 5.0;
    report(2, "module-splitting series", pass);
}

#[test]
fn criterion_03_coefficient_derivation() {
    let start = Instant::now();
    let mut pass = true;
    for name in ["bsol", "bg2q"] {
        let entry = catalog::get(name).unwrap();
        let ansatz = entry.relation_ansatz().unwrap();
        let solved = ansatz.solve().unwrap();
        let survivors: Vec<Vec<u8>> = solved
            .survivors
            .iter()
            .map(|s| s.iter().map(|&b| u8::from(b)).collect())
            .collect();
        pass &= survivors == vec![vec![0, 0, 0], vec![1, 1, 0]];
        let constrained: Vec<_> = solved
            .trace
            .iter()
            .filter(|s| !s.forced.is_empty())
            .collect();
        pass &= constrained.len() == 2;
        pass &= constrained[0].forced.contains(&"C = 0".to_string());
        pass &= constrained[1].forced.contains(&"A = B".to_string());
        pass &= select_nonsplit(&solved).is_ok();
    }
    pass &= start.elapsed().as_secs_f64() < 1.0;
    report(3, "coefficient derivation", pass);
}

#[test]
fn criterion_04_dickson_invariants() {
    let start = Instant::now();
    let sys3 = sqring::dickson::dickson_generators(3).unwrap();
    let sys4 = sqring::dickson::dickson_generators(4).unwrap();
    let mut pass = sys3.degrees() == vec![4, 6, 7];
    pass &= sys4.degrees() == vec![8, 12, 14, 15];
    pass &= sys3.verify_invariance().unwrap().passed();
    pass &= sys4.verify_invariance().unwrap().passed();
    pass &= sys4.steenrod_on_generator(4, 0).unwrap().to_string() == "u12";
    pass &= sys4.steenrod_on_generator(2, 1).unwrap().to_string() == "u14";
    pass &= sys4.steenrod_on_generator(1, 2).unwrap().to_string() == "u15";
    pass &= sys3.steenrod_on_generator(2, 0).unwrap().to_string() == "d6";
    pass &= sys3.steenrod_on_generator(1, 1).unwrap().to_string() == "d7";
    pass &= start.elapsed().as_secs_f64() < 10.0;
    report(4, "dickson construction and action", pass);
}

#[test]
fn criterion_05_steenrod_closure() {
    let start = Instant::now();
    let mut pass = true;
    for name in ["bsol", "bg2q"] {
        let entry = catalog::get(name).unwrap();
        let closure = verify_ideal_closure(&entry.presentation, 30).unwrap();
        pass &= closure.passed();
    }
    pass &= start.elapsed().as_secs_f64() < 30.0;
    report(5, "steenrod ideal closure", pass);
}

#[test]
fn criterion_06_action_completion() {
    let entry = catalog::get("bsol").unwrap();
    let completion = complete_action(&entry.presentation, &entry.given_table, 40).unwrap();
    let vars = entry.vars();
    let slot = |gen: &str, i: u32| {
        completion
            .table
            .get(vars.index_of(gen).unwrap(), i)
            .map(|e| (e.value.to_string(), e.provenance.describe()))
            .unwrap()
    };
    let (v, rule) = slot("y7", 2);
    let mut pass = v == "0" && rule.contains("zero target");
    let (v, rule) = slot("y11", 4);
    pass &= v == "0" && rule.contains("Sq4 Sq4");
    let sq6 = completion
        .report
        .derived_ops
        .iter()
        .find(|op| op.generator == "y7" && op.i == 6);
    pass &= matches!(sq6, Some(op) if op.value == "y13" && op.route == "Sq6 = Sq2 Sq4 + Sq5 Sq1");

    // The documented list of unforceable slots must be reproduced
    // identically across runs and match the checked-in fixture.
    let listing = undetermined_listing();
    let listing_again = undetermined_listing();
    pass &= listing == listing_again;
    pass &= listing == include_str!("fixtures/action_completion_undetermined.txt");
    report(6, "action completion", pass);
}

fn undetermined_listing() -> String {
    let mut out = String::new();
    out.push_str("# Action-table slots the completion engine cannot force from the given\n");
    out.push_str("# values, considering targets up to degree 40. Regenerated by the\n");
    out.push_str("# acceptance suite; any change is a behavioral regression.\n");
    for name in ["bsol", "bg2q"] {
        let entry = catalog::get(name).unwrap();
        let completion = complete_action(&entry.presentation, &entry.given_table, 40).unwrap();
        if completion.report.undetermined.is_empty() {
            out.push_str(&format!("{name}: (none)\n"));
        } else {
            for slot in &completion.report.undetermined {
                out.push_str(&format!(
                    "{name}: Sq{} {} -> candidates {}\n",
                    slot.i,
                    slot.generator,
                    slot.candidates.join(", ")
                ));
            }
        }
    }
    out
}

#[test]
fn criterion_07_b2_pages() {
    let n = 60usize;
    let bsol = catalog::get("bsol").unwrap();
    let dims = b2_dimensions(&bsol.presentation, n).unwrap();
    let expected = factors_series(&bsol.b2(n).unwrap().factors, n);
    let mut pass = dims == expected;
    let bg2q = catalog::get("bg2q").unwrap();
    let dims = b2_dimensions(&bg2q.presentation, n).unwrap();
    let expected = factors_series(&bg2q.b2(n).unwrap().factors, n);
    pass &= dims == expected;
    // Spot values pinned independently.
    pass &= b2_dimensions(&bsol.presentation, 15).unwrap().coeff(15) == 1;
    report(7, "second Bockstein pages", pass);
}

#[test]
fn criterion_08_nu2_identities() {
    let mut pass = true;
    for q in (3u128..100).step_by(2) {
        let k = nu2(q * q - 1).unwrap();
        pass &= k >= 3;
        pass &= nu2(q.pow(4) - 1).unwrap() == k + 1;
        pass &= nu2(q.pow(6) - 1).unwrap() == k;
        pass &= nu2(q.pow(14) - 1).unwrap() == k;
    }
    report(8, "nu2 identities", pass);
}

#[test]
fn criterion_09_bss_termination() {
    let n = 40usize;
    let mut pass = true;
    for name in ["bsol", "bg2q"] {
        let entry = catalog::get(name).unwrap();
        for epsilon in [false, true] {
            let page2 = entry.b2(n).unwrap();
            let table = entry.bockstein_table(3, epsilon).unwrap();
            let run = run_bss(&page2, &table, n).unwrap();
            pass &= run.terminal_total() == 1;
            pass &= run.terminal_dims[0] == 1;
            if name == "bsol" {
                // u8^2*u12 dies on page k as a boundary of u8^2*y11.
                let k = table.k;
                pass &= run
                    .notes
                    .iter()
                    .any(|note| note.contains(&format!("u8^2*u12 = d_{k}(u8^2 * y11)")));
                // After the page-(k-1) differential only the (y7, u8) and
                // (y11, u12) pairs remain.
                let after = &run.pages[1];
                let remaining = factor_series(
                    &[
                        TensorFactor::Polynomial { degree: 8 },
                        TensorFactor::Polynomial { degree: 12 },
                        TensorFactor::Exterior { degree: 7 },
                        TensorFactor::Exterior { degree: 11 },
                    ],
                    n,
                );
                pass &= after.dims == remaining.coeffs();
            }
        }
    }
    report(9, "Bockstein spectral sequence termination", pass);
}

#[test]
fn criterion_10_axiom_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let entries: Vec<_> = catalog::names()
        .iter()
        .map(|n| catalog::get(n).unwrap())
        .collect();
    let mut cases = 0usize;
    let mut failures = 0usize;

    while cases < 1000 {
        let entry = &entries[rng.gen_range(0..entries.len())];
        let alg = &entry.presentation;
        let degree = rng.gen_range(1..=40u32);
        let basis = alg.basis_of_degree(degree);
        if basis.is_empty() {
            continue;
        }
        let element = random_element(&mut rng, alg, &basis);
        if element.is_zero() {
            continue;
        }
        cases += 1;
        let i = rng.gen_range(0..=degree + 2);

        // Sq1 Sq1 = 0.
        let sq1sq1 = sq(1, &sq(1, &element, alg).unwrap(), alg).unwrap();
        if !sq1sq1.is_zero() {
            failures += 1;
        }
        // Unstability.
        if !sq(degree + 1 + rng.gen_range(0..4), &element, alg)
            .unwrap()
            .is_zero()
        {
            failures += 1;
        }
        let square = alg.normal_form(&element.mul(&element).unwrap());
        if sq(degree, &element, alg).unwrap() != square {
            failures += 1;
        }
        // Squares are Sq1-cycles.
        if !sq(1, &square, alg).unwrap().is_zero() {
            failures += 1;
        }
        // Cartan on a random product partner.
        let other_degree = rng.gen_range(1..=(41 - degree).max(1));
        let other_basis = alg.basis_of_degree(other_degree);
        if !other_basis.is_empty() {
            let other = random_element(&mut rng, alg, &other_basis);
            let product = alg.normal_form(&element.mul(&other).unwrap());
            let direct = sq(i, &product, alg).unwrap();
            let mut cartan = Poly::zero(alg.vars());
            for a in 0..=i {
                let left = sq(a, &element, alg).unwrap();
                let right = sq(i - a, &other, alg).unwrap();
                cartan = cartan.add(&left.mul(&right).unwrap()).unwrap();
            }
            if direct != alg.normal_form(&cartan) {
                failures += 1;
            }
        }
        // Applying a composite equals applying its admissible form.
        let a = rng.gen_range(1..=6u32);
        let b = rng.gen_range(1..=6u32);
        let composite = Composite::new(vec![a, b]);
        let raw = apply_composite(&composite, &element, alg).unwrap();
        let normalized = adem_normalize(&SteenrodElement::from_composite(composite));
        let via_normal = sqring::steenrod::eval::apply_element(&normalized, &element, alg).unwrap();
        if raw != via_normal {
            failures += 1;
        }
    }
    println!("criterion 10: {cases} random cases, {failures} failures");
    report(10, "axiom property suite", failures == 0 && cases == 1000);
}

fn random_element(
    rng: &mut ChaCha8Rng,
    alg: &sqring::AlgebraPresentation,
    basis: &[Monomial],
) -> Poly {
    let mut terms = Vec::new();
    for m in basis {
        if rng.gen_bool(0.5) {
            terms.push(m.clone());
        }
    }
    if terms.is_empty() {
        terms.push(basis[rng.gen_range(0..basis.len())].clone());
    }
    Poly::from_terms(alg.vars(), terms)
}

// Keep the symbolic layer honest: evaluating with no unknowns must agree
// with strict evaluation.
#[test]
fn symbolic_and_strict_evaluation_agree() {
    let entry = catalog::get("bsol").unwrap();
    let alg = &entry.presentation;
    let evaluator = SqEvaluator::strict(alg);
    let p = sqring::parse_poly(alg.vars(), "y7*u8 + y11").unwrap();
    for i in 0..=12u32 {
        let sym = evaluator.sq_poly(i, &p).unwrap();
        assert!(matches!(sym, SymPoly { .. }));
        assert_eq!(sym.into_constant().unwrap(), sq(i, &p, alg).unwrap());
    }
}
