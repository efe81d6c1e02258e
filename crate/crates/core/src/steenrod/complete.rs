//! Fixed-point completion of a partial action table.
//!
//! Resolution rules, applied until saturation within a step budget:
//! (a) zero targets: if the quotient vanishes in degree `|g| + i` then
//!     `Sq^i g = 0`;
//! (b) unstability (top squares and vanishing above the degree) is built
//!     into evaluation and never stored;
//! (c) Adem chains: when `g` itself is the stored value of `Sq^j h` and
//!     `Sq^i Sq^j` is inadmissible, the admissible expansion evaluated on
//!     `h` forces `Sq^i g`;
//! (d) the remaining slots become F2 unknowns over their candidate
//!     monomials, constrained by ideal-closure equations (`Sq^i r = 0` mod
//!     the ideal) and by both-routes Adem consistency on generators; the
//!     linear system is solved exactly and uniquely pinned slots are forced.
//!
//! Every forced entry carries its derivation. Slots that survive all rules
//! are reported as undetermined, never guessed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2linalg::{LinearSystem, SolveOutcome};
use crate::poly::{Monomial, Poly};
use crate::presentation::AlgebraPresentation;
use crate::steenrod::adem::{adem_normalize, Composite, SteenrodElement};
use crate::steenrod::eval::{SqEvaluator, SymPoly, UnknownSpace};
use crate::steenrod::table::{ActionTable, Provenance};

const ITERATION_BUDGET: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct SlotReport {
    pub generator: String,
    pub i: u32,
    pub value: Option<String>,
    pub status: String,
    pub derivation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct UndeterminedSlot {
    pub generator: String,
    pub i: u32,
    pub target_degree: u32,
    pub candidates: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedOp {
    pub generator: String,
    pub i: u32,
    pub value: String,
    pub route: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionReport {
    pub algebra: String,
    pub nmax: u32,
    pub slots: Vec<SlotReport>,
    pub undetermined: Vec<UndeterminedSlot>,
    pub derived_ops: Vec<DerivedOp>,
    pub iterations: usize,
    pub budget_exhausted: bool,
    pub contradiction: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub table: ActionTable,
    pub report: CompletionReport,
}

/// Completes `partial` over the presentation's generators, considering slots
/// whose target degree is at most `nmax`.
pub fn complete_action(
    alg: &AlgebraPresentation,
    partial: &ActionTable,
    nmax: u32,
) -> Result<Completion> {
    let mut work = alg.clone();
    work.replace_table(partial.clone());
    let mut iterations = 0;
    let mut contradiction = None;

    loop {
        iterations += 1;
        if iterations > ITERATION_BUDGET {
            break;
        }
        let mut progress = false;

        // (a) zero targets.
        for (g, i) in work.table().missing_slots(work.vars()) {
            let target = work.vars().degree(g) + i;
            if target > nmax {
                continue;
            }
            if work.basis_of_degree(target).is_empty() {
                let rule = format!("zero target: quotient degree {target} is empty");
                let zero = Poly::zero(work.vars());
                work.table_mut()
                    .set(g, i, zero, Provenance::Forced { rule });
                progress = true;
            }
        }

        // (c) Adem chains through stored single-generator values.
        let chains = chain_candidates(&work);
        for (g, i, h, j) in chains {
            if work.table().get(g, i).is_some() {
                continue;
            }
            let composite = Composite::new(vec![i, j]);
            if composite.is_admissible() {
                continue;
            }
            let expansion = adem_normalize(&SteenrodElement::from_composite(composite));
            match evaluate_expansion(&work, &expansion, h) {
                Ok(value) => {
                    let rule = format!(
                        "Adem chain: {} = Sq{} {}, and Sq{} Sq{} = {}",
                        work.vars().name(g),
                        j,
                        work.vars().name(h),
                        i,
                        j,
                        expansion
                    );
                    work.table_mut()
                        .set(g, i, value, Provenance::Forced { rule });
                    progress = true;
                }
                Err(Error::Underdetermined { .. }) => {}
                Err(e) => return Err(e),
            }
        }

        if progress {
            continue;
        }

        // (d) linear phase over all remaining unknowns.
        let missing: Vec<(usize, u32)> = work
            .table()
            .missing_slots(work.vars())
            .into_iter()
            .filter(|&(g, i)| work.vars().degree(g) + i <= nmax)
            .collect();
        if missing.is_empty() {
            break;
        }
        let mut unknowns = UnknownSpace::new();
        for &(g, i) in &missing {
            let target = work.vars().degree(g) + i;
            unknowns.add_slot(g, i, work.basis_of_degree(target));
        }
        let system = harvest_equations(&work, &unknowns)?;
        match system.solve() {
            SolveOutcome::Inconsistent { labels } => {
                contradiction = Some(labels);
                break;
            }
            SolveOutcome::Solved(solution) => {
                let mut forced_any = false;
                for (&(g, i), slot) in unknowns.slots() {
                    let ids = slot.base..slot.base + slot.candidates.len();
                    if ids.clone().all(|id| solution.determined[id].is_some()) {
                        let mut terms = Vec::new();
                        let mut labels = Vec::new();
                        for (k, id) in ids.enumerate() {
                            if solution.determined[id] == Some(true) {
                                terms.push(slot.candidates[k].clone());
                            }
                            for l in &solution.support[id] {
                                if !labels.contains(l) {
                                    labels.push(l.clone());
                                }
                            }
                        }
                        let value = Poly::from_terms(work.vars(), terms);
                        let rule = format!("linear constraint system: {}", labels.join("; "));
                        work.table_mut()
                            .set(g, i, value, Provenance::Forced { rule });
                        forced_any = true;
                    }
                }
                if !forced_any {
                    break;
                }
            }
        }
    }

    let report = build_report(&work, alg.name(), nmax, iterations, contradiction)?;
    Ok(Completion {
        table: work.table().clone(),
        report,
    })
}

/// Slots `(g, i)` reachable as `g = Sq^j h` for a stored single-generator
/// value, paired with every stored power-of-two index `i` on `g`.
fn chain_candidates(alg: &AlgebraPresentation) -> Vec<(usize, u32, usize, u32)> {
    let vars = alg.vars();
    let mut out = Vec::new();
    for (&(h, j), entry) in alg.table().iter() {
        let Some(g) = single_generator(&entry.value) else {
            continue;
        };
        for i in crate::steenrod::table::stored_slots(vars.degree(g)) {
            out.push((g, i, h, j));
        }
    }
    out
}

fn single_generator(p: &Poly) -> Option<usize> {
    let [m] = p.terms() else { return None };
    let mut found = None;
    for (idx, &e) in m.exps().iter().enumerate() {
        match (e, found) {
            (0, _) => {}
            (1, None) => found = Some(idx),
            _ => return None,
        }
    }
    found
}

fn evaluate_expansion(
    alg: &AlgebraPresentation,
    expansion: &SteenrodElement,
    h: usize,
) -> Result<Poly> {
    let evaluator = SqEvaluator::strict(alg);
    let mut acc = Poly::zero(alg.vars());
    for c in expansion.terms() {
        let mut value = SymPoly::from_poly(Poly::var(alg.vars(), h));
        for &idx in c.indices().iter().rev() {
            value = evaluator.sq_sym(idx, &value)?;
        }
        acc = acc.add(&value.into_constant()?)?;
    }
    Ok(alg.normal_form(&acc))
}

/// Collects closure and both-routes Adem equations, linear in the unknowns.
fn harvest_equations(alg: &AlgebraPresentation, unknowns: &UnknownSpace) -> Result<LinearSystem> {
    let evaluator = SqEvaluator::symbolic(alg, unknowns);
    let mut system = LinearSystem::new(unknowns.total());

    // Ideal closure: Sq^i r must reduce to zero for every ideal generator.
    for r in alg.relations() {
        let Some(dr) = r.homogeneous_degree() else {
            continue;
        };
        for i in 1..dr {
            match evaluator.sq_poly(i, r) {
                Ok(sym) => {
                    add_vanishing_equations(&mut system, &sym, &format!("Sq{i}({r}) = 0 mod I"))
                }
                Err(Error::NonlinearUnknowns) => {}
                Err(e) => return Err(e),
            }
        }
    }

    // Both-routes consistency: Sq^a(Sq^b g) equals the Adem expansion of
    // Sq^a Sq^b applied to g.
    for g in 0..alg.vars().len() {
        let dg = alg.vars().degree(g);
        for b in 1..=dg {
            for a in 1..(2 * b) {
                if a > dg + b {
                    continue;
                }
                let label = format!("Sq{a} Sq{b} on {}", alg.vars().name(g));
                let outcome = both_routes_equation(&evaluator, g, a, b);
                match outcome {
                    Ok(Some(diff)) => add_vanishing_equations(&mut system, &diff, &label),
                    Ok(None) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(system)
}

fn both_routes_equation(
    evaluator: &SqEvaluator,
    g: usize,
    a: u32,
    b: u32,
) -> Result<Option<SymPoly>> {
    let attempt = || -> Result<SymPoly> {
        let inner = evaluator.sq_gen(b, g)?;
        let route1 = evaluator.sq_sym(a, &inner)?;
        let expansion =
            adem_normalize(&SteenrodElement::from_composite(Composite::new(vec![a, b])));
        let mut route2 = SymPoly::zero(evaluator.algebra().vars());
        for c in expansion.terms() {
            let mut value = SymPoly::from_poly(Poly::var(evaluator.algebra().vars(), g));
            for &idx in c.indices().iter().rev() {
                value = evaluator.sq_sym(idx, &value)?;
            }
            route2 = route2.add(&value)?;
        }
        route1.add(&route2)
    };
    match attempt() {
        Ok(diff) => Ok(Some(diff)),
        Err(Error::NonlinearUnknowns) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Splits a symbolic polynomial that must vanish into one F2 equation per
/// basis monomial.
fn add_vanishing_equations(system: &mut LinearSystem, sym: &SymPoly, label: &str) {
    let mut monomials: Vec<Monomial> = sym.constant().terms().to_vec();
    for coeff in sym.linear().values() {
        for m in coeff.terms() {
            if !monomials.contains(m) {
                monomials.push(m.clone());
            }
        }
    }
    for m in monomials {
        let ids: Vec<usize> = sym
            .linear()
            .iter()
            .filter(|(_, coeff)| coeff.contains(&m))
            .map(|(&id, _)| id)
            .collect();
        let rhs = sym.constant().contains(&m);
        if ids.is_empty() && !rhs {
            continue;
        }
        system.add_equation(ids, rhs, label);
    }
}

fn build_report(
    work: &AlgebraPresentation,
    algebra: &str,
    nmax: u32,
    iterations: usize,
    contradiction: Option<Vec<String>>,
) -> Result<CompletionReport> {
    let vars = work.vars();
    let mut slots = Vec::new();
    for (g, var) in vars.vars().iter().enumerate() {
        for i in crate::steenrod::table::stored_slots(var.degree) {
            let (value, status, derivation) = match work.table().get(g, i) {
                Some(entry) => (
                    Some(entry.value.to_string()),
                    work.table().status(g, i).to_string(),
                    entry.provenance.describe(),
                ),
                None => (None, "undetermined".to_string(), String::new()),
            };
            slots.push(SlotReport {
                generator: var.name.clone(),
                i,
                value,
                status,
                derivation,
            });
        }
    }
    let mut undetermined = Vec::new();
    for (g, i) in work.table().missing_slots(vars) {
        let target_degree = vars.degree(g) + i;
        if target_degree > nmax {
            continue;
        }
        let candidates = work
            .basis_of_degree(target_degree)
            .iter()
            .map(|m| m.display(vars))
            .collect();
        undetermined.push(UndeterminedSlot {
            generator: vars.name(g).to_string(),
            i,
            target_degree,
            candidates,
        });
    }
    // Decomposable squares up to the generator degree, with their Adem route.
    let evaluator = SqEvaluator::strict(work);
    let mut derived_ops = Vec::new();
    for (g, var) in vars.vars().iter().enumerate() {
        for i in 2..=var.degree {
            if i.is_power_of_two() {
                continue;
            }
            match evaluator.sq_gen(i, g).and_then(SymPoly::into_constant) {
                Ok(value) => derived_ops.push(DerivedOp {
                    generator: var.name.clone(),
                    i,
                    value: value.to_string(),
                    route: crate::steenrod::eval::decomposition_string(i),
                }),
                Err(Error::Underdetermined { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(CompletionReport {
        algebra: algebra.to_string(),
        nmax,
        slots,
        undetermined,
        derived_ops,
        iterations,
        budget_exhausted: iterations > ITERATION_BUDGET,
        contradiction,
    })
}
