//! F2-linear ansatz solving for unknown relation coefficients.
//!
//! The unknown relation is written as `lhs = sum(unknown * candidate)` over
//! the degree-matched module-basis monomials. A chain of Steenrod steps is
//! applied to both sides inside a relation-free skeleton (so nothing reduces
//! modulo the relation being solved for): constrain steps equate with zero
//! (squares are Sq^1-cycles), derive steps produce intermediate relations.
//! Every F2 assignment is enumerated and filtered; the enumeration doubles
//! as the oracle for the linear reasoning recorded in the trace.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::presentation::AlgebraPresentation;
use crate::steenrod::eval::{SqEvaluator, SymPoly};

/// A relation-free presentation plus the module-basis exponent caps used to
/// enumerate ansatz candidates.
#[derive(Clone, Debug)]
pub struct AnsatzSkeleton {
    pub free: AlgebraPresentation,
    pub caps: Vec<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// Apply the square and equate with zero.
    Constrain,
    /// Apply the square and carry the result as a new derived relation.
    Derive,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChainStep {
    pub index: u32,
    pub kind: StepKind,
}

/// The unknown relation `lhs = sum A_k * candidate_k` with its constraint
/// chain.
#[derive(Clone, Debug)]
pub struct RelationAnsatz {
    skeleton: AnsatzSkeleton,
    lhs: Poly,
    names: Vec<String>,
    candidates: Vec<Monomial>,
    chain: Vec<ChainStep>,
}

/// One step of the recorded derivation.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub applied: String,
    pub equation: String,
    /// Rendered linear facts a constrain step yields, e.g. `C = 0`, `A = B`.
    pub forced: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub unknowns: Vec<String>,
    /// Every surviving F2 assignment, in unknown order.
    pub survivors: Vec<Vec<bool>>,
    pub trace: Vec<TraceStep>,
}

impl RelationAnsatz {
    /// Enumerates candidates of the left side's degree in the module basis,
    /// excluding the left side's own monomial. `ordering` optionally fixes
    /// the candidate order and unknown names; it must match the enumerated
    /// set exactly.
    pub fn build(
        skeleton: AnsatzSkeleton,
        lhs: Poly,
        chain: Vec<ChainStep>,
        ordering: Option<&[(&str, &str)]>,
    ) -> Result<RelationAnsatz> {
        let vars = skeleton.free.vars().clone();
        vars.ensure_same(lhs.vars())?;
        let degree = match lhs.homogeneous_degree() {
            Some(d) => d,
            None => return Err(Error::Inhomogeneous(lhs.to_string())),
        };
        let mut enumerated: Vec<Monomial> =
            monomials_of_degree(&vars, degree, Some(&skeleton.caps))
                .into_iter()
                .filter(|m| !lhs.contains(m))
                .collect();
        let (names, candidates) = match ordering {
            None => {
                let names = (0..enumerated.len())
                    .map(|k| {
                        let c = (b'A' + (k % 26) as u8) as char;
                        if k < 26 {
                            c.to_string()
                        } else {
                            format!("{c}{}", k / 26)
                        }
                    })
                    .collect();
                (names, enumerated)
            }
            Some(pairs) => {
                let mut names = Vec::new();
                let mut ordered = Vec::new();
                for (name, text) in pairs {
                    let m = crate::poly::parse_poly(&vars, text)?;
                    let [mono] = m.terms() else {
                        return Err(Error::SolverOutcome(format!(
                            "candidate `{text}` is not a single monomial"
                        )));
                    };
                    let pos = enumerated.iter().position(|c| c == mono).ok_or_else(|| {
                        Error::SolverOutcome(format!(
                            "candidate `{text}` is not in the enumerated basis"
                        ))
                    })?;
                    ordered.push(enumerated.remove(pos));
                    names.push(name.to_string());
                }
                if !enumerated.is_empty() {
                    return Err(Error::SolverOutcome(format!(
                        "ordering misses {} enumerated candidate(s)",
                        enumerated.len()
                    )));
                }
                (names, ordered)
            }
        };
        Ok(RelationAnsatz {
            skeleton,
            lhs,
            names,
            candidates,
            chain,
        })
    }

    pub fn lhs(&self) -> &Poly {
        &self.lhs
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn candidates(&self) -> &[Monomial] {
        &self.candidates
    }

    pub fn candidate_strings(&self) -> Vec<String> {
        let vars = self.skeleton.free.vars();
        self.candidates.iter().map(|m| m.display(vars)).collect()
    }

    fn rhs_sym(&self) -> SymPoly {
        let vars = self.skeleton.free.vars();
        let mut acc = SymPoly::zero(vars);
        for (k, cand) in self.candidates.iter().enumerate() {
            let part = SymPoly::unknown(vars, k, Poly::from_monomial(vars, cand.clone()));
            acc = acc.add(&part).expect("same vars");
        }
        acc
    }

    fn render_sym(&self, s: &SymPoly) -> String {
        let vars = self.skeleton.free.vars();
        let mut parts = Vec::new();
        if !s.constant().is_zero() {
            parts.push(s.constant().to_string());
        }
        for (&id, coeff) in s.linear() {
            let name = &self.names[id];
            if coeff.term_count() == 1 {
                let m = &coeff.terms()[0];
                if m.is_unit() {
                    parts.push(name.clone());
                } else {
                    parts.push(format!("{}*{}", name, m.display(vars)));
                }
            } else {
                parts.push(format!("{}*({})", name, coeff));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    fn render_linear_fact(&self, ids: &[usize], rhs: bool) -> String {
        match (ids, rhs) {
            ([], false) => "0 = 0".to_string(),
            ([], true) => "0 = 1 (inconsistent)".to_string(),
            ([a], v) => format!("{} = {}", self.names[*a], u8::from(v)),
            ([a, b], false) => format!("{} = {}", self.names[*a], self.names[*b]),
            (many, v) => {
                let lhs: Vec<&str> = many.iter().map(|&i| self.names[i].as_str()).collect();
                format!("{} = {}", lhs.join(" + "), u8::from(v))
            }
        }
    }

    /// Walks the chain, collecting coefficientwise linear constraints, then
    /// enumerates every F2 assignment and keeps the survivors.
    pub fn solve(&self) -> Result<SolveReport> {
        let alg = &self.skeleton.free;
        let evaluator = SqEvaluator::strict(alg);
        let mut equations: Vec<(Vec<usize>, bool)> = Vec::new();
        let mut trace = Vec::new();

        let mut lhs = self.lhs.clone();
        let mut rhs = self.rhs_sym();
        trace.push(TraceStep {
            applied: "ansatz".to_string(),
            equation: format!("{} = {}", lhs, self.render_sym(&rhs)),
            forced: Vec::new(),
        });

        for step in &self.chain {
            let new_lhs = evaluator.sq_poly(step.index, &lhs)?.into_constant()?;
            let new_rhs = evaluator.sq_sym(step.index, &rhs)?;
            self.check_in_basis(&new_rhs)?;
            match step.kind {
                StepKind::Derive => {
                    lhs = new_lhs;
                    rhs = new_rhs;
                    trace.push(TraceStep {
                        applied: format!("Sq{}", step.index),
                        equation: format!("{} = {}", lhs, self.render_sym(&rhs)),
                        forced: Vec::new(),
                    });
                }
                StepKind::Constrain => {
                    if !new_lhs.is_zero() {
                        return Err(Error::SolverOutcome(format!(
                            "constrain step Sq{} left a nonzero left side {new_lhs}",
                            step.index
                        )));
                    }
                    let mut forced = Vec::new();
                    let step_equations = vanishing_equations(&new_rhs);
                    for (ids, val) in &step_equations {
                        forced.push(self.render_linear_fact(ids, *val));
                    }
                    equations.extend(step_equations);
                    trace.push(TraceStep {
                        applied: format!("Sq{}", step.index),
                        equation: format!("0 = {}", self.render_sym(&new_rhs)),
                        forced,
                    });
                }
            }
        }

        // Full enumeration over F2 assignments, filtered by the constraints.
        let n = self.candidates.len();
        let mut survivors = Vec::new();
        for mask in 0u32..(1 << n) {
            let assignment: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
            let ok = equations
                .iter()
                .all(|(ids, rhs)| ids.iter().fold(false, |acc, &id| acc ^ assignment[id]) == *rhs);
            if ok {
                survivors.push(assignment);
            }
        }
        if survivors.is_empty() {
            return Err(Error::SolverOutcome(
                "constraint chain is inconsistent: no assignment survives".to_string(),
            ));
        }
        Ok(SolveReport {
            unknowns: self.names.clone(),
            survivors,
            trace,
        })
    }

    /// Derived relations must stay inside the module basis; anything else
    /// would need the unknown relation itself to reduce, which the skeleton
    /// forbids.
    fn check_in_basis(&self, s: &SymPoly) -> Result<()> {
        let in_basis = |p: &Poly| {
            p.terms().iter().all(|m| {
                m.exps()
                    .iter()
                    .zip(&self.skeleton.caps)
                    .all(|(&e, &cap)| e <= cap)
            })
        };
        for coeff in s.linear().values() {
            if !in_basis(coeff) {
                return Err(Error::SolverOutcome(format!(
                    "evaluation left the module basis: {coeff}"
                )));
            }
        }
        Ok(())
    }

    /// The relation list obtained by instantiating the ansatz and every
    /// derived step at one assignment: the defining relation first.
    pub fn instantiate(&self, assignment: &[bool]) -> Result<Vec<Poly>> {
        assert_eq!(assignment.len(), self.candidates.len());
        let alg = &self.skeleton.free;
        let evaluator = SqEvaluator::strict(alg);
        let mut out = Vec::new();
        let mut lhs = self.lhs.clone();
        let mut rhs = self.rhs_sym();
        out.push(lhs.add(&rhs.instantiate(&|id| assignment[id])?)?);
        for step in &self.chain {
            if step.kind != StepKind::Derive {
                continue;
            }
            lhs = evaluator.sq_poly(step.index, &lhs)?.into_constant()?;
            rhs = evaluator.sq_sym(step.index, &rhs)?;
            out.push(lhs.add(&rhs.instantiate(&|id| assignment[id])?)?);
        }
        Ok(out)
    }
}

/// Splits `sym = 0` into per-monomial linear equations over the unknowns.
fn vanishing_equations(sym: &SymPoly) -> Vec<(Vec<usize>, bool)> {
    let mut monomials: Vec<Monomial> = sym.constant().terms().to_vec();
    for coeff in sym.linear().values() {
        for m in coeff.terms() {
            if !monomials.contains(m) {
                monomials.push(m.clone());
            }
        }
    }
    let mut out = Vec::new();
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
        out.push((ids, rhs));
    }
    out
}

/// Outcome of choosing between the split and nonsplit branches.
#[derive(Clone, Debug, Serialize)]
pub struct BranchSelection {
    pub selected: BTreeMap<String, bool>,
    pub rejected_split: BTreeMap<String, bool>,
    pub provenance: String,
}

/// Picks the nonzero survivor. The zero assignment (the split algebra) is
/// Steenrod-consistent too; excluding it is an external geometric input, so
/// the selection records that provenance and keeps the alternative.
pub fn select_nonsplit(report: &SolveReport) -> Result<BranchSelection> {
    let [first, second] = report.survivors.as_slice() else {
        return Err(Error::SolverOutcome(format!(
            "expected exactly two surviving assignments, found {}",
            report.survivors.len()
        )));
    };
    let zero_first = first.iter().all(|&b| !b);
    let zero_second = second.iter().all(|&b| !b);
    let (zero, nonzero) = match (zero_first, zero_second) {
        (true, false) => (first, second),
        (false, true) => (second, first),
        _ => {
            return Err(Error::SolverOutcome(
                "survivors are not a split/nonsplit pair".to_string(),
            ))
        }
    };
    let to_map = |assignment: &[bool]| {
        report
            .unknowns
            .iter()
            .cloned()
            .zip(assignment.iter().copied())
            .collect::<BTreeMap<_, _>>()
    };
    Ok(BranchSelection {
        selected: to_map(nonzero),
        rejected_split: to_map(zero),
        provenance: "external input: the split branch is excluded by a mapping-space \
                     argument not reproduced here"
            .to_string(),
    })
}
