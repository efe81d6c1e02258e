//! Cartan-formula evaluation of Steenrod squares on a presented algebra.
//!
//! Evaluation works monomial by monomial: squares are handled by the
//! Frobenius rule (`Sq^{2k}(x^2) = (Sq^k x)^2`, odd squares of squares
//! vanish), one odd-exponent variable is split off otherwise, and values on
//! generators come from the action table. Non-power-of-two squares on
//! generators are decomposed through Adem relations. Every intermediate is
//! reduced to the quotient's normal form.
//!
//! The evaluator optionally carries *symbolic unknowns*: unresolved table
//! slots expand to F2-linear combinations of candidate monomials with formal
//! coefficients. Everything stays affine-linear in those coefficients (over
//! F2 a square is linear); a product of two genuine unknowns aborts the
//! evaluation instead of silently leaving the linear regime.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, VarSet};
use crate::presentation::AlgebraPresentation;
use crate::steenrod::adem::{adem_pair, binom_mod2, Composite, SteenrodElement};

/// Symbolic coordinates for unresolved action-table slots: each slot gets
/// one F2 unknown per candidate monomial of the target degree.
#[derive(Clone, Debug, Default)]
pub struct UnknownSpace {
    slots: BTreeMap<(usize, u32), SlotUnknowns>,
    total: usize,
}

#[derive(Clone, Debug)]
pub struct SlotUnknowns {
    pub base: usize,
    pub candidates: Vec<Monomial>,
}

impl UnknownSpace {
    pub fn new() -> UnknownSpace {
        UnknownSpace::default()
    }

    pub fn add_slot(&mut self, gen: usize, i: u32, candidates: Vec<Monomial>) {
        let base = self.total;
        self.total += candidates.len();
        self.slots
            .insert((gen, i), SlotUnknowns { base, candidates });
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn slot(&self, gen: usize, i: u32) -> Option<&SlotUnknowns> {
        self.slots.get(&(gen, i))
    }

    pub fn slots(&self) -> impl Iterator<Item = (&(usize, u32), &SlotUnknowns)> {
        self.slots.iter()
    }

    /// Maps a flat unknown id back to its slot and candidate monomial.
    pub fn describe(&self, id: usize) -> Option<((usize, u32), &Monomial)> {
        for (&slot, su) in &self.slots {
            if id >= su.base && id < su.base + su.candidates.len() {
                return Some((slot, &su.candidates[id - su.base]));
            }
        }
        None
    }
}

/// `constant + sum(lambda_id * coeff_id)` with F2 unknowns `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    vars: VarSet,
    constant: Poly,
    linear: BTreeMap<usize, Poly>,
}

impl SymPoly {
    pub fn zero(vars: &VarSet) -> SymPoly {
        SymPoly {
            vars: vars.clone(),
            constant: Poly::zero(vars),
            linear: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: Poly) -> SymPoly {
        SymPoly {
            vars: p.vars().clone(),
            constant: p,
            linear: BTreeMap::new(),
        }
    }

    pub fn unknown(vars: &VarSet, id: usize, coeff: Poly) -> SymPoly {
        let mut linear = BTreeMap::new();
        if !coeff.is_zero() {
            linear.insert(id, coeff);
        }
        SymPoly {
            vars: vars.clone(),
            constant: Poly::zero(vars),
            linear,
        }
    }

    pub fn constant(&self) -> &Poly {
        &self.constant
    }

    pub fn linear(&self) -> &BTreeMap<usize, Poly> {
        &self.linear
    }

    pub fn is_constant(&self) -> bool {
        self.linear.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_empty()
    }

    pub fn into_constant(self) -> Result<Poly> {
        if self.linear.is_empty() {
            Ok(self.constant)
        } else {
            Err(Error::NonlinearUnknowns)
        }
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        let mut out = self.clone();
        out.constant = out.constant.add(&other.constant)?;
        for (&id, coeff) in &other.linear {
            let entry = out.linear.remove(&id);
            let merged = match entry {
                Some(c) => c.add(coeff)?,
                None => coeff.clone(),
            };
            if !merged.is_zero() {
                out.linear.insert(id, merged);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SymPoly) -> Result<SymPoly> {
        if !self.linear.is_empty() && !other.linear.is_empty() {
            return Err(Error::NonlinearUnknowns);
        }
        let (sym, plain) = if self.linear.is_empty() {
            (other, &self.constant)
        } else {
            (self, &other.constant)
        };
        let mut out = SymPoly::zero(&self.vars);
        out.constant = sym.constant.mul(plain)?;
        for (&id, coeff) in &sym.linear {
            let c = coeff.mul(plain)?;
            if !c.is_zero() {
                out.linear.insert(id, c);
            }
        }
        Ok(out)
    }

    /// Frobenius square: additive over F2, so linear parts stay linear.
    pub fn square(&self) -> SymPoly {
        let mut out = SymPoly::zero(&self.vars);
        out.constant = self.constant.square();
        for (&id, coeff) in &self.linear {
            out.linear.insert(id, coeff.square());
        }
        out
    }

    fn reduce(&self, alg: &AlgebraPresentation) -> SymPoly {
        let mut out = SymPoly::zero(&self.vars);
        out.constant = alg.normal_form(&self.constant);
        for (&id, coeff) in &self.linear {
            let c = alg.normal_form(coeff);
            if !c.is_zero() {
                out.linear.insert(id, c);
            }
        }
        out
    }

    /// Substitutes concrete values for the unknowns.
    pub fn instantiate(&self, assignment: &dyn Fn(usize) -> bool) -> Result<Poly> {
        let mut acc = self.constant.clone();
        for (&id, coeff) in &self.linear {
            if assignment(id) {
                acc = acc.add(coeff)?;
            }
        }
        Ok(acc)
    }
}

/// Splits a non-power-of-two index: `Sq^i = Sq^{i-b} Sq^b + extra` where `b`
/// is the largest power of two below `i` and `extra` is a sum of composites
/// `Sq^{outer} Sq^{inner}` with `1 <= inner < i`.
pub fn decompose_square(i: u32) -> (u32, u32, Vec<(u32, u32)>) {
    debug_assert!(!i.is_power_of_two() && i > 0);
    let b = 1u32 << (31 - i.leading_zeros());
    let a = i - b;
    debug_assert!(a < b);
    debug_assert!(
        binom_mod2(b as i64 - 1, a as i64),
        "Sq^i must appear in Sq^a Sq^b"
    );
    let extra: Vec<(u32, u32)> = adem_pair(a, b)
        .into_iter()
        .filter(|&(_, c)| c > 0)
        .collect();
    (a, b, extra)
}

/// Human-readable form of the decomposition, e.g. `Sq6 = Sq2 Sq4 + Sq5 Sq1`.
pub fn decomposition_string(i: u32) -> String {
    let (a, b, extra) = decompose_square(i);
    let mut parts = vec![format!("Sq{a} Sq{b}")];
    for (outer, inner) in &extra {
        parts.push(format!("Sq{outer} Sq{inner}"));
    }
    format!("Sq{i} = {}", parts.join(" + "))
}

pub struct SqEvaluator<'a> {
    alg: &'a AlgebraPresentation,
    unknowns: Option<&'a UnknownSpace>,
    memo: RefCell<HashMap<(Monomial, u32), SymPoly>>,
}

impl<'a> SqEvaluator<'a> {
    pub fn strict(alg: &'a AlgebraPresentation) -> SqEvaluator<'a> {
        SqEvaluator {
            alg,
            unknowns: None,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn symbolic(alg: &'a AlgebraPresentation, unknowns: &'a UnknownSpace) -> SqEvaluator<'a> {
        SqEvaluator {
            alg,
            unknowns: Some(unknowns),
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        self.alg
    }

    pub fn sq_poly(&self, i: u32, p: &Poly) -> Result<SymPoly> {
        let vars = self.alg.vars();
        let mut acc = SymPoly::zero(vars);
        for m in p.terms() {
            acc = acc.add(&self.sq_monomial(i, m)?)?;
        }
        Ok(acc)
    }

    pub fn sq_sym(&self, i: u32, s: &SymPoly) -> Result<SymPoly> {
        let mut acc = self.sq_poly(i, &s.constant)?;
        for (&id, coeff) in &s.linear {
            let image = self.sq_poly(i, coeff)?;
            if !image.is_constant() {
                return Err(Error::NonlinearUnknowns);
            }
            acc = acc.add(&SymPoly::unknown(
                self.alg.vars(),
                id,
                image.constant.clone(),
            ))?;
        }
        Ok(acc)
    }

    pub fn sq_monomial(&self, i: u32, m: &Monomial) -> Result<SymPoly> {
        let vars = self.alg.vars();
        if i == 0 {
            return Ok(SymPoly::from_poly(
                self.alg.normal_form(&Poly::from_monomial(vars, m.clone())),
            ));
        }
        if m.is_unit() {
            return Ok(SymPoly::zero(vars));
        }
        if let Some(hit) = self.memo.borrow().get(&(m.clone(), i)) {
            return Ok(hit.clone());
        }
        let dm = m.weighted_degree(vars);
        let result = if i > dm {
            SymPoly::zero(vars)
        } else if i == dm {
            // Top square of any element is its Frobenius square.
            SymPoly::from_poly(self.alg.normal_form(&Poly::from_monomial(vars, m.square())))
        } else if m.is_square() {
            if i % 2 == 1 {
                SymPoly::zero(vars)
            } else {
                self.sq_monomial(i / 2, &m.sqrt())?
                    .square()
                    .reduce(self.alg)
            }
        } else {
            // Split off one odd-exponent variable and apply the Cartan formula.
            let g = (0..vars.len())
                .find(|&j| m.exp(j) % 2 == 1)
                .expect("non-square monomial has an odd exponent");
            let mut rest_exps = m.exps().to_vec();
            rest_exps[g] -= 1;
            let rest = Monomial::from_exps(vars, rest_exps);
            let dg = vars.degree(g);
            let drest = rest.weighted_degree(vars);
            let mut acc = SymPoly::zero(vars);
            for a in 0..=i.min(dg) {
                let b = i - a;
                if b > drest {
                    continue;
                }
                let left = self.sq_gen(a, g)?;
                if left.is_zero() {
                    continue;
                }
                let right = self.sq_monomial(b, &rest)?;
                if right.is_zero() {
                    continue;
                }
                acc = acc.add(&left.mul(&right)?)?;
            }
            acc.reduce(self.alg)
        };
        self.memo
            .borrow_mut()
            .insert((m.clone(), i), result.clone());
        Ok(result)
    }

    /// `Sq^a` on a single generator.
    pub fn sq_gen(&self, a: u32, g: usize) -> Result<SymPoly> {
        let vars = self.alg.vars();
        let dg = vars.degree(g);
        let gen_monomial = Monomial::var_pow(vars, g, 1);
        if a == 0 {
            return Ok(SymPoly::from_poly(Poly::from_monomial(vars, gen_monomial)));
        }
        if a > dg {
            return Ok(SymPoly::zero(vars));
        }
        if a == dg {
            let sq = Poly::from_monomial(vars, gen_monomial.square());
            return Ok(SymPoly::from_poly(self.alg.normal_form(&sq)));
        }
        if a.is_power_of_two() {
            if let Some(entry) = self.alg.table().get(g, a) {
                return Ok(SymPoly::from_poly(self.alg.normal_form(&entry.value)));
            }
            if let Some(space) = self.unknowns {
                if let Some(slot) = space.slot(g, a) {
                    let mut acc = SymPoly::zero(vars);
                    for (k, cand) in slot.candidates.iter().enumerate() {
                        acc = acc.add(&SymPoly::unknown(
                            vars,
                            slot.base + k,
                            Poly::from_monomial(vars, cand.clone()),
                        ))?;
                    }
                    return Ok(acc);
                }
            }
            return Err(Error::Underdetermined {
                gen: vars.name(g).to_string(),
                i: a,
            });
        }
        // Decomposable square: route through Adem relations.
        let (a1, b, extra) = decompose_square(a);
        let inner = self.sq_gen(b, g)?;
        let mut acc = self.sq_sym(a1, &inner)?;
        for (outer, c) in extra {
            let first = self.sq_gen(c, g)?;
            let piece = self.sq_sym(outer, &first)?;
            acc = acc.add(&piece)?;
        }
        Ok(acc.reduce(self.alg))
    }
}

/// Strict evaluation of `Sq^i` on an element, in quotient normal form.
pub fn sq(i: u32, p: &Poly, alg: &AlgebraPresentation) -> Result<Poly> {
    SqEvaluator::strict(alg).sq_poly(i, p)?.into_constant()
}

/// Applies a formal sum of composites (innermost square first).
pub fn apply_element(e: &SteenrodElement, p: &Poly, alg: &AlgebraPresentation) -> Result<Poly> {
    let mut acc = Poly::zero(alg.vars());
    for composite in e.terms() {
        acc = acc.add(&apply_composite(composite, p, alg)?)?;
    }
    Ok(acc)
}

pub fn apply_composite(c: &Composite, p: &Poly, alg: &AlgebraPresentation) -> Result<Poly> {
    let mut value = alg.normal_form(p);
    for &i in c.indices().iter().rev() {
        value = sq(i, &value, alg)?;
        if value.is_zero() {
            return Ok(value);
        }
    }
    Ok(value)
}

/// One closure check: `Sq^i` of an ideal generator, reduced mod the ideal.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureCheck {
    pub relation: String,
    pub i: u32,
    pub residue: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub algebra: String,
    pub imax: u32,
    pub checks: Vec<ClosureCheck>,
    pub failures: usize,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Applies every `Sq^i`, `1 <= i <= imax`, to every ideal generator and
/// reduces; the ideal is closed under the action exactly when all residues
/// vanish. Failures are report content, not errors.
pub fn verify_ideal_closure(alg: &AlgebraPresentation, imax: u32) -> Result<ClosureReport> {
    let evaluator = SqEvaluator::strict(alg);
    let mut checks = Vec::new();
    let mut failures = 0;
    for r in alg.relations() {
        for i in 1..=imax {
            let residue = evaluator.sq_poly(i, r)?.into_constant()?;
            let ok = residue.is_zero();
            if !ok {
                failures += 1;
            }
            checks.push(ClosureCheck {
                relation: r.to_string(),
                i,
                residue: residue.to_string(),
                ok,
            });
        }
    }
    Ok(ClosureReport {
        algebra: alg.name().to_string(),
        imax,
        checks,
        failures,
    })
}
