//! Buchberger completion and normal-form reduction for homogeneous ideals in
//! weighted-graded polynomial rings over F2, together with per-degree
//! standard-monomial bases of the quotient and its Poincare series.

use crate::error::{Error, Result};
use crate::poly::{cmp_monomials, monomials_of_degree, Homogeneity, Monomial, Poly, VarSet};
use crate::series::Series;

/// The canonical order: weighted degree first, reverse-lexicographic
/// tiebreak, with variable precedence given by the variable set's
/// declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    vars: VarSet,
}

impl MonomialOrder {
    pub fn weighted_grevlex(vars: &VarSet) -> MonomialOrder {
        MonomialOrder { vars: vars.clone() }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        cmp_monomials(&self.vars, a, b)
    }
}

/// A reduced Groebner basis. Zero generators are dropped on construction and
/// every input must be homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    generators: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &VarSet {
        self.order.vars()
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial().expect("generators are nonzero"))
            .collect()
    }

    /// True when no leading term divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.generators
            .iter()
            .all(|g| !g.leading_monomial().expect("nonzero").divides(m))
    }
}

/// Runs Buchberger's algorithm (with the coprime-leading-term criterion) and
/// autoreduces the result. Idempotent on its own output.
pub fn buchberger(ideal_gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let vars = order.vars().clone();
    let mut basis: Vec<Poly> = Vec::new();
    for g in ideal_gens {
        vars.ensure_same(g.vars())?;
        if g.is_zero() {
            continue; // harmless degenerate input
        }
        if g.weighted_degree()? == Homogeneity::Inhomogeneous {
            return Err(Error::Inhomogeneous(g.to_string()));
        }
        basis.push(g.clone());
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let lt_i = basis[i].leading_monomial().unwrap().clone();
        let lt_j = basis[j].leading_monomial().unwrap().clone();
        if lt_i.gcd_is_unit(&lt_j) {
            continue;
        }
        let lcm = lt_i.lcm(&lt_j);
        let s = basis[i]
            .mul_monomial(&lt_i.div(&lcm))
            .add(&basis[j].mul_monomial(&lt_j.div(&lcm)))?;
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            for idx in 0..k {
                pairs.push((idx, k));
            }
            basis.push(r);
        }
    }

    autoreduce(&mut basis);
    basis.sort_by(|a, b| {
        order.cmp(
            b.leading_monomial().expect("nonzero"),
            a.leading_monomial().expect("nonzero"),
        )
    });
    Ok(GroebnerBasis {
        order,
        generators: basis,
    })
}

fn autoreduce(basis: &mut Vec<Poly>) {
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let g = basis[i].clone();
            let others: Vec<Poly> = basis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = reduce(&g, &others);
            if r != g {
                changed = true;
                if r.is_zero() {
                    basis.remove(i);
                } else {
                    basis[i] = r;
                }
                break;
            }
        }
        if !changed {
            return;
        }
    }
}

fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let vars = p.vars().clone();
    let mut work = p.clone();
    let mut remainder: Vec<Monomial> = Vec::new();
    'outer: while let Some(lt) = work.leading_monomial().cloned() {
        for g in basis {
            let glt = g.leading_monomial().expect("nonzero");
            if glt.divides(&lt) {
                work = work.add(&g.mul_monomial(&glt.div(&lt))).expect("same vars");
                continue 'outer;
            }
        }
        remainder.push(lt.clone());
        work = work
            .add(&Poly::from_monomial(&vars, lt))
            .expect("same vars");
    }
    Poly::from_terms(&vars, remainder)
}

/// Total reduction modulo the basis: no term of the result is divisible by a
/// leading term. F2-linear and idempotent.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    reduce(p, &gb.generators)
}

/// Per-degree lists of standard monomials of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    degrees: Vec<Vec<Monomial>>,
}

impl QuotientBasis {
    pub fn bound(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn monomials(&self, d: usize) -> &[Monomial] {
        &self.degrees[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees[d].len()
    }

    pub fn series(&self) -> Series {
        Series::from_coeffs(self.degrees.iter().map(|b| b.len() as u64).collect())
    }
}

/// Exponent caps implied by pure-power leading terms; other variables are
/// only bounded by the degree.
fn standard_caps(gb: &GroebnerBasis) -> Vec<u16> {
    let vars = gb.vars();
    let mut caps = vec![u16::MAX; vars.len()];
    for lt in gb.leading_monomials() {
        let support: Vec<usize> = (0..vars.len()).filter(|&i| lt.exp(i) > 0).collect();
        if let [single] = support[..] {
            caps[single] = caps[single].min(lt.exp(single) - 1);
        }
    }
    caps
}

/// Standard monomials of each degree `0..=n`.
pub fn quotient_basis_up_to(gb: &GroebnerBasis, n: usize) -> QuotientBasis {
    let vars = gb.vars();
    let caps = standard_caps(gb);
    let mut degrees = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let ms = monomials_of_degree(vars, d as u32, Some(&caps));
        degrees.push(ms.into_iter().filter(|m| gb.is_standard(m)).collect());
    }
    QuotientBasis { degrees }
}

/// Coefficient `c_d` counts the standard monomials of degree `d`.
pub fn poincare_series(gb: &GroebnerBasis, n: usize) -> Series {
    quotient_basis_up_to(gb, n).series()
}
