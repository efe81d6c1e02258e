//! Dickson invariants of GL(n, F2) inside the rank-n polynomial algebra.
//!
//! The generators come from one uniform construction: expand the orbit
//! product `f(X) = prod_{v in F2^n} (X + v.x)` over all 2^n linear forms and
//! read the coefficient of `X^{2^i}`. Because only two-power exponents of
//! `X` survive, `f` is additive, and the coefficients are the classical
//! invariants of degrees `2^n - 2^i`.
//!
//! The ambient Steenrod action (`Sq^1 x = x^2` on degree-one variables plus
//! the Cartan formula) is computed directly and rewritten in the invariant
//! generators by leading-term elimination, which doubles as a membership
//! check for the invariant subalgebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Monomial, Poly, VarSet};
use crate::steenrod::adem::binom_mod2;
use crate::steenrod::table::{stored_slots, ActionTable, Provenance};

/// The rank, ambient variables, and invariant generators of one system.
#[derive(Clone, Debug)]
pub struct DicksonSystem {
    rank: u32,
    ambient: VarSet,
    /// Invariant generators in ascending degree (`2^n - 2^{n-1}`, ..., `2^n - 1`).
    generators: Vec<Poly>,
    invariant_vars: VarSet,
}

/// Catalog naming: rank 4 gives `u8, u12, u14, u15`; rank 3 gives
/// `d4, d6, d7`; lower ranks use a plain `c<degree>` scheme.
fn generator_name(rank: u32, degree: u32) -> String {
    let prefix = match rank {
        4 => "u",
        3 => "d",
        _ => "c",
    };
    format!("{prefix}{degree}")
}

/// Expands the orbit product; `coeffs[k]` is the coefficient of `X^k`.
fn orbit_product(ambient: &VarSet, rank: u32) -> Vec<Poly> {
    let n = rank as usize;
    let mut coeffs = vec![Poly::one(ambient)];
    for v in 0..(1u32 << n) {
        let mut form = Poly::zero(ambient);
        for j in 0..n {
            if v >> j & 1 == 1 {
                form = form.add(&Poly::var(ambient, j)).expect("same vars");
            }
        }
        let mut next = vec![Poly::zero(ambient); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c).expect("same vars");
            next[k] = next[k]
                .add(&c.mul(&form).expect("same vars"))
                .expect("same vars");
        }
        coeffs = next;
    }
    coeffs
}

/// Builds the rank-`n` system. Desk scale: `1 <= n <= 4`.
pub fn dickson_generators(rank: u32) -> Result<DicksonSystem> {
    if !(1..=4).contains(&rank) {
        return Err(Error::RankOutOfRange(rank));
    }
    let n = rank as usize;
    let ambient = VarSet::new((1..=n).map(|j| (format!("x{j}"), 1)).collect())?;
    let coeffs = orbit_product(&ambient, rank);
    // Additivity of the orbit product: only two-power exponents of X occur.
    for (k, c) in coeffs.iter().enumerate() {
        let is_two_power_slot = k == (1 << n) || (k < (1 << n) && k.is_power_of_two());
        if !is_two_power_slot {
            assert!(
                c.is_zero(),
                "unexpected X^{k} coefficient in the orbit product"
            );
        }
    }
    assert_eq!(
        coeffs[1 << n],
        Poly::one(&ambient),
        "orbit product is monic"
    );
    let mut generators = Vec::new();
    for i in (0..n).rev() {
        generators.push(coeffs[1 << i].clone());
    }
    let degrees: Vec<u32> = (0..n).rev().map(|i| (1u32 << n) - (1 << i)).collect();
    for (g, &d) in generators.iter().zip(&degrees) {
        assert_eq!(g.homogeneous_degree(), Some(d));
    }
    let invariant_vars = VarSet::new(
        degrees
            .iter()
            .map(|&d| (generator_name(rank, d), d))
            .collect(),
    )?;
    Ok(DicksonSystem {
        rank,
        ambient,
        generators,
        invariant_vars,
    })
}

impl DicksonSystem {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn ambient(&self) -> &VarSet {
        &self.ambient
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn invariant_vars(&self) -> &VarSet {
        &self.invariant_vars
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.invariant_vars.len())
            .map(|i| self.invariant_vars.degree(i))
            .collect()
    }

    /// A generating set of GL(n, F2) as substitution images: one transvection
    /// plus permutations.
    fn gl_generators(&self) -> Vec<(String, Vec<Poly>)> {
        let n = self.rank as usize;
        let var = |j: usize| Poly::var(&self.ambient, j);
        let mut out = Vec::new();
        if n == 1 {
            out.push(("identity".to_string(), vec![var(0)]));
            return out;
        }
        // x1 -> x1 + x2 transvection.
        let mut transvection: Vec<Poly> = (0..n).map(var).collect();
        transvection[0] = var(0).add(&var(1)).expect("same vars");
        out.push(("x1 -> x1 + x2".to_string(), transvection));
        // x1 <-> x2 swap.
        let mut swap: Vec<Poly> = (0..n).map(var).collect();
        swap.swap(0, 1);
        out.push(("x1 <-> x2".to_string(), swap));
        if n > 2 {
            // Full cycle x1 -> x2 -> ... -> xn -> x1.
            let cycle: Vec<Poly> = (0..n).map(|j| var((j + 1) % n)).collect();
            out.push(("cycle x1 -> x2 -> ... -> x1".to_string(), cycle));
        }
        out
    }

    /// Checks each generator against the GL(n, F2) generating set.
    pub fn verify_invariance(&self) -> Result<InvarianceReport> {
        let mut checks = Vec::new();
        let mut failures = 0;
        for (label, images) in self.gl_generators() {
            for (gi, g) in self.generators.iter().enumerate() {
                let transformed = g.substitute(&images)?;
                let ok = transformed == *g;
                if !ok {
                    failures += 1;
                }
                checks.push(InvarianceCheck {
                    transformation: label.clone(),
                    generator: self.invariant_vars.name(gi).to_string(),
                    ok,
                });
            }
        }
        Ok(InvarianceReport {
            rank: self.rank,
            checks,
            failures,
        })
    }

    /// `Sq^i` computed in the ambient polynomial algebra and rewritten as a
    /// polynomial in the invariant generators. Fails loudly if the result is
    /// not in the invariant subalgebra.
    pub fn steenrod_on_generator(&self, i: u32, which: usize) -> Result<Poly> {
        let image = ambient_sq(&self.ambient, i, &self.generators[which]);
        self.express(&image)
    }

    /// Rewrites an invariant ambient polynomial in the generators by greedy
    /// elimination of lexicographically-largest terms.
    pub fn express(&self, p: &Poly) -> Result<Poly> {
        if p.is_zero() {
            return Ok(Poly::zero(&self.invariant_vars));
        }
        let degree = match p.homogeneous_degree() {
            Some(d) => d,
            None => return Err(Error::NotInvariant(p.to_string())),
        };
        // All candidate monomials in the generators of this degree, each with
        // its ambient expansion and lex-leading ambient monomial.
        let candidates = monomials_of_degree(&self.invariant_vars, degree, None);
        let mut table: Vec<(Monomial, Poly, Monomial)> = Vec::new();
        for cand in candidates {
            let mut expansion = Poly::one(&self.ambient);
            for (gi, &e) in cand.exps().iter().enumerate() {
                if e > 0 {
                    expansion = expansion.mul(&self.generators[gi].pow(e)?)?;
                }
            }
            let lead = lex_leading(&self.ambient, &expansion).expect("nonzero expansion");
            if table.iter().any(|(_, _, l)| *l == lead) {
                return Err(Error::NotInvariant(format!(
                    "leading-term table degenerate at degree {degree}"
                )));
            }
            table.push((cand, expansion, lead));
        }
        let mut work = p.clone();
        let mut result_terms = Vec::new();
        while !work.is_zero() {
            let lead = lex_leading(&self.ambient, &work).expect("nonzero");
            let Some((cand, expansion, _)) = table.iter().find(|(_, _, l)| *l == lead) else {
                return Err(Error::NotInvariant(p.to_string()));
            };
            result_terms.push(cand.clone());
            work = work.add(expansion)?;
        }
        Ok(Poly::from_terms(&self.invariant_vars, result_terms))
    }

    /// The full stored action table (every `Sq^{2^j}` below each degree),
    /// recomputed ambiently.
    pub fn action_table(&self) -> Result<ActionTable> {
        let mut table = ActionTable::new();
        for gi in 0..self.generators.len() {
            let dg = self.invariant_vars.degree(gi);
            for i in stored_slots(dg) {
                let value = self.steenrod_on_generator(i, gi)?;
                table.set(
                    gi,
                    i,
                    value,
                    Provenance::Given {
                        source: "ambient Dickson computation".to_string(),
                    },
                );
            }
        }
        Ok(table)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceCheck {
    pub transformation: String,
    pub generator: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub rank: u32,
    pub checks: Vec<InvarianceCheck>,
    pub failures: usize,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Largest monomial in plain lexicographic order (precedence order of the
/// variable set, ignoring weights).
fn lex_leading(vars: &VarSet, p: &Poly) -> Option<Monomial> {
    p.terms()
        .iter()
        .max_by(|a, b| {
            for j in 0..vars.len() {
                match a.exp(j).cmp(&b.exp(j)) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            std::cmp::Ordering::Equal
        })
        .cloned()
}

/// `Sq^i` on a polynomial in degree-one variables: the total square of each
/// variable is `x + x^2`, so a monomial expands through per-variable
/// binomials (mod 2 by Lucas).
pub fn ambient_sq(vars: &VarSet, i: u32, p: &Poly) -> Poly {
    let mut terms: Vec<Monomial> = Vec::new();
    for m in p.terms() {
        ambient_sq_monomial(vars, i, m, &mut terms);
    }
    Poly::from_terms(vars, terms)
}

fn ambient_sq_monomial(vars: &VarSet, i: u32, m: &Monomial, out: &mut Vec<Monomial>) {
    fn recurse(
        exps: &[u16],
        j: usize,
        remaining: u32,
        acc: &mut Vec<u16>,
        out: &mut Vec<Monomial>,
        vars: &VarSet,
    ) {
        if j == exps.len() {
            if remaining == 0 {
                out.push(Monomial::from_exps(vars, acc.clone()));
            }
            return;
        }
        let e = exps[j];
        let max = (e as u32).min(remaining);
        for k in 0..=max {
            if binom_mod2(e as i64, k as i64) {
                acc.push(e + k as u16);
                recurse(exps, j + 1, remaining - k, acc, out, vars);
                acc.pop();
            }
        }
    }
    let mut acc = Vec::with_capacity(vars.len());
    recurse(m.exps(), 0, i, &mut acc, out, vars);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn rank_1_is_the_single_variable() {
        let sys = dickson_generators(1).unwrap();
        assert_eq!(sys.degrees(), vec![1]);
        assert_eq!(sys.generators()[0], Poly::var(sys.ambient(), 0));
    }

    #[test]
    fn rank_2_matches_the_hand_expansion() {
        let sys = dickson_generators(2).unwrap();
        assert_eq!(sys.degrees(), vec![2, 3]);
        let amb = sys.ambient();
        assert_eq!(
            sys.generators()[0],
            parse_poly(amb, "x1^2 + x1*x2 + x2^2").unwrap()
        );
        assert_eq!(
            sys.generators()[1],
            parse_poly(amb, "x1^2*x2 + x1*x2^2").unwrap()
        );
    }

    #[test]
    fn ranks_3_and_4_have_the_classical_degrees() {
        assert_eq!(dickson_generators(3).unwrap().degrees(), vec![4, 6, 7]);
        assert_eq!(
            dickson_generators(4).unwrap().degrees(),
            vec![8, 12, 14, 15]
        );
        assert!(matches!(
            dickson_generators(0),
            Err(Error::RankOutOfRange(0))
        ));
        assert!(matches!(
            dickson_generators(5),
            Err(Error::RankOutOfRange(5))
        ));
    }

    #[test]
    fn invariance_under_gl_generators() {
        for rank in 1..=4 {
            let sys = dickson_generators(rank).unwrap();
            let report = sys.verify_invariance().unwrap();
            assert!(report.passed(), "rank {rank}: {:?}", report.checks);
        }
    }

    #[test]
    fn rank_2_steenrod_action() {
        let sys = dickson_generators(2).unwrap();
        // Sq1 c2 = c3: Sq1(x1^2 + x1 x2 + x2^2) = x1^2 x2 + x1 x2^2.
        let v = sys.steenrod_on_generator(1, 0).unwrap();
        assert_eq!(v.to_string(), "c3");
    }

    #[test]
    fn rank_3_and_4_listed_action_values() {
        let sys3 = dickson_generators(3).unwrap();
        assert_eq!(sys3.steenrod_on_generator(2, 0).unwrap().to_string(), "d6");
        assert_eq!(sys3.steenrod_on_generator(1, 1).unwrap().to_string(), "d7");
        let sys4 = dickson_generators(4).unwrap();
        assert_eq!(sys4.steenrod_on_generator(4, 0).unwrap().to_string(), "u12");
        assert_eq!(sys4.steenrod_on_generator(2, 1).unwrap().to_string(), "u14");
        assert_eq!(sys4.steenrod_on_generator(1, 2).unwrap().to_string(), "u15");
    }

    #[test]
    fn expressing_a_non_invariant_fails() {
        let sys = dickson_generators(2).unwrap();
        let p = Poly::var(sys.ambient(), 0);
        assert!(matches!(sys.express(&p), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn full_rank_3_orbit_check() {
        // Every element of GL(3, F2) fixes the generators; 168 elements.
        let sys = dickson_generators(3).unwrap();
        let amb = sys.ambient();
        let mut count = 0;
        for bits in 0..512u32 {
            let rows: Vec<u16> = (0..3).map(|r| ((bits >> (3 * r)) & 7) as u16).collect();
            let m = |r: usize, c: usize| (rows[r] >> c) & 1;
            let det = (m(0, 0) & (m(1, 1) & m(2, 2) ^ m(1, 2) & m(2, 1)))
                ^ (m(0, 1) & (m(1, 0) & m(2, 2) ^ m(1, 2) & m(2, 0)))
                ^ (m(0, 2) & (m(1, 0) & m(2, 1) ^ m(1, 1) & m(2, 0)));
            if det != 1 {
                continue;
            }
            count += 1;
            let images: Vec<Poly> = (0..3)
                .map(|c| {
                    let mut acc = Poly::zero(amb);
                    for r in 0..3 {
                        if m(r, c) == 1 {
                            acc = acc.add(&Poly::var(amb, r)).unwrap();
                        }
                    }
                    acc
                })
                .collect();
            for g in sys.generators() {
                assert_eq!(&g.substitute(&images).unwrap(), g);
            }
        }
        assert_eq!(count, 168);
    }

    #[test]
    fn ambient_action_table_is_complete() {
        let sys = dickson_generators(3).unwrap();
        let table = sys.action_table().unwrap();
        assert!(table.is_complete(sys.invariant_vars()));
    }
}
