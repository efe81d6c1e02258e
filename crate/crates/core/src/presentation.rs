//! A finitely presented graded algebra with a stored Steenrod action:
//! generators with degrees, homogeneous ideal generators, and an action
//! table. Construction computes the reduced Groebner basis once; everything
//! downstream (normal forms, quotient bases, square evaluation) reads it.

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, normal_form, quotient_basis_up_to, GroebnerBasis, MonomialOrder,
};
use crate::poly::{monomials_of_degree, Homogeneity, Monomial, Poly, VarSet};
use crate::steenrod::table::ActionTable;

#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    name: String,
    vars: VarSet,
    relations: Vec<Poly>,
    gb: GroebnerBasis,
    table: ActionTable,
}

impl AlgebraPresentation {
    pub fn new(
        name: impl Into<String>,
        vars: VarSet,
        relations: Vec<Poly>,
        table: ActionTable,
    ) -> Result<AlgebraPresentation> {
        let gb = buchberger(&relations, MonomialOrder::weighted_grevlex(&vars))?;
        let presentation = AlgebraPresentation {
            name: name.into(),
            vars,
            relations,
            gb,
            table,
        };
        presentation.validate_table()?;
        Ok(presentation)
    }

    fn validate_table(&self) -> Result<()> {
        for (&(g, i), entry) in self.table.iter() {
            let dg = self.vars.degree(g);
            if i >= dg {
                return Err(Error::InvalidVariable(format!(
                    "stored slot Sq{i} {} at or above the generator degree {dg}",
                    self.vars.name(g)
                )));
            }
            if !entry.value.is_zero() {
                match entry.value.weighted_degree()? {
                    Homogeneity::Homogeneous(d) if d == dg + i => {}
                    _ => {
                        return Err(Error::InvalidVariable(format!(
                            "Sq{i} {} = {} is not homogeneous of degree {}",
                            self.vars.name(g),
                            entry.value,
                            dg + i
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn table(&self) -> &ActionTable {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut ActionTable {
        &mut self.table
    }

    pub fn replace_table(&mut self, table: ActionTable) {
        self.table = table;
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        normal_form(p, &self.gb)
    }

    /// Standard monomials of one degree.
    pub fn basis_of_degree(&self, d: u32) -> Vec<Monomial> {
        let caps = self.standard_caps();
        monomials_of_degree(&self.vars, d, Some(&caps))
            .into_iter()
            .filter(|m| self.gb.is_standard(m))
            .collect()
    }

    /// Exponent caps implied by pure-power leading terms of the ideal.
    pub fn standard_caps(&self) -> Vec<u16> {
        let mut caps = vec![u16::MAX; self.vars.len()];
        for lt in self.gb.leading_monomials() {
            let support: Vec<usize> = (0..self.vars.len()).filter(|&i| lt.exp(i) > 0).collect();
            if let [single] = support[..] {
                caps[single] = caps[single].min(lt.exp(single) - 1);
            }
        }
        caps
    }

    pub fn quotient_basis(&self, n: usize) -> crate::groebner::QuotientBasis {
        quotient_basis_up_to(&self.gb, n)
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.vars.index_of(name)
    }
}
