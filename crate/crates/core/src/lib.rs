//! An exact symbolic engine for finitely presented unstable algebras over
//! the mod-2 Steenrod algebra.
//!
//! The crate provides weighted-graded polynomial arithmetic over F2, Groebner
//! normal forms and quotient bases, Adem normalization and Cartan evaluation
//! of Steenrod squares, Dickson invariants with their ambient Steenrod
//! action, an F2 coefficient solver for relation ansatzes, Bockstein
//! spectral-sequence pages, and a catalog of presented cohomology rings with
//! a one-command verification sweep.

pub mod bockstein;
pub mod catalog;
pub mod dickson;
pub mod error;
pub mod f2linalg;
pub mod groebner;
pub mod poly;
pub mod presentation;
pub mod series;
pub mod solver;
pub mod steenrod;

pub use error::{Error, Result};
pub use groebner::{buchberger, normal_form, poincare_series, quotient_basis_up_to};
pub use groebner::{GroebnerBasis, MonomialOrder, QuotientBasis};
pub use poly::{monomials_of_degree, parse_poly, Homogeneity, Monomial, Poly, VarSet, Variable};
pub use presentation::AlgebraPresentation;
pub use series::{factor_series, Series, TensorFactor};
