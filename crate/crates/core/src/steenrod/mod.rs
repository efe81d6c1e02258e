//! The mod-2 Steenrod operations: Adem normalization of composites,
//! Cartan-formula evaluation on a presented algebra, the unstable axioms,
//! ideal-closure verification, and completion of partial action tables.

pub mod adem;
pub mod complete;
pub mod eval;
pub mod table;

pub use adem::{adem_normalize, binom_mod2, parse_composite, Composite, SteenrodElement};
pub use complete::{complete_action, Completion, CompletionReport};
pub use eval::{
    apply_composite, apply_element, decomposition_string, sq, verify_ideal_closure, ClosureReport,
    SqEvaluator, SymPoly, UnknownSpace,
};
pub use table::{stored_slots, ActionTable, Provenance, SlotStatus, TableEntry};

#[cfg(test)]
mod tests;
