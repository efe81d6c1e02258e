//! Action tables: the stored values `Sq^{2^j}` on algebra generators.
//!
//! Only power-of-two slots below the generator degree are stored; every
//! other square on a generator is decomposable via Adem relations, the top
//! square is the Frobenius square, and squares above the degree vanish.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{Poly, VarSet};

/// Where a stored value came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Part of the catalog's input data.
    Given { source: String },
    /// Derived by the completion engine; the rule records how.
    Forced { rule: String },
    /// Supplied from outside the constraint system, with a note saying why.
    External { note: String },
}

impl Provenance {
    pub fn describe(&self) -> String {
        match self {
            Provenance::Given { source } => format!("given ({source})"),
            Provenance::Forced { rule } => format!("forced ({rule})"),
            Provenance::External { note } => format!("external ({note})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub value: Poly,
    pub provenance: Provenance,
}

/// Status of a slot `(generator, 2^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlotStatus {
    Given,
    Forced,
    External,
    Undetermined,
}

/// Mapping `(generator index, i) -> Sq^i(generator)` for the stored slots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionTable {
    entries: BTreeMap<(usize, u32), TableEntry>,
}

/// The power-of-two slots `2^j < degree` that an action table stores for a
/// generator of the given degree.
pub fn stored_slots(degree: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut i = 1;
    while i < degree {
        out.push(i);
        i *= 2;
    }
    out
}

impl ActionTable {
    pub fn new() -> ActionTable {
        ActionTable::default()
    }

    pub fn set(&mut self, gen: usize, i: u32, value: Poly, provenance: Provenance) {
        assert!(i.is_power_of_two(), "only Sq^(2^j) slots are stored");
        self.entries
            .insert((gen, i), TableEntry { value, provenance });
    }

    pub fn get(&self, gen: usize, i: u32) -> Option<&TableEntry> {
        self.entries.get(&(gen, i))
    }

    pub fn status(&self, gen: usize, i: u32) -> SlotStatus {
        match self.entries.get(&(gen, i)) {
            None => SlotStatus::Undetermined,
            Some(e) => match e.provenance {
                Provenance::Given { .. } => SlotStatus::Given,
                Provenance::Forced { .. } => SlotStatus::Forced,
                Provenance::External { .. } => SlotStatus::External,
            },
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, u32), &TableEntry)> {
        self.entries.iter()
    }

    /// Slots required by `vars` that have no stored value yet.
    pub fn missing_slots(&self, vars: &VarSet) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (g, var) in vars.vars().iter().enumerate() {
            for i in stored_slots(var.degree) {
                if !self.entries.contains_key(&(g, i)) {
                    out.push((g, i));
                }
            }
        }
        out
    }

    pub fn is_complete(&self, vars: &VarSet) -> bool {
        self.missing_slots(vars).is_empty()
    }

    pub fn render(&self, vars: &VarSet) -> String {
        let mut lines = Vec::new();
        for (&(g, i), entry) in &self.entries {
            lines.push(format!(
                "Sq{} {} = {}  [{}]",
                i,
                vars.name(g),
                entry.value,
                entry.provenance.describe()
            ));
        }
        lines.join("\n")
    }
}

impl fmt::Display for SlotStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SlotStatus::Given => "given",
            SlotStatus::Forced => "forced",
            SlotStatus::External => "external",
            SlotStatus::Undetermined => "undetermined",
        };
        write!(f, "{s}")
    }
}
