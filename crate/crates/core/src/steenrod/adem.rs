//! Formal F2-sums of composites of Steenrod squares and their Adem
//! normalization into the admissible basis.
//!
//! A composite `Sq^{i1} ... Sq^{ik}` is stored outermost-first, matching the
//! usual notation: `Sq2 Sq4` applies `Sq4` first. It is admissible when
//! `i_j >= 2 i_{j+1}` throughout; admissible composites form an additive
//! basis, so normalization gives canonical representatives.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// `binom(n, k) mod 2` by Lucas' theorem: odd exactly when the bits of `k`
/// are contained in the bits of `n`.
pub fn binom_mod2(n: i64, k: i64) -> bool {
    if k < 0 || n < 0 || k > n {
        return false;
    }
    (n as u64) & (k as u64) == k as u64
}

/// A single composite of squares, outermost first, with no `Sq^0` entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composite(Vec<u32>);

impl Composite {
    /// The empty composite is the identity operation.
    pub fn identity() -> Composite {
        Composite(Vec::new())
    }

    pub fn new(indices: Vec<u32>) -> Composite {
        assert!(
            indices.iter().all(|&i| i > 0),
            "Sq^0 is the identity; omit it"
        );
        Composite(indices)
    }

    pub fn single(i: u32) -> Composite {
        Composite::new(vec![i])
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Excess `i1 - (i2 + ... + ik)` of an admissible monomial.
    pub fn excess(&self) -> i64 {
        match self.0.split_first() {
            None => 0,
            Some((&first, rest)) => first as i64 - rest.iter().map(|&i| i as i64).sum::<i64>(),
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// Composition `self` after `other`.
    pub fn compose(&self, other: &Composite) -> Composite {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composite(v)
    }
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("Sq{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A formal F2-sum of composites.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SteenrodElement {
    terms: BTreeSet<Composite>,
}

impl SteenrodElement {
    pub fn zero() -> SteenrodElement {
        SteenrodElement::default()
    }

    pub fn identity() -> SteenrodElement {
        SteenrodElement::from_composite(Composite::identity())
    }

    pub fn from_composite(c: Composite) -> SteenrodElement {
        let mut terms = BTreeSet::new();
        terms.insert(c);
        SteenrodElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Composite> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn toggle(&mut self, c: Composite) {
        if !self.terms.remove(&c) {
            self.terms.insert(c);
        }
    }

    pub fn add(&self, other: &SteenrodElement) -> SteenrodElement {
        let mut out = self.clone();
        for c in &other.terms {
            out.toggle(c.clone());
        }
        out
    }

    pub fn compose(&self, other: &SteenrodElement) -> SteenrodElement {
        let mut out = SteenrodElement::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.compose(b));
            }
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.iter().all(Composite::is_admissible)
    }

    /// Common degree of all terms, when homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(Composite::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Largest degree first, then reverse lexicographic on indices.
        let mut sorted: Vec<&Composite> = self.terms.iter().collect();
        sorted.sort_by(|a, b| {
            b.degree()
                .cmp(&a.degree())
                .then_with(|| b.indices().cmp(a.indices()))
        });
        let parts: Vec<String> = sorted.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The Adem relation for `Sq^a Sq^b` with `a < 2b`: pairs `(outer, inner)`
/// with `inner == 0` meaning a single square `Sq^outer`.
pub fn adem_pair(a: u32, b: u32) -> Vec<(u32, u32)> {
    debug_assert!(a < 2 * b);
    let mut out = Vec::new();
    for c in 0..=(a / 2) {
        if binom_mod2(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
            out.push((a + b - c, c));
        }
    }
    out
}

fn normalize_composite(
    indices: &[u32],
    cache: &mut HashMap<Vec<u32>, SteenrodElement>,
) -> SteenrodElement {
    if let Some(hit) = cache.get(indices) {
        return hit.clone();
    }
    let position = indices.windows(2).position(|w| w[0] < 2 * w[1]);
    let result = match position {
        None => SteenrodElement::from_composite(Composite::new(indices.to_vec())),
        Some(j) => {
            let (a, b) = (indices[j], indices[j + 1]);
            let mut acc = SteenrodElement::zero();
            for (outer, inner) in adem_pair(a, b) {
                let mut replacement = indices[..j].to_vec();
                replacement.push(outer);
                if inner > 0 {
                    replacement.push(inner);
                }
                replacement.extend_from_slice(&indices[j + 2..]);
                acc = acc.add(&normalize_composite(&replacement, cache));
            }
            acc
        }
    };
    cache.insert(indices.to_vec(), result.clone());
    result
}

/// Rewrites every term into admissible form. Degree-preserving and
/// idempotent; coefficients are evaluated mod 2 throughout.
pub fn adem_normalize(e: &SteenrodElement) -> SteenrodElement {
    let mut cache = HashMap::new();
    let mut out = SteenrodElement::zero();
    for c in e.terms() {
        out = out.add(&normalize_composite(c.indices(), &mut cache));
    }
    out
}

/// Parses the whitespace-separated composite syntax, e.g. `Sq2 Sq4`
/// (apply `Sq4` first). `1` denotes the identity, `0` the zero element.
pub fn parse_composite(text: &str) -> Result<SteenrodElement> {
    let trimmed = text.trim();
    if trimmed == "0" {
        return Ok(SteenrodElement::zero());
    }
    if trimmed == "1" {
        return Ok(SteenrodElement::identity());
    }
    let mut acc = SteenrodElement::zero();
    for summand in trimmed.split('+') {
        let mut indices = Vec::new();
        let mut tokens = 0usize;
        for token in summand.split_whitespace() {
            let pos = token.as_ptr() as usize - text.as_ptr() as usize;
            let rest = token
                .strip_prefix("Sq")
                .ok_or_else(|| Error::parse(pos, format!("expected Sq<i>, got `{token}`")))?;
            let i: u32 = rest
                .parse()
                .map_err(|_| Error::parse(pos, format!("expected Sq<i>, got `{token}`")))?;
            tokens += 1;
            if i > 0 {
                indices.push(i);
            }
        }
        if tokens == 0 {
            return Err(Error::parse(0, "empty composite summand"));
        }
        acc.toggle(Composite::new(indices));
    }
    Ok(acc)
}
