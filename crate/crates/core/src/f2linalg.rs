//! Dense bit-packed linear algebra over F2.
//!
//! Small degreewise systems only: rows are `Vec<u64>` bitsets, elimination is
//! plain Gaussian. Systems track which input equations were combined into
//! each reduced row so consumers can report why a variable was pinned.

/// A bit vector of fixed width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
    width: usize,
}

impl BitRow {
    pub fn zero(width: usize) -> BitRow {
        BitRow {
            words: vec![0; width.div_ceil(64)],
            width,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.width);
        let (w, b) = (i / 64, i % 64);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn get(&self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        self.words[w] >> b & 1 == 1
    }

    pub fn toggle(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        self.words[w] ^= 1 << b;
    }

    pub fn xor_in(&mut self, other: &BitRow) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(|&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Rank of a list of rows (each of the same width); consumes a working copy.
pub fn rank(rows: &[BitRow]) -> usize {
    let mut basis: Vec<BitRow> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for b in &basis {
            if let Some(p) = b.first_set() {
                if r.get(p) {
                    r.xor_in(b);
                }
            }
        }
        if !r.is_zero() {
            basis.push(r);
        }
    }
    basis.len()
}

/// Is `target` in the F2 span of `rows`?
pub fn in_span(rows: &[BitRow], target: &BitRow) -> bool {
    let mut basis: Vec<BitRow> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for b in &basis {
            if let Some(p) = b.first_set() {
                if r.get(p) {
                    r.xor_in(b);
                }
            }
        }
        if !r.is_zero() {
            basis.push(r);
        }
    }
    let mut t = target.clone();
    for b in &basis {
        if let Some(p) = b.first_set() {
            if t.get(p) {
                t.xor_in(b);
            }
        }
    }
    t.is_zero()
}

/// Solve for a particular combination: returns coefficients over `rows`
/// expressing `target`, if any.
pub fn express_in_span(rows: &[BitRow], target: &BitRow) -> Option<Vec<bool>> {
    // Augment each row with the indicator showing which inputs were combined.
    let n = rows.len();
    let mut basis: Vec<(BitRow, BitRow)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        let mut combo = BitRow::zero(n.max(1));
        combo.set(i, true);
        for (b, c) in &basis {
            if let Some(p) = b.first_set() {
                if r.get(p) {
                    r.xor_in(b);
                    combo.xor_in(c);
                }
            }
        }
        if !r.is_zero() {
            basis.push((r, combo));
        }
    }
    let mut t = target.clone();
    let mut combo = BitRow::zero(n.max(1));
    for (b, c) in &basis {
        if let Some(p) = b.first_set() {
            if t.get(p) {
                t.xor_in(b);
                combo.xor_in(c);
            }
        }
    }
    if t.is_zero() {
        Some((0..n).map(|i| combo.get(i)).collect())
    } else {
        None
    }
}

/// An affine-linear system `A x = b` over F2 with labelled equations.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    rows: Vec<SysRow>,
}

#[derive(Clone, Debug)]
struct SysRow {
    coeffs: BitRow,
    rhs: bool,
    /// Labels of the source equations combined into this row.
    labels: Vec<String>,
}

/// Outcome of solving a [`LinearSystem`].
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    /// `0 = 1` was derived; the labels identify the offending combination.
    Inconsistent {
        labels: Vec<String>,
    },
    Solved(Solution),
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Per unknown: `Some(value)` when uniquely determined, `None` when free
    /// or dependent on a free unknown.
    pub determined: Vec<Option<bool>>,
    /// For each determined unknown, the labels of equations that pin it.
    pub support: Vec<Vec<String>>,
    pub rank: usize,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> LinearSystem {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equation_count(&self) -> usize {
        self.rows.len()
    }

    pub fn add_equation(
        &mut self,
        coeffs: impl IntoIterator<Item = usize>,
        rhs: bool,
        label: impl Into<String>,
    ) {
        let mut row = BitRow::zero(self.unknowns.max(1));
        for i in coeffs {
            row.toggle(i);
        }
        self.rows.push(SysRow {
            coeffs: row,
            rhs,
            labels: vec![label.into()],
        });
    }

    pub fn solve(&self) -> SolveOutcome {
        let mut reduced: Vec<SysRow> = Vec::new();
        for row in &self.rows {
            let mut r = row.clone();
            for b in &reduced {
                if let Some(p) = b.coeffs.first_set() {
                    if r.coeffs.get(p) {
                        r.coeffs.xor_in(&b.coeffs);
                        r.rhs ^= b.rhs;
                        r.labels.extend(b.labels.iter().cloned());
                    }
                }
            }
            if r.coeffs.is_zero() {
                if r.rhs {
                    r.labels.sort();
                    r.labels.dedup();
                    return SolveOutcome::Inconsistent { labels: r.labels };
                }
            } else {
                reduced.push(r);
            }
        }
        // Back-substitute to reduced row echelon form.
        reduced.sort_by_key(|r| r.coeffs.first_set());
        let n = reduced.len();
        for i in (0..n).rev() {
            let pivot = reduced[i].coeffs.first_set().expect("nonzero row");
            for j in 0..i {
                if reduced[j].coeffs.get(pivot) {
                    let (left, right) = reduced.split_at_mut(i);
                    let (rj, ri) = (&mut left[j], &right[0]);
                    rj.coeffs.xor_in(&ri.coeffs);
                    rj.rhs ^= ri.rhs;
                    rj.labels.extend(ri.labels.iter().cloned());
                }
            }
        }
        let mut determined = vec![None; self.unknowns];
        let mut support = vec![Vec::new(); self.unknowns];
        for r in &reduced {
            let pivot = r.coeffs.first_set().expect("nonzero row");
            if r.coeffs.count_ones() == 1 {
                determined[pivot] = Some(r.rhs);
                let mut labels = r.labels.clone();
                labels.sort();
                labels.dedup();
                support[pivot] = labels;
            }
        }
        SolveOutcome::Solved(Solution {
            determined,
            support,
            rank: n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_small_determined_system() {
        // x0 + x1 = 1, x1 = 1, x2 free
        let mut sys = LinearSystem::new(3);
        sys.add_equation([0, 1], true, "e1");
        sys.add_equation([1], true, "e2");
        match sys.solve() {
            SolveOutcome::Solved(sol) => {
                assert_eq!(sol.determined, vec![Some(false), Some(true), None]);
                assert_eq!(sol.rank, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_inconsistency_with_labels() {
        let mut sys = LinearSystem::new(1);
        sys.add_equation([0], true, "a");
        sys.add_equation([0], false, "b");
        match sys.solve() {
            SolveOutcome::Inconsistent { labels } => {
                assert_eq!(labels, vec!["a".to_string(), "b".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank_and_span() {
        let mut r1 = BitRow::zero(4);
        r1.set(0, true);
        r1.set(2, true);
        let mut r2 = BitRow::zero(4);
        r2.set(2, true);
        let rows = vec![r1.clone(), r2.clone()];
        assert_eq!(rank(&rows), 2);
        let mut t = BitRow::zero(4);
        t.set(0, true);
        assert!(in_span(&rows, &t));
        let combo = express_in_span(&rows, &t).unwrap();
        assert_eq!(combo, vec![true, true]);
        t.set(3, true);
        assert!(!in_span(&rows, &t));
    }
}
