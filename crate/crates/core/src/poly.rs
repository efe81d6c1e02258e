//! Exact multivariate polynomials over F2 with weighted-graded variables.
//!
//! A variable carries a positive integer weight (its cohomological degree).
//! Coefficients are implicit: a polynomial is a finite set of monomials, and
//! addition is symmetric difference. There is no sign bookkeeping anywhere;
//! in characteristic 2 graded-commutative means commutative.
//!
//! Terms are kept sorted in the canonical monomial order (weighted degree
//! first, reverse-lexicographic tiebreak on the variable precedence), largest
//! term first, so equal polynomials are structurally equal and printing is
//! deterministic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A graded variable: short identifier plus positive weight.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug)]
struct VarSetInner {
    /// Variables in precedence order (largest first for the tiebreak).
    vars: Vec<Variable>,
    by_name: HashMap<String, usize>,
    /// Indices sorted by natural name order, used for printing factors.
    display_order: Vec<usize>,
}

/// An ordered set of graded variables. The declaration order is the
/// precedence used by the monomial order; printing uses natural name order
/// (`u8` before `u12` before `y7`) so rendered polynomials read like the
/// catalog entries.
#[derive(Clone, Debug)]
pub struct VarSet(Arc<VarSetInner>);

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.vars == other.0.vars
    }
}

impl Eq for VarSet {}

/// Natural ordering for identifiers: alphabetic prefix first, then the
/// numeric suffix by value, so `u8 < u12 < u14 < y7 < y11`.
pub fn natural_name_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let suffix = &s[cut..];
        (&s[..cut], suffix.parse().ok())
    }
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    pa.cmp(pb)
        .then_with(|| na.unwrap_or(0).cmp(&nb.unwrap_or(0)))
        .then_with(|| a.cmp(b))
}

impl VarSet {
    /// Builds a variable set from `(name, degree)` pairs given in precedence
    /// order. Names must be unique and degrees at least 1.
    pub fn new<S: Into<String>>(vars: Vec<(S, u32)>) -> Result<VarSet> {
        let vars: Vec<Variable> = vars
            .into_iter()
            .map(|(name, degree)| Variable {
                name: name.into(),
                degree,
            })
            .collect();
        let mut by_name = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if v.degree == 0 {
                return Err(Error::InvalidVariable(format!(
                    "variable {} has degree 0; degrees must be positive",
                    v.name
                )));
            }
            if by_name.insert(v.name.clone(), i).is_some() {
                return Err(Error::InvalidVariable(format!(
                    "duplicate variable name {}",
                    v.name
                )));
            }
        }
        let mut display_order: Vec<usize> = (0..vars.len()).collect();
        display_order.sort_by(|&i, &j| natural_name_cmp(&vars[i].name, &vars[j].name));
        Ok(VarSet(Arc::new(VarSetInner {
            vars,
            by_name,
            display_order,
        })))
    }

    pub fn len(&self) -> usize {
        self.0.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.0.vars
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.vars[index].name
    }

    pub fn degree(&self, index: usize) -> u32 {
        self.0.vars[index].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.by_name.get(name).copied()
    }

    fn display_order(&self) -> &[usize] {
        &self.0.display_order
    }

    fn describe(&self) -> String {
        let names: Vec<&str> = self.0.vars.iter().map(|v| v.name.as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Checks compatibility for arithmetic between two polynomials.
    pub fn ensure_same(&self, other: &VarSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::VarSetMismatch(self.describe(), other.describe()))
        }
    }
}

/// Dense exponent vector over a [`VarSet`]. The all-zero vector is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn unit(vars: &VarSet) -> Monomial {
        Monomial {
            exps: vec![0; vars.len()],
        }
    }

    pub fn from_exps(vars: &VarSet, exps: Vec<u16>) -> Monomial {
        assert_eq!(exps.len(), vars.len(), "exponent vector width mismatch");
        Monomial { exps }
    }

    /// Single variable to a power.
    pub fn var_pow(vars: &VarSet, index: usize, exp: u16) -> Monomial {
        let mut m = Monomial::unit(vars);
        m.exps[index] = exp;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u16 {
        self.exps[index]
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, vars: &VarSet) -> u32 {
        self.exps
            .iter()
            .zip(vars.vars())
            .map(|(&e, v)| e as u32 * v.degree)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// Quotient `other / self`; caller must check divisibility first.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(&a, &b)| a - b)
            .collect();
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial { exps }
    }

    pub fn gcd_is_unit(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a.min(b) == 0)
    }

    /// True when every exponent is even, i.e. the monomial is a square.
    pub fn is_square(&self) -> bool {
        self.exps.iter().all(|&e| e % 2 == 0)
    }

    pub fn sqrt(&self) -> Monomial {
        debug_assert!(self.is_square());
        Monomial {
            exps: self.exps.iter().map(|&e| e / 2).collect(),
        }
    }

    pub fn square(&self) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&e| e.checked_mul(2).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn display(&self, vars: &VarSet) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for &i in vars.display_order() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(vars.name(i).to_string()),
                e => parts.push(format!("{}^{}", vars.name(i), e)),
            }
        }
        parts.join("*")
    }
}

/// Canonical monomial order: weighted degree first, then reverse
/// lexicographic with respect to the variable precedence (`m` beats `m'`
/// when the last nonzero entry of `exp(m) - exp(m')` is negative).
pub fn cmp_monomials(vars: &VarSet, a: &Monomial, b: &Monomial) -> Ordering {
    let da = a.weighted_degree(vars);
    let db = b.weighted_degree(vars);
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for j in (0..vars.len()).rev() {
        let d = a.exps[j] as i32 - b.exps[j] as i32;
        if d != 0 {
            return if d < 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

/// Homogeneity of a nonzero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(u32),
    Inhomogeneous,
}

/// An F2 polynomial: a set of monomials over a shared variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    /// Strictly descending in the canonical order.
    terms: Vec<Monomial>,
}

impl Poly {
    pub fn zero(vars: &VarSet) -> Poly {
        Poly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Poly {
        Poly::from_monomial(vars, Monomial::unit(vars))
    }

    pub fn from_monomial(vars: &VarSet, m: Monomial) -> Poly {
        Poly {
            vars: vars.clone(),
            terms: vec![m],
        }
    }

    pub fn var(vars: &VarSet, index: usize) -> Poly {
        Poly::from_monomial(vars, Monomial::var_pow(vars, index, 1))
    }

    /// Builds a polynomial from arbitrary monomials, cancelling duplicate
    /// pairs (F2 semantics) and sorting canonically.
    pub fn from_terms(vars: &VarSet, mut terms: Vec<Monomial>) -> Poly {
        terms.sort_by(|a, b| cmp_monomials(vars, b, a));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for m in terms {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        Poly {
            vars: vars.clone(),
            terms: out,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Leading monomial in the canonical order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.iter().any(|t| t == m)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match cmp_monomials(&self.vars, &self.terms[i], &other.terms[j]) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Poly {
            vars: self.vars.clone(),
            terms: out,
        })
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.vars.ensure_same(&other.vars)?;
        let mut parity: HashMap<Monomial, bool> = HashMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let e = parity.entry(a.mul(b)).or_insert(false);
                *e = !*e;
            }
        }
        let terms = parity
            .into_iter()
            .filter(|(_, p)| *p)
            .map(|(m, _)| m)
            .collect();
        Ok(Poly::from_terms(&self.vars, terms))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        // Multiplication by a monomial preserves the term order.
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    /// Frobenius square; additive in characteristic 2.
    pub fn square(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|t| t.square()).collect(),
        }
    }

    pub fn pow(&self, e: u16) -> Result<Poly> {
        let mut acc = Poly::one(&self.vars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Common weighted degree of all terms, or the inhomogeneous marker.
    /// The zero polynomial has no degree.
    pub fn weighted_degree(&self) -> Result<Homogeneity> {
        let first = self.terms.first().ok_or(Error::ZeroDegree)?;
        let d = first.weighted_degree(&self.vars);
        for t in &self.terms[1..] {
            if t.weighted_degree(&self.vars) != d {
                return Ok(Homogeneity::Inhomogeneous);
            }
        }
        Ok(Homogeneity::Homogeneous(d))
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.weighted_degree() {
            Ok(Homogeneity::Homogeneous(d)) => Some(d),
            _ => None,
        }
    }

    /// Substitutes `images[i]` for variable `i`. All images must live in one
    /// common variable set, which becomes the result's variable set.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        assert_eq!(
            images.len(),
            self.vars.len(),
            "one image per variable required"
        );
        let target = match images.first() {
            Some(p) => p.vars().clone(),
            None => self.vars.clone(),
        };
        for im in images {
            target.ensure_same(im.vars())?;
        }
        let mut acc = Poly::zero(&target);
        for t in &self.terms {
            let mut prod = Poly::one(&target);
            for (i, &e) in t.exps().iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&images[i].pow(e)?)?;
                }
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self.terms.iter().map(|t| t.display(&self.vars)).collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Every monomial of weighted degree `degree`, respecting optional
/// per-variable exponent caps, in the canonical order (largest first).
pub fn monomials_of_degree(vars: &VarSet, degree: u32, caps: Option<&[u16]>) -> Vec<Monomial> {
    if let Some(c) = caps {
        assert_eq!(c.len(), vars.len(), "one cap per variable required");
    }
    let mut out = Vec::new();
    let mut exps = vec![0u16; vars.len()];
    fn recurse(
        vars: &VarSet,
        caps: Option<&[u16]>,
        index: usize,
        remaining: u32,
        exps: &mut Vec<u16>,
        out: &mut Vec<Monomial>,
    ) {
        if index == vars.len() {
            if remaining == 0 {
                out.push(Monomial { exps: exps.clone() });
            }
            return;
        }
        let w = vars.degree(index);
        let mut max = (remaining / w) as u16;
        if let Some(c) = caps {
            max = max.min(c[index]);
        }
        for e in 0..=max {
            exps[index] = e;
            recurse(vars, caps, index + 1, remaining - e as u32 * w, exps, out);
        }
        exps[index] = 0;
    }
    recurse(vars, caps, 0, degree, &mut exps, &mut out);
    out.sort_by(|a, b| cmp_monomials(vars, b, a));
    out
}

// ---------------------------------------------------------------------------
// Parsing. Grammar: `y7^2*u8 + u15*y7`, `*` optional, `^` for powers,
// whitespace insignificant; `0` is the zero polynomial, `1` the unit.
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(u32),
    Plus,
    Star,
    Caret,
    End,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn next(&mut self) -> Result<(usize, Token)> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        if start >= bytes.len() {
            return Ok((start, Token::End));
        }
        let c = bytes[start] as char;
        match c {
            '+' => {
                self.pos += 1;
                Ok((start, Token::Plus))
            }
            '*' => {
                self.pos += 1;
                Ok((start, Token::Star))
            }
            '^' => {
                self.pos += 1;
                Ok((start, Token::Caret))
            }
            c if c.is_ascii_digit() => {
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let n: u32 = self.text[start..end]
                    .parse()
                    .map_err(|_| Error::parse(start, "integer out of range"))?;
                self.pos = end;
                Ok((start, Token::Int(n)))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = start;
                while end < bytes.len()
                    && ((bytes[end] as char).is_ascii_alphanumeric() || bytes[end] == b'_')
                {
                    end += 1;
                }
                self.pos = end;
                Ok((start, Token::Ident(self.text[start..end].to_string())))
            }
            c => Err(Error::parse(start, format!("unexpected character {c:?}"))),
        }
    }
}

/// Parses a polynomial in the text grammar over the given variables.
pub fn parse_poly(vars: &VarSet, text: &str) -> Result<Poly> {
    let mut lx = Lexer::new(text);
    let mut terms: Vec<Monomial> = Vec::new();
    loop {
        let term = parse_term(vars, &mut lx)?;
        if let Some(m) = term {
            terms.push(m);
        }
        let (pos, tok) = lx.next()?;
        match tok {
            Token::Plus => continue,
            Token::End => break,
            other => {
                return Err(Error::parse(
                    pos,
                    format!("expected `+` or end, got {other:?}"),
                ))
            }
        }
    }
    Ok(Poly::from_terms(vars, terms))
}

/// One term; `None` encodes a literal `0` summand.
fn parse_term(vars: &VarSet, lx: &mut Lexer) -> Result<Option<Monomial>> {
    let mut exps = vec![0u16; vars.len()];
    let mut saw_factor = false;
    let mut saw_zero = false;
    loop {
        let before = lx.pos;
        let (pos, tok) = lx.next()?;
        match tok {
            Token::Ident(name) => {
                let index = vars.index_of(&name).ok_or_else(|| {
                    Error::parse(
                        pos,
                        format!(
                            "unknown variable `{name}` (expected one of {})",
                            vars.describe()
                        ),
                    )
                })?;
                let exp = parse_exponent(lx)?;
                exps[index] = exps[index]
                    .checked_add(exp)
                    .ok_or_else(|| Error::parse(pos, "exponent out of range"))?;
                saw_factor = true;
            }
            Token::Int(0) if !saw_factor && !saw_zero => {
                saw_zero = true;
            }
            Token::Int(1) => {
                // The unit factor contributes nothing to the exponents.
                parse_optional_caret_one(lx, pos)?;
                saw_factor = true;
            }
            Token::Int(n) => {
                return Err(Error::parse(
                    pos,
                    format!("unexpected integer {n}; coefficients are implicit over F2"),
                ));
            }
            Token::Star if saw_factor => continue,
            Token::Star => return Err(Error::parse(pos, "`*` must follow a factor")),
            Token::Plus | Token::End => {
                lx.pos = before;
                break;
            }
            Token::Caret => return Err(Error::parse(pos, "`^` must follow a variable")),
        }
        if saw_zero && saw_factor {
            return Err(Error::parse(lx.pos, "`0` cannot be combined with factors"));
        }
    }
    if saw_zero {
        return Ok(None);
    }
    if !saw_factor {
        return Err(Error::parse(lx.peek_pos(), "empty term"));
    }
    Ok(Some(Monomial { exps }))
}

fn parse_exponent(lx: &mut Lexer) -> Result<u16> {
    let before = lx.pos;
    let (_, tok) = lx.next()?;
    if tok != Token::Caret {
        lx.pos = before;
        return Ok(1);
    }
    let (pos, tok) = lx.next()?;
    match tok {
        Token::Int(n) => u16::try_from(n).map_err(|_| Error::parse(pos, "exponent out of range")),
        other => Err(Error::parse(
            pos,
            format!("expected exponent after `^`, got {other:?}"),
        )),
    }
}

fn parse_optional_caret_one(lx: &mut Lexer, pos: usize) -> Result<()> {
    let before = lx.pos;
    let (_, tok) = lx.next()?;
    if tok == Token::Caret {
        let (p, t) = lx.next()?;
        match t {
            Token::Int(_) => Ok(()),
            other => Err(Error::parse(
                p,
                format!("expected exponent after `^`, got {other:?}"),
            )),
        }
    } else {
        lx.pos = before;
        let _ = pos;
        Ok(())
    }
}
