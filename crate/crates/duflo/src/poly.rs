//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Poly`] plays three roles throughout the crate: element of the symmetric
//! algebra S(g), polynomial function on g, and distribution supported at the
//! origin (acting as p(∂)δ₀ under the pairing fixed in [`crate::star`]).

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{factorial, parse_rat, Rat};

/// Exponent vector of a monomial: entry `i` is the power of variable `i`.
///
/// The derived `Ord` is lexicographic on the exponent vector; every
/// deterministic iteration in the crate goes through `BTreeMap`s keyed by this
/// type, so no ordering ever depends on hash state.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The exponent vector of the single variable `i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim, "variable index out of range");
        let mut v = vec![0; dim];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree |α|.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, or `None` unless `other ≤ self` everywhere.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }

    /// α! = Π αᵢ!.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&e| factorial(e as u64)).product()
    }

    /// The falling factorial α!/(α−γ)! = Π αᵢ(αᵢ−1)···(αᵢ−γᵢ+1).
    ///
    /// Callers must ensure γ ≤ α componentwise.
    pub fn falling_factorial(&self, gamma: &Self) -> BigInt {
        debug_assert_eq!(self.dim(), gamma.dim());
        let mut out = BigInt::one();
        for (&a, &g) in self.0.iter().zip(&gamma.0) {
            debug_assert!(g <= a);
            for step in 0..g {
                out *= a - step;
            }
        }
        out
    }

    /// All exponent vectors of exact total degree `d`, deterministically
    /// ordered (first variable descending, then recursively).
    pub fn of_degree(dim: usize, d: usize) -> Vec<Self> {
        fn go(dim: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if dim == 1 {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=d).rev() {
                prefix.push(first);
                go(dim - 1, d - first, prefix, out);
                prefix.pop();
            }
        }
        assert!(dim > 0, "zero-dimensional monomials are not supported");
        let mut out = Vec::new();
        go(dim, d as u32, &mut Vec::with_capacity(dim), &mut out);
        out
    }

    /// All exponent vectors of total degree ≤ `d`, by increasing degree.
    pub fn up_to_degree(dim: usize, d: usize) -> Vec<Self> {
        (0..=d).flat_map(|k| Self::of_degree(dim, k)).collect()
    }
}

/// A sparse polynomial: a map from exponent vectors to nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        let mut p = Poly::zero(dim);
        p.insert(MultiIndex::zero(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Rat::one())
    }

    /// The coordinate polynomial for variable `i`.
    pub fn var(dim: usize, i: usize) -> Self {
        Poly::monomial(dim, MultiIndex::unit(dim, i), Rat::one())
    }

    pub fn monomial(dim: usize, idx: MultiIndex, c: Rat) -> Self {
        assert_eq!(idx.dim(), dim);
        let mut p = Poly::zero(dim);
        p.insert(idx, c);
        p
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, merging and
    /// dropping zeros.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Rat)>) -> Self {
        let mut p = Poly::zero(dim);
        for (idx, c) in terms {
            assert_eq!(idx.dim(), dim);
            p.insert(idx, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    /// The coefficient of `idx` (zero if absent).
    pub fn coeff(&self, idx: &MultiIndex) -> Rat {
        self.terms.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|idx| idx.degree()).max().unwrap_or(0)
    }

    /// Adds `c` to the coefficient at `idx`, dropping the entry if it cancels.
    pub(crate) fn insert(&mut self, idx: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_dim(&self, other: &Poly) {
        assert_eq!(
            self.dim, other.dim,
            "polynomial dimension mismatch ({} vs {})",
            self.dim, other.dim
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_dim(other);
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.insert(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.assert_same_dim(other);
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.insert(idx.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        let mut out = Poly::zero(self.dim);
        for (idx, v) in &self.terms {
            out.terms.insert(idx.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_trunc(other, None)
    }

    /// Product, optionally discarding all terms of total degree > `max_degree`.
    pub fn mul_trunc(&self, other: &Poly, max_degree: Option<usize>) -> Poly {
        self.assert_same_dim(other);
        let mut out = Poly::zero(self.dim);
        for (a, ca) in &self.terms {
            let da = a.degree();
            for (b, cb) in &other.terms {
                if let Some(max) = max_degree {
                    if da + b.degree() > max {
                        continue;
                    }
                }
                out.insert(a.add(b), ca * cb);
            }
        }
        out
    }

    /// Multiplies by the single monomial `c·x^idx`.
    pub fn mul_monomial(&self, idx: &MultiIndex, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        let mut out = Poly::zero(self.dim);
        for (a, ca) in &self.terms {
            out.terms.insert(a.add(idx), ca * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.dim);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// ∂/∂xᵢ.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.dim);
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            if idx.0[i] > 0 {
                let mut v = idx.clone();
                v.0[i] -= 1;
                out.insert(v, c * Rat::from_integer(BigInt::from(idx.0[i])));
            }
        }
        out
    }

    /// ∂^β applied to `self`, with the usual falling-factorial coefficients.
    pub fn derive_multi(&self, beta: &MultiIndex) -> Poly {
        assert_eq!(beta.dim(), self.dim);
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            if let Some(rest) = idx.checked_sub(beta) {
                let ff = idx.falling_factorial(beta);
                out.insert(rest, c * Rat::from_integer(ff));
            }
        }
        out
    }

    /// Drops all terms of total degree > `n`.
    pub fn truncate_above(&self, n: usize) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            if idx.degree() <= n {
                out.terms.insert(idx.clone(), c.clone());
            }
        }
        out
    }

    /// The homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (idx, c) in &self.terms {
            if idx.degree() == d {
                out.terms.insert(idx.clone(), c.clone());
            }
        }
        out
    }

    /// Evaluates at an exact rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.dim);
        let mut total = Rat::zero();
        for (idx, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in idx.0.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Renders with the given variable names; see [`format_terms`].
    pub fn to_string_with(&self, names: &[String]) -> String {
        format_terms(self.terms.iter(), names)
    }

    /// Parses an expression like `x^2*y - 1/2*z + 3` over the given variables.
    ///
    /// Grammar: sums/differences of terms; a term is a `*`-product of factors;
    /// a factor is a rational literal (`5`, `5/3`), a named variable with an
    /// optional integer power (`x`, `x^2`), or a parenthesized expression.
    pub fn parse(src: &str, names: &[String]) -> Result<Poly> {
        Parser::new(src, names)?.parse_expr_all()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
        f.write_str(&self.to_string_with(&names))
    }
}

/// Shared renderer for polynomial-like term maps (used by `Poly`,
/// `PBWElement`, and operator coefficients): descending total degree, then
/// lexicographic; coefficient `1` is suppressed on non-constant monomials.
pub fn format_terms<'a>(
    terms: impl Iterator<Item = (&'a MultiIndex, &'a Rat)>,
    names: &[String],
) -> String {
    let mut entries: Vec<(&MultiIndex, &Rat)> = terms.collect();
    if entries.is_empty() {
        return "0".to_string();
    }
    entries.sort_by(|(a, _), (b, _)| {
        b.degree()
            .cmp(&a.degree())
            .then_with(|| (*a).cmp(*b))
    });
    let mut out = String::new();
    for (pos, (idx, c)) in entries.iter().enumerate() {
        let negative = c.is_negative();
        if pos == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        let mono = format_monomial(idx, names);
        match mono {
            None => out.push_str(&mag.to_string()),
            Some(m) => {
                if mag.is_one() {
                    out.push_str(&m);
                } else {
                    out.push_str(&mag.to_string());
                    out.push('*');
                    out.push_str(&m);
                }
            }
        }
    }
    out
}

/// `x^α` with names, or `None` for the constant monomial.
fn format_monomial(idx: &MultiIndex, names: &[String]) -> Option<String> {
    if idx.is_zero() {
        return None;
    }
    let mut parts = Vec::new();
    for (i, &e) in idx.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    Some(parts.join("*"))
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(src: &str, names: &'a [String]) -> Result<Self> {
        let mut toks = Vec::new();
        let bytes: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let col = i + 1;
            let c = bytes[i];
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    toks.push((col, Tok::Plus));
                    i += 1;
                }
                '-' => {
                    toks.push((col, Tok::Minus));
                    i += 1;
                }
                '*' => {
                    toks.push((col, Tok::Star));
                    i += 1;
                }
                '^' => {
                    toks.push((col, Tok::Caret));
                    i += 1;
                }
                '(' => {
                    toks.push((col, Tok::LParen));
                    i += 1;
                }
                ')' => {
                    toks.push((col, Tok::RParen));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i < bytes.len() && bytes[i] == '/' {
                        let mut j = i + 1;
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        if j > i + 1 {
                            i = j;
                        }
                    }
                    let text: String = bytes[start..i].iter().collect();
                    let r = parse_rat(&text)
                        .map_err(|msg| parse_err(col, msg))?;
                    toks.push((start + 1, Tok::Num(r)));
                }
                c if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_alphanumeric() || bytes[i] == '_')
                    {
                        i += 1;
                    }
                    let text: String = bytes[start..i].iter().collect();
                    toks.push((start + 1, Tok::Ident(text)));
                }
                other => {
                    return Err(parse_err(col, format!("unexpected character `{other}`")));
                }
            }
        }
        Ok(Parser {
            toks,
            pos: 0,
            names,
        })
    }

    fn dim(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(c, _)| c + 1).unwrap_or(1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn parse_expr_all(&mut self) -> Result<Poly> {
        let p = self.parse_expr()?;
        if self.pos != self.toks.len() {
            return Err(parse_err(self.col(), "trailing input".to_string()));
        }
        Ok(p)
    }

    fn parse_expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.parse_term()?.neg()
            }
            Some(Tok::Plus) => {
                self.bump();
                self.parse_term()?
            }
            _ => self.parse_term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = acc.mul(&self.parse_factor()?);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Poly> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(r)) => Ok(Poly::constant(self.dim(), r)),
            Some(Tok::Ident(name)) => {
                let i = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| parse_err(col, format!("unknown variable `{name}`")))?;
                let e = self.parse_opt_power()?;
                Ok(Poly::monomial(
                    self.dim(),
                    {
                        let mut v = vec![0; self.dim()];
                        v[i] = e;
                        MultiIndex(v)
                    },
                    Rat::one(),
                ))
            }
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                match self.bump() {
                    Some(Tok::RParen) => {
                        let e = self.parse_opt_power()?;
                        Ok(inner.pow(e))
                    }
                    _ => Err(parse_err(col, "unbalanced parenthesis".to_string())),
                }
            }
            Some(Tok::Minus) => Ok(self.parse_factor()?.neg()),
            other => Err(parse_err(
                col,
                format!("expected a factor, found {other:?}"),
            )),
        }
    }

    fn parse_opt_power(&mut self) -> Result<u32> {
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(1);
        }
        self.bump();
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(r)) if r.is_integer() && !r.is_negative() => {
                let n = r.to_integer();
                u32::try_from(n.clone())
                    .map_err(|_| parse_err(col, format!("exponent {n} too large")))
            }
            _ => Err(parse_err(col, "expected a nonnegative integer exponent".to_string())),
        }
    }
}

fn parse_err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        col,
        msg: msg.into(),
    }
}
