//! The universal enveloping algebra in its PBW basis: straightened products,
//! the symmetrization map from polynomials, its filtration-by-filtration
//! inverse, and the adjoint action on enveloping elements.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::poly::{format_terms, MultiIndex, Poly};
use crate::rat::Rat;

/// An element of the enveloping algebra written in the PBW basis: the monomial
/// with exponent α stands for the ordered product `e_1^{α_1} ⋯ e_d^{α_d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWElement {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl PBWElement {
    pub fn zero(dim: usize) -> Self {
        PBWElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        PBWElement::monomial(dim, MultiIndex::zero(dim), Rat::one())
    }

    /// The basis generator `e_i` as an element.
    pub fn generator(dim: usize, i: usize) -> Self {
        PBWElement::monomial(dim, MultiIndex::unit(dim, i), Rat::one())
    }

    pub fn monomial(dim: usize, idx: MultiIndex, c: Rat) -> Self {
        assert_eq!(idx.dim(), dim);
        let mut u = PBWElement::zero(dim);
        u.insert(idx, c);
        u
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Rat)>) -> Self {
        let mut u = PBWElement::zero(dim);
        for (idx, c) in terms {
            assert_eq!(idx.dim(), dim);
            u.insert(idx, c);
        }
        u
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Rat {
        self.terms.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree in the standard filtration of the enveloping algebra; the zero
    /// element reports 0.
    pub fn filtration_degree(&self) -> usize {
        self.terms.keys().map(|idx| idx.degree()).max().unwrap_or(0)
    }

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

    pub fn add(&self, other: &PBWElement) -> PBWElement {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.insert(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PBWElement) -> PBWElement {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.insert(idx.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> PBWElement {
        let mut out = PBWElement::zero(self.dim);
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PBWElement {
        if c.is_zero() {
            return PBWElement::zero(self.dim);
        }
        let mut out = PBWElement::zero(self.dim);
        for (idx, v) in &self.terms {
            out.terms.insert(idx.clone(), v * c);
        }
        out
    }

    /// The terms of exact filtration degree `d`, reread as a polynomial
    /// (i.e. the degree-`d` symbol).
    pub fn symbol_at(&self, d: usize) -> Poly {
        Poly::from_terms(
            self.dim,
            self.terms
                .iter()
                .filter(|(idx, _)| idx.degree() == d)
                .map(|(idx, c)| (idx.clone(), c.clone())),
        )
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        format_terms(self.terms.iter(), names)
    }
}

/// The enveloping algebra of a fixed Lie algebra, with memoized straightening.
///
/// All products are computed against the PBW basis determined by the algebra's
/// basis order; caches make repeated symmetrizations and products cheap.
pub struct Enveloping {
    algebra: Arc<LieAlgebra>,
    /// Memo for (PBW basis monomial) · (generator).
    gen_mul: RwLock<HashMap<(MultiIndex, usize), PBWElement>>,
    /// Memo for the sum over all distinct words with a given content.
    word_sum: RwLock<HashMap<MultiIndex, PBWElement>>,
}

impl Enveloping {
    pub fn new(algebra: LieAlgebra) -> Self {
        Enveloping {
            algebra: Arc::new(algebra),
            gen_mul: RwLock::new(HashMap::new()),
            word_sum: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Straightens `X^m · e_i` into the PBW basis.
    fn mul_basis_gen(&self, m: &MultiIndex, i: usize) -> PBWElement {
        let key = (m.clone(), i);
        if let Some(hit) = self.gen_mul.read().unwrap().get(&key) {
            return hit.clone();
        }
        let d = self.dim();
        let top = (0..d).rev().find(|&j| m.0[j] > 0);
        let result = match top {
            // Already ordered: all factors of X^m are ≤ e_i.
            Some(j) if j > i => {
                // X^m = X^{m'} e_j with j maximal, so
                // X^m e_i = (X^{m'} e_i) e_j + X^{m'} [e_j, e_i].
                let mut m1 = m.clone();
                m1.0[j] -= 1;
                let mut out = self.mul_elt_gen(&self.mul_basis_gen(&m1, i), j);
                for k in 0..d {
                    let q = self.algebra.c(j, i, k);
                    if !q.is_zero() {
                        out = out.add(&self.mul_basis_gen(&m1, k).scale(&q));
                    }
                }
                out
            }
            _ => {
                let mut idx = m.clone();
                idx.0[i] += 1;
                PBWElement::monomial(d, idx, Rat::one())
            }
        };
        self.gen_mul
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| result.clone());
        result
    }

    /// Right-multiplies an element by the generator `e_i`.
    fn mul_elt_gen(&self, u: &PBWElement, i: usize) -> PBWElement {
        let mut out = PBWElement::zero(self.dim());
        for (idx, c) in u.terms() {
            out = out.add(&self.mul_basis_gen(idx, i).scale(c));
        }
        out
    }

    /// The ordered product of the listed generators (left to right).
    pub fn gen_product(&self, word: &[usize]) -> PBWElement {
        let mut acc = PBWElement::one(self.dim());
        for &i in word {
            acc = self.mul_elt_gen(&acc, i);
        }
        acc
    }

    /// The product `u · v` in the enveloping algebra.
    pub fn product(&self, u: &PBWElement, v: &PBWElement) -> Result<PBWElement> {
        let d = self.dim();
        if u.dim() != d || v.dim() != d {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = PBWElement::zero(d);
        for (b, cb) in v.terms() {
            let mut acc = u.clone();
            for i in 0..d {
                for _ in 0..b.0[i] {
                    acc = self.mul_elt_gen(&acc, i);
                }
            }
            out = out.add(&acc.scale(cb));
        }
        Ok(out)
    }

    /// The sum over all distinct words with letter content `alpha` of their
    /// ordered products, memoized; symmetrization is a rescaling of this.
    fn word_sum(&self, alpha: &MultiIndex) -> PBWElement {
        if alpha.is_zero() {
            return PBWElement::one(self.dim());
        }
        if let Some(hit) = self.word_sum.read().unwrap().get(alpha) {
            return hit.clone();
        }
        let mut out = PBWElement::zero(self.dim());
        for i in 0..self.dim() {
            if alpha.0[i] > 0 {
                let mut prev = alpha.clone();
                prev.0[i] -= 1;
                out = out.add(&self.mul_elt_gen(&self.word_sum(&prev), i));
            }
        }
        self.word_sum
            .write()
            .unwrap()
            .entry(alpha.clone())
            .or_insert_with(|| out.clone());
        out
    }

    /// The symmetrization map: sends `x^α` to the average of all ordered
    /// products of its factors. Linear, and a filtration-preserving
    /// isomorphism onto the enveloping algebra.
    pub fn symmetrize(&self, p: &Poly) -> PBWElement {
        assert_eq!(p.dim(), self.dim());
        let mut out = PBWElement::zero(self.dim());
        for (alpha, c) in p.terms() {
            let scale = c * Rat::from_integer(alpha.factorial())
                / Rat::from_integer(crate::rat::factorial(alpha.degree() as u64));
            out = out.add(&self.word_sum(alpha).scale(&scale));
        }
        out
    }

    /// The inverse of [`Enveloping::symmetrize`], peeling one filtration
    /// degree at a time from the top.
    pub fn unsymmetrize(&self, u: &PBWElement) -> Poly {
        let mut rest = u.clone();
        let mut out = Poly::zero(self.dim());
        while !rest.is_zero() {
            let d = rest.filtration_degree();
            let top = rest.symbol_at(d);
            rest = rest.sub(&self.symmetrize(&top));
            debug_assert!(rest.is_zero() || rest.filtration_degree() < d);
            out = out.add(&top);
        }
        out
    }

    /// The adjoint action `u ↦ e_a u − u e_a` of the generator `e_a`.
    pub fn adjoint_on_u(&self, a: usize, u: &PBWElement) -> PBWElement {
        let g = PBWElement::generator(self.dim(), a);
        let left = self.product(&g, u).expect("dimensions match by construction");
        let right = self.product(u, &g).expect("dimensions match by construction");
        left.sub(&right)
    }
}
