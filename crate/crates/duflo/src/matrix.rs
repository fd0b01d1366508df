//! Square matrices with polynomial entries, used for generic adjoint matrices
//! and the series built from them.

use crate::poly::Poly;
use crate::rat::Rat;

/// A `size × size` matrix whose entries are polynomials in `dim` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    dim: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(size: usize, dim: usize) -> Self {
        PolyMatrix {
            size,
            dim,
            entries: vec![Poly::zero(dim); size * size],
        }
    }

    pub fn identity(size: usize, dim: usize) -> Self {
        let mut m = PolyMatrix::zero(size, dim);
        for i in 0..size {
            *m.entry_mut(i, i) = Poly::one(dim);
        }
        m
    }

    pub fn from_fn(size: usize, dim: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut m = PolyMatrix::zero(size, dim);
        for i in 0..size {
            for j in 0..size {
                let p = f(i, j);
                assert_eq!(p.dim(), dim);
                *m.entry_mut(i, j) = p;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.size + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.size + j]
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.size, self.dim), (other.size, other.dim));
        let mut out = PolyMatrix::zero(self.size, self.dim);
        for k in 0..self.entries.len() {
            out.entries[k] = self.entries[k].add(&other.entries[k]);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.size, self.dim);
        for k in 0..self.entries.len() {
            out.entries[k] = self.entries[k].scale(c);
        }
        out
    }

    /// Matrix product, truncating every entry above `max_degree` when given.
    pub fn mul_trunc(&self, other: &PolyMatrix, max_degree: Option<usize>) -> PolyMatrix {
        assert_eq!((self.size, self.dim), (other.size, other.dim));
        let mut out = PolyMatrix::zero(self.size, self.dim);
        for i in 0..self.size {
            for j in 0..self.size {
                let mut acc = Poly::zero(self.dim);
                for k in 0..self.size {
                    acc = acc.add(&self.entry(i, k).mul_trunc(other.entry(k, j), max_degree));
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn trace(&self) -> Poly {
        let mut acc = Poly::zero(self.dim);
        for i in 0..self.size {
            acc = acc.add(self.entry(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Determinant by cofactor expansion; fine for the small sizes used here.
    pub fn determinant(&self) -> Poly {
        match self.size {
            0 => Poly::one(self.dim),
            1 => self.entry(0, 0).clone(),
            _ => {
                let mut acc = Poly::zero(self.dim);
                for j in 0..self.size {
                    let minor = self.minor(0, j);
                    let term = self.entry(0, j).mul(&minor.determinant());
                    if j % 2 == 0 {
                        acc = acc.add(&term);
                    } else {
                        acc = acc.sub(&term);
                    }
                }
                acc
            }
        }
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.size - 1, self.dim);
        let mut r = 0;
        for i in 0..self.size {
            if i == drop_row {
                continue;
            }
            let mut c = 0;
            for j in 0..self.size {
                if j == drop_col {
                    continue;
                }
                *out.entry_mut(r, c) = self.entry(i, j).clone();
                c += 1;
            }
            r += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn names2() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn p(src: &str) -> Poly {
        Poly::parse(src, &names2()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = PolyMatrix::from_fn(2, 2, |i, j| {
            if (i, j) == (0, 1) {
                p("x")
            } else {
                Poly::zero(2)
            }
        });
        let id = PolyMatrix::identity(2, 2);
        assert_eq!(m.mul_trunc(&id, None), m);
        assert_eq!(id.mul_trunc(&m, None), m);
    }

    #[test]
    fn trace_and_powers() {
        // m = [[0, x], [y, 0]]; m^2 = [[x*y, 0], [0, x*y]].
        let m = PolyMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => p("x"),
            (1, 0) => p("y"),
            _ => Poly::zero(2),
        });
        let m2 = m.mul_trunc(&m, None);
        assert_eq!(m2.trace(), p("2*x*y"));
        assert!(m
            .mul_trunc(&m, Some(1))
            .is_zero());
    }

    #[test]
    fn determinant_small_cases() {
        let m = PolyMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => p("1+x"),
            (0, 1) => p("y"),
            (1, 0) => p("y"),
            (1, 1) => p("1"),
            _ => unreachable!(),
        });
        assert_eq!(m.determinant(), p("1 + x - y^2"));
        let id3 = PolyMatrix::identity(3, 2);
        assert_eq!(id3.determinant(), Poly::one(2));
        assert_eq!(
            id3.scale(&rat_int(2)).determinant(),
            Poly::constant(2, rat_int(8))
        );
    }
}
