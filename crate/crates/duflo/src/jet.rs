//! Polynomial jets: multivariate power series truncated at a total degree,
//! with exp/log/inverse and the trace-log of matrix power series in the
//! generic adjoint matrix.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::rat::{factorial, rat, Rat};

/// A polynomial truncated at total degree `trunc`; all arithmetic stays below
/// the truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    poly: Poly,
    trunc: usize,
}

impl Jet {
    /// Wraps a polynomial, discarding terms above the truncation order.
    pub fn new(poly: Poly, trunc: usize) -> Self {
        Jet {
            poly: poly.truncate_above(trunc),
            trunc,
        }
    }

    pub fn zero(dim: usize, trunc: usize) -> Self {
        Jet::new(Poly::zero(dim), trunc)
    }

    pub fn one(dim: usize, trunc: usize) -> Self {
        Jet::new(Poly::one(dim), trunc)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn constant_term(&self) -> Rat {
        self.poly
            .coeff(&crate::poly::MultiIndex::zero(self.poly.dim()))
    }

    fn join_trunc(&self, other: &Jet) -> usize {
        self.trunc.min(other.trunc)
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let t = self.join_trunc(other);
        Jet::new(self.poly.add(&other.poly), t)
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        let t = self.join_trunc(other);
        Jet::new(self.poly.sub(&other.poly), t)
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let t = self.join_trunc(other);
        Jet::new(self.poly.mul_trunc(&other.poly, Some(t)), t)
    }

    pub fn scale(&self, c: &Rat) -> Jet {
        Jet {
            poly: self.poly.scale(c),
            trunc: self.trunc,
        }
    }

    /// True when only even total degrees carry nonzero coefficients.
    pub fn is_even(&self) -> bool {
        self.poly.terms().all(|(idx, _)| idx.degree() % 2 == 0)
    }

    /// `exp` of a jet with zero constant term.
    pub fn exp(&self) -> Result<Jet> {
        let c = self.constant_term();
        if !c.is_zero() {
            return Err(Error::BadConstantTerm {
                expected: 0,
                found: c.to_string(),
            });
        }
        let mut acc = Jet::one(self.dim(), self.trunc);
        let mut power = Jet::one(self.dim(), self.trunc);
        for k in 1..=self.trunc {
            power = power.mul(self);
            if power.poly.is_zero() {
                break;
            }
            let inv_fact = Rat::from_integer(factorial(k as u64)).recip();
            acc = acc.add(&power.scale(&inv_fact));
        }
        Ok(acc)
    }

    /// `log` of a jet with constant term one.
    pub fn log(&self) -> Result<Jet> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(Error::BadConstantTerm {
                expected: 1,
                found: c.to_string(),
            });
        }
        let u = self.sub(&Jet::one(self.dim(), self.trunc));
        let mut acc = Jet::zero(self.dim(), self.trunc);
        let mut power = Jet::one(self.dim(), self.trunc);
        for k in 1..=self.trunc {
            power = power.mul(&u);
            if power.poly.is_zero() {
                break;
            }
            let coeff = rat(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            acc = acc.add(&power.scale(&coeff));
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a jet with constant term one.
    pub fn inverse(&self) -> Result<Jet> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(Error::BadConstantTerm {
                expected: 1,
                found: c.to_string(),
            });
        }
        let u = Jet::one(self.dim(), self.trunc).sub(self);
        let mut acc = Jet::one(self.dim(), self.trunc);
        let mut power = Jet::one(self.dim(), self.trunc);
        for _ in 1..=self.trunc {
            power = power.mul(&u);
            if power.poly.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    /// Square root of a jet with constant term one, via exp(log/2).
    pub fn sqrt(&self) -> Result<Jet> {
        self.log()?.scale(&rat(1, 2)).exp()
    }
}

/// Taylor coefficients `g_0..g_n` of `sinh(t/2)/(t/2)`: `g_{2k} = 1/(4^k (2k+1)!)`,
/// zero in odd positions.
pub fn sinh_ratio_coeffs(n: usize) -> Vec<Rat> {
    (0..=n)
        .map(|m| {
            if m % 2 != 0 {
                return Rat::zero();
            }
            let k = (m / 2) as u32;
            let denom = Rat::from_integer(num::BigInt::from(4).pow(k))
                * Rat::from_integer(factorial(m as u64 + 1));
            denom.recip()
        })
        .collect()
}

/// Half the trace-log of a matrix power series in the generic adjoint matrix:
/// given scalar coefficients `g` with `g[0] = 1`, forms `G = Σ_m g_m (ad x)^m`
/// and returns the jet of `(1/2)·tr log G` to total degree `trunc`.
pub fn matrix_series_tr_log(l: &LieAlgebra, g: &[Rat], trunc: usize) -> Result<Jet> {
    if g.is_empty() || !g[0].is_one() {
        let found = g.first().map(|c| c.to_string()).unwrap_or_else(|| "absent".into());
        return Err(Error::BadLeadingCoefficient(found));
    }
    let d = l.dim();
    let ad = l.ad_generic();
    // G - I = Σ_{m≥1} g_m A^m, truncated at total degree `trunc`.
    let mut b = PolyMatrix::zero(d, d);
    let mut power = PolyMatrix::identity(d, d);
    for (m, gm) in g.iter().enumerate().skip(1) {
        if m > trunc {
            break;
        }
        power = power.mul_trunc(&ad, Some(trunc));
        if power.is_zero() {
            break;
        }
        if !gm.is_zero() {
            b = b.add(&power.scale(gm));
        }
    }
    // log G = Σ_k (-1)^{k+1} B^k / k, entrywise truncated.
    let mut log = PolyMatrix::zero(d, d);
    let mut bpow = PolyMatrix::identity(d, d);
    for k in 1..=trunc {
        bpow = bpow.mul_trunc(&b, Some(trunc));
        if bpow.is_zero() {
            break;
        }
        let coeff = rat(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        log = log.add(&bpow.scale(&coeff));
    }
    Ok(Jet::new(log.trace(), trunc).scale(&rat(1, 2)))
}
