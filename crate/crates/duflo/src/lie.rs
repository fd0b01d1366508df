//! Finite-dimensional Lie algebras over the rationals, presented by structure
//! constants, plus the generic adjoint matrix and its trace powers.

use num::Zero;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::rat::{rat_int, Rat};

/// A Lie algebra given by basis names and structure constants
/// `[e_i, e_j] = Σ_k c^k_{ij} e_k`, validated for antisymmetry and Jacobi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// Flat row-major storage: `c[((i*d)+j)*d + k]` is c^k_{ij}.
    c: Vec<Rat>,
}

impl LieAlgebra {
    /// Builds and validates an algebra from the full structure-constant table.
    pub fn new(names: Vec<String>, constants: Vec<Rat>) -> Result<Self> {
        let d = names.len();
        assert!(d > 0, "algebras must have at least one basis element");
        if constants.len() != d * d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d * d,
                found: constants.len(),
            });
        }
        let alg = LieAlgebra { names, c: constants };
        alg.validate()?;
        Ok(alg)
    }

    /// Builds an algebra from sparse brackets `[e_i, e_j] += q·e_k` (0-based),
    /// filling each transposed entry with the negated value.
    pub fn from_brackets(names: Vec<String>, brackets: &[(usize, usize, usize, Rat)]) -> Result<Self> {
        let d = names.len();
        let mut c = vec![Rat::zero(); d * d * d];
        for &(i, j, k, ref q) in brackets {
            assert!(i < d && j < d && k < d, "bracket index out of range");
            c[(i * d + j) * d + k] += q;
            c[(j * d + i) * d + k] -= q;
        }
        LieAlgebra::new(names, c)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..=i {
                for k in 0..d {
                    let residue = self.c(i, j, k) + self.c(j, i, k);
                    if !residue.is_zero() {
                        // Reported 1-based, matching the on-disk bracket format.
                        return Err(Error::AntisymmetryViolation {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            residue,
                        });
                    }
                }
            }
        }
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    for l in 0..d {
                        let mut residue = Rat::zero();
                        for m in 0..d {
                            residue += self.c(i, j, m) * self.c(m, k, l)
                                + self.c(j, k, m) * self.c(m, i, l)
                                + self.c(k, i, m) * self.c(m, j, l);
                        }
                        if !residue.is_zero() {
                            return Err(Error::JacobiViolation {
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                                l: l + 1,
                                residue,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// The structure constant c^k_{ij}.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rat {
        self.c[(i * self.dim() + j) * self.dim() + k].clone()
    }

    /// `[e_i, e_j]` as a degree-one polynomial in the basis coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Poly {
        let d = self.dim();
        let mut out = Poly::zero(d);
        for k in 0..d {
            let q = self.c(i, j, k);
            if !q.is_zero() {
                out = out.add(&Poly::var(d, k).scale(&q));
            }
        }
        out
    }

    /// The built-in catalog; `abelian_n` accepts any positive `n` suffix.
    pub fn catalog(name: &str) -> Result<Self> {
        let one = Rat::from_integer(1.into());
        let two = rat_int(2);
        if let Some(suffix) = name.strip_prefix("abelian_") {
            let n: usize = suffix
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::UnknownName(name.to_string()))?;
            let names = (1..=n).map(|i| format!("x{i}")).collect();
            return LieAlgebra::from_brackets(names, &[]);
        }
        match name {
            "heisenberg3" => LieAlgebra::from_brackets(
                vec!["x".into(), "y".into(), "z".into()],
                &[(0, 1, 2, one)],
            ),
            "sl2" => LieAlgebra::from_brackets(
                vec!["e".into(), "f".into(), "h".into()],
                // [h,e] = 2e, [h,f] = -2f, [e,f] = h.
                &[(2, 0, 0, two.clone()), (2, 1, 1, -two), (0, 1, 2, one)],
            ),
            "so3" => LieAlgebra::from_brackets(
                vec!["e1".into(), "e2".into(), "e3".into()],
                &[
                    (0, 1, 2, one.clone()),
                    (1, 2, 0, one.clone()),
                    (2, 0, 1, one),
                ],
            ),
            "aff1" => LieAlgebra::from_brackets(
                vec!["e1".into(), "e2".into()],
                &[(0, 1, 1, one)],
            ),
            "ut3" => LieAlgebra::from_brackets(
                vec!["e12".into(), "e13".into(), "e23".into()],
                // Strictly upper-triangular 3x3 matrices: [e12, e23] = e13.
                &[(0, 2, 1, one)],
            ),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// The generic adjoint matrix: entry `(j, k)` is `Σ_i c^j_{ik} x_i`, so the
    /// matrix represents `ad x` on column vectors in the chosen basis for a
    /// generic point `x = Σ x_i e_i`.
    pub fn ad_generic(&self) -> PolyMatrix {
        let d = self.dim();
        PolyMatrix::from_fn(d, d, |j, k| {
            let mut p = Poly::zero(d);
            for i in 0..d {
                let q = self.c(i, k, j);
                if !q.is_zero() {
                    p = p.add(&Poly::var(d, i).scale(&q));
                }
            }
            p
        })
    }

    /// `tr((ad x)^k)` for even `k ≥ 2`; odd or tiny powers are rejected since
    /// only even trace powers appear in the series this crate consumes.
    pub fn trace_power(&self, k: usize) -> Result<Poly> {
        if k < 2 || k % 2 != 0 {
            return Err(Error::OddPower(k));
        }
        let ad = self.ad_generic();
        let mut power = ad.clone();
        for _ in 1..k {
            power = power.mul_trunc(&ad, None);
        }
        Ok(power.trace())
    }

    /// The Poisson bracket of polynomial functions induced by the structure
    /// constants: `{r, p} = Σ_{i,j,k} c^k_{ij} x_k ∂_i r ∂_j p`.
    pub fn poisson(&self, r: &Poly, p: &Poly) -> Poly {
        let d = self.dim();
        assert_eq!(r.dim(), d);
        assert_eq!(p.dim(), d);
        let mut out = Poly::zero(d);
        for i in 0..d {
            let ri = r.partial(i);
            if ri.is_zero() {
                continue;
            }
            for j in 0..d {
                let pj = p.partial(j);
                if pj.is_zero() {
                    continue;
                }
                for k in 0..d {
                    let q = self.c(i, j, k);
                    if !q.is_zero() {
                        out = out.add(&ri.mul(&pj).mul(&Poly::var(d, k)).scale(&q));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(src: &str, l: &LieAlgebra) -> Poly {
        Poly::parse(src, l.names()).unwrap()
    }

    #[test]
    fn catalog_entries_validate() {
        for name in ["abelian_1", "abelian_4", "heisenberg3", "sl2", "so3", "aff1", "ut3"] {
            let l = LieAlgebra::catalog(name).unwrap();
            assert!(l.dim() >= 1);
        }
        assert!(matches!(
            LieAlgebra::catalog("abelian_0"),
            Err(Error::UnknownName(_))
        ));
        assert!(matches!(
            LieAlgebra::catalog("su5"),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn sl2_brackets() {
        let l = LieAlgebra::catalog("sl2").unwrap();
        // Basis order (e, f, h).
        assert_eq!(l.bracket_basis(2, 0), p("2*e", &l));
        assert_eq!(l.bracket_basis(2, 1), p("-2*f", &l));
        assert_eq!(l.bracket_basis(0, 1), p("h", &l));
        assert_eq!(l.bracket_basis(1, 0), p("-h", &l));
        assert!(l.bracket_basis(0, 0).is_zero());
    }

    #[test]
    fn antisymmetry_violation_is_reported() {
        // dim 1 with c^1_{11} = 1 breaks antisymmetry on the diagonal.
        let r = LieAlgebra::new(vec!["x".into()], vec![rat_int(1)]);
        match r {
            Err(Error::AntisymmetryViolation { i: 1, j: 1, k: 1, residue }) => {
                assert_eq!(residue, rat_int(2));
            }
            other => panic!("expected antisymmetry violation, got {other:?}"),
        }
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [x,y]=z together with [x,z]=x fails Jacobi: the cyclic sum on
        // (x,y,z) comes out to -z.
        let names = vec!["x".into(), "y".into(), "z".into()];
        let one = rat_int(1);
        let r = LieAlgebra::from_brackets(
            names,
            &[(0, 1, 2, one.clone()), (0, 2, 0, one)],
        );
        match r {
            Err(Error::JacobiViolation { i: 1, j: 2, k: 3, .. }) => {}
            other => panic!("expected Jacobi violation, got {other:?}"),
        }
    }

    #[test]
    fn aff1_adjoint_matrix() {
        let l = LieAlgebra::catalog("aff1").unwrap();
        let ad = l.ad_generic();
        assert!(ad.entry(0, 0).is_zero());
        assert!(ad.entry(0, 1).is_zero());
        assert_eq!(*ad.entry(1, 0), p("-e2", &l));
        assert_eq!(*ad.entry(1, 1), p("e1", &l));
    }

    #[test]
    fn adjoint_matrix_matches_brackets_columnwise() {
        // Column k of ad x at x = e_i must be [e_i, e_k].
        for name in ["sl2", "so3", "heisenberg3", "ut3"] {
            let l = LieAlgebra::catalog(name).unwrap();
            let d = l.dim();
            let ad = l.ad_generic();
            for i in 0..d {
                let point: Vec<Rat> = (0..d)
                    .map(|t| if t == i { rat_int(1) } else { Rat::zero() })
                    .collect();
                for k in 0..d {
                    for j in 0..d {
                        assert_eq!(ad.entry(j, k).eval(&point), l.c(i, k, j));
                    }
                }
            }
        }
    }

    #[test]
    fn sl2_trace_square_and_killing() {
        let l = LieAlgebra::catalog("sl2").unwrap();
        let t2 = l.trace_power(2).unwrap();
        assert_eq!(t2, p("8*h^2 + 8*e*f", &l));
        // Killing form values via polarization of tr((ad x)^2).
        let at = |e: i64, f: i64, h: i64| {
            t2.eval(&[rat_int(e), rat_int(f), rat_int(h)])
        };
        assert_eq!(at(0, 0, 1), rat_int(8)); // κ(h,h)
        let cross = (at(1, 1, 0) - at(1, 0, 0) - at(0, 1, 0)) / rat_int(2);
        assert_eq!(cross, rat_int(4)); // κ(e,f)
        assert!(matches!(l.trace_power(3), Err(Error::OddPower(3))));
        assert!(matches!(l.trace_power(0), Err(Error::OddPower(0))));
    }

    #[test]
    fn nilpotent_trace_powers_vanish() {
        for name in ["heisenberg3", "ut3", "abelian_3"] {
            let l = LieAlgebra::catalog(name).unwrap();
            assert!(l.trace_power(2).unwrap().is_zero());
            assert!(l.trace_power(4).unwrap().is_zero());
        }
        let aff = LieAlgebra::catalog("aff1").unwrap();
        assert_eq!(aff.trace_power(2).unwrap(), p("e1^2", &aff));
    }

    #[test]
    fn poisson_bracket_matches_structure_constants() {
        let l = LieAlgebra::catalog("sl2").unwrap();
        // {e, f} = h, and the Casimir h^2 + 4ef is a Poisson central element.
        assert_eq!(l.poisson(&p("e", &l), &p("f", &l)), p("h", &l));
        let cas = p("h^2 + 4*e*f", &l);
        for v in ["e", "f", "h"] {
            assert!(l.poisson(&cas, &p(v, &l)).is_zero());
        }
        // Leibniz in the first slot on a sample.
        let (a, b, c) = (p("e*h", &l), p("f", &l), p("e+f", &l));
        let lhs = l.poisson(&a.mul(&b), &c);
        let rhs = a.mul(&l.poisson(&b, &c)).add(&b.mul(&l.poisson(&a, &c)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn structure_constant_dimension_check() {
        let r = LieAlgebra::new(vec!["x".into(), "y".into()], vec![Rat::zero(); 7]);
        assert!(matches!(
            r,
            Err(Error::DimensionMismatch { expected: 8, found: 7 })
        ));
    }

    #[test]
    fn fractional_constants_are_accepted() {
        // A rescaled aff1: [e1, e2] = (1/2) e2 still satisfies Jacobi.
        let l = LieAlgebra::from_brackets(
            vec!["e1".into(), "e2".into()],
            &[(0, 1, 1, rat(1, 2))],
        )
        .unwrap();
        assert_eq!(l.c(0, 1, 1), rat(1, 2));
        assert_eq!(l.c(1, 0, 1), rat(-1, 2));
    }
}
