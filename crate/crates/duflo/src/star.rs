//! The Duflo map and the transported star product.
//!
//! Distributions supported at the origin are polynomials acting through the
//! pairing `⟨x^α, φ⟩ = α!·φ_α`; multiplying such a distribution by a function
//! jet, symmetrizing into the enveloping algebra, and pulling back again gives
//! the maps `η` (twist by the jet `q`), `κ` (twist by `q/τ` for a wheel series
//! `τ`), and the star product `r ⋆ p = κ⁻¹(κ(r)·κ(p))`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::jet::{matrix_series_tr_log, sinh_ratio_coeffs, Jet};
use crate::lie::LieAlgebra;
use crate::pbw::{Enveloping, PBWElement};
use crate::poly::{MultiIndex, Poly};
use crate::rat::{parse_rat, Rat};

/// How the even wheel coefficients `c_2, c_4, …` of the series
/// `τ = exp(Σ_k c_{2k}·tr((ad x)^{2k}))` are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WheelProfile {
    /// All wheels vanish: `τ = 1` and the star product is the bare transport.
    Zero,
    /// The canonical profile making `τ` equal to the jet `q`.
    Duflo,
    /// Explicit values for `c_2, c_4, …` in order.
    Explicit(Vec<Rat>),
}

impl FromStr for WheelProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "zero" => Ok(WheelProfile::Zero),
            "duflo" => Ok(WheelProfile::Duflo),
            other => {
                let values = other
                    .split(',')
                    .map(|part| {
                        parse_rat(part.trim()).map_err(|msg| {
                            Error::Config(format!("bad wheel coefficient `{part}`: {msg}"))
                        })
                    })
                    .collect::<Result<Vec<Rat>>>()?;
                if values.is_empty() {
                    return Err(Error::Config("empty wheel profile".into()));
                }
                Ok(WheelProfile::Explicit(values))
            }
        }
    }
}

impl fmt::Display for WheelProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WheelProfile::Zero => f.write_str("zero"),
            WheelProfile::Duflo => f.write_str("duflo"),
            WheelProfile::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

/// Wheel coefficients resolved against a truncation order: exactly the values
/// `c_2 … c_{2·⌊N/2⌋}`, with a flag recording whether an explicit list was
/// zero-padded to reach that length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelCoefficients {
    values: Vec<Rat>,
    padded: bool,
}

impl WheelCoefficients {
    /// Resolves a profile to the coefficients needed at truncation `trunc`.
    pub fn resolve(profile: &WheelProfile, trunc: usize) -> Self {
        let needed = trunc / 2;
        match profile {
            WheelProfile::Zero => WheelCoefficients {
                values: vec![Rat::zero(); needed],
                padded: false,
            },
            WheelProfile::Duflo => WheelCoefficients {
                values: duflo_wheel_values(needed),
                padded: false,
            },
            WheelProfile::Explicit(v) => {
                let mut values = v.clone();
                let padded = values.len() < needed;
                values.resize(needed, Rat::zero());
                values.truncate(needed);
                WheelCoefficients { values, padded }
            }
        }
    }

    /// `c_2 … c_{2·⌊N/2⌋}`, index `k` holding `c_{2(k+1)}`.
    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// True when an explicit list was shorter than the truncation demanded.
    pub fn padded(&self) -> bool {
        self.padded
    }
}

/// The canonical wheel values: coefficients of `t^{2k}`, `k = 1..=count`, in
/// `(1/2)·log(sinh(t/2)/(t/2))`.
pub fn duflo_wheel_values(count: usize) -> Vec<Rat> {
    let trunc = 2 * count;
    let g = sinh_ratio_coeffs(trunc);
    let series = Poly::from_terms(
        1,
        g.iter()
            .enumerate()
            .map(|(m, c)| (MultiIndex(vec![m as u32]), c.clone())),
    );
    let half_log = Jet::new(series, trunc)
        .log()
        .expect("sinh ratio series has constant term 1")
        .scale(&crate::rat::rat(1, 2));
    (1..=count)
        .map(|k| half_log.poly().coeff(&MultiIndex(vec![2 * k as u32])))
        .collect()
}

/// The jet `q = exp((1/2)·tr log(sinh((ad x)/2)/((ad x)/2)))` to order `trunc`.
pub fn q_jet(l: &LieAlgebra, trunc: usize) -> Jet {
    matrix_series_tr_log(l, &sinh_ratio_coeffs(trunc), trunc)
        .expect("sinh ratio series has leading coefficient 1")
        .exp()
        .expect("trace-log series has no constant term")
}

/// The wheel series `τ = exp(Σ_k c_{2k}·tr((ad x)^{2k}))` to order `trunc`.
pub fn tau_jet(l: &LieAlgebra, wheels: &WheelCoefficients, trunc: usize) -> Jet {
    let mut exponent = Jet::zero(l.dim(), trunc);
    for (k, c) in wheels.values().iter().enumerate() {
        let power = 2 * (k + 1);
        if power > trunc || c.is_zero() {
            continue;
        }
        let tr = l
            .trace_power(power)
            .expect("even powers at least 2 are always accepted");
        exponent = exponent.add(&Jet::new(tr, trunc).scale(c));
    }
    exponent
        .exp()
        .expect("trace powers have no constant term")
}

/// Multiplies a point-supported distribution by a function jet: with the
/// pairing `⟨x^α, φ⟩ = α!·φ_α`, the product `f·p` is the polynomial whose
/// coefficient at `β` is `Σ_{γ} f_γ·p_{β+γ}·(β+γ)!/β!`.
pub fn mult_distribution(p: &Poly, f: &Jet) -> Result<Poly> {
    if p.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: f.dim(),
        });
    }
    let needed = p.total_degree();
    if f.trunc() < needed {
        return Err(Error::TruncationTooLow {
            needed,
            available: f.trunc(),
        });
    }
    let mut out = Poly::zero(p.dim());
    for (pi, cp) in p.terms() {
        for (gamma, cf) in f.poly().terms() {
            if let Some(beta) = pi.checked_sub(gamma) {
                let ratio = Rat::from_integer(pi.falling_factorial(gamma));
                out.insert(beta, cp * cf * ratio);
            }
        }
    }
    Ok(out)
}

/// Shared state for a fixed algebra, truncation order, and wheel profile:
/// the jets `q`, `τ`, `q/τ`, `τ/q`, and per-monomial caches for `η` and `κ`.
pub struct StarContext {
    env: Arc<Enveloping>,
    trunc: usize,
    wheels: WheelCoefficients,
    q: Jet,
    tau: Jet,
    q_over_tau: Jet,
    tau_over_q: Jet,
    eta_cache: RwLock<HashMap<MultiIndex, PBWElement>>,
    kappa_cache: RwLock<HashMap<MultiIndex, PBWElement>>,
}

impl StarContext {
    pub fn new(env: Arc<Enveloping>, trunc: usize, profile: &WheelProfile) -> Self {
        let l = env.algebra();
        let wheels = WheelCoefficients::resolve(profile, trunc);
        let q = q_jet(l, trunc);
        let tau = tau_jet(l, &wheels, trunc);
        let tau_inv = tau.inverse().expect("τ has constant term 1");
        let q_inv = q.inverse().expect("q has constant term 1");
        let q_over_tau = q.mul(&tau_inv);
        let tau_over_q = tau.mul(&q_inv);
        StarContext {
            env,
            trunc,
            wheels,
            q,
            tau,
            q_over_tau,
            tau_over_q,
            eta_cache: RwLock::new(HashMap::new()),
            kappa_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn env(&self) -> &Arc<Enveloping> {
        &self.env
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.env.algebra()
    }

    pub fn dim(&self) -> usize {
        self.env.dim()
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn wheels(&self) -> &WheelCoefficients {
        &self.wheels
    }

    pub fn q(&self) -> &Jet {
        &self.q
    }

    pub fn tau(&self) -> &Jet {
        &self.tau
    }

    pub fn q_over_tau(&self) -> &Jet {
        &self.q_over_tau
    }

    pub fn tau_over_q(&self) -> &Jet {
        &self.tau_over_q
    }

    fn twist(
        &self,
        p: &Poly,
        jet: &Jet,
        cache: &RwLock<HashMap<MultiIndex, PBWElement>>,
    ) -> Result<PBWElement> {
        let needed = p.total_degree();
        if needed > self.trunc {
            return Err(Error::TruncationTooLow {
                needed,
                available: self.trunc,
            });
        }
        let mut out = PBWElement::zero(self.dim());
        for (alpha, c) in p.terms() {
            if let Some(hit) = cache.read().unwrap().get(alpha) {
                out = out.add(&hit.scale(c));
                continue;
            }
            // Only jet coefficients of degree ≤ |α| contribute, so the cached
            // value does not depend on the truncation order.
            let mono = Poly::monomial(self.dim(), alpha.clone(), Rat::one());
            let twisted = self.env.symmetrize(&mult_distribution(&mono, jet)?);
            cache
                .write()
                .unwrap()
                .entry(alpha.clone())
                .or_insert_with(|| twisted.clone());
            out = out.add(&twisted.scale(c));
        }
        Ok(out)
    }

    /// The map `η(p) = symmetrize(q·p)`: symmetrization twisted by `q`.
    pub fn eta(&self, p: &Poly) -> Result<PBWElement> {
        self.twist(p, &self.q, &self.eta_cache)
    }

    /// The transport map `κ(p) = symmetrize((q/τ)·p)`.
    pub fn kappa(&self, p: &Poly) -> Result<PBWElement> {
        self.twist(p, &self.q_over_tau, &self.kappa_cache)
    }

    /// The inverse transport: `κ⁻¹(u) = (τ/q)·unsymmetrize(u)`.
    pub fn kappa_inv(&self, u: &PBWElement) -> Result<Poly> {
        let needed = u.filtration_degree();
        if needed > self.trunc {
            return Err(Error::TruncationTooLow {
                needed,
                available: self.trunc,
            });
        }
        mult_distribution(&self.env.unsymmetrize(u), &self.tau_over_q)
    }

    /// The star product `r ⋆ p = κ⁻¹(κ(r)·κ(p))`, exact whenever
    /// `deg r + deg p` does not exceed the truncation order.
    pub fn star(&self, r: &Poly, p: &Poly) -> Result<Poly> {
        let needed = r.total_degree() + p.total_degree();
        if needed > self.trunc {
            return Err(Error::TruncationTooLow {
                needed,
                available: self.trunc,
            });
        }
        let u = self
            .env
            .product(&self.kappa(r)?, &self.kappa(p)?)
            .expect("operands share the context's algebra");
        self.kappa_inv(&u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn ctx(name: &str, trunc: usize, profile: WheelProfile) -> StarContext {
        let env = Arc::new(Enveloping::new(LieAlgebra::catalog(name).unwrap()));
        StarContext::new(env, trunc, &profile)
    }

    fn p(src: &str, c: &StarContext) -> Poly {
        Poly::parse(src, c.algebra().names()).unwrap()
    }

    #[test]
    fn wheel_profile_parsing() {
        assert_eq!(WheelProfile::from_str("zero").unwrap(), WheelProfile::Zero);
        assert_eq!(WheelProfile::from_str("duflo").unwrap(), WheelProfile::Duflo);
        assert_eq!(
            WheelProfile::from_str("1/48,-1/5760").unwrap(),
            WheelProfile::Explicit(vec![rat(1, 48), rat(-1, 5760)])
        );
        assert!(WheelProfile::from_str("1/48,oops").is_err());
        assert_eq!(WheelProfile::from_str("5/7").unwrap().to_string(), "5/7");
    }

    #[test]
    fn wheel_resolution_pads_and_flags() {
        let short = WheelProfile::Explicit(vec![rat(1, 3)]);
        let w = WheelCoefficients::resolve(&short, 6);
        assert_eq!(w.values(), &[rat(1, 3), Rat::zero(), Rat::zero()]);
        assert!(w.padded());
        let exact = WheelCoefficients::resolve(&short, 2);
        assert_eq!(exact.values(), &[rat(1, 3)]);
        assert!(!exact.padded());
        let zero = WheelCoefficients::resolve(&WheelProfile::Zero, 7);
        assert_eq!(zero.values().len(), 3);
        assert!(!zero.padded());
    }

    #[test]
    fn canonical_wheel_values() {
        // Independent cross-check: c_{2k} = B_{2k}/(4k·(2k)!) with Bernoulli
        // numbers B_2 = 1/6, B_4 = -1/30, B_6 = 1/42, B_8 = -1/30.
        let c = duflo_wheel_values(4);
        assert_eq!(c[0], rat(1, 48));
        assert_eq!(c[1], rat(-1, 5760));
        assert_eq!(c[2], rat(1, 362880));
        assert_eq!(c[3], rat(-1, 19353600));
        let bern = [rat(1, 6), rat(-1, 30), rat(1, 42), rat(-1, 30)];
        for (k, b) in bern.iter().enumerate() {
            let k1 = k + 1;
            let expect = b / (rat_int(4 * k1 as i64)
                * Rat::from_integer(crate::rat::factorial(2 * k1 as u64)));
            assert_eq!(c[k], expect, "c_{}", 2 * k1);
        }
    }

    #[test]
    fn duflo_profile_makes_tau_equal_q() {
        for name in ["sl2", "so3", "aff1"] {
            let l = LieAlgebra::catalog(name).unwrap();
            let wheels = WheelCoefficients::resolve(&WheelProfile::Duflo, 6);
            assert_eq!(tau_jet(&l, &wheels, 6), q_jet(&l, 6), "{name}");
        }
    }

    #[test]
    fn zero_profile_makes_tau_one() {
        let l = LieAlgebra::catalog("sl2").unwrap();
        let wheels = WheelCoefficients::resolve(&WheelProfile::Zero, 6);
        assert_eq!(tau_jet(&l, &wheels, 6), Jet::one(3, 6));
    }

    #[test]
    fn q_is_even_and_trivial_on_nilpotents() {
        for name in ["sl2", "so3", "aff1"] {
            assert!(q_jet(&LieAlgebra::catalog(name).unwrap(), 6).is_even());
        }
        for name in ["heisenberg3", "ut3", "abelian_3"] {
            let l = LieAlgebra::catalog(name).unwrap();
            assert_eq!(q_jet(&l, 6), Jet::one(l.dim(), 6), "{name}");
        }
    }

    #[test]
    fn mult_distribution_examples() {
        let c = ctx("heisenberg3", 4, WheelProfile::Zero);
        let one = Jet::one(3, 4);
        let q = p("x^2*y - 3*z", &c);
        assert_eq!(mult_distribution(&q, &one).unwrap(), q);
        // x² against 1 + x² picks up the pairing factor 2!/0! = 2.
        let f = Jet::new(p("1 + x^2", &c), 4);
        assert_eq!(mult_distribution(&p("x^2", &c), &f).unwrap(), p("x^2 + 2", &c));
        // Degree-one distributions cannot pair with even jets beyond degree 0.
        assert_eq!(mult_distribution(&p("y", &c), &f).unwrap(), p("y", &c));
    }

    #[test]
    fn mult_distribution_truncation_guard() {
        let c = ctx("heisenberg3", 4, WheelProfile::Zero);
        let f = Jet::one(3, 1);
        let r = mult_distribution(&p("x^2", &c), &f);
        assert!(matches!(
            r,
            Err(Error::TruncationTooLow { needed: 2, available: 1 })
        ));
    }

    #[test]
    fn mult_distribution_is_multiplicative_in_the_jet() {
        let c = ctx("sl2", 6, WheelProfile::Duflo);
        let q = p("e^2*f + h^3 - 2*e", &c);
        let g = Jet::new(p("1 + e*f + h^2", &c), 6);
        let h = Jet::new(p("1 - h + 3*e^2", &c), 6);
        let lhs = mult_distribution(&mult_distribution(&q, &g).unwrap(), &h).unwrap();
        let rhs = mult_distribution(&q, &g.mul(&h)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_of_sl2_casimir() {
        let c = ctx("sl2", 4, WheelProfile::Duflo);
        let eta = c.eta(&p("h^2 + 4*e*f", &c)).unwrap();
        let expect = PBWElement::from_terms(
            3,
            [
                (MultiIndex(vec![0, 0, 2]), rat_int(1)),
                (MultiIndex(vec![1, 1, 0]), rat_int(4)),
                (MultiIndex(vec![0, 0, 1]), rat_int(-2)),
                (MultiIndex(vec![0, 0, 0]), rat_int(1)),
            ],
        );
        assert_eq!(eta, expect);
    }

    #[test]
    fn heisenberg_star_of_coordinates() {
        for profile in [WheelProfile::Zero, WheelProfile::Duflo] {
            let c = ctx("heisenberg3", 4, profile);
            assert_eq!(c.star(&p("x", &c), &p("y", &c)).unwrap(), p("x*y + 1/2*z", &c));
            assert_eq!(c.star(&p("y", &c), &p("x", &c)).unwrap(), p("x*y - 1/2*z", &c));
            assert_eq!(c.star(&p("z", &c), &p("x", &c)).unwrap(), p("x*z", &c));
        }
    }

    #[test]
    fn star_unit_and_truncation_guard() {
        let c = ctx("sl2", 4, WheelProfile::Duflo);
        let q = p("e^2*f - h", &c);
        assert_eq!(c.star(&Poly::one(3), &q).unwrap(), q);
        assert_eq!(c.star(&q, &Poly::one(3)).unwrap(), q);
        let big = p("e^3", &c);
        assert!(matches!(
            c.star(&big, &p("f^2", &c)),
            Err(Error::TruncationTooLow { needed: 5, available: 4 })
        ));
    }

    #[test]
    fn star_commutator_of_coordinates_is_the_bracket() {
        for name in ["sl2", "so3", "aff1", "ut3"] {
            let c = ctx(name, 4, WheelProfile::Duflo);
            let d = c.dim();
            for i in 0..d {
                for j in 0..d {
                    let xi = Poly::var(d, i);
                    let xj = Poly::var(d, j);
                    let comm = c.star(&xi, &xj).unwrap().sub(&c.star(&xj, &xi).unwrap());
                    assert_eq!(comm, c.algebra().bracket_basis(i, j), "{name} [{i},{j}]");
                }
            }
        }
    }

    #[test]
    fn kappa_round_trip() {
        for profile in [
            WheelProfile::Zero,
            WheelProfile::Duflo,
            WheelProfile::Explicit(vec![rat(5, 7)]),
        ] {
            let c = ctx("sl2", 5, profile);
            let q = p("e^2*f*h - 3*e*f + h - 2", &c);
            let u = c.kappa(&q).unwrap();
            assert_eq!(c.kappa_inv(&u).unwrap(), q);
        }
    }

    #[test]
    fn transport_sends_tau_multiples_to_eta() {
        // κ(τ·r) = η(r): the function-side twist collapses against the wheels.
        for profile in [
            WheelProfile::Duflo,
            WheelProfile::Explicit(vec![rat(1, 3), rat(-2, 5)]),
        ] {
            let c = ctx("so3", 5, profile);
            for src in ["e1", "e1*e2 - e3^2", "e1^2*e2 + 4"] {
                let r = p(src, &c);
                let r_tau = mult_distribution(&r, c.tau()).unwrap();
                assert_eq!(c.kappa(&r_tau).unwrap(), c.eta(&r).unwrap());
            }
        }
    }

    #[test]
    fn star_associativity_low_degree() {
        for (name, profile) in [
            ("sl2", WheelProfile::Duflo),
            ("so3", WheelProfile::Zero),
            ("aff1", WheelProfile::Explicit(vec![rat(1, 2)])),
        ] {
            let c = ctx(name, 6, profile);
            let d = c.dim();
            let samples: Vec<Poly> = vec![
                Poly::var(d, 0),
                Poly::var(d, d - 1).mul(&Poly::var(d, 0)),
                Poly::var(d, d - 1).add(&Poly::one(d).scale(&rat_int(2))),
            ];
            for a in &samples {
                for b in &samples {
                    for e in &samples {
                        let ab_c = c.star(&c.star(a, b).unwrap(), e).unwrap();
                        let a_bc = c.star(a, &c.star(b, e).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc, "{name}");
                    }
                }
            }
        }
    }
}
