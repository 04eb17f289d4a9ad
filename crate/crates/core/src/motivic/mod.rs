//! Power-structure calculus on L-polynomial classes: the Adams-type operations
//! `Ψ_n`, the closed-point operations `Φ_n`, exponentiation of series by
//! `Q[L]` exponents and motivic Euler products.

mod series;

pub use series::{Coefficient, MultiSeries, RationalAlgebra};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lpoly::{rat, LPoly};
use crate::numtheory::{divisors, mobius};

/// `Ψ_n`: the substitution `L ↦ L^n`, a ring endomorphism of `Q[L, L⁻¹]`.
pub fn psi_n(p: &LPoly, n: u32) -> LPoly {
    assert!(n >= 1, "psi_n needs n >= 1");
    p.substitute_power(i64::from(n))
}

/// `Φ_n = (1/n) Σ_{d|n} μ(n/d)·Ψ_d`, the class of closed points of degree `n`.
pub fn phi_n(p: &LPoly, n: u32) -> LPoly {
    assert!(n >= 1, "phi_n needs n >= 1");
    let n64 = u64::from(n);
    let mut acc = LPoly::zero();
    for d in divisors(n64) {
        let m = mobius(n64 / d);
        if m != 0 {
            acc += &psi_n(p, d as u32).scale(&rat(m));
        }
    }
    acc.scale(&BigRational::new(1.into(), n64.into()))
}

/// The values `Ψ_1..Ψ_N` and `Φ_1..Φ_N` of one class.
#[derive(Clone, Debug, PartialEq)]
pub struct AdamsSequence {
    pub class: LPoly,
    pub psi: Vec<LPoly>,
    pub phi: Vec<LPoly>,
}

impl AdamsSequence {
    pub fn new(class: &LPoly, n_max: u32) -> Self {
        AdamsSequence {
            class: class.clone(),
            psi: (1..=n_max).map(|n| psi_n(class, n)).collect(),
            phi: (1..=n_max).map(|n| phi_n(class, n)).collect(),
        }
    }

    /// Checks `Ψ_n = Σ_{d|n} d·Φ_d` for every stored `n`.
    pub fn check_roundtrip(&self) -> bool {
        (1..=self.psi.len() as u64).all(|n| {
            let mut acc = LPoly::zero();
            for d in divisors(n) {
                acc += &self.phi[d as usize - 1].scale(&rat(d as i64));
            }
            acc == self.psi[n as usize - 1]
        })
    }
}

/// `[P¹] = 1 + L`.
pub fn class_p1() -> LPoly {
    LPoly::from_int_terms(&[(0, 1), (1, 1)])
}

/// `P^x = exp(x·log P)` for a series with constant term 1.
pub fn series_pow(p: &MultiSeries<LPoly>, x: &LPoly) -> Result<MultiSeries<LPoly>> {
    p.pow_exp_log(x)
}

/// `Σ_{k≥0} binom(x, k)·A^k` with `A = P − 1`, using memoized falling
/// factorials `x(x−1)…(x−k+1)/k!`.
pub fn series_pow_binomial(p: &MultiSeries<LPoly>, x: &LPoly) -> Result<MultiSeries<LPoly>> {
    binomial_factor(p, x, 1)
}

/// `P(t^f)^x` expanded as `Σ_k binom(x, k)·A(t^f)^k`.
fn binomial_factor(p: &MultiSeries<LPoly>, x: &LPoly, f: u32) -> Result<MultiSeries<LPoly>> {
    if p.constant_term() != LPoly::one() {
        return Err(Error::Precondition("series power needs constant term 1".into()));
    }
    let n = p.nvars();
    let dmax = p.max_degree();
    let a = p.sub(&MultiSeries::one(n, dmax)).substitute_power(f);
    let mut out = MultiSeries::one(n, dmax);
    let Some(mindeg) = a.min_positive_degree() else {
        return Ok(out);
    };
    let mut binom = LPoly::one();
    let mut a_pow = MultiSeries::one(n, dmax);
    let mut k: u32 = 1;
    while k * mindeg <= dmax {
        binom = (&binom * &(x - &LPoly::from_int(i64::from(k) - 1)))
            .scale(&BigRational::new(1.into(), i64::from(k).into()));
        a_pow = a_pow.mul(&a);
        out = out.add(&a_pow.scale(&binom));
        k += 1;
    }
    Ok(out)
}

/// Exponent vectors `x_1, x_2, …` of a product `∏_n P(t^n)^{x_n}`.
pub type ExponentSequence<'a> = &'a dyn Fn(u32) -> LPoly;

/// Which route evaluates a product `∏_n P(t^n)^{x_n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerRoute {
    /// `exp(Σ_n x_n·log P(t^n))`.
    ExpLog,
    /// Product of generalized binomial expansions (the combinatorial lemma).
    Binomial,
}

/// `∏_{n≥1} P(t^n)^{x_n}`, truncated; factors that only reach degrees beyond
/// the truncation are skipped exactly.
pub fn euler_product(
    p: &MultiSeries<LPoly>,
    exponents: ExponentSequence<'_>,
    route: EulerRoute,
) -> Result<MultiSeries<LPoly>> {
    if p.constant_term() != LPoly::one() {
        return Err(Error::Precondition("Euler product needs constant term 1".into()));
    }
    let n = p.nvars();
    let dmax = p.max_degree();
    let Some(mindeg) = p.sub(&MultiSeries::one(n, dmax)).min_positive_degree() else {
        return Ok(MultiSeries::one(n, dmax));
    };
    let last = dmax / mindeg;
    match route {
        EulerRoute::ExpLog => {
            let mut log_sum = MultiSeries::zero(n, dmax);
            for f in 1..=last {
                let x = exponents(f);
                if x.is_zero() {
                    continue;
                }
                log_sum = log_sum.add(&p.substitute_power(f).log()?.scale(&x));
            }
            log_sum.exp()
        }
        EulerRoute::Binomial => {
            let mut out = MultiSeries::one(n, dmax);
            for f in 1..=last {
                let x = exponents(f);
                if x.is_zero() {
                    continue;
                }
                out = out.mul(&binomial_factor(p, &x, f)?);
            }
            Ok(out)
        }
    }
}

/// `∏_{n≥1} local(t^n)^{Φ_n(P¹)}`.
pub fn motivic_euler_product(local: &MultiSeries<LPoly>, route: EulerRoute) -> Result<MultiSeries<LPoly>> {
    let p1 = class_p1();
    euler_product(local, &|n| phi_n(&p1, n), route)
}

/// `Σ_n [Sym^n P¹]·t^n = 1/((1−t)(1−L·t))`.
pub fn hw_zeta_p1(dmax: u32) -> MultiSeries<LPoly> {
    let mut s = MultiSeries::zero(1, dmax);
    for k in 0..=dmax {
        let c = (0..=i64::from(k)).map(LPoly::l_pow).fold(LPoly::zero(), |a, b| a + b);
        s.add_term(&[k], &c);
    }
    s
}

/// First coefficient where two one-variable series disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMismatch {
    pub exponent: Vec<u32>,
    pub left: LPoly,
    pub right: LPoly,
}

pub fn first_mismatch(a: &MultiSeries<LPoly>, b: &MultiSeries<LPoly>) -> Option<SeriesMismatch> {
    let diff = a.sub(b);
    let e = diff.terms().next()?.0.to_vec();
    Some(SeriesMismatch { left: a.coeff(&e), right: b.coeff(&e), exponent: e })
}

/// Compares a Hasse–Weil zeta series with `∏_n (1 − t^n)^{−Φ_n(class)}`.
pub fn verify_power_identity(zeta: &MultiSeries<LPoly>, class: &LPoly) -> Result<Option<SeriesMismatch>> {
    let dmax = zeta.max_degree();
    let one_minus_t = MultiSeries::from_terms(1, dmax, [(&[0u32][..], LPoly::one()), (&[1u32][..], LPoly::from_int(-1))]);
    let product = euler_product(&one_minus_t, &|n| -phi_n(class, n), EulerRoute::ExpLog)?;
    Ok(first_mismatch(zeta, &product))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> LPoly {
        LPoly::l()
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_n(&LPoly::l_pow(3), 4), LPoly::l_pow(12));
        assert_eq!(psi_n(&class_p1(), 2), LPoly::one() + LPoly::l_pow(2));
        assert_eq!(psi_n(&class_p1(), 1), class_p1());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_n(&class_p1(), 1), class_p1());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(phi_n(&class_p1(), 2), (l().pow(2) - l()).scale(&half));
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(phi_n(&class_p1(), 3), (l().pow(3) - l()).scale(&third));
    }

    #[test]
    fn adams_roundtrip() {
        let x = LPoly::from_int_terms(&[(3, 2), (1, -1), (0, 5)]);
        assert!(AdamsSequence::new(&x, 12).check_roundtrip());
    }

    #[test]
    fn hw_zeta_coefficients() {
        let z = hw_zeta_p1(4);
        assert_eq!(z.coeff(&[0]), LPoly::one());
        assert_eq!(z.coeff(&[2]), LPoly::from_int_terms(&[(0, 1), (1, 1), (2, 1)]));
        let inv = z.reciprocal().unwrap();
        assert_eq!(inv.coeff(&[1]), -class_p1());
        assert_eq!(inv.coeff(&[2]), l());
        assert!(inv.coeff(&[3]).is_zero() && inv.coeff(&[4]).is_zero());
    }

    #[test]
    fn power_identity_for_p1_and_point() {
        assert_eq!(verify_power_identity(&hw_zeta_p1(10), &class_p1()).unwrap(), None);
        assert_eq!(verify_power_identity(&hw_zeta_p1(0), &class_p1()).unwrap(), None);
        let mut point_zeta = MultiSeries::zero(1, 8);
        for k in 0..=8 {
            point_zeta.add_term(&[k], &LPoly::one());
        }
        assert_eq!(verify_power_identity(&point_zeta, &LPoly::one()).unwrap(), None);
    }

    #[test]
    fn binomial_series_of_one_minus_t() {
        let p = MultiSeries::from_terms(1, 3, [(&[0u32][..], LPoly::one()), (&[1u32][..], LPoly::from_int(-1))]);
        let x = -class_p1();
        let s = series_pow(&p, &x).unwrap();
        assert_eq!(s.coeff(&[1]), class_p1());
        let c2 = (&class_p1() * &(l() + LPoly::from_int(2))).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(s.coeff(&[2]), c2);
        assert_eq!(series_pow_binomial(&p, &x).unwrap(), s);
        assert_eq!(series_pow(&p, &LPoly::one()).unwrap(), p);
    }

    #[test]
    fn euler_product_of_one_minus_t() {
        let p = MultiSeries::from_terms(1, 6, [(&[0u32][..], LPoly::one()), (&[1u32][..], LPoly::from_int(-1))]);
        for route in [EulerRoute::ExpLog, EulerRoute::Binomial] {
            let e = motivic_euler_product(&p, route).unwrap();
            assert_eq!(e.coeff(&[1]), -class_p1());
            assert_eq!(e.coeff(&[2]), l());
            for k in 3..=6 {
                assert!(e.coeff(&[k]).is_zero());
            }
        }
        let one = MultiSeries::one(2, 5);
        assert_eq!(motivic_euler_product(&one, EulerRoute::ExpLog).unwrap(), one);
    }
}
