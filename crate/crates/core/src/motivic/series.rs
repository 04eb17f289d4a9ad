use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lpoly::LPoly;

/// Exact coefficient ring for truncated series.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Coefficient ring containing Q, so `exp` and `log` make sense.
pub trait RationalAlgebra: Coefficient {
    fn scale_rat(&self, r: &BigRational) -> Self;
    fn from_rat(r: BigRational) -> Self;
}

macro_rules! num_coefficient {
    ($t:ty, $from:expr) => {
        impl Coefficient for $t {
            fn zero() -> Self {
                <$t as Zero>::zero()
            }
            fn one() -> Self {
                <$t as One>::one()
            }
            fn from_i64(n: i64) -> Self {
                $from(n)
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn add(&self, other: &Self) -> Self {
                self + other
            }
            fn sub(&self, other: &Self) -> Self {
                self - other
            }
            fn mul(&self, other: &Self) -> Self {
                self * other
            }
            fn neg(&self) -> Self {
                -self
            }
        }
    };
}

num_coefficient!(BigInt, BigInt::from);
num_coefficient!(BigRational, crate::lpoly::rat);
num_coefficient!(LPoly, LPoly::from_int);

impl RationalAlgebra for BigRational {
    fn scale_rat(&self, r: &BigRational) -> Self {
        self * r
    }
    fn from_rat(r: BigRational) -> Self {
        r
    }
}

impl RationalAlgebra for LPoly {
    fn scale_rat(&self, r: &BigRational) -> Self {
        self.scale(r)
    }
    fn from_rat(r: BigRational) -> Self {
        LPoly::constant(r)
    }
}

type Part<C> = BTreeMap<Vec<u32>, C>;

/// A power series in `nvars` variables, truncated at total degree `max_degree`.
///
/// Coefficients of total degree `<= max_degree` are exact and never depend on
/// discarded terms.
#[derive(Clone, PartialEq)]
pub struct MultiSeries<C> {
    nvars: usize,
    max_degree: u32,
    coeffs: BTreeMap<Vec<u32>, C>,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn add_into<C: Coefficient>(map: &mut Part<C>, key: Vec<u32>, c: &C) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            *v = v.add(c);
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c.clone());
        }
    }
}

fn mul_parts<C: Coefficient>(a: &Part<C>, b: &Part<C>, out: &mut Part<C>) {
    for (ea, ca) in a {
        for (eb, cb) in b {
            let key: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(out, key, &ca.mul(cb));
        }
    }
}

impl<C: Coefficient> MultiSeries<C> {
    pub fn zero(nvars: usize, max_degree: u32) -> Self {
        MultiSeries { nvars, max_degree, coeffs: BTreeMap::new() }
    }

    pub fn one(nvars: usize, max_degree: u32) -> Self {
        let mut s = MultiSeries::zero(nvars, max_degree);
        s.coeffs.insert(vec![0; nvars], C::one());
        s
    }

    pub fn monomial(nvars: usize, max_degree: u32, exps: &[u32], c: C) -> Self {
        let mut s = MultiSeries::zero(nvars, max_degree);
        s.add_term(exps, &c);
        s
    }

    pub fn from_terms<'a, I>(nvars: usize, max_degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a [u32], C)>,
    {
        let mut s = MultiSeries::zero(nvars, max_degree);
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Adds `c·t^exps`, silently dropping it beyond the truncation.
    pub fn add_term(&mut self, exps: &[u32], c: &C) {
        assert_eq!(exps.len(), self.nvars, "exponent length mismatch");
        if degree(exps) <= self.max_degree {
            add_into(&mut self.coeffs, exps.to_vec(), c);
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.coeffs.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars])
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.coeffs.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        let max_degree = max_degree.min(self.max_degree);
        MultiSeries {
            nvars: self.nvars,
            max_degree,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| degree(e) <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.truncate(other.max_degree);
        for (e, c) in &other.coeffs {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiSeries {
            nvars: self.nvars,
            max_degree: self.max_degree,
            coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = MultiSeries::zero(self.nvars, self.max_degree);
        for (e, x) in &self.coeffs {
            add_into(&mut out.coeffs, e.clone(), &x.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let max = self.max_degree.min(other.max_degree);
        let mut out = MultiSeries::zero(self.nvars, max);
        let b_parts = other.graded();
        for (ea, ca) in &self.coeffs {
            let da = degree(ea);
            if da > max {
                continue;
            }
            for part in b_parts.iter().take((max - da) as usize + 1) {
                for (eb, cb) in part {
                    let key: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    add_into(&mut out.coeffs, key, &ca.mul(cb));
                }
            }
        }
        out
    }

    pub fn pow_u(&self, n: u64) -> Self {
        let mut result = MultiSeries::one(self.nvars, self.max_degree);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// The substitution `t_i ↦ t_i^m` in every variable.
    pub fn substitute_power(&self, m: u32) -> Self {
        let mut out = MultiSeries::zero(self.nvars, self.max_degree);
        for (e, c) in &self.coeffs {
            let key: Vec<u32> = e.iter().map(|x| x * m).collect();
            out.add_term(&key, c);
        }
        out
    }

    /// Homogeneous parts indexed by total degree `0..=max_degree`.
    pub fn graded(&self) -> Vec<Part<C>> {
        let mut parts = vec![BTreeMap::new(); self.max_degree as usize + 1];
        for (e, c) in &self.coeffs {
            parts[degree(e) as usize].insert(e.clone(), c.clone());
        }
        parts
    }

    fn from_graded(nvars: usize, max_degree: u32, parts: Vec<Part<C>>) -> Self {
        MultiSeries {
            nvars,
            max_degree,
            coeffs: parts.into_iter().flatten().collect(),
        }
    }

    /// Smallest total degree of a nonconstant term.
    pub fn min_positive_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| degree(e)).filter(|&d| d > 0).min()
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.constant_term() != C::one() {
            return Err(Error::Precondition("reciprocal needs constant term 1".into()));
        }
        let p = self.graded();
        let mut r: Vec<Part<C>> = Vec::with_capacity(p.len());
        r.push(BTreeMap::from([(vec![0; self.nvars], C::one())]));
        for d in 1..p.len() {
            let mut acc = BTreeMap::new();
            for k in 1..=d {
                mul_parts(&p[k], &r[d - k], &mut acc);
            }
            let neg = acc.into_iter().map(|(e, c)| (e, c.neg())).collect();
            r.push(neg);
        }
        Ok(MultiSeries::from_graded(self.nvars, self.max_degree, r))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MultiSeries<D> {
        let mut out = MultiSeries::zero(self.nvars, self.max_degree);
        for (e, c) in &self.coeffs {
            add_into(&mut out.coeffs, e.clone(), &f(c));
        }
        out
    }
}

impl<C: RationalAlgebra> MultiSeries<C> {
    /// `exp` of a series with zero constant term, via `d·F_d = Σ_k k·B_k·F_{d−k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        let b = self.graded();
        let mut f: Vec<Part<C>> = Vec::with_capacity(b.len());
        f.push(BTreeMap::from([(vec![0; self.nvars], C::one())]));
        for d in 1..b.len() {
            let mut acc = BTreeMap::new();
            for k in 1..=d {
                let kb: Part<C> = b[k]
                    .iter()
                    .map(|(e, c)| (e.clone(), c.scale_rat(&crate::lpoly::rat(k as i64))))
                    .collect();
                mul_parts(&kb, &f[d - k], &mut acc);
            }
            let inv_d = BigRational::new(1.into(), (d as i64).into());
            f.push(acc.into_iter().map(|(e, c)| (e, c.scale_rat(&inv_d))).collect());
        }
        Ok(MultiSeries::from_graded(self.nvars, self.max_degree, f))
    }

    /// `log` of a series with constant term 1, via `d·G_d = d·P_d − Σ_{k<d} k·G_k·P_{d−k}`.
    pub fn log(&self) -> Result<Self> {
        if self.constant_term() != C::one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let p = self.graded();
        let mut g: Vec<Part<C>> = Vec::with_capacity(p.len());
        g.push(BTreeMap::new());
        for d in 1..p.len() {
            let mut acc = BTreeMap::new();
            for k in 1..d {
                let kg: Part<C> = g[k]
                    .iter()
                    .map(|(e, c)| (e.clone(), c.scale_rat(&crate::lpoly::rat(k as i64))))
                    .collect();
                mul_parts(&kg, &p[d - k], &mut acc);
            }
            let inv_d = BigRational::new(1.into(), (d as i64).into());
            let mut part = p[d].clone();
            for (e, c) in acc {
                add_into(&mut part, e, &c.scale_rat(&inv_d).neg());
            }
            g.push(part);
        }
        Ok(MultiSeries::from_graded(self.nvars, self.max_degree, g))
    }

    /// `P^x = exp(x·log P)` for a series with constant term 1.
    pub fn pow_exp_log(&self, x: &C) -> Result<Self> {
        self.log()?.scale(x).exp()
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for MultiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]t^{e:?}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(deg > {})", self.max_degree)
    }
}

impl<C: Coefficient> fmt::Debug for MultiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiSeries")
            .field("nvars", &self.nvars)
            .field("max_degree", &self.max_degree)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}
