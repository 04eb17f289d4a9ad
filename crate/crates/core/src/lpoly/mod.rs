//! Exact Laurent polynomials in the class `L` of the affine line, rational
//! functions in `L`, and truncated descending series in `L⁻¹`.

mod ratfunc;
mod tail;

pub use ratfunc::RatFuncL;
pub use tail::TailSeries;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dimension of an element of the L-adic filtration: the top exponent, or
/// `NegInfinity` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VirtualDim {
    NegInfinity,
    Finite(i64),
}

impl VirtualDim {
    pub fn finite(self) -> Option<i64> {
        match self {
            VirtualDim::NegInfinity => None,
            VirtualDim::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for VirtualDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VirtualDim::NegInfinity => write!(f, "-inf"),
            VirtualDim::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A Laurent polynomial `Σ c_e L^e` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly::default()
    }

    pub fn one() -> Self {
        LPoly::constant(rat(1))
    }

    /// The class `L` itself.
    pub fn l() -> Self {
        LPoly::monomial(1, rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        LPoly::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        LPoly::constant(rat(c))
    }

    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LPoly { coeffs }
    }

    /// `L^exp`.
    pub fn l_pow(exp: i64) -> Self {
        LPoly::monomial(exp, rat(1))
    }

    /// Builds from `(exponent, integer coefficient)` pairs; repeated exponents add.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        terms
            .iter()
            .map(|&(e, c)| LPoly::monomial(e, rat(c)))
            .fold(LPoly::zero(), |acc, t| acc + t)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut p = LPoly::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exp: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn top_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn bottom_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.values().next_back()
    }

    pub fn virtual_dim(&self) -> VirtualDim {
        match self.top_exponent() {
            Some(e) => VirtualDim::Finite(e),
            None => VirtualDim::NegInfinity,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// True when no negative exponent occurs.
    pub fn is_polynomial(&self) -> bool {
        self.bottom_exponent().is_none_or(|e| e >= 0)
    }

    /// Exact substitution `L = q`; a negative exponent at `q = 0` is a pole.
    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        if q.is_zero() && self.bottom_exponent().is_some_and(|e| e < 0) {
            return Err(Error::Pole(format!("L^{} at L = 0", self.bottom_exponent().unwrap())));
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += c * pow_rat(q, e);
        }
        Ok(acc)
    }

    pub fn eval_int(&self, q: i64) -> BigRational {
        self.eval(&rat(q)).expect("nonzero evaluation point")
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplication by `L^k`.
    pub fn shift(&self, k: i64) -> Self {
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, x)| (e + k, x.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = LPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The substitution `L ↦ L^n`.
    pub fn substitute_power(&self, n: i64) -> Self {
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, x)| (e * n, x.clone())).collect(),
        }
    }

    /// Keeps only the terms with exponent `>= min_exp`.
    pub fn truncate_below(&self, min_exp: i64) -> Self {
        LPoly {
            coeffs: self.coeffs.range(min_exp..).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Polynomial division with remainder; both operands must be polynomials.
    pub fn div_rem_poly(&self, d: &LPoly) -> (LPoly, LPoly) {
        assert!(self.is_polynomial() && d.is_polynomial(), "div_rem_poly needs polynomials");
        let dd = d.top_exponent().expect("division by zero polynomial");
        let lc = d.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        let mut quot = LPoly::zero();
        while let Some(rd) = r.top_exponent() {
            if rd < dd {
                break;
            }
            let c = r.leading_coeff().unwrap() / &lc;
            let t = LPoly::monomial(rd - dd, c);
            r = &r - &(&t * d);
            quot = quot + t;
        }
        (quot, r)
    }

    /// Exact Laurent division; `None` when the quotient is not a Laurent polynomial.
    pub fn div_exact(&self, d: &LPoly) -> Option<LPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LPoly::zero());
        }
        let sa = self.bottom_exponent().unwrap();
        let sd = d.bottom_exponent().unwrap();
        let (q, r) = self.shift(-sa).div_rem_poly(&d.shift(-sd));
        r.is_zero().then(|| q.shift(sa - sd))
    }

    /// Monic gcd of two polynomials over Q.
    pub fn gcd_poly(a: &LPoly, b: &LPoly) -> LPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem_poly(&y);
            x = y;
            y = r;
        }
        match x.leading_coeff() {
            Some(lc) => {
                let inv = lc.recip();
                x.scale(&inv)
            }
            None => x,
        }
    }

    /// Multiplies through by the lcm of denominators and returns the integer
    /// coefficients together with that multiplier.
    pub fn clear_denominators(&self) -> (BTreeMap<i64, BigInt>, BigInt) {
        let mut l = BigInt::one();
        for c in self.coeffs.values() {
            l = l.lcm(c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e, (c * BigRational::from_integer(l.clone())).to_integer()))
            .collect();
        (ints, l)
    }

    /// Sparse rendering `exp:coeff` in descending exponent order; `0` for zero.
    pub fn render_sparse(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|(e, c)| format!("{e}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The polynomial of degree `< points.len()` through `(q, value)` pairs (Lagrange form).
pub fn interpolate(points: &[(i64, BigRational)]) -> Result<LPoly> {
    let mut out = LPoly::zero();
    for (i, (qi, vi)) in points.iter().enumerate() {
        let mut basis = LPoly::one();
        let mut denom = BigRational::one();
        for (j, (qj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            if qi == qj {
                return Err(Error::Interpolation(format!("repeated node {qi}")));
            }
            basis = &basis * &(LPoly::l() - LPoly::from_int(*qj));
            denom *= rat(qi - qj);
        }
        out += &basis.scale(&(vi / denom));
    }
    Ok(out)
}

pub(crate) fn pow_rat(q: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly({self})")
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || *e == 0;
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match *e {
                0 => {}
                1 => write!(f, "{}L", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}L^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl Zero for LPoly {
    fn zero() -> Self {
        LPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LPoly {
    fn one() -> Self {
        LPoly::one()
    }
}

impl From<i64> for LPoly {
    fn from(c: i64) -> Self {
        LPoly::from_int(c)
    }
}

impl From<BigRational> for LPoly {
    fn from(c: BigRational) -> Self {
        LPoly::constant(c)
    }
}

impl<'a> AddAssign<&'a LPoly> for LPoly {
    fn add_assign(&mut self, rhs: &'a LPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl<'a> SubAssign<&'a LPoly> for LPoly {
    fn sub_assign(&mut self, rhs: &'a LPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, &-c);
        }
    }
}

impl<'a> Add<&'a LPoly> for &LPoly {
    type Output = LPoly;
    fn add(self, rhs: &'a LPoly) -> LPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a LPoly> for &LPoly {
    type Output = LPoly;
    fn sub(self, rhs: &'a LPoly) -> LPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a LPoly> for &LPoly {
    type Output = LPoly;
    fn mul(self, rhs: &'a LPoly) -> LPoly {
        let mut out = LPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<LPoly> for LPoly {
            type Output = LPoly;
            fn $m(self, rhs: LPoly) -> LPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LPoly> for LPoly {
            type Output = LPoly;
            fn $m(self, rhs: &'a LPoly) -> LPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LPoly> for &LPoly {
            type Output = LPoly;
            fn $m(self, rhs: LPoly) -> LPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
