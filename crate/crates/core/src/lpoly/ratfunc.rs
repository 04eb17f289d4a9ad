use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::{LPoly, TailSeries};
use crate::error::{Error, Result};

/// A rational function `num/den` in `L`.
///
/// Kept reduced: `den` is a monic polynomial with nonzero constant term and no
/// common factor with `num`, so equal functions have equal representatives.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncL {
    num: LPoly,
    den: LPoly,
}

impl RatFuncL {
    pub fn new(num: LPoly, den: LPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFuncL::from(LPoly::zero()));
        }
        let sd = den.bottom_exponent().unwrap();
        let den = den.shift(-sd);
        let num = num.shift(-sd);
        let sn = num.bottom_exponent().unwrap();
        let n = num.shift(-sn);
        let g = LPoly::gcd_poly(&n, &den);
        let n = n.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let inv = den.leading_coeff().unwrap().recip();
        Ok(RatFuncL {
            num: n.shift(sn).scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn numerator(&self) -> &LPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LPoly {
        &self.den
    }

    /// The Laurent polynomial this function equals, if any.
    pub fn as_lpoly(&self) -> Option<&LPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q)?;
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator vanishes at L = {q}")));
        }
        Ok(self.num.eval(q)? / d)
    }

    pub fn recip(&self) -> Result<Self> {
        RatFuncL::new(self.den.clone(), self.num.clone())
    }

    /// Expansion as a descending series in `L⁻¹` down to `precision`.
    pub fn to_tail_series(&self, precision: i64) -> Result<TailSeries> {
        if self.num.is_zero() {
            return Ok(TailSeries::exact(LPoly::zero()));
        }
        let top = self.num.top_exponent().unwrap();
        let inv = TailSeries::inverse_of(&self.den, precision - top)?;
        Ok((&TailSeries::exact(self.num.clone()) * &inv).truncate(precision))
    }
}

impl From<LPoly> for RatFuncL {
    fn from(p: LPoly) -> Self {
        RatFuncL { num: p, den: LPoly::one() }
    }
}

impl fmt::Debug for RatFuncL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFuncL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFuncL> for &RatFuncL {
    type Output = RatFuncL;
    fn add(self, rhs: &'a RatFuncL) -> RatFuncL {
        RatFuncL::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl<'a> Sub<&'a RatFuncL> for &RatFuncL {
    type Output = RatFuncL;
    fn sub(self, rhs: &'a RatFuncL) -> RatFuncL {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFuncL> for &RatFuncL {
    type Output = RatFuncL;
    fn mul(self, rhs: &'a RatFuncL) -> RatFuncL {
        RatFuncL::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl<'a> Div<&'a RatFuncL> for &RatFuncL {
    type Output = RatFuncL;
    fn div(self, rhs: &'a RatFuncL) -> RatFuncL {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFuncL::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("nonzero divisor")
    }
}

impl Neg for &RatFuncL {
    type Output = RatFuncL;
    fn neg(self) -> RatFuncL {
        RatFuncL { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_rat {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFuncL> for RatFuncL {
            type Output = RatFuncL;
            fn $m(self, rhs: RatFuncL) -> RatFuncL {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_rat!(Add, add);
forward_rat!(Sub, sub);
forward_rat!(Mul, mul);
forward_rat!(Div, div);
