use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::{LPoly, VirtualDim};
use crate::error::{Error, Result};

/// A descending series `Σ c_e L^e` known exactly at exponents `>= precision`.
///
/// `precision == None` marks an exact (finite) value. Everything below the
/// precision is unknown.
#[derive(Clone, PartialEq, Eq)]
pub struct TailSeries {
    known: LPoly,
    precision: Option<i64>,
}

fn coarser(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl TailSeries {
    pub fn exact(p: LPoly) -> Self {
        TailSeries { known: p, precision: None }
    }

    pub fn with_precision(p: &LPoly, precision: i64) -> Self {
        TailSeries {
            known: p.truncate_below(precision),
            precision: Some(precision),
        }
    }

    pub fn known(&self) -> &LPoly {
        &self.known
    }

    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    pub fn truncate(&self, precision: i64) -> Self {
        let p = coarser(self.precision, Some(precision));
        TailSeries {
            known: self.known.truncate_below(p.unwrap()),
            precision: p,
        }
    }

    pub fn coeff(&self, exp: i64) -> Result<BigRational> {
        match self.precision {
            Some(p) if exp < p => Err(Error::Precision(format!(
                "coefficient of L^{exp} lies below precision {p}"
            ))),
            _ => Ok(self.known.coeff(exp)),
        }
    }

    pub fn virtual_dim(&self) -> Result<VirtualDim> {
        match (self.known.virtual_dim(), self.precision) {
            (d @ VirtualDim::Finite(_), _) => Ok(d),
            (VirtualDim::NegInfinity, None) => Ok(VirtualDim::NegInfinity),
            (VirtualDim::NegInfinity, Some(p)) => Err(Error::Precision(format!(
                "all known coefficients vanish down to precision {p}"
            ))),
        }
    }

    /// `Σ_{m≥0} L^{−km}` known down to `precision`.
    pub fn geom_inverse(k: u32, precision: i64) -> Self {
        assert!(k >= 1, "geom_inverse needs k >= 1");
        let k = i64::from(k);
        let mut p = LPoly::zero();
        let mut e = 0;
        while e >= precision {
            p.add_term(e, &super::rat(1));
            e -= k;
        }
        TailSeries { known: p, precision: Some(precision) }
    }

    /// Inverse of a nonzero Laurent polynomial as a descending series.
    pub fn inverse_of(p: &LPoly, precision: i64) -> Result<Self> {
        let top = p
            .top_exponent()
            .ok_or_else(|| Error::Precondition("inverse of zero".into()))?;
        let lc = p.leading_coeff().unwrap().clone();
        // p = lc·L^top·(1 − r) with r supported on negative exponents.
        let r = -(p.shift(-top).scale(&lc.recip()) - LPoly::one());
        let rel = precision + top;
        let mut sum = LPoly::one();
        let mut power = LPoly::one();
        loop {
            power = (&power * &r).truncate_below(rel);
            if power.is_zero() {
                break;
            }
            sum += &power;
        }
        Ok(TailSeries::with_precision(&sum.shift(-top).scale(&lc.recip()), precision))
    }
}

impl fmt::Debug for TailSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TailSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.precision {
            None => write!(f, "{}", self.known),
            Some(p) if self.known.is_zero() => write!(f, "O(L^{})", p - 1),
            Some(p) => write!(f, "{} + O(L^{})", self.known, p - 1),
        }
    }
}

impl From<LPoly> for TailSeries {
    fn from(p: LPoly) -> Self {
        TailSeries::exact(p)
    }
}

impl<'a> Add<&'a TailSeries> for &TailSeries {
    type Output = TailSeries;
    fn add(self, rhs: &'a TailSeries) -> TailSeries {
        let p = coarser(self.precision, rhs.precision);
        let sum = &self.known + &rhs.known;
        TailSeries {
            known: p.map_or(sum.clone(), |p| sum.truncate_below(p)),
            precision: p,
        }
    }
}

impl<'a> Sub<&'a TailSeries> for &TailSeries {
    type Output = TailSeries;
    fn sub(self, rhs: &'a TailSeries) -> TailSeries {
        self + &(-rhs)
    }
}

impl Neg for &TailSeries {
    type Output = TailSeries;
    fn neg(self) -> TailSeries {
        TailSeries { known: -&self.known, precision: self.precision }
    }
}

impl<'a> Mul<&'a TailSeries> for &TailSeries {
    type Output = TailSeries;
    fn mul(self, rhs: &'a TailSeries) -> TailSeries {
        // (A + O(L^pa))(B + O(L^pb)) = AB + A·O(L^pb) + B·O(L^pa) + O(L^(pa+pb)).
        let mut p = None;
        if let (Some(pb), Some(ta)) = (rhs.precision, self.known.top_exponent()) {
            p = coarser(p, Some(pb + ta));
        }
        if let (Some(pa), Some(tb)) = (self.precision, rhs.known.top_exponent()) {
            p = coarser(p, Some(pa + tb));
        }
        if let (Some(pa), Some(pb)) = (self.precision, rhs.precision) {
            p = coarser(p, Some(pa + pb));
        }
        let prod = &self.known * &rhs.known;
        TailSeries {
            known: p.map_or(prod.clone(), |p| prod.truncate_below(p)),
            precision: p,
        }
    }
}

macro_rules! forward_tail {
    ($tr:ident, $m:ident) => {
        impl $tr<TailSeries> for TailSeries {
            type Output = TailSeries;
            fn $m(self, rhs: TailSeries) -> TailSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_tail!(Add, add);
forward_tail!(Sub, sub);
forward_tail!(Mul, mul);

impl Zero for TailSeries {
    fn zero() -> Self {
        TailSeries::exact(LPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.precision.is_none() && self.known.is_zero()
    }
}
