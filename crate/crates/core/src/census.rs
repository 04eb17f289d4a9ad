//! Morphism counts `P¹ → X` for toric `X`, degree zeta functions and their
//! leading constants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fq::{count_coprime_tuples, BinaryForm};
use crate::lattice::{cone_zeta, specialize_zeta};
use crate::moebius::{check_budget, closed_points_p1, mu0, mu_aggregate_fq, mu_motivic, Mu0Table};
use crate::motivic::{EulerRoute, MultiSeries};
use crate::toric::{DegreeClass, ToricVariety};
use crate::{LPoly, RatFuncL, TailSeries, VirtualDim};

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn l_minus_one() -> LPoly {
    LPoly::l() - LPoly::one()
}

/// `#P^e(F_q) = 1 + q + … + q^e`.
pub fn projective_space_count(q: &BigInt, e: u32) -> BigInt {
    (0..=e).map(|k| q.pow(k)).sum()
}

/// Whether `y` is a multidegree of curves: `y ∈ Pic^∨` with `⟨y, D_i⟩ >= 0`.
pub fn in_degree_cone(x: &ToricVariety, y: &[i64]) -> bool {
    y.len() == x.num_rays() && y.iter().all(|&v| v >= 0) && x.is_degree_class(y)
}

fn total(y: &[i64]) -> u32 {
    y.iter().sum::<i64>() as u32
}

/// Total degree of the support of the aggregated Möbius series when the
/// primitive collections are pairwise disjoint.
///
/// The local factor is then `∏_J (1 − t^J)`, so the Euler product collapses to
/// `∏_J (1 − t^J)(1 − q t^J)` and vanishes past `|d| = 2 Σ|J|`.
pub fn finite_mu_support(x: &ToricVariety) -> Option<u32> {
    let cols = x.primitive_collections();
    let mut seen = vec![false; x.num_rays()];
    for c in &cols {
        for &i in c {
            if seen[i] {
                return None;
            }
            seen[i] = true;
        }
    }
    Some(2 * cols.iter().map(|c| c.len() as u32).sum::<u32>())
}

/// The aggregated Möbius series `m(d)`, truncated or known to be complete.
#[derive(Clone, Debug)]
pub struct MuSeries<C: crate::motivic::Coefficient> {
    pub series: MultiSeries<C>,
    /// No terms exist past the truncation degree.
    pub complete: bool,
}

impl<C: crate::motivic::Coefficient> MuSeries<C> {
    fn build(x: &ToricVariety, dmax: u32, f: impl Fn(&Mu0Table, u32) -> Result<MultiSeries<C>>) -> Result<Self> {
        let support = finite_mu_support(x);
        let deg = support.map_or(dmax, |s| s.min(dmax));
        Ok(MuSeries {
            series: f(&mu0(x), deg)?,
            complete: support.is_some_and(|s| s <= dmax),
        })
    }

    pub fn covers(&self, total: u32) -> bool {
        self.complete || total <= self.series.max_degree()
    }

    fn require(&self, total: u32) -> Result<()> {
        if self.covers(total) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "Möbius series truncated at {} but |y| = {total}",
                self.series.max_degree()
            )))
        }
    }
}

impl MuSeries<BigInt> {
    pub fn fq(x: &ToricVariety, q: u64, dmax: u32) -> Result<Self> {
        Self::build(x, dmax, |mu, d| mu_aggregate_fq(mu, q, d))
    }
}

impl MuSeries<LPoly> {
    pub fn motivic(x: &ToricVariety, dmax: u32) -> Result<Self> {
        Self::build(x, dmax, |mu, d| mu_motivic(mu, d, EulerRoute::ExpLog))
    }
}

/// `#Mor_y(P¹, X)(F_q) = (q − 1)^{dim X} Σ_{0≤d≤y} m_q(d) #P^{y−d}(F_q)`.
pub fn count_closed_form(x: &ToricVariety, y: &[i64], q: u64, mu: &MuSeries<BigInt>) -> Result<BigInt> {
    if !in_degree_cone(x, y) {
        return Ok(BigInt::zero());
    }
    mu.require(total(y))?;
    let qb = BigInt::from(q);
    let mut sum = BigInt::zero();
    for (d, c) in mu.series.terms() {
        if d.iter().zip(y).all(|(&di, &yi)| i64::from(di) <= yi) {
            let p: BigInt = d
                .iter()
                .zip(y)
                .map(|(&di, &yi)| projective_space_count(&qb, (yi - i64::from(di)) as u32))
                .product();
            sum += c * p;
        }
    }
    Ok(sum * BigInt::from(q - 1).pow(x.dim() as u32))
}

/// `[Mor_y] = (L − 1)^{dim X − #I} Σ_d μ(d) ∏_i (L^{y_i − d_i + 1} − 1)`.
pub fn motivic_class(x: &ToricVariety, y: &[i64], mu: &MuSeries<LPoly>) -> Result<LPoly> {
    if !in_degree_cone(x, y) {
        return Ok(LPoly::zero());
    }
    mu.require(total(y))?;
    let mut sum = LPoly::zero();
    for (d, c) in mu.series.terms() {
        if d.iter().zip(y).all(|(&di, &yi)| i64::from(di) <= yi) {
            let p = d.iter().zip(y).fold(LPoly::one(), |acc, (&di, &yi)| {
                acc * (LPoly::l_pow(yi - i64::from(di) + 1) - LPoly::one())
            });
            sum += &(c * &p);
        }
    }
    sum.div_exact(&l_minus_one().pow(x.pic_rank() as u32))
        .ok_or_else(|| Error::InexactDivision(format!("class sum for y = {y:?} is not divisible by (L-1)^rk")))
}

/// Counts tuples of nonzero forms of degrees `y_i` with no common root along
/// any primitive collection, divided by the Néron–Severi torus `(q − 1)^{rk}`.
pub fn bruteforce_count(x: &ToricVariety, y: &[i64], q: u64) -> Result<BigInt> {
    if !in_degree_cone(x, y) {
        return Ok(BigInt::zero());
    }
    let needed = y.iter().try_fold(1u128, |acc, &e| {
        let n = (q as u128).checked_pow(e as u32 + 1)? - 1;
        acc.checked_mul(n)
    });
    check_budget(needed.unwrap_or(u128::MAX))?;
    let forms: Vec<Vec<BinaryForm>> = y.iter().map(|&e| BinaryForm::all_nonzero(q, e as u32).collect()).collect();
    let n = BigInt::from(count_coprime_tuples(&forms, &x.primitive_collections()));
    let torus = BigInt::from(q - 1).pow(x.pic_rank() as u32);
    let (quot, rem) = n.div_rem(&torus);
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!("{n} tuples not divisible by (q-1)^rk = {torus}")));
    }
    Ok(quot)
}

/// One census row.
#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub y: DegreeClass,
    pub q: u64,
    pub count: BigInt,
    pub class: Option<LPoly>,
    pub expected_dim: i64,
}

impl CountReport {
    pub const HEADER: &'static str = "y\tq\tcount\tdim\tleading\tclass";

    pub fn tsv_row(&self) -> String {
        let y = self.y.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let (leading, class) = match &self.class {
            Some(c) => (
                c.leading_coeff().map_or("0".to_string(), ToString::to_string),
                c.render_sparse(),
            ),
            None => ("-".to_string(), "-".to_string()),
        };
        format!("{y}\t{}\t{}\t{}\t{leading}\t{class}", self.q, self.count, self.expected_dim)
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tsv_row())
    }
}

/// Closed-form count of `y` at `q`, with the class in `L` when asked.
pub fn count_report(x: &ToricVariety, y: &[i64], q: u64, with_class: bool) -> Result<CountReport> {
    let t = total(y);
    let count = count_closed_form(x, y, q, &MuSeries::fq(x, q, t)?)?;
    let class = if with_class {
        Some(motivic_class(x, y, &MuSeries::motivic(x, t)?)?)
    } else {
        None
    };
    Ok(CountReport {
        y: y.to_vec(),
        q,
        count,
        class,
        expected_dim: y.iter().sum::<i64>() + x.dim() as i64,
    })
}

/// Rows `d ↦ Σ_{⟨y,x⟩ = d}` of a degree zeta function.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaTable<C> {
    pub x: Vec<i64>,
    pub rows: BTreeMap<i64, C>,
}

fn classes_up_to(x: &ToricVariety, bundle: &[i64], nmax: i64) -> Result<Vec<(i64, Vec<DegreeClass>)>> {
    (0..=nmax).map(|d| Ok((d, x.degree_classes_of_height(bundle, d)?))).collect()
}

fn max_total(levels: &[(i64, Vec<DegreeClass>)]) -> u32 {
    levels.iter().flat_map(|(_, ys)| ys.iter().map(|y| total(y))).max().unwrap_or(0)
}

pub fn degree_zeta_fq(x: &ToricVariety, bundle: &[i64], q: u64, nmax: i64) -> Result<ZetaTable<BigInt>> {
    let levels = classes_up_to(x, bundle, nmax)?;
    let mu = MuSeries::fq(x, q, max_total(&levels))?;
    let mut rows = BTreeMap::new();
    for (d, ys) in &levels {
        let mut s = BigInt::zero();
        for y in ys {
            s += count_closed_form(x, y, q, &mu)?;
        }
        rows.insert(*d, s);
    }
    Ok(ZetaTable { x: bundle.to_vec(), rows })
}

pub fn degree_zeta_mot(x: &ToricVariety, bundle: &[i64], nmax: i64) -> Result<ZetaTable<LPoly>> {
    let levels = classes_up_to(x, bundle, nmax)?;
    let mu = MuSeries::motivic(x, max_total(&levels))?;
    let mut rows = BTreeMap::new();
    for (d, ys) in &levels {
        let mut s = LPoly::zero();
        for y in ys {
            s += &motivic_class(x, y, &mu)?;
        }
        rows.insert(*d, s);
    }
    Ok(ZetaTable { x: bundle.to_vec(), rows })
}

/// Coefficients `N_d` of the specialized cone zeta of `Eff(X)^∨ ⊂ Pic(X)^∨`,
/// i.e. the number of degree classes of height `d`, for `d <= nmax`.
pub fn main_term_counts(x: &ToricVariety, bundle: &[i64], nmax: i64) -> Result<Vec<BigInt>> {
    let dual = x.effective_cone().dual()?;
    let z = specialize_zeta(&cone_zeta(&dual), bundle)?;
    Ok(z.coefficients(nmax as usize + 1))
}

/// A rational value together with a proven bound on its distance from the
/// quantity it approximates.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounded {
    pub value: BigRational,
    pub tail_bound: BigRational,
}

impl Bounded {
    pub fn is_exact(&self) -> bool {
        self.tail_bound.is_zero()
    }

    /// Whether the two enclosures overlap.
    pub fn agrees_with(&self, other: &Bounded) -> bool {
        (&self.value - &other.value).abs() <= &self.tail_bound + &other.tail_bound
    }
}

fn pow_rat(b: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(b.clone(), e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// `Σ_{n ≠ 0} |μ⁰(n)|` and the graded sums `a_k = Σ_{|n| = k} |μ⁰(n)|`.
fn mu0_abs_profile(mu: &Mu0Table) -> (BigInt, Vec<BigInt>) {
    let mut a = vec![BigInt::zero(); mu.nrays() + 1];
    for (mask, v) in mu.support() {
        if mask != 0 {
            a[mask.count_ones() as usize] += BigInt::from(v.abs());
        }
    }
    (a.iter().sum(), a)
}

/// Bound on `Σ_{|d| > dmax} |m_q(d)| q^{−|d|}`.
///
/// Coefficientwise, `Σ_{|d|=k} |m_q(d)|` is dominated by the coefficient `g_k`
/// of `G(s) = ∏_m (1 + A(s^m))^{b_m}` with `A(s) = Σ_k a_k s^k`. The terms up
/// to `kmax` are summed exactly; past that, Cauchy's bound `g_k <= G(r) r^{−k}`
/// with `1/q < r < q^{−1/2}` and `log G(r) <= A(1) Σ_m (q^m + 1) r^{2m}`.
fn majorant_tail(mu: &Mu0Table, q: u64, dmax: u32) -> BigRational {
    let (a1, a) = mu0_abs_profile(mu);
    if a1.is_zero() {
        return BigRational::zero();
    }
    let kmax = (2 * dmax as usize).max(dmax as usize + 200);
    let mut g = vec![BigInt::zero(); kmax + 1];
    g[0] = BigInt::one();
    for m in 1..=kmax / 2 {
        let b = closed_points_p1(q, m as u32);
        // A(s^m), truncated.
        let mut am = vec![BigInt::zero(); kmax + 1];
        for (k, ak) in a.iter().enumerate() {
            if k * m <= kmax {
                am[k * m] = ak.clone();
            }
        }
        // (1 + A(s^m))^b = Σ_j C(b, j) A(s^m)^j; A has order >= 2m.
        let mut factor = vec![BigInt::zero(); kmax + 1];
        factor[0] = BigInt::one();
        let mut power = factor.clone();
        let mut binom = BigInt::one();
        let mut j = 1u32;
        while 2 * m * j as usize <= kmax {
            power = mul_trunc(&power, &am, kmax);
            binom = binom * (&b - BigInt::from(j - 1)) / BigInt::from(j);
            if binom.is_zero() {
                break;
            }
            for (f, p) in factor.iter_mut().zip(&power) {
                *f += &binom * p;
            }
            j += 1;
        }
        g = mul_trunc(&g, &factor, kmax);
    }
    let qr = rat(q);
    let mut tail: BigRational = (dmax as usize + 1..=kmax)
        .map(|k| BigRational::from_integer(g[k].clone()) / pow_rat(&qr, k as i64))
        .sum();
    // r = 1/t with √q < s_up < t < q.
    let s_up = BigRational::new(BigInt::from((4 * q).sqrt() + 1), BigInt::from(2));
    let t = (&s_up + &qr) / rat(2);
    let r = t.recip();
    let r2 = &r * &r;
    let qr2 = &qr * &r2;
    let sigma = &qr2 / (rat(1) - &qr2) + &r2 / (rat(1) - &r2);
    let exponent = (BigRational::from_integer(a1) * sigma).ceil().to_integer();
    let g_r = rat(3).pow(exponent.to_i32().expect("majorant exponent fits"));
    let rho = &t / &qr;
    tail += g_r * pow_rat(&rho, kmax as i64 + 1) / (rat(1) - rho);
    tail
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], kmax: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); kmax + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(kmax + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn validate_zero_set(x: &ToricVariety, zero_set: &[usize]) -> Result<()> {
    if zero_set.iter().any(|&i| i >= x.num_rays()) {
        return Err(Error::Precondition(format!("ray index out of range in {zero_set:?}")));
    }
    Ok(())
}

/// `lim q^{−⟨y,ω⟩} #Mor_y` along directions with `⟨y, D_i⟩ = 0` exactly for `i ∈ Z`:
/// `(q − 1)^{|Z| − rk} q^{#I − |Z|} Σ_{d_Z = 0} m_q(d) q^{−|d|}`, summed for `|d| <= dmax`.
pub fn boundary_limit_fq(x: &ToricVariety, q: u64, zero_set: &[usize], dmax: u32) -> Result<Bounded> {
    validate_zero_set(x, zero_set)?;
    let mu = MuSeries::fq(x, q, dmax)?;
    let qr = rat(q);
    let mut s = BigRational::zero();
    for (d, c) in mu.series.terms() {
        if zero_set.iter().all(|&i| d[i] == 0) {
            let k: u32 = d.iter().sum();
            s += BigRational::from_integer(c.clone()) / pow_rat(&qr, i64::from(k));
        }
    }
    let e = zero_set.len() as i64 - x.pic_rank() as i64;
    let scale = pow_rat(&rat(q - 1), e) * pow_rat(&qr, (x.num_rays() - zero_set.len()) as i64);
    let tail = if mu.complete {
        BigRational::zero()
    } else {
        majorant_tail(&mu0(x), q, dmax) * scale.abs()
    };
    Ok(Bounded { value: s * scale, tail_bound: tail })
}

/// `c_fin = q^{dim X} (1 − q^{−1})^{−rk} Σ_d m_q(d) q^{−|d|}`.
pub fn c_fin(x: &ToricVariety, q: u64, dmax: u32) -> Result<Bounded> {
    boundary_limit_fq(x, q, &[], dmax)
}

const PREC: usize = 256;

/// A positive real enclosed in `[lo, hi]·2^{−PREC}`.
#[derive(Clone)]
struct Interval {
    lo: BigInt,
    hi: BigInt,
}

impl Interval {
    fn one() -> Self {
        Interval { lo: BigInt::one() << PREC, hi: BigInt::one() << PREC }
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        let s = num << PREC;
        Interval { lo: s.div_floor(den), hi: s.div_ceil(den) }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let one = BigInt::one() << PREC;
        Interval {
            lo: (&self.lo * &o.lo) >> PREC,
            hi: (&self.hi * &o.hi + &one - 1) >> PREC,
        }
    }

    fn pow(&self, mut e: u64) -> Interval {
        let mut result = Interval::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn to_rat(v: &BigInt) -> BigRational {
        BigRational::new(v.clone(), BigInt::one() << PREC)
    }
}

fn euler_factor_parts(class: &LPoly, q: u64, m: u32, rk: u32, n: u32) -> Result<(BigInt, BigInt)> {
    let qm = BigInt::from(q).pow(m);
    let points = class.eval(&BigRational::from_integer(qm.clone()))?.to_integer();
    Ok(((&qm - BigInt::one()).pow(rk) * points, qm.pow(rk + n)))
}

/// The local factor `(1 − q^{−m})^{rk} #X(F_{q^m}) / q^{m · dim X}` at a closed
/// point of degree `m`.
pub fn euler_factor(x: &ToricVariety, q: u64, m: u32) -> Result<BigRational> {
    let (num, den) = euler_factor_parts(&x.class_of_x(), q, m, x.pic_rank() as u32, x.dim() as u32)?;
    Ok(BigRational::new(num, den))
}

/// `q^{dim X} (1 − q^{−1})^{−rk} ∏_{deg P <= mmax} (1 − q^{−deg P})^{rk} #X(κ_P) / q^{deg P · dim X}`.
///
/// The product is enclosed with directed rounding. The remaining factors satisfy
/// `|f_m − 1| <= A(1) q^{−2m}`, where `A(1) = Σ_{n≠0} |μ⁰(n)|`, which bounds
/// their total contribution when the estimate applies; otherwise the tail bound
/// is `None`.
pub fn c_fin_euler(x: &ToricVariety, q: u64, mmax: u32) -> Result<(Bounded, Option<BigRational>)> {
    let rk = x.pic_rank() as u32;
    let n = x.dim() as u32;
    let class = x.class_of_x();
    let qb = BigInt::from(q);
    let mut prod = Interval::from_ratio(&qb.pow(n + rk), &(&qb - BigInt::one()).pow(rk));
    for m in 1..=mmax {
        let (num, den) = euler_factor_parts(&class, q, m, rk, n)?;
        let b = closed_points_p1(q, m)
            .to_u64()
            .ok_or_else(|| Error::Precondition(format!("too many closed points of degree {m}")))?;
        prod = prod.mul(&Interval::from_ratio(&num, &den).pow(b));
    }
    let lo = Interval::to_rat(&prod.lo);
    let hi = Interval::to_rat(&prod.hi);
    let value = (&lo + &hi) / rat(2);
    let rounding = (&hi - &lo) / rat(2);
    let (a1, _) = mu0_abs_profile(&mu0(x));
    let a1 = BigRational::from_integer(a1);
    let qr = rat(q);
    let mm = i64::from(mmax);
    let eps = &a1 / pow_rat(&qr, 2 * (mm + 1));
    let delta = rat(2) * &a1 / rat(mm + 1)
        * (pow_rat(&qr, -mm) / (&qr - rat(1)) + pow_rat(&qr, -2 * mm) / (&qr * &qr - rat(1)));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let truncation = (eps <= half && delta <= half).then(|| rat(2) * &delta * &hi);
    let bounded = Bounded {
        value,
        tail_bound: &rounding + truncation.clone().unwrap_or_else(BigRational::zero),
    };
    Ok((bounded, truncation))
}

/// The motivic analogue of [`boundary_limit_fq`]:
/// `L^{dim X} (1 − L^{−1})^{|Z| − rk} Σ_{d_Z = 0} μ(d) L^{−|d|}`, known down to
/// `precision`, exact when the Möbius series has finite support.
pub fn boundary_limit_mot(x: &ToricVariety, zero_set: &[usize], precision: i64) -> Result<TailSeries> {
    validate_zero_set(x, zero_set)?;
    let n = x.dim() as i64;
    let e = zero_set.len() as i64 - x.pic_rank() as i64;
    // dim μ(d) <= |d|/2, so terms past 2(n − precision) cannot reach precision.
    let dmax = match finite_mu_support(x) {
        Some(s) => s,
        None => (2 * (n - precision)).max(0) as u32,
    };
    let mu = MuSeries::motivic(x, dmax)?;
    let mut s = LPoly::zero();
    for (d, c) in mu.series.terms() {
        if zero_set.iter().all(|&i| d[i] == 0) {
            let k: u32 = d.iter().sum();
            s += &c.shift(-i64::from(k));
        }
    }
    let one_minus = LPoly::one() - LPoly::l_pow(-1);
    if mu.complete {
        let num = s.shift(n);
        let f = if e >= 0 {
            RatFuncL::from(num * one_minus.pow(e as u32))
        } else {
            RatFuncL::new(num, one_minus.pow((-e) as u32))?
        };
        return match f.as_lpoly() {
            Some(p) => Ok(TailSeries::exact(p.clone())),
            None => f.to_tail_series(precision),
        };
    }
    let rel = precision - n;
    let mut t = TailSeries::with_precision(&s, rel);
    if e >= 0 {
        t = &t * &TailSeries::exact(one_minus.pow(e as u32));
    } else {
        let g = TailSeries::geom_inverse(1, rel);
        for _ in 0..-e {
            t = &t * &g;
        }
    }
    Ok((&t * &TailSeries::exact(LPoly::l_pow(n))).truncate(precision))
}

/// `c_mot = L^{dim X} (1 − L^{−1})^{−rk} Σ_d μ(d) L^{−|d|}`.
pub fn c_mot(x: &ToricVariety, precision: i64) -> Result<TailSeries> {
    boundary_limit_mot(x, &[], precision)
}

/// Rays `i` with `⟨ray, D_i⟩ = 0`; these stay bounded along `n·ray`.
pub fn zero_set_of(ray: &[i64]) -> Vec<usize> {
    (0..ray.len()).filter(|&i| ray[i] == 0).collect()
}

fn check_ray(x: &ToricVariety, ray: &[i64]) -> Result<()> {
    if !in_degree_cone(x, ray) || ray.iter().all(|&v| v == 0) {
        return Err(Error::Precondition(format!("{ray:?} is not a nonzero multidegree")));
    }
    Ok(())
}

/// Normalized counts `q^{−⟨y,ω⟩} #Mor_y` along `y = n·ray` and their limit.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub ray: DegreeClass,
    pub zero_set: Vec<usize>,
    pub rows: Vec<(u32, BigRational)>,
    pub limit: Bounded,
    /// The limit along interior directions, for comparison.
    pub c_fin: Bounded,
}

impl ConvergenceReport {
    /// Whether the ray leaves every boundary divisor, so the limit is `c_fin`.
    pub fn is_interior(&self) -> bool {
        self.zero_set.is_empty()
    }
}

pub fn convergence_report(x: &ToricVariety, q: u64, ray: &[i64], steps: u32) -> Result<ConvergenceReport> {
    check_ray(x, ray)?;
    let dmax = total(ray) * steps;
    let mu = MuSeries::fq(x, q, dmax)?;
    let qr = rat(q);
    let mut rows = Vec::new();
    for n in 1..=steps {
        let y: Vec<i64> = ray.iter().map(|&v| v * i64::from(n)).collect();
        let c = count_closed_form(x, &y, q, &mu)?;
        rows.push((n, BigRational::from_integer(c) / pow_rat(&qr, i64::from(total(&y)))));
    }
    let zero_set = zero_set_of(ray);
    let limit_dmax = finite_mu_support(x).unwrap_or(dmax.max(12));
    Ok(ConvergenceReport {
        ray: ray.to_vec(),
        limit: boundary_limit_fq(x, q, &zero_set, limit_dmax)?,
        c_fin: c_fin(x, q, limit_dmax)?,
        zero_set,
        rows,
    })
}

/// Normalized classes `L^{−⟨y,ω⟩}[Mor_y]` along `y = n·ray`, with their limit
/// and the virtual dimension of each row's distance from it.
#[derive(Clone, Debug)]
pub struct MotivicConvergence {
    pub ray: DegreeClass,
    pub zero_set: Vec<usize>,
    pub rows: Vec<(u32, LPoly)>,
    pub limit: TailSeries,
    pub gaps: Vec<(u32, Result<VirtualDim>)>,
}

pub fn convergence_report_mot(x: &ToricVariety, ray: &[i64], steps: u32, precision: i64) -> Result<MotivicConvergence> {
    check_ray(x, ray)?;
    let mu = MuSeries::motivic(x, total(ray) * steps)?;
    let zero_set = zero_set_of(ray);
    let limit = boundary_limit_mot(x, &zero_set, precision)?;
    let mut rows = Vec::new();
    let mut gaps = Vec::new();
    for n in 1..=steps {
        let y: Vec<i64> = ray.iter().map(|&v| v * i64::from(n)).collect();
        let c = motivic_class(x, &y, &mu)?.shift(-i64::from(total(&y)));
        gaps.push((n, (&TailSeries::exact(c.clone()) - &limit).virtual_dim()));
        rows.push((n, c));
    }
    Ok(MotivicConvergence { ray: ray.to_vec(), zero_set, rows, limit, gaps })
}

/// Growth statistic `|a_n| n^{1−d} ρ^n` of a series, as a numeric proxy for
/// `(ρ, d)`-control.
#[derive(Clone, Debug)]
pub struct ControlReport {
    pub stats: Vec<(i64, BigRational)>,
    pub sup: BigRational,
    /// The maximum over the last third does not exceed the maximum before it.
    pub bounded: bool,
    /// Pointwise non-increasing over the last third.
    pub tail_nonincreasing: bool,
    /// Maxima over consecutive blocks of the window.
    pub envelope: Vec<BigRational>,
    pub envelope_nonincreasing: bool,
}

pub fn control_check(series: &[(i64, BigRational)], rho: &BigRational, d_order: u32, block: usize) -> ControlReport {
    assert!(block >= 1, "block length must be positive");
    let stats: Vec<(i64, BigRational)> = series
        .iter()
        .filter(|(n, _)| *n >= 1)
        .map(|(n, a)| {
            let s = a.abs() * pow_rat(&rat(*n), 1 - i64::from(d_order)) * pow_rat(rho, *n);
            (*n, s)
        })
        .collect();
    let max_of = |v: &[(i64, BigRational)]| v.iter().map(|(_, s)| s.clone()).max().unwrap_or_else(BigRational::zero);
    let sup = max_of(&stats);
    let cut = stats.len() - stats.len() / 3;
    let (head, tail) = stats.split_at(cut);
    let bounded = head.is_empty() || max_of(tail) <= max_of(head);
    let tail_nonincreasing = tail.windows(2).all(|w| w[1].1 <= w[0].1);
    let envelope: Vec<BigRational> = stats.chunks(block).map(max_of).collect();
    let envelope_nonincreasing = envelope.windows(2).all(|w| w[1] <= w[0]);
    ControlReport { stats, sup, bounded, tail_nonincreasing, envelope, envelope_nonincreasing }
}

/// `a_d = #_d − c_fin q^d N_d` for the anticanonical zeta function at `q`.
pub fn zeta_difference_fq(x: &ToricVariety, q: u64, nmax: i64) -> Result<Vec<(i64, BigRational)>> {
    let omega = x.anticanonical();
    let zeta = degree_zeta_fq(x, &omega, q, nmax)?;
    let main = main_term_counts(x, &omega, nmax)?;
    let c = c_fin(x, q, finite_mu_support(x).unwrap_or(nmax.max(12) as u32))?.value;
    let qr = rat(q);
    Ok(zeta
        .rows
        .iter()
        .map(|(&d, row)| {
            let main_d = &c * pow_rat(&qr, d) * BigRational::from_integer(main[d as usize].clone());
            (d, BigRational::from_integer(row.clone()) - main_d)
        })
        .collect())
}

/// One row of the motivic error-term check.
#[derive(Clone, Debug)]
pub struct DimRow {
    pub d: i64,
    pub row_dim: VirtualDim,
    pub diff_dim: Result<VirtualDim>,
}

impl DimRow {
    /// `virtual_dim(difference) − d`, when known.
    pub fn relative(&self) -> Option<VirtualDim> {
        match &self.diff_dim {
            Ok(VirtualDim::Finite(v)) => Some(VirtualDim::Finite(v - self.d)),
            Ok(VirtualDim::NegInfinity) => Some(VirtualDim::NegInfinity),
            Err(_) => None,
        }
    }
}

/// Rows of the anticanonical motivic zeta minus `c_mot · L^d · N_d`.
pub fn motivic_dim_check(x: &ToricVariety, nmax: i64, precision: i64) -> Result<Vec<DimRow>> {
    let omega = x.anticanonical();
    let zeta = degree_zeta_mot(x, &omega, nmax)?;
    let main = main_term_counts(x, &omega, nmax)?;
    let c = c_mot(x, precision)?;
    Ok(zeta
        .rows
        .iter()
        .map(|(&d, row)| {
            let n_d = LPoly::constant(BigRational::from_integer(main[d as usize].clone())).shift(d);
            let main_d = &c * &TailSeries::exact(n_d);
            DimRow {
                d,
                row_dim: row.virtual_dim(),
                diff_dim: (&TailSeries::exact(row.clone()) - &main_d).virtual_dim(),
            }
        })
        .collect())
}
