//! `P²` blown up at three collinear points.
//!
//! The Cox ring is `k[x₀,…,x₆]/(x₁x₄ + x₂x₅ + x₃x₆)`. Divisor `D₀` is the
//! strict transform of the line, `D₁,D₂,D₃` the exceptional curves and
//! `D₄,D₅,D₆` the lines through a fourth point and the blown-up points.
//! Degrees are given in the basis `(D₀,D₁,D₂,D₃)` of `Pic`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::census::CountReport;
use crate::error::{Error, Result};
use crate::fq::{gcd_degree, have_common_root, rank_mod_p, BinaryForm};
use crate::lpoly::interpolate;
use crate::moebius::{check_budget, Mu0Table};
use crate::motivic::MultiSeries;
use crate::LPoly;

pub const NUM_DIVISORS: usize = 7;
pub const PIC_RANK: u32 = 4;
pub const DIM: u32 = 2;
/// Anticanonical class `3D₀ + 2D₁ + 2D₂ + 2D₃`.
pub const OMEGA: [i64; 4] = [3, 2, 2, 2];

/// Pairs of boundary divisors that do not meet. Every other set of divisors
/// without such a pair meets (`D₄ ∩ D₅ ∩ D₆` is the fourth point).
pub const FORBIDDEN: [(usize, usize); 12] = [
    (0, 4),
    (0, 5),
    (0, 6),
    (1, 2),
    (1, 3),
    (2, 3),
    (1, 5),
    (1, 6),
    (2, 4),
    (2, 6),
    (3, 4),
    (3, 5),
];

/// Primes used to interpolate counting polynomials.
pub const INTERPOLATION_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// `d₄ = d₀+d₂+d₃`, `d₅ = d₀+d₁+d₃`, `d₆ = d₀+d₁+d₂`.
pub fn full_degree(d: &[i64; 4]) -> [i64; 7] {
    [d[0], d[1], d[2], d[3], d[0] + d[2] + d[3], d[0] + d[1] + d[3], d[0] + d[1] + d[2]]
}

/// Degree of the relation: `d₀+d₁+d₂+d₃`, shared by its three monomials.
pub fn relation_degree(d: &[i64; 4]) -> i64 {
    d.iter().sum()
}

pub fn omega_pairing(d: &[i64; 4]) -> i64 {
    d.iter().zip(OMEGA).map(|(a, b)| a * b).sum()
}

/// Dimension of the space of morphisms of degree `d`.
pub fn expected_dim(d: &[i64; 4]) -> i64 {
    omega_pairing(d) + i64::from(DIM)
}

/// Whether the divisors in `mask` have a common point.
pub fn meets(mask: u32) -> bool {
    FORBIDDEN.iter().all(|&(i, j)| mask & (1 << i) == 0 || mask & (1 << j) == 0)
}

/// `μ⁰` from the minimal non-meeting sets.
pub fn mu0_cox3() -> Mu0Table {
    let minimal: Vec<u32> = FORBIDDEN.iter().map(|&(i, j)| (1 << i) | (1 << j)).collect();
    Mu0Table::from_minimal_nonfaces(NUM_DIVISORS, &minimal)
}

/// `μ⁰` by Möbius inversion of the incidence indicator.
pub fn mu0_cox3_from_incidences() -> Mu0Table {
    Mu0Table::from_faces(NUM_DIVISORS, meets)
}

/// `#X(F_q) = 1 + 4q + q²`.
pub fn point_count_x(q: &BigInt) -> BigInt {
    BigInt::one() + q * 4 + q * q
}

fn nonneg(d: &[i64; 4]) -> Result<[u32; 7]> {
    if d.iter().any(|&v| v < 0) {
        return Err(Error::Precondition(format!("degree {d:?} has a negative entry")));
    }
    Ok(full_degree(d).map(|v| v as u32))
}

fn coprime(a: &BinaryForm, b: &BinaryForm) -> bool {
    a.degree() == 0 || b.degree() == 0 || !have_common_root(&[a, b])
}

fn forbidden_after(k: usize) -> Vec<usize> {
    FORBIDDEN.iter().filter(|&&(_, j)| j == k).map(|&(i, _)| i).collect()
}

/// Morphisms `P¹ → U` of degree `d` over `F_q`, i.e. tuples of nonzero forms
/// satisfying the relation and avoiding the forbidden incidences, modulo the
/// free action of the Néron–Severi torus.
///
/// `P₀,…,P₃` run over projective representatives (one per torus orbit),
/// `P₄,P₅` over all nonzero forms, and `P₆` is solved from the relation.
pub fn bruteforce_count_cox3(d: &[i64; 4], q: u64) -> Result<BigInt> {
    enumerate(d, q, true)
}

/// Same count, enumerating all nonzero `P₀,…,P₃` and dividing by `(q−1)⁴`.
pub fn bruteforce_count_cox3_unnormalized(d: &[i64; 4], q: u64) -> Result<BigInt> {
    let raw = enumerate(d, q, false)?;
    let unit = BigInt::from(q - 1).pow(PIC_RANK);
    if !(&raw % &unit).is_zero() {
        return Err(Error::InexactDivision(format!("{raw} by (q-1)^4 = {unit}")));
    }
    Ok(raw / unit)
}

fn enumerate(d: &[i64; 4], q: u64, normalized: bool) -> Result<BigInt> {
    let deg = nonneg(d)?;
    let choices = |k: usize| -> Vec<BinaryForm> {
        if k < 4 && normalized {
            BinaryForm::projective(q, deg[k]).collect()
        } else {
            BinaryForm::all_nonzero(q, deg[k]).collect()
        }
    };
    let forms: Vec<Vec<BinaryForm>> = (0..6).map(choices).collect();
    check_budget(forms.iter().map(|f| f.len() as u128).product())?;
    let after: Vec<Vec<usize>> = (0..7).map(forbidden_after).collect();
    let outer: Vec<(usize, usize)> =
        (0..forms[0].len()).flat_map(|a| (0..forms[1].len()).map(move |b| (a, b))).collect();
    let total: u64 = outer
        .par_iter()
        .map(|&(a, b)| {
            let mut p: Vec<&BinaryForm> = vec![&forms[0][a], &forms[1][b]];
            let mut count = 0u64;
            let ok = |p: &[&BinaryForm], k: usize, f: &BinaryForm| after[k].iter().all(|&i| coprime(p[i], f));
            for f2 in &forms[2] {
                if !ok(&p, 2, f2) {
                    continue;
                }
                p.push(f2);
                for f3 in &forms[3] {
                    if !ok(&p, 3, f3) {
                        continue;
                    }
                    p.push(f3);
                    for f4 in &forms[4] {
                        if !ok(&p, 4, f4) {
                            continue;
                        }
                        let m14 = p[1].mul(f4);
                        p.push(f4);
                        for f5 in &forms[5] {
                            if !ok(&p, 5, f5) {
                                continue;
                            }
                            let rhs = m14.add(&p[2].mul(f5)).neg();
                            let Some(f6) = rhs.div_exact(p[3]) else { continue };
                            p.push(f5);
                            if !f6.is_zero() && ok(&p, 6, &f6) {
                                count += 1;
                            }
                            p.pop();
                        }
                        p.pop();
                    }
                    p.pop();
                }
                p.pop();
            }
            count
        })
        .sum();
    Ok(BigInt::from(total))
}

/// The counting polynomial of degree `d`, interpolated through the counts at
/// the given primes.
pub fn counting_polynomial(d: &[i64; 4], primes: &[u64]) -> Result<LPoly> {
    let points: Vec<(i64, BigRational)> = primes
        .iter()
        .map(|&q| Ok((q as i64, BigRational::from_integer(bruteforce_count_cox3(d, q)?))))
        .collect::<Result<_>>()?;
    interpolate(&points)
}

/// Count row in the census format; the class is the interpolated polynomial.
pub fn count_report_cox3(d: &[i64; 4], q: u64, with_class: bool) -> Result<CountReport> {
    let class = if with_class { Some(counting_polynomial(d, &INTERPOLATION_PRIMES)?) } else { None };
    Ok(CountReport {
        y: full_degree(d).to_vec(),
        q,
        count: bruteforce_count_cox3(d, q)?,
        class,
        expected_dim: expected_dim(d),
    })
}

fn check_syzygy_degrees(e: &[u32; 3], big_d: u32, r: &[&BinaryForm; 3]) -> Result<()> {
    for i in 0..3 {
        if r[i].is_zero() || r[i].degree() != e[i] {
            return Err(Error::Precondition(format!("R{} must be nonzero of degree {}", i + 1, e[i])));
        }
        if e[i] > big_d {
            return Err(Error::Precondition(format!("e{} = {} > D = {big_d}", i + 1, e[i])));
        }
        for j in i + 1..3 {
            if e[i] + e[j] > big_d {
                return Err(Error::Precondition(format!("e{} + e{} > D = {big_d}", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Dimension of `{(R′ᵢ) : deg R′ᵢ = D − eᵢ, Σ RᵢR′ᵢ = 0}`:
/// `2 + 2D − Σeᵢ + deg gcd(R₁,R₂,R₃)`.
pub fn lemma312_dim(e: &[u32; 3], big_d: u32, r: &[&BinaryForm; 3]) -> Result<i64> {
    check_syzygy_degrees(e, big_d, r)?;
    let sum: u32 = e.iter().sum();
    Ok(2 + 2 * i64::from(big_d) - i64::from(sum) + i64::from(gcd_degree(r)))
}

/// Nullspace dimension of `(R′ᵢ) ↦ Σ RᵢR′ᵢ` over `F_q`, by Gaussian elimination.
pub fn syzygy_nullity(big_d: u32, r: &[&BinaryForm; 3]) -> usize {
    let q = r[0].modulus();
    let blocks: Vec<(usize, &[u64])> =
        r.iter().map(|f| ((big_d - f.degree()) as usize + 1, f.coeffs())).collect();
    let ncols: usize = blocks.iter().map(|b| b.0).sum();
    let mut rows = vec![vec![0u64; ncols]; big_d as usize + 1];
    let mut col = 0;
    for (width, coeffs) in blocks {
        for b in 0..width {
            for (a, &c) in coeffs.iter().enumerate() {
                rows[a + b][col + b] = c;
            }
        }
        col += width;
    }
    ncols - rank_mod_p(&rows, q)
}

fn shifted_degrees(d: &[i64; 4], qf: &[BinaryForm]) -> Result<Option<[u32; 7]>> {
    if qf.len() != NUM_DIVISORS || qf.iter().any(BinaryForm::is_zero) {
        return Err(Error::Precondition("need seven nonzero forms".into()));
    }
    let deg = nonneg(d)?;
    let mut out = [0u32; 7];
    for i in 0..7 {
        match deg[i].checked_sub(qf[i].degree()) {
            Some(v) => out[i] = v,
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// `N_X` for the divisor tuple cut out by the forms `Q₀,…,Q₆`: tuples with
/// `P₀,…,P₃` nonzero and `P₄,P₅,P₆` arbitrary of degrees `dᵢ − deg Qᵢ`, with
/// `Σ PᵢP_{i+3}QᵢQ_{i+3} = 0`. No coprimality is imposed.
pub fn nx_bruteforce(d: &[i64; 4], qf: &[BinaryForm], q: u64) -> Result<BigInt> {
    let Some(p) = shifted_degrees(d, qf)? else { return Ok(BigInt::zero()) };
    let all = |k: usize| -> Vec<BinaryForm> {
        (0..q.pow(p[k] + 1)).map(|i| BinaryForm::from_index(q, p[k], i)).collect()
    };
    let nz = |k: usize| -> Vec<BinaryForm> { BinaryForm::all_nonzero(q, p[k]).collect() };
    let (f1, f2, f3, f4, f5) = (nz(1), nz(2), nz(3), all(4), all(5));
    check_budget([&f1, &f2, &f3, &f4, &f5].iter().map(|f| f.len() as u128).product())?;
    let a: Vec<BinaryForm> = f1.iter().map(|f| f.mul(&qf[1]).mul(&qf[4])).collect();
    let b: Vec<BinaryForm> = f2.iter().map(|f| f.mul(&qf[2]).mul(&qf[5])).collect();
    let c: Vec<BinaryForm> = f3.iter().map(|f| f.mul(&qf[3]).mul(&qf[6])).collect();
    let solutions: u64 = (0..a.len())
        .into_par_iter()
        .map(|i| {
            let mut n = 0u64;
            for bj in &b {
                for ck in &c {
                    for g4 in &f4 {
                        let s4 = a[i].mul(g4);
                        for g5 in &f5 {
                            let rhs = s4.add(&bj.mul(g5)).neg();
                            if rhs.div_exact(ck).is_some() {
                                n += 1;
                            }
                        }
                    }
                }
            }
            n
        })
        .sum();
    // P₀ does not enter the relation
    Ok(BigInt::from(solutions) * BigInt::from(BinaryForm::count_nonzero(q, p[0])))
}

/// Closed form for `N_X` via the dimension lemma, valid when
/// `deg Q_{i+3} + deg Q_{j+3} ≤ d₀ + d_k` for `{i,j,k} = {1,2,3}`:
/// `(q−1)⁴ q^{2+2d₀+d₁+d₂+d₃−Σ deg Q_{4..6}} Σ_E q^{deg gcd(PᵢQᵢQ_{i+3})}`,
/// `E` running over projective classes of `P₀,…,P₃`.
pub fn nx_formula(d: &[i64; 4], qf: &[BinaryForm], q: u64) -> Result<BigInt> {
    let Some(p) = shifted_degrees(d, qf)? else { return Ok(BigInt::zero()) };
    let dq: Vec<i64> = qf.iter().map(|f| i64::from(f.degree())).collect();
    for (i, j, k) in [(1, 2, 3), (1, 3, 2), (2, 3, 1)] {
        if dq[i + 3] + dq[j + 3] > d[0] + d[k] {
            return Err(Error::Precondition(format!(
                "deg Q{} + deg Q{} > d0 + d{k}",
                i + 3,
                j + 3
            )));
        }
    }
    let proj = |k: usize| -> Vec<BinaryForm> { BinaryForm::projective(q, p[k]).collect() };
    let (f1, f2, f3) = (proj(1), proj(2), proj(3));
    check_budget((f1.len() * f2.len() * f3.len()) as u128)?;
    let a: Vec<BinaryForm> = f1.iter().map(|f| f.mul(&qf[1]).mul(&qf[4])).collect();
    let b: Vec<BinaryForm> = f2.iter().map(|f| f.mul(&qf[2]).mul(&qf[5])).collect();
    let c: Vec<BinaryForm> = f3.iter().map(|f| f.mul(&qf[3]).mul(&qf[6])).collect();
    let mut by_gcd: BTreeMap<u32, u64> = BTreeMap::new();
    for x in &a {
        for y in &b {
            for z in &c {
                *by_gcd.entry(gcd_degree(&[x, y, z])).or_default() += 1;
            }
        }
    }
    let qb = BigInt::from(q);
    let exponent = 2 + 2 * d[0] + d[1] + d[2] + d[3] - dq[4] - dq[5] - dq[6];
    let weighted: BigInt = by_gcd.iter().map(|(&g, &n)| BigInt::from(n) * qb.pow(g)).sum();
    let p0 = crate::census::projective_space_count(&qb, p[0]);
    Ok(BigInt::from(q - 1).pow(PIC_RANK) * qb.pow(exponent as u32) * p0 * weighted)
}

/// Outcome of a series or function identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// First disagreeing coefficient, or the nonzero difference.
    pub witness: Option<String>,
}

impl IdentityCheck {
    fn compare(lhs: &MultiSeries<BigInt>, rhs: &MultiSeries<BigInt>) -> Self {
        let diff = lhs.sub(rhs);
        let witness = diff.terms().next().map(|(e, c)| format!("{e:?}: difference {c}"));
        IdentityCheck { holds: witness.is_none(), witness }
    }
}

fn geometric(nvars: usize, t: u32, exps: &[u32], c: i64) -> Result<MultiSeries<BigInt>> {
    let one = MultiSeries::one(nvars, t);
    one.sub(&MultiSeries::monomial(nvars, t, exps, BigInt::from(c))).reciprocal()
}

/// Left side of the gcd generating identity in `(θ, t₀, t₁, t₂, t₃)`:
/// `Σ_n θ^{min(n₁,n₂,n₃)} tⁿ` to total degree `truncation`.
pub fn gcd_series_direct(truncation: u32) -> MultiSeries<BigInt> {
    let mut s = MultiSeries::zero(5, truncation);
    for n in crate::moebius::exponents_up_to(4, truncation) {
        let m = n[1].min(n[2]).min(n[3]);
        s.add_term(&[m, n[0], n[1], n[2], n[3]], &BigInt::one());
    }
    s.truncate(truncation)
}

/// Right side: `(1−t₁t₂t₃)/(1−θt₁t₂t₃) · ∏_{0≤i≤3} 1/(1−tᵢ)`.
pub fn gcd_series_closed(truncation: u32) -> Result<MultiSeries<BigInt>> {
    let t = truncation;
    let mut s = MultiSeries::one(5, t).sub(&MultiSeries::monomial(5, t, &[0, 0, 1, 1, 1], BigInt::one()));
    s = s.mul(&geometric(5, t, &[1, 0, 1, 1, 1], 1)?);
    for i in 1..5 {
        let mut e = [0u32; 5];
        e[i] = 1;
        s = s.mul(&geometric(5, t, &e, 1)?);
    }
    Ok(s)
}

pub fn gcd_identity_check(truncation: u32) -> Result<IdentityCheck> {
    if truncation < 2 {
        return Err(Error::Precondition("truncation must be at least 2".into()));
    }
    Ok(IdentityCheck::compare(&gcd_series_direct(truncation), &gcd_series_closed(truncation)?))
}

/// Polynomial in `(θ, u)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly(BTreeMap<(u32, u32), BigInt>);

impl BiPoly {
    pub fn monomial(theta: u32, u: u32, c: i64) -> Self {
        let mut p = BiPoly::default();
        p.add_term(theta, u, &BigInt::from(c));
        p
    }

    fn add_term(&mut self, theta: u32, u: u32, c: &BigInt) {
        let v = self.0.entry((theta, u)).or_default();
        *v += c;
        if v.is_zero() {
            self.0.remove(&(theta, u));
        }
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &o.0 {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, c: i64) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(a, b), v) in &self.0 {
            out.add_term(a, b, &(v * c));
        }
        out
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(a, b), v) in &self.0 {
            for (&(c, d), w) in &o.0 {
                out.add_term(a + c, b + d, &(v * w));
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.0.iter().map(|(&k, v)| (k, v))
    }

    /// Value at `θ = 1` as a polynomial in `u` (`L` standing for `u`).
    pub fn at_theta_one(&self) -> LPoly {
        let mut out = LPoly::zero();
        for ((_, b), c) in self.terms() {
            out += &LPoly::monomial(i64::from(b), BigRational::from_integer(c.clone()));
        }
        out
    }

    /// Value at `θ = s`, `u = s⁻¹` (`L` standing for `s`).
    pub fn at_reciprocal(&self) -> LPoly {
        let mut out = LPoly::zero();
        for ((a, b), c) in self.terms() {
            out += &LPoly::monomial(i64::from(a) - i64::from(b), BigRational::from_integer(c.clone()));
        }
        out
    }

    fn series(&self, max_degree: u32) -> MultiSeries<BigInt> {
        let mut s = MultiSeries::zero(2, max_degree);
        for ((a, b), c) in self.terms() {
            s.add_term(&[a, b], c);
        }
        s.truncate(max_degree)
    }
}

/// `Σ_{m∈N⁴} θ^{min_{1≤i≤3}(mᵢ+nᵢ+n_{i+3})} u^{|m|}` as `num / ((1−u)⁴ (1−θu³))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub n: [u8; 7],
    pub num: BiPoly,
}

impl LocalFactor {
    /// Expansion in `(θ, u)` to total degree `max_degree`.
    pub fn series(&self, max_degree: u32) -> Result<MultiSeries<BigInt>> {
        let mut s = self.num.series(max_degree).mul(&geometric(2, max_degree, &[1, 3], 1)?);
        for _ in 0..4 {
            s = s.mul(&geometric(2, max_degree, &[0, 1], 1)?);
        }
        Ok(s)
    }

    /// `(1−u)⁴ F̃_n` at `θ = s`, `u = s⁻¹`, as `(numerator, denominator)` in `s`.
    pub fn normalized_at_reciprocal(&self) -> (LPoly, LPoly) {
        (self.num.at_reciprocal(), LPoly::one() - LPoly::l_pow(-2))
    }
}

/// Closed form of the local factor attached to the multiplicities `n`.
///
/// With `aᵢ = nᵢ + n_{i+3}`, `θ^M = 1 + (θ−1) Σ_{k≥1} θ^{k−1}[M ≥ k]` and
/// `Σ_{mᵢ ≥ k−aᵢ} u^{mᵢ} = u^{max(0,k−aᵢ)}/(1−u)`; from `k = max(1, max aᵢ)` on,
/// the exponent is `3k − Σaᵢ` and the tail sums geometrically.
pub fn local_factor(n: &[u8; 7]) -> LocalFactor {
    let a: Vec<u32> = (1..4).map(|i| u32::from(n[i]) + u32::from(n[i + 3])).collect();
    let s: u32 = a.iter().sum();
    let k0 = a.iter().copied().max().unwrap().max(1);
    let theta_minus_one = BiPoly::monomial(1, 0, 1).sub(&BiPoly::monomial(0, 0, 1));
    let mut head = BiPoly::monomial(0, 0, 1);
    for k in 1..k0 {
        let e: u32 = a.iter().map(|&ai| k.saturating_sub(ai)).sum();
        head = head.add(&theta_minus_one.mul(&BiPoly::monomial(k - 1, e, 1)));
    }
    let den = BiPoly::monomial(0, 0, 1).sub(&BiPoly::monomial(1, 3, 1));
    let tail = theta_minus_one.mul(&BiPoly::monomial(k0 - 1, 3 * k0 - s, 1));
    LocalFactor { n: *n, num: head.mul(&den).add(&tail) }
}

/// `Σ_{|m| ≤ T} θ^M u^{|m|}` by direct summation, truncated at total degree `T`.
pub fn local_factor_direct(n: &[u8; 7], max_degree: u32) -> MultiSeries<BigInt> {
    let mut s = MultiSeries::zero(2, max_degree);
    for m in crate::moebius::exponents_up_to(4, max_degree) {
        let min = (1..4).map(|i| m[i] + u32::from(n[i]) + u32::from(n[i + 3])).min().unwrap();
        s.add_term(&[min, m.iter().sum()], &BigInt::one());
    }
    s.truncate(max_degree)
}

/// The local Tamagawa identity as rational functions of `s = q^{deg P}`.
#[derive(Clone, Debug)]
pub struct TamagawaCheck {
    /// `(1−s⁻¹)⁴ (1+4s+s²) s⁻²`.
    pub lhs: LPoly,
    /// `Σ_n μ⁰(n) N_n(s, s⁻¹) s^{−|n|}` over the common denominator `1 − s⁻²`.
    pub rhs_num: LPoly,
    pub rhs_den: LPoly,
    /// `lhs · rhs_den − rhs_num`.
    pub difference: LPoly,
}

impl TamagawaCheck {
    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }

    pub fn lhs_at(&self, s: &BigRational) -> Result<BigRational> {
        self.lhs.eval(s)
    }

    pub fn rhs_at(&self, s: &BigRational) -> Result<BigRational> {
        Ok(self.rhs_num.eval(s)? / self.rhs_den.eval(s)?)
    }
}

pub fn tamagawa_local_identity() -> TamagawaCheck {
    let mu = mu0_cox3();
    let s_inv = LPoly::l_pow(-1);
    let lhs = &(&(LPoly::one() - s_inv).pow(PIC_RANK) * &LPoly::from_int_terms(&[(2, 1), (1, 4), (0, 1)]))
        * &LPoly::l_pow(-i64::from(DIM));
    let mut rhs_num = LPoly::zero();
    let mut rhs_den = LPoly::one();
    for mask in 0..1u32 << NUM_DIVISORS {
        let m = mu.at_mask(mask);
        if m == 0 {
            continue;
        }
        let n: [u8; 7] = std::array::from_fn(|i| u8::from(mask & (1 << i) != 0));
        let (num, den) = local_factor(&n).normalized_at_reciprocal();
        rhs_den = den;
        rhs_num += &(&num * &LPoly::l_pow(-i64::from(mask.count_ones()))).scale(&BigRational::from_integer(m.into()));
    }
    let difference = &(&lhs * &rhs_den) - &rhs_num;
    TamagawaCheck { lhs, rhs_num, rhs_den, difference }
}

/// Both sides of the torsor identity at `#L = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorCheck {
    pub q: u64,
    /// `#T_X(F_q)`: points of the affine quadric whose zero set meets.
    pub torsor_points: u64,
    /// `Σ_n μ⁰(n) #T_{X,n} / q^{dim T_X}`.
    pub lhs: BigRational,
    /// `(1 − q⁻¹)^{rk Pic} #X(F_q) / q^{dim X}`.
    pub rhs: BigRational,
}

impl TorsorCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Enumerates `F_q⁷`, tallying quadric points by zero pattern.
pub fn torsor_identity_check(q: u64) -> Result<TorsorCheck> {
    check_budget(u128::from(q).pow(NUM_DIVISORS as u32))?;
    let mut by_zeros = vec![0u64; 1 << NUM_DIVISORS];
    let total = q.pow(NUM_DIVISORS as u32);
    for idx in 0..total {
        let mut x = [0u64; 7];
        let mut r = idx;
        for v in x.iter_mut() {
            *v = r % q;
            r /= q;
        }
        if (x[1] * x[4] + x[2] * x[5] + x[3] * x[6]) % q != 0 {
            continue;
        }
        let zeros = (0..7).filter(|&i| x[i] == 0).fold(0u32, |m, i| m | (1 << i));
        by_zeros[zeros as usize] += 1;
    }
    let on_torsor = |mask: u32| if meets(mask) { by_zeros[mask as usize] } else { 0 };
    let torsor_points: u64 = (0..1u32 << NUM_DIVISORS).map(on_torsor).sum();
    let mu = mu0_cox3();
    let mut sum = BigInt::zero();
    for n in 0..1u32 << NUM_DIVISORS {
        let m = mu.at_mask(n);
        if m == 0 {
            continue;
        }
        let t_n: u64 = (0..1u32 << NUM_DIVISORS).filter(|&z| z & n == n).map(on_torsor).sum();
        sum += BigInt::from(m) * BigInt::from(t_n);
    }
    let qb = BigInt::from(q);
    let lhs = BigRational::new(sum, qb.pow(DIM + PIC_RANK));
    let unit = BigRational::one() - BigRational::new(BigInt::one(), qb.clone());
    let rhs = num_traits::pow(unit, PIC_RANK as usize) * BigRational::new(point_count_x(&qb), qb.pow(DIM));
    Ok(TorsorCheck { q, torsor_points, lhs, rhs })
}
