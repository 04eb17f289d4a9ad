//! Möbius functions attached to the coprimality conditions of the Cox torsor:
//! the combinatorial `μ⁰` on `{0,1}^I`, the divisor-level `μ_X`, the
//! aggregated finite-field coefficients and their motivic counterparts.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fq::{count_coprime_tuples, BinaryForm, UPoly};
use crate::lpoly::{interpolate, LPoly};
use crate::motivic::{motivic_euler_product, EulerRoute, MultiSeries};
use crate::numtheory::{divisors, mobius};
use crate::toric::ToricVariety;
use crate::SEARCH_BUDGET;

/// `μ⁰` on `{0,1}^I`, indexed by bitmask (bit `i` is ray `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mu0Table {
    nrays: usize,
    values: Vec<i64>,
}

impl Mu0Table {
    /// Subset Möbius inversion of the face indicator:
    /// `μ⁰(n) = Σ_{n' ≤ n} (−1)^{|n|−|n'|} S(n')`.
    pub fn from_faces(nrays: usize, is_face: impl Fn(u32) -> bool) -> Self {
        let mut values: Vec<i64> = (0..1u32 << nrays).map(|m| i64::from(is_face(m))).collect();
        for bit in 0..nrays {
            for m in 0..values.len() {
                if m & (1 << bit) != 0 {
                    values[m] -= values[m ^ (1 << bit)];
                }
            }
        }
        Mu0Table { nrays, values }
    }

    /// `μ⁰(n) = Σ (−1)^{|A|}` over sets `A` of minimal non-faces whose union is `n`.
    pub fn from_minimal_nonfaces(nrays: usize, minimal: &[u32]) -> Self {
        let mut values = vec![0i64; 1 << nrays];
        for a in 0..1u64 << minimal.len() {
            let mut union = 0u32;
            for (k, m) in minimal.iter().enumerate() {
                if a & (1 << k) != 0 {
                    union |= m;
                }
            }
            values[union as usize] += if a.count_ones() % 2 == 0 { 1 } else { -1 };
        }
        Mu0Table { nrays, values }
    }

    pub fn nrays(&self) -> usize {
        self.nrays
    }

    pub fn at_mask(&self, mask: u32) -> i64 {
        self.values[mask as usize]
    }

    pub fn at(&self, n: &[u8]) -> i64 {
        self.at_mask(to_mask(n))
    }

    /// Nonzero entries as `(mask, value)`.
    pub fn support(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.values.iter().enumerate().filter(|(_, &v)| v != 0).map(|(m, &v)| (m as u32, v))
    }

    /// `Σ_n μ⁰(n)·t^n` as a series in `#I` variables.
    pub fn local_series<C: crate::motivic::Coefficient>(&self, max_degree: u32) -> MultiSeries<C> {
        let mut s = MultiSeries::zero(self.nrays, max_degree);
        for (m, v) in self.support() {
            s.add_term(&mask_exponents(m, self.nrays), &C::from_i64(v));
        }
        s
    }
}

pub fn to_mask(n: &[u8]) -> u32 {
    n.iter().enumerate().filter(|(_, &b)| b != 0).fold(0, |m, (i, _)| m | (1 << i))
}

fn mask_exponents(m: u32, nrays: usize) -> Vec<u32> {
    (0..nrays).map(|i| (m >> i) & 1).collect()
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

/// `μ⁰` by inclusion–exclusion over the face lattice.
pub fn mu0(x: &ToricVariety) -> Mu0Table {
    let faces: BTreeSet<u32> = x.cones().map(|c| mask_of(c)).collect();
    Mu0Table::from_faces(x.num_rays(), |m| faces.contains(&m))
}

/// `μ⁰` from the primitive collections.
pub fn mu0_closed_form(x: &ToricVariety) -> Mu0Table {
    let minimal: Vec<u32> = x.primitive_collections().iter().map(|c| mask_of(c)).collect();
    Mu0Table::from_minimal_nonfaces(x.num_rays(), &minimal)
}

/// Both sides of `Σ_n μ⁰(n)·L^{#I−|n|} = (L − 1)^{rk Pic}·[X]`.
pub fn class_identity(x: &ToricVariety) -> (LPoly, LPoly) {
    let mu = mu0(x);
    let nrays = x.num_rays() as i64;
    let lhs = mu
        .support()
        .fold(LPoly::zero(), |acc, (m, v)| acc + LPoly::from_int_terms(&[(nrays - i64::from(m.count_ones()), v)]));
    let rhs = (LPoly::l() - LPoly::one()).pow(x.pic_rank() as u32) * x.class_of_x();
    (lhs, rhs)
}

/// Number of closed points of degree `m` on `P¹` over `F_q`:
/// `(1/m)·Σ_{e|m} μ(e)·(q^{m/e} + 1)`.
pub fn closed_points_p1(q: u64, m: u32) -> BigInt {
    let total: BigInt = divisors(u64::from(m))
        .into_iter()
        .map(|e| BigInt::from(mobius(e)) * (BigInt::from(q).pow((u64::from(m) / e) as u32) + 1))
        .sum();
    total / BigInt::from(m)
}

/// `m_q(d) = Σ_{D ∈ P^d(F_q)} μ_X(D)` for `|d| <= dmax`, from the Euler product
/// `∏_{m≥1} (Σ_n μ⁰(n) t^{m·n})^{b_m}`.
pub fn mu_aggregate_fq(mu: &Mu0Table, q: u64, dmax: u32) -> Result<MultiSeries<BigInt>> {
    let local: MultiSeries<BigInt> = mu.local_series(dmax);
    let mut out = MultiSeries::one(mu.nrays(), dmax);
    let Some(mindeg) = local.sub(&MultiSeries::one(mu.nrays(), dmax)).min_positive_degree() else {
        return Ok(out);
    };
    for m in 1..=dmax / mindeg {
        let b = closed_points_p1(q, m)
            .to_u64()
            .ok_or_else(|| Error::Precondition(format!("closed point count for q = {q}, m = {m} overflows")))?;
        out = out.mul(&local.substitute_power(m).pow_u(b));
    }
    Ok(out)
}

/// A closed point of `P¹` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosedPoint {
    Infinity,
    /// A monic irreducible polynomial in the affine coordinate.
    Finite(UPoly),
}

impl ClosedPoint {
    pub fn degree(&self) -> u32 {
        match self {
            ClosedPoint::Infinity => 1,
            ClosedPoint::Finite(f) => f.degree().unwrap() as u32,
        }
    }
}

/// An `I`-tuple of effective divisors on `P¹`, each a multiset of closed points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DivisorTuple {
    pub parts: Vec<BTreeMap<ClosedPoint, u32>>,
}

impl DivisorTuple {
    pub fn zero(nrays: usize) -> Self {
        DivisorTuple { parts: vec![BTreeMap::new(); nrays] }
    }

    /// The divisors of zeros of nonzero forms.
    pub fn from_forms(forms: &[&BinaryForm]) -> Self {
        let parts = forms
            .iter()
            .map(|f| {
                let (finite, inf) = f.divisor();
                let mut d: BTreeMap<ClosedPoint, u32> =
                    finite.into_iter().map(|(p, m)| (ClosedPoint::Finite(p), m)).collect();
                if inf > 0 {
                    d.insert(ClosedPoint::Infinity, inf);
                }
                d
            })
            .collect();
        DivisorTuple { parts }
    }

    /// `deg D_i` for each `i`.
    pub fn degrees(&self) -> Vec<u32> {
        self.parts.iter().map(|d| d.iter().map(|(p, m)| p.degree() * m).sum()).collect()
    }

    pub fn support(&self) -> BTreeSet<&ClosedPoint> {
        self.parts.iter().flat_map(|d| d.keys()).collect()
    }
}

/// `μ_X(D) = ∏_P μ⁰((ord_P D_i)_i)`, zero when some multiplicity is at least 2.
pub fn mu_divisor(mu: &Mu0Table, d: &DivisorTuple) -> i64 {
    let mut value = 1;
    for p in d.support() {
        let mut mask = 0u32;
        for (i, part) in d.parts.iter().enumerate() {
            match part.get(p).copied().unwrap_or(0) {
                0 => {}
                1 => mask |= 1 << i,
                _ => return 0,
            }
        }
        value *= mu.at_mask(mask);
        if value == 0 {
            return 0;
        }
    }
    value
}

/// Projective forms of each degree, one per point of `P(forms)`.
fn projective_forms(q: u64, degrees: &[u32]) -> Vec<Vec<BinaryForm>> {
    degrees.iter().map(|&e| BinaryForm::projective(q, e).collect()).collect()
}

fn projective_count(q: u64, e: u32) -> u128 {
    (0..=e).map(|k| (q as u128).pow(k)).sum()
}

pub(crate) fn check_budget(needed: u128) -> Result<()> {
    if needed > SEARCH_BUDGET {
        return Err(Error::Budget { needed, limit: SEARCH_BUDGET });
    }
    Ok(())
}

/// `Σ_{D ∈ P^d(F_q)} μ_X(D)` by enumerating every tuple of effective divisors.
pub fn bruteforce_mu_aggregate(mu: &Mu0Table, q: u64, d: &[u32]) -> Result<BigInt> {
    check_budget(d.iter().map(|&e| projective_count(q, e)).product())?;
    let divisors: Vec<Vec<DivisorTuple>> = projective_forms(q, d)
        .iter()
        .map(|fs| fs.iter().map(|f| DivisorTuple::from_forms(&[f])).collect())
        .collect();
    let mut total = BigInt::zero();
    let mut idx = vec![0usize; d.len()];
    loop {
        let parts = idx.iter().enumerate().map(|(i, &k)| divisors[i][k].parts[0].clone()).collect();
        total += mu_divisor(mu, &DivisorTuple { parts });
        let mut c = 0;
        loop {
            if c == d.len() {
                return Ok(total);
            }
            idx[c] += 1;
            if idx[c] < divisors[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// `μ^mot(d)` for `|d| <= dmax` as the motivic Euler product
/// `∏_n (Σ μ⁰(m) t^{n·m})^{Φ_n(P¹)}`.
pub fn mu_motivic(mu: &Mu0Table, dmax: u32, route: EulerRoute) -> Result<MultiSeries<LPoly>> {
    motivic_euler_product(&mu.local_series(dmax), route)
}

/// `[P^e] = ∏_i (1 + L + … + L^{e_i})`.
pub fn class_projective_product(e: &[u32]) -> LPoly {
    e.iter().fold(LPoly::one(), |acc, &k| {
        acc * (0..=i64::from(k)).fold(LPoly::zero(), |s, j| s + LPoly::l_pow(j))
    })
}

/// `#P_X^d(F_q)`: tuples of forms up to per-coordinate scalars with no common
/// root along any primitive collection.
pub fn count_coprime_projective(x: &ToricVariety, q: u64, d: &[u32]) -> Result<u128> {
    check_budget(d.iter().map(|&e| projective_count(q, e)).product())?;
    Ok(count_coprime_tuples(&projective_forms(q, d), &x.primitive_collections()))
}

/// All `d ∈ N^k` with `|d| <= dmax`, ordered by total degree then lexicographically.
pub fn exponents_up_to(k: usize, dmax: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=dmax {
        let mut cur = vec![0u32; k];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for v in (0..=left).rev() {
                cur[i] = v;
                rec(i + 1, left - v, cur, out);
            }
        }
        if k == 0 {
            if total == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        rec(0, total, &mut cur, &mut out);
    }
    out
}

/// `μ^mot` from its defining relation `[P_X^d] = Σ_{d' ≤ d} μ^mot(d')·[P^{d−d'}]`,
/// with `[P_X^d]` interpolated through brute-force counts at the given primes.
pub fn mu_motivic_from_definition(x: &ToricVariety, dmax: u32, primes: &[u64]) -> Result<MultiSeries<LPoly>> {
    if primes.len() < dmax as usize + 1 {
        return Err(Error::Precondition(format!(
            "{} primes cannot pin down polynomials of degree {dmax}",
            primes.len()
        )));
    }
    let k = x.num_rays();
    let mut mu: MultiSeries<LPoly> = MultiSeries::zero(k, dmax);
    for d in exponents_up_to(k, dmax) {
        let points: Vec<(i64, BigRational)> = primes
            .iter()
            .map(|&q| {
                count_coprime_projective(x, q, &d)
                    .map(|c| (q as i64, BigRational::from_integer(BigInt::from(c))))
            })
            .collect::<Result<_>>()?;
        let class = interpolate(&points)?;
        let total: u32 = d.iter().sum();
        if !class.is_integral() || class.top_exponent().is_some_and(|t| t > i64::from(total)) {
            return Err(Error::Interpolation(format!("counts for d = {d:?} give {class}")));
        }
        let mut rest = class;
        for (e, c) in mu.terms() {
            if e.iter().zip(&d).all(|(a, b)| a <= b) {
                let diff: Vec<u32> = d.iter().zip(e).map(|(a, b)| a - b).collect();
                rest = rest - c * &class_projective_product(&diff);
            }
        }
        mu.add_term(&d, &rest);
    }
    Ok(mu)
}

/// One line per stored coefficient: the exponent vector, comma-separated,
/// then a tab and the rendered coefficient.
pub fn dump_series<C: crate::motivic::Coefficient>(s: &MultiSeries<C>, render: impl Fn(&C) -> String) -> String {
    let mut out = String::new();
    for (e, c) in s.terms() {
        let key: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&key.join(","));
        out.push('\t');
        out.push_str(&render(c));
        out.push('\n');
    }
    out
}
