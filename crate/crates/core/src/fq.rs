//! Prime fields, univariate polynomials over them, and binary forms.

use std::fmt;

/// Multiplicative inverse modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Polynomial over `F_p` with coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly {
    p: u64,
    c: Vec<u64>,
}

impl UPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        UPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        UPoly::new(p, vec![1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                UPoly::new(self.p, self.c.iter().map(|x| x * inv).collect())
            }
        }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        UPoly::new(self.p, c)
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.c[dd], p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = r[i] * inv % p;
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, dc) in d.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = (r[idx] + p - coef * dc % p) % p;
            }
        }
        (UPoly::new(p, q), UPoly::new(p, r))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, c| (acc * x + c) % self.p)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly{:?} mod {}", self.c, self.p)
    }
}

/// All monic irreducible polynomials of degree `deg` over `F_p`.
pub fn monic_irreducibles(p: u64, deg: usize) -> Vec<UPoly> {
    let lower: Vec<UPoly> = (1..=deg / 2).flat_map(|k| monic_irreducibles(p, k)).collect();
    let count = p.pow(deg as u32);
    (0..count)
        .map(|idx| {
            let mut c = digits(idx, p, deg);
            c.push(1);
            UPoly::new(p, c)
        })
        .filter(|f| lower.iter().all(|g| !f.div_rem(g).1.is_zero()))
        .collect()
}

fn digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push(idx % p);
        idx /= p;
    }
    out
}

/// Factorization into monic irreducibles with multiplicities (the unit is dropped).
pub fn factor(f: &UPoly) -> Vec<(UPoly, u32)> {
    assert!(!f.is_zero(), "factor of zero");
    let p = f.p;
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut k = 1;
    while rest.degree().unwrap() >= 2 * k {
        for g in monic_irreducibles(p, k) {
            let mut m = 0;
            loop {
                let (q, r) = rest.div_rem(&g);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                out.push((g, m));
            }
        }
        k += 1;
    }
    if rest.degree().unwrap() > 0 {
        out.push((rest, 1));
    }
    out.sort();
    out
}

/// A binary form `Σ_k c_k u^k v^{d−k}` over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    q: u64,
    coeffs: Vec<u64>,
}

impl BinaryForm {
    /// Form of degree `coeffs.len() − 1`.
    pub fn new(q: u64, coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs degree + 1 coefficients");
        BinaryForm { q, coeffs: coeffs.into_iter().map(|c| c % q).collect() }
    }

    pub fn constant(q: u64, c: u64) -> Self {
        BinaryForm::new(q, vec![c])
    }

    pub fn zero(q: u64, degree: u32) -> Self {
        BinaryForm::new(q, vec![0; degree as usize + 1])
    }

    /// The linear form `v`, vanishing at the point at infinity `[1:0]`.
    pub fn v(q: u64) -> Self {
        BinaryForm::new(q, vec![1, 0])
    }

    /// Homogenization of `f` in degree `degree >= deg f`.
    pub fn from_poly(f: &UPoly, degree: u32) -> Self {
        let mut c = f.coeffs().to_vec();
        assert!(c.len() <= degree as usize + 1, "degree too small for homogenization");
        c.resize(degree as usize + 1, 0);
        BinaryForm::new(f.modulus(), c)
    }

    /// The form with base-`q` digit expansion `idx` (little-endian).
    pub fn from_index(q: u64, degree: u32, idx: u64) -> Self {
        BinaryForm { q, coeffs: digits(idx, q, degree as usize + 1) }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn dehomogenize(&self) -> UPoly {
        UPoly::new(self.q, self.coeffs.clone())
    }

    /// Multiplicity of the root at infinity, i.e. the power of `v` dividing the form.
    pub fn infinity_multiplicity(&self) -> u32 {
        assert!(!self.is_zero(), "zero form");
        self.degree() - self.dehomogenize().degree().unwrap() as u32
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.q;
            }
        }
        BinaryForm { q: self.q, coeffs: c }
    }

    pub fn add(&self, o: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), o.degree(), "adding forms of different degrees");
        BinaryForm {
            q: self.q,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a + b) % self.q).collect(),
        }
    }

    pub fn neg(&self) -> BinaryForm {
        BinaryForm {
            q: self.q,
            coeffs: self.coeffs.iter().map(|a| (self.q - a) % self.q).collect(),
        }
    }

    pub fn scale(&self, c: u64) -> BinaryForm {
        BinaryForm {
            q: self.q,
            coeffs: self.coeffs.iter().map(|a| a * (c % self.q) % self.q).collect(),
        }
    }

    /// Exact homogeneous division by a nonzero form; `None` if it does not divide.
    pub fn div_exact(&self, d: &BinaryForm) -> Option<BinaryForm> {
        assert!(!d.is_zero(), "division by zero form");
        if d.degree() > self.degree() {
            return None;
        }
        let out_deg = self.degree() - d.degree();
        if self.is_zero() {
            return Some(BinaryForm::zero(self.q, out_deg));
        }
        let (quot, rem) = self.dehomogenize().div_rem(&d.dehomogenize());
        if !rem.is_zero() || quot.degree().unwrap_or(0) > out_deg as usize {
            return None;
        }
        Some(BinaryForm::from_poly(&quot, out_deg))
    }

    /// Normalizes so that the highest nonzero coefficient is 1.
    pub fn normalized(&self) -> BinaryForm {
        match self.coeffs.iter().rev().find(|&&c| c != 0) {
            None => self.clone(),
            Some(&lc) => self.scale(inv_mod(lc, self.q)),
        }
    }

    /// Number of nonzero forms of this degree.
    pub fn count_nonzero(q: u64, degree: u32) -> u64 {
        q.pow(degree + 1) - 1
    }

    /// All nonzero forms of a given degree.
    pub fn all_nonzero(q: u64, degree: u32) -> impl Iterator<Item = BinaryForm> {
        (1..q.pow(degree + 1)).map(move |i| BinaryForm::from_index(q, degree, i))
    }

    /// One representative per point of `P(forms of degree d)`: highest nonzero
    /// coefficient equal to 1.
    pub fn projective(q: u64, degree: u32) -> impl Iterator<Item = BinaryForm> {
        (0..=degree).flat_map(move |top| {
            (0..q.pow(top)).map(move |low| {
                let mut c = digits(low, q, top as usize);
                c.push(1);
                c.resize(degree as usize + 1, 0);
                BinaryForm { q, coeffs: c }
            })
        })
    }

    /// Closed points with multiplicities: monic irreducible factors of the
    /// dehomogenization plus the multiplicity of the point at infinity.
    pub fn divisor(&self) -> (Vec<(UPoly, u32)>, u32) {
        let f = self.dehomogenize();
        let finite = if f.is_constant() { Vec::new() } else { factor(&f) };
        (finite, self.infinity_multiplicity())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm{:?} mod {}", self.coeffs, self.q)
    }
}

/// Whether nonzero forms share a root in `P¹` over the algebraic closure.
///
/// A shared root is either the point at infinity (every form divisible by `v`)
/// or a finite root (nonconstant gcd of the dehomogenizations).
pub fn have_common_root(forms: &[&BinaryForm]) -> bool {
    if forms.is_empty() {
        return false;
    }
    if forms.iter().all(|f| f.coeffs[f.coeffs.len() - 1] == 0) {
        return true;
    }
    let mut g = forms[0].dehomogenize();
    for f in &forms[1..] {
        g = g.gcd(&f.dehomogenize());
        if g.is_constant() {
            return false;
        }
    }
    !g.is_constant()
}

/// Degree of the gcd of nonzero forms.
pub fn gcd_degree(forms: &[&BinaryForm]) -> u32 {
    let inf = forms.iter().map(|f| f.infinity_multiplicity()).min().unwrap_or(0);
    let mut g = forms[0].dehomogenize();
    for f in &forms[1..] {
        g = g.gcd(&f.dehomogenize());
    }
    inf + g.degree().unwrap_or(0) as u32
}

/// Rank of a matrix over `F_p` (rows of residues).
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of tuples `(F_i)` with `F_i ∈ forms[i]` such that for every
/// collection `J` the forms `{F_j}_{j∈J}` have no common root. Parallel over
/// the first coordinate.
pub fn count_coprime_tuples(forms: &[Vec<BinaryForm>], collections: &[Vec<usize>]) -> u128 {
    use rayon::prelude::*;
    if forms.is_empty() {
        return 1;
    }
    // collections become checkable once their largest index is assigned
    let mut ready: Vec<Vec<&[usize]>> = vec![Vec::new(); forms.len()];
    for c in collections {
        if let Some(&last) = c.iter().max() {
            ready[last].push(c);
        }
    }
    fn rec(k: usize, chosen: &mut Vec<usize>, forms: &[Vec<BinaryForm>], ready: &[Vec<&[usize]>]) -> u128 {
        if k == forms.len() {
            return 1;
        }
        let mut total = 0;
        for (idx, f) in forms[k].iter().enumerate() {
            chosen.push(idx);
            let ok = ready[k].iter().all(|c| {
                let members: Vec<&BinaryForm> =
                    c.iter().map(|&j| if j == k { f } else { &forms[j][chosen[j]] }).collect();
                !have_common_root(&members)
            });
            if ok {
                total += rec(k + 1, chosen, forms, ready);
            }
            chosen.pop();
        }
        total
    }
    (0..forms[0].len())
        .into_par_iter()
        .map(|first| {
            let mut chosen = vec![first];
            let ok = ready[0].iter().all(|c| {
                let members: Vec<&BinaryForm> = c.iter().map(|&j| &forms[j][chosen[j]]).collect();
                !have_common_root(&members)
            });
            if ok {
                rec(1, &mut chosen, forms, &ready)
            } else {
                0
            }
        })
        .sum()
}
