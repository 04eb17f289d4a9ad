use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cone::Cone;
use super::linalg::{dot, gcd_vec, solve_in_span};
use super::LatticeVector;
use crate::error::{Error, Result};
use crate::lpoly::{LPoly, RatFuncL};

/// Simplicial triangulation by recursive pulling from the first extreme ray.
///
/// The zero cone yields no pieces.
pub fn triangulate(cone: &Cone) -> Vec<Cone> {
    if cone.dim() == 0 {
        return Vec::new();
    }
    if cone.is_simplicial() {
        return vec![cone.clone()];
    }
    let apex = cone.rays()[0].clone();
    let mut pieces = Vec::new();
    for normal in cone.facets() {
        if dot(normal, &apex) == 0 {
            continue;
        }
        let face = cone.facet_cone(normal);
        for t in triangulate(&face) {
            let mut gens = vec![apex.clone()];
            gens.extend(t.rays().iter().cloned());
            pieces.push(Cone::new(cone.ambient_dim(), &gens).expect("subcone of a pointed cone"));
        }
    }
    pieces
}

/// A simplicial cone with some facets removed; `open[i]` refers to the facet
/// opposite `rays[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenCone {
    pub rays: Vec<LatticeVector>,
    pub open: Vec<bool>,
}

impl HalfOpenCone {
    /// Coordinates of `y` in the ray basis, if `y` lies in the span.
    fn coords(&self, y: &[i64]) -> Option<Vec<BigRational>> {
        solve_in_span(&self.rays, y)
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        match self.coords(y) {
            None => false,
            Some(l) => l.iter().zip(&self.open).all(|(x, &o)| if o { x.is_positive() } else { !x.is_negative() }),
        }
    }

    /// Lattice points of the half-open fundamental parallelepiped, found by
    /// scanning its bounding box.
    pub fn parallelepiped_points(&self) -> Vec<LatticeVector> {
        let k = self.rays.len();
        if k == 0 {
            return Vec::new();
        }
        let n = self.rays[0].len();
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for r in &self.rays {
            for c in 0..n {
                if r[c] < 0 {
                    lo[c] += r[c];
                } else {
                    hi[c] += r[c];
                }
            }
        }
        let one = BigRational::one();
        let mut out = Vec::new();
        let mut y = lo.clone();
        loop {
            if let Some(l) = self.coords(&y) {
                let inside = l.iter().zip(&self.open).all(|(x, &o)| {
                    if o {
                        x.is_positive() && *x <= one
                    } else {
                        !x.is_negative() && *x < one
                    }
                });
                if inside {
                    out.push(y.clone());
                }
            }
            // odometer step
            let mut c = 0;
            loop {
                if c == n {
                    return out;
                }
                if y[c] < hi[c] {
                    y[c] += 1;
                    break;
                }
                y[c] = lo[c];
                c += 1;
            }
        }
    }
}

/// Deterministic generic point of the relative interior: `Σ_j w_j r_j` with
/// weights `w_j = m^j + j` for the first `m` that avoids every facet
/// hyperplane of every piece.
fn generic_interior_point(cone: &Cone, pieces: &[Cone]) -> LatticeVector {
    let n = cone.ambient_dim();
    for m in 2i64.. {
        let mut z = vec![0i64; n];
        for (j, r) in cone.rays().iter().enumerate() {
            let w = m.pow(j as u32) + j as i64;
            for c in 0..n {
                z[c] += w * r[c];
            }
        }
        let generic = pieces.iter().all(|p| {
            solve_in_span(p.rays(), &z)
                .expect("interior point lies in the span")
                .iter()
                .all(|b| !b.is_zero())
        });
        if generic {
            return z;
        }
    }
    unreachable!()
}

/// Half-open decomposition: the facet of a piece opposite `v_i` is removed
/// when the generic interior point has a negative `v_i`-coordinate, so every
/// lattice point of the cone lies in exactly one piece.
pub fn half_open_decomposition(cone: &Cone) -> Vec<HalfOpenCone> {
    let pieces = triangulate(cone);
    if pieces.is_empty() {
        return Vec::new();
    }
    let z = generic_interior_point(cone, &pieces);
    pieces
        .iter()
        .map(|p| {
            let beta = solve_in_span(p.rays(), &z).unwrap();
            HalfOpenCone {
                rays: p.rays().to_vec(),
                open: beta.iter().map(|b| b.is_negative()).collect(),
            }
        })
        .collect()
}

/// `Σ_{p ∈ numerator} t^p / ∏_{v ∈ denominator} (1 − t^v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeZetaTerm {
    pub numerator: Vec<LatticeVector>,
    pub denominator: Vec<LatticeVector>,
}

/// Rational form of `Σ_{y ∈ C ∩ N} t^y` as a sum of simplicial terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeZeta {
    pub ambient: usize,
    pub dim: usize,
    pub terms: Vec<ConeZetaTerm>,
}

pub fn cone_zeta(cone: &Cone) -> ConeZeta {
    let n = cone.ambient_dim();
    let terms = if cone.dim() == 0 {
        vec![ConeZetaTerm { numerator: vec![vec![0; n]], denominator: Vec::new() }]
    } else {
        half_open_decomposition(cone)
            .into_iter()
            .map(|h| {
                let mut numerator = h.parallelepiped_points();
                numerator.sort();
                let mut denominator = h.rays.clone();
                denominator.sort();
                ConeZetaTerm { numerator, denominator }
            })
            .collect()
    };
    ConeZeta { ambient: n, dim: cone.dim(), terms }
}

impl ConeZeta {
    /// Coefficients of all monomials `t^y` with `⟨y, x⟩ <= level`; `x` must be
    /// positive on every denominator ray.
    pub fn expand(&self, x: &[i64], level: i64) -> Result<BTreeMap<LatticeVector, BigInt>> {
        let mut out: BTreeMap<LatticeVector, BigInt> = BTreeMap::new();
        for term in &self.terms {
            let w: Vec<i64> = term.denominator.iter().map(|v| dot(v, x)).collect();
            if w.iter().any(|&a| a <= 0) {
                return Err(Error::NotInterior(format!("{x:?} is not positive on the cone")));
            }
            for p in &term.numerator {
                let start = dot(p, x);
                let mut stack = vec![(0usize, p.clone(), start)];
                while let Some((i, y, h)) = stack.pop() {
                    if i == term.denominator.len() {
                        *out.entry(y).or_insert_with(BigInt::zero) += 1;
                        continue;
                    }
                    let mut y = y;
                    let mut h = h;
                    while h <= level {
                        stack.push((i + 1, y.clone(), h));
                        for (c, v) in y.iter_mut().zip(&term.denominator[i]) {
                            *c += v;
                        }
                        h += w[i];
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

/// The univariate function `sp_x Z(t)`: terms `Σ t^{a_j} / ∏ (1 − t^{b_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedZeta {
    pub dim: usize,
    pub terms: Vec<(Vec<i64>, Vec<i64>)>,
}

pub fn specialize_zeta(z: &ConeZeta, x: &[i64]) -> Result<SpecializedZeta> {
    let mut terms = Vec::with_capacity(z.terms.len());
    for t in &z.terms {
        let den: Vec<i64> = t.denominator.iter().map(|v| dot(v, x)).collect();
        if den.iter().any(|&b| b <= 0) {
            return Err(Error::NotInterior(format!("{x:?} gives a nonpositive denominator exponent")));
        }
        let num = t.numerator.iter().map(|p| dot(p, x)).collect();
        terms.push((num, den));
    }
    Ok(SpecializedZeta { dim: z.dim, terms })
}

impl SpecializedZeta {
    /// Series coefficients at `t^0 .. t^max`.
    pub fn coefficients(&self, max: usize) -> Vec<BigInt> {
        let mut total = vec![BigInt::zero(); max + 1];
        for (num, den) in &self.terms {
            let mut series = vec![BigInt::zero(); max + 1];
            for &a in num {
                if (a as usize) <= max {
                    series[a as usize] += 1;
                }
            }
            for &b in den {
                let b = b as usize;
                for i in b..=max {
                    let prev = series[i - b].clone();
                    series[i] += prev;
                }
            }
            for (t, s) in total.iter_mut().zip(series) {
                *t += s;
            }
        }
        total
    }

    /// The function as a reduced rational function in `t` (rendered with the
    /// variable name `L`).
    pub fn to_ratfunc(&self) -> RatFuncL {
        let mut acc = RatFuncL::from(LPoly::zero());
        for (num, den) in &self.terms {
            let n = num.iter().fold(LPoly::zero(), |s, &a| s + LPoly::l_pow(a));
            let d = den
                .iter()
                .fold(LPoly::one(), |s, &b| s * (LPoly::one() - LPoly::l_pow(b)));
            acc = &acc + &RatFuncL::new(n, d).expect("nonzero denominator");
        }
        acc
    }

    /// For each order `m` of a root of unity dividing some denominator exponent,
    /// an upper bound on the pole order there.
    pub fn pole_orders(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (_, den) in &self.terms {
            for m in 1..=den.iter().copied().max().unwrap_or(0) {
                let order = den.iter().filter(|&&b| b % m == 0).count();
                if order > 0 {
                    let e = out.entry(m).or_insert(0);
                    *e = (*e).max(order);
                }
            }
        }
        out
    }
}

/// `Max{d : x ∈ d·N^∨}`, the gcd of the coordinates.
pub fn index_of(x: &[i64]) -> Result<i64> {
    let g = gcd_vec(x);
    if g == 0 {
        return Err(Error::Precondition("index of the zero vector".into()));
    }
    Ok(g)
}

/// `lim_{t→1} (1 − t)^{dim C}·sp_x Z(t)`, from the reduced rational function.
pub fn leading_alpha(z: &ConeZeta, x: &[i64]) -> Result<BigRational> {
    let f = specialize_zeta(z, x)?.to_ratfunc();
    let one_minus_t = LPoly::one() - LPoly::l();
    let scaled = &f * &RatFuncL::from(one_minus_t.pow(z.dim as u32));
    scaled.eval(&BigRational::one())
}

/// The predicted count `α·ind·(ind·d)^{k−1}/(k−1)!` at level `ind·d`.
pub fn asymptotic_count(alpha: &BigRational, index: i64, dim: usize, d: i64) -> BigRational {
    if dim == 0 {
        return if d == 0 { BigRational::one() } else { BigRational::zero() };
    }
    let k = dim as u32;
    let level = BigRational::from_integer((index * d).into());
    let fact: BigInt = (1..k).map(BigInt::from).product();
    alpha * BigRational::from_integer(index.into()) * num_traits::pow(level, (k - 1) as usize)
        / BigRational::from_integer(fact)
}

/// `Σ_{y ∈ C} ρ^{⟨y, x0⟩} t^y` in the same simplicial form as [`ConeZeta`],
/// each monomial carrying its `ρ`-exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedConeZeta {
    pub x0: LatticeVector,
    pub terms: Vec<WeightedTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTerm {
    /// `(ρ-exponent, lattice point)` numerator monomials.
    pub numerator: Vec<(i64, LatticeVector)>,
    /// `(ρ-exponent, ray)`: factors `1 − ρ^a t^v`.
    pub denominator: Vec<(i64, LatticeVector)>,
}

pub fn weighted_cone_zeta(cone: &Cone, x0: &[i64]) -> Result<WeightedConeZeta> {
    if !cone.is_positive_functional(x0) {
        return Err(Error::NotInterior(format!("{x0:?} is not positive on the cone")));
    }
    let z = cone_zeta(cone);
    let terms = z
        .terms
        .into_iter()
        .map(|t| WeightedTerm {
            numerator: t.numerator.into_iter().map(|p| (dot(&p, x0), p)).collect(),
            denominator: t.denominator.into_iter().map(|v| (dot(&v, x0), v)).collect(),
        })
        .collect();
    Ok(WeightedConeZeta { x0: x0.to_vec(), terms })
}

impl WeightedConeZeta {
    /// The `ρ = 1` specialization.
    pub fn at_rho_one(&self, ambient: usize, dim: usize) -> ConeZeta {
        ConeZeta {
            ambient,
            dim,
            terms: self
                .terms
                .iter()
                .map(|t| ConeZetaTerm {
                    numerator: t.numerator.iter().map(|(_, p)| p.clone()).collect(),
                    denominator: t.denominator.iter().map(|(_, v)| v.clone()).collect(),
                })
                .collect(),
        }
    }

    /// Coefficients of `t^y` (polynomials in `ρ`, written in the variable `L`)
    /// for `⟨y, x0⟩ <= level`.
    pub fn expand(&self, level: i64) -> BTreeMap<LatticeVector, LPoly> {
        let mut out: BTreeMap<LatticeVector, LPoly> = BTreeMap::new();
        for term in &self.terms {
            for (a, p) in &term.numerator {
                let mut stack = vec![(0usize, p.clone(), *a)];
                while let Some((i, y, h)) = stack.pop() {
                    if i == term.denominator.len() {
                        *out.entry(y).or_default() += &LPoly::l_pow(h);
                        continue;
                    }
                    let (w, v) = &term.denominator[i];
                    let mut y = y;
                    let mut h = h;
                    while h <= level {
                        stack.push((i + 1, y.clone(), h));
                        for (c, vc) in y.iter_mut().zip(v) {
                            *c += vc;
                        }
                        h += w;
                    }
                }
            }
        }
        out
    }
}

/// Lattice points `y` of the cone with `⟨y, x⟩ = d`, by scanning the bounding
/// box of the slice polytope; `x` must be positive on the cone.
pub fn enumerate_level(cone: &Cone, x: &[i64], d: i64) -> Result<Vec<LatticeVector>> {
    if !cone.is_positive_functional(x) {
        return Err(Error::NotInterior(format!("{x:?} is not positive on the cone")));
    }
    let n = cone.ambient_dim();
    if cone.dim() == 0 || d < 0 {
        return Ok(if d == 0 { vec![vec![0; n]] } else { Vec::new() });
    }
    let solve = (0..n).rev().find(|&c| x[c] != 0).expect("nonzero functional");
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for r in cone.rays() {
        let h = dot(r, x);
        for c in 0..n {
            let v = BigRational::new((d * r[c]).into(), h.into());
            lo[c] = lo[c].min(i64::try_from(v.floor().to_integer()).unwrap());
            hi[c] = hi[c].max(i64::try_from(v.ceil().to_integer()).unwrap());
        }
    }
    let free: Vec<usize> = (0..n).filter(|&c| c != solve).collect();
    let mut out = Vec::new();
    let mut y = vec![0i64; n];
    for &c in &free {
        y[c] = lo[c];
    }
    loop {
        let partial: i64 = free.iter().map(|&c| y[c] * x[c]).sum();
        let rest = d - partial;
        if rest % x[solve] == 0 {
            y[solve] = rest / x[solve];
            if y[solve] >= lo[solve] && y[solve] <= hi[solve] && cone.contains(&y) {
                out.push(y.clone());
            }
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                out.sort();
                return Ok(out);
            }
            let c = free[i];
            if y[c] < hi[c] {
                y[c] += 1;
                break;
            }
            y[c] = lo[c];
            i += 1;
        }
    }
}

/// `a = inf{a : a·L − ω ∈ Eff}` and the codimension `b` of the minimal face of
/// `Eff` containing `a·L − ω`.
pub fn a_b_invariants(eff: &Cone, l: &[i64], omega: &[i64]) -> Result<(BigRational, usize)> {
    if !eff.is_full_dimensional() || !eff.contains_in_interior(l) {
        return Err(Error::NotBig(format!("{l:?} is not in the interior of the effective cone")));
    }
    if !eff.contains_in_interior(omega) {
        return Err(Error::NotBig(format!("{omega:?} is not in the interior of the effective cone")));
    }
    let a = eff
        .facets()
        .iter()
        .map(|f| BigRational::new(dot(omega, f).into(), dot(l, f).into()))
        .max()
        .expect("a full-dimensional cone has facets");
    let point: Vec<BigRational> = l
        .iter()
        .zip(omega)
        .map(|(&li, &wi)| &a * BigRational::from_integer(li.into()) - BigRational::from_integer(wi.into()))
        .collect();
    let tight: Vec<Vec<BigRational>> = eff
        .facets()
        .iter()
        .filter(|f| super::linalg::dot_q(&point, f).is_zero())
        .map(|f| f.iter().map(|&c| BigRational::from_integer(c.into())).collect())
        .collect();
    Ok((a, super::linalg::rank_q(&tight)))
}
