use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::linalg::{self, dot, nullspace, primitive, primitive_from_q, rank, rref, to_q};
use super::LatticeVector;
use crate::error::{Error, Result};

/// A strictly convex rational polyhedral cone in `Z^n`.
///
/// Membership is `equations·y = 0` (the linear span) and `facets·y >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    generators: Vec<LatticeVector>,
    rays: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
    dim: usize,
}

impl Cone {
    /// Cone spanned by `generators`; they are made primitive and deduplicated,
    /// and zero vectors are dropped.
    pub fn new(ambient: usize, generators: &[LatticeVector]) -> Result<Self> {
        let mut gens: Vec<LatticeVector> = Vec::new();
        for g in generators {
            if g.len() != ambient {
                return Err(Error::Precondition(format!("generator {g:?} not of length {ambient}")));
            }
            if g.iter().all(|&x| x == 0) {
                continue;
            }
            let p = primitive(g);
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        let dim = rank(&gens);
        let equations = nullspace(&gens, ambient);
        let facets = compute_facets(&gens, dim);
        if rank(&facets) != dim {
            return Err(Error::Precondition(format!("cone generated by {gens:?} is not strictly convex")));
        }
        let rays = gens
            .iter()
            .filter(|g| {
                let tight: Vec<LatticeVector> = facets.iter().filter(|f| dot(f, g) == 0).cloned().collect();
                rank(&tight) + 1 == dim
            })
            .cloned()
            .collect();
        Ok(Cone { ambient, generators: gens, rays, facets, equations, dim })
    }

    pub fn zero(ambient: usize) -> Self {
        Cone::new(ambient, &[]).expect("zero cone")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Extreme rays, in generator order.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Primitive inward facet normals; defined modulo `equations`.
    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    pub fn in_span(&self, y: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, y) == 0)
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        self.in_span(y) && self.facets.iter().all(|f| dot(f, y) >= 0)
    }

    pub fn contains_q(&self, y: &[BigRational]) -> bool {
        let z = BigRational::zero();
        self.equations.iter().all(|e| linalg::dot_q(y, e) == z)
            && self.facets.iter().all(|f| !linalg::dot_q(y, f).is_negative())
    }

    /// Relative interior membership.
    pub fn contains_in_interior(&self, y: &[i64]) -> bool {
        self.in_span(y) && self.facets.iter().all(|f| dot(f, y) > 0)
    }

    /// Whether `x` is strictly positive on every nonzero point of the cone.
    pub fn is_positive_functional(&self, x: &[i64]) -> bool {
        self.rays.iter().all(|r| dot(r, x) > 0)
    }

    /// The face cut out by a facet normal.
    pub fn facet_cone(&self, normal: &[i64]) -> Cone {
        let gens: Vec<LatticeVector> = self.rays.iter().filter(|r| dot(r, normal) == 0).cloned().collect();
        Cone::new(self.ambient, &gens).expect("faces of a pointed cone are pointed")
    }

    /// The dual cone `{x : ⟨y, x⟩ >= 0 for all y in the cone}`, for a full-dimensional cone.
    pub fn dual(&self) -> Result<Cone> {
        if !self.is_full_dimensional() {
            return Err(Error::Precondition("dual of a cone that is not full-dimensional".into()));
        }
        Cone::new(self.ambient, &self.facets)
    }
}

/// Facets by brute-force double description: every facet normal is orthogonal
/// to `dim − 1` independent generators and has constant sign on the rest.
fn compute_facets(gens: &[LatticeVector], dim: usize) -> Vec<LatticeVector> {
    if dim == 0 {
        return Vec::new();
    }
    let ambient = gens[0].len();
    // basis of the span, as rows
    let mut m = to_q(gens);
    let pivots = rref(&mut m);
    let basis: Vec<Vec<BigRational>> = m.into_iter().take(pivots.len()).collect();
    let mut facets: Vec<LatticeVector> = Vec::new();
    for subset in combinations(gens.len(), dim - 1) {
        let chosen: Vec<LatticeVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        if rank(&chosen) != dim - 1 {
            continue;
        }
        // w = Σ c_j basis_j, orthogonal to the chosen generators.
        let system: Vec<Vec<BigRational>> = chosen
            .iter()
            .map(|g| basis.iter().map(|b| linalg::dot_q(b, g)).collect())
            .collect();
        let coeffs = rational_kernel_vector(&system, dim);
        let w: Vec<BigRational> = (0..ambient)
            .map(|c| {
                basis
                    .iter()
                    .zip(&coeffs)
                    .map(|(b, k)| &b[c] * k)
                    .fold(BigRational::zero(), |s, t| s + t)
            })
            .collect();
        let mut w = primitive_from_q(&w);
        let signs: Vec<i64> = gens.iter().map(|g| dot(&w, g).signum()).collect();
        if signs.contains(&1) && signs.contains(&-1) {
            continue;
        }
        if signs.contains(&-1) {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        if !facets.contains(&w) {
            facets.push(w);
        }
    }
    facets
}

/// One nonzero vector in the kernel of a `(k−1) × k` system of full rank.
fn rational_kernel_vector(system: &[Vec<BigRational>], k: usize) -> Vec<BigRational> {
    let mut m = system.to_vec();
    let pivots = rref(&mut m);
    let free = (0..k).find(|c| !pivots.contains(c)).expect("one free column");
    let mut v = vec![BigRational::zero(); k];
    v[free] = BigRational::from_integer(1.into());
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    v
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
