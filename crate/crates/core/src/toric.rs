//! Smooth projective split toric varieties from their fans: Picard lattice,
//! effective cone, anticanonical class, primitive collections and `[X]`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lattice::linalg::{dot, gcd_vec, nullspace, rank, solve_in_span};
use crate::lattice::{combinations, enumerate_level, Cone, LatticeVector};
use crate::lpoly::LPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub name: String,
    pub rays: Vec<LatticeVector>,
    /// Ray index sets, each sorted ascending.
    pub max_cones: Vec<Vec<usize>>,
}

/// Names accepted by [`catalog`]; `Fa(a)` stands for any integer `a >= 0`.
pub const CATALOG_NAMES: [&str; 7] = ["P1", "P2", "P3", "P1xP1", "BlP2", "Fa(a)", "dP6"];

impl Fan {
    pub fn new(name: impl Into<String>, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Self {
        let max_cones = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Fan { name: name.into(), rays, max_cones }
    }

    /// Lattice rank, taken from the first ray.
    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, |r| r.len())
    }

    fn cone_of(&self, idx: &[usize]) -> Result<Cone> {
        let gens: Vec<LatticeVector> = idx.iter().map(|&i| self.rays[i].clone()).collect();
        Cone::new(self.dim(), &gens)
    }

    /// Runs every check in order and stops at the first failure.
    pub fn validate(&self) -> Result<()> {
        for (_, r) in self.checks() {
            r?;
        }
        Ok(())
    }

    /// Each named check with its outcome; later checks are skipped (not run)
    /// once an earlier one fails.
    pub fn checks(&self) -> Vec<(&'static str, Result<()>)> {
        type Step = (&'static str, fn(&Fan) -> Result<()>);
        let steps: [Step; 6] = [
            ("dimension", Fan::check_dimension),
            ("primitive", Fan::check_primitive),
            ("strict convexity", Fan::check_convexity),
            ("smoothness", Fan::check_smoothness),
            ("intersection", Fan::check_intersection),
            ("completeness", Fan::check_completeness),
        ];
        let mut out = Vec::new();
        for (name, f) in steps {
            let r = f(self);
            let failed = r.is_err();
            out.push((name, r));
            if failed {
                break;
            }
        }
        out
    }

    fn fail(check: &'static str, detail: String) -> Result<()> {
        Err(Error::InvalidFan { check, detail })
    }

    fn check_dimension(&self) -> Result<()> {
        let n = self.dim();
        if n == 0 {
            return Fan::fail("dimension", "no rays, or rays of length 0".into());
        }
        if let Some(r) = self.rays.iter().find(|r| r.len() != n) {
            return Fan::fail("dimension", format!("ray {r:?} does not have length {n}"));
        }
        if self.max_cones.is_empty() {
            return Fan::fail("dimension", "no maximal cones".into());
        }
        for c in &self.max_cones {
            if c.is_empty() || c.iter().any(|&i| i >= self.rays.len()) {
                return Fan::fail("dimension", format!("cone {c:?} has an invalid ray index"));
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Fan::fail("dimension", format!("cone {c:?} repeats a ray"));
            }
        }
        for i in 0..self.rays.len() {
            if !self.max_cones.iter().any(|c| c.contains(&i)) {
                return Fan::fail("dimension", format!("ray {i} lies in no maximal cone"));
            }
        }
        Ok(())
    }

    fn check_primitive(&self) -> Result<()> {
        for (i, r) in self.rays.iter().enumerate() {
            if gcd_vec(r) != 1 {
                return Fan::fail("primitive", format!("ray {i} = {r:?} is not primitive"));
            }
        }
        for (i, j) in (0..self.rays.len()).flat_map(|i| (i + 1..self.rays.len()).map(move |j| (i, j))) {
            if self.rays[i] == self.rays[j] {
                return Fan::fail("primitive", format!("rays {i} and {j} coincide"));
            }
        }
        Ok(())
    }

    fn check_convexity(&self) -> Result<()> {
        for c in &self.max_cones {
            if self.cone_of(c).is_err() {
                return Fan::fail("strict convexity", format!("cone {c:?} contains a line"));
            }
        }
        Ok(())
    }

    fn check_smoothness(&self) -> Result<()> {
        let n = self.dim();
        for c in &self.max_cones {
            if c.len() != n {
                return Fan::fail("smoothness", format!("cone {c:?} has {} rays, expected {n}", c.len()));
            }
            let m: Vec<LatticeVector> = c.iter().map(|&i| self.rays[i].clone()).collect();
            let d = crate::lattice::linalg::det(&m);
            if d.abs() != 1 {
                return Fan::fail("smoothness", format!("cone {c:?} has determinant {d}"));
            }
        }
        Ok(())
    }

    /// `σ ∩ τ` must be the cone on the common rays. The extreme rays of the
    /// intersection are found from its inequality description and tested for
    /// membership in that face.
    fn check_intersection(&self) -> Result<()> {
        let n = self.dim();
        let cones: Vec<Cone> = self.max_cones.iter().map(|c| self.cone_of(c).unwrap()).collect();
        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                let common: Vec<usize> =
                    self.max_cones[a].iter().filter(|i| self.max_cones[b].contains(i)).copied().collect();
                let face = self.cone_of(&common).unwrap();
                let mut rows: Vec<LatticeVector> = Vec::new();
                for c in [&cones[a], &cones[b]] {
                    rows.extend(c.facets().iter().cloned());
                    for e in c.equations() {
                        rows.push(e.clone());
                        rows.push(e.iter().map(|x| -x).collect());
                    }
                }
                for s in combinations(rows.len(), n - 1) {
                    let sub: Vec<LatticeVector> = s.iter().map(|&i| rows[i].clone()).collect();
                    if rank(&sub) != n - 1 {
                        continue;
                    }
                    let w = nullspace(&sub, n).remove(0);
                    for w in [w.clone(), w.iter().map(|x| -x).collect()] {
                        if rows.iter().all(|r| dot(r, &w) >= 0) && !face.contains(&w) {
                            return Fan::fail(
                                "intersection",
                                format!(
                                    "cones {:?} and {:?} meet in {w:?}, outside their common face",
                                    self.max_cones[a], self.max_cones[b]
                                ),
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_completeness(&self) -> Result<()> {
        let n = self.dim();
        if rank(&self.rays) != n {
            return Fan::fail("completeness", "rays do not span the lattice".into());
        }
        for c in &self.max_cones {
            for wall in combinations(n, n - 1) {
                let w: Vec<usize> = wall.iter().map(|&k| c[k]).collect();
                let count = self.max_cones.iter().filter(|d| w.iter().all(|i| d.contains(i))).count();
                if count != 2 {
                    return Fan::fail(
                        "completeness",
                        format!("wall {w:?} of cone {c:?} lies in {count} maximal cones, expected 2"),
                    );
                }
            }
        }
        Ok(())
    }
}

fn projective_space(n: usize) -> Fan {
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rays.push(vec![-1; n]);
    Fan::new(format!("P{n}"), rays, combinations(n + 1, n))
}

fn cycle_fan(name: String, rays: Vec<LatticeVector>) -> Fan {
    let k = rays.len();
    let cones = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Fan::new(name, rays, cones)
}

/// Standard fans: `P1`, `P2`, `P3` (any `Pn`), `P1xP1`, `BlP2` with rays
/// ordered `D0, D1, D2, E`, Hirzebruch surfaces `Fa(a)` (also `F<a>`), and the
/// degree-6 del Pezzo surface `dP6`.
pub fn catalog(name: &str) -> Result<Fan> {
    let unknown = || Error::UnknownCatalog { name: name.to_string(), available: CATALOG_NAMES.join(", ") };
    match name {
        "P1xP1" => Ok(cycle_fan(name.into(), vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]])),
        "BlP2" => Ok(Fan::new(
            "BlP2",
            vec![vec![1, 0], vec![0, 1], vec![-1, -1], vec![1, 1]],
            vec![vec![0, 3], vec![3, 1], vec![1, 2], vec![2, 0]],
        )),
        "dP6" => Ok(cycle_fan(
            name.into(),
            vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
        )),
        _ => {
            if let Some(n) = name.strip_prefix('P').and_then(|s| s.parse::<usize>().ok()) {
                if n >= 1 {
                    return Ok(projective_space(n));
                }
            }
            let a = name
                .strip_prefix("Fa(")
                .and_then(|s| s.strip_suffix(')'))
                .or_else(|| name.strip_prefix('F'))
                .and_then(|s| s.parse::<i64>().ok())
                .filter(|&a| a >= 0)
                .ok_or_else(unknown)?;
            Ok(cycle_fan(format!("Fa({a})"), vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]]))
        }
    }
}

/// A smooth projective toric variety with its Picard-lattice data.
///
/// Picard coordinates are taken in the basis `{[D_j] : j ∉ σ₀}` where `σ₀` is
/// the lexicographically first maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricVariety {
    fan: Fan,
    n: usize,
    basis_cone: usize,
    /// Indices `I ∖ σ₀`, ascending; position `k` is Picard coordinate `k`.
    pic_basis: Vec<usize>,
    /// Column `i` is `pic_coords(e_i)`.
    pic_matrix: Vec<Vec<i64>>,
    /// Every cone of the fan as a sorted ray-index set, `{}` included.
    cones: BTreeSet<Vec<usize>>,
}

/// An intrinsic degree `y ∈ Pic(X)^∨ ∩ N^I`, stored as its `Z^I` image.
pub type DegreeClass = Vec<i64>;

impl ToricVariety {
    pub fn from_fan(fan: Fan) -> Result<Self> {
        fan.validate()?;
        let n = fan.dim();
        let nrays = fan.rays.len();
        let basis_cone = (0..fan.max_cones.len()).min_by_key(|&k| &fan.max_cones[k]).unwrap();
        let sigma0 = fan.max_cones[basis_cone].clone();
        let pic_basis: Vec<usize> = (0..nrays).filter(|i| !sigma0.contains(i)).collect();
        // m_i: the character with ⟨m_i, ρ_k⟩ = δ_ik on σ₀.
        let cols: Vec<LatticeVector> = (0..n).map(|j| sigma0.iter().map(|&k| fan.rays[k][j]).collect()).collect();
        let mut pic_matrix = vec![vec![0i64; nrays]; pic_basis.len()];
        for (pos, &j) in pic_basis.iter().enumerate() {
            pic_matrix[pos][j] = 1;
        }
        for (k, &i) in sigma0.iter().enumerate() {
            let target: Vec<i64> = (0..n).map(|r| i64::from(r == k)).collect();
            let m = solve_in_span(&cols, &target).expect("unimodular basis");
            let m: Vec<i64> = m.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect();
            for (pos, &j) in pic_basis.iter().enumerate() {
                pic_matrix[pos][i] = -dot(&m, &fan.rays[j]);
            }
        }
        let mut cones = BTreeSet::new();
        for c in &fan.max_cones {
            for k in 0..=c.len() {
                for s in combinations(c.len(), k) {
                    cones.insert(s.iter().map(|&i| c[i]).collect());
                }
            }
        }
        Ok(ToricVariety { fan, n, basis_cone, pic_basis, pic_matrix, cones })
    }

    pub fn from_catalog(name: &str) -> Result<Self> {
        ToricVariety::from_fan(catalog(name)?)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn name(&self) -> &str {
        &self.fan.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_rays(&self) -> usize {
        self.fan.rays.len()
    }

    pub fn pic_rank(&self) -> usize {
        self.pic_basis.len()
    }

    pub fn basis_cone(&self) -> usize {
        self.basis_cone
    }

    pub fn pic_basis(&self) -> &[usize] {
        &self.pic_basis
    }

    pub fn cones(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cones.iter()
    }

    /// Whether the rays indexed by `s` span a cone of the fan.
    pub fn is_face(&self, s: &[usize]) -> bool {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        self.cones.contains(&v)
    }

    pub fn pic_coords(&self, a: &[i64]) -> Vec<i64> {
        self.pic_matrix.iter().map(|row| dot(row, a)).collect()
    }

    /// The class of `Σ D_i`.
    pub fn anticanonical(&self) -> Vec<i64> {
        self.pic_coords(&vec![1; self.num_rays()])
    }

    /// `[D_i]` for each ray.
    pub fn divisor_classes(&self) -> Vec<Vec<i64>> {
        (0..self.num_rays())
            .map(|i| self.pic_matrix.iter().map(|row| row[i]).collect())
            .collect()
    }

    pub fn effective_cone(&self) -> Cone {
        Cone::new(self.pic_rank(), &self.divisor_classes()).expect("effective cone of a projective variety is pointed")
    }

    /// `⟨y, x⟩` for `y ∈ Pic^∨ ⊂ Z^I` and `x` in Picard coordinates.
    pub fn pairing(&self, y: &[i64], x: &[i64]) -> i64 {
        self.pic_basis.iter().zip(x).map(|(&j, &c)| y[j] * c).sum()
    }

    /// Whether `y ∈ Z^I` lies in `Pic(X)^∨`, i.e. `Σ y_i ρ_i = 0`.
    pub fn is_degree_class(&self, y: &[i64]) -> bool {
        (0..self.n).all(|c| self.fan.rays.iter().zip(y).map(|(r, &yi)| r[c] * yi).sum::<i64>() == 0)
    }

    /// The degree class with the given coordinates at `I ∖ σ₀`.
    pub fn degree_class_from_dual_coords(&self, z: &[i64]) -> DegreeClass {
        let mut y = vec![0i64; self.num_rays()];
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.pic_matrix.iter().zip(z).map(|(row, &zk)| row[i] * zk).sum();
        }
        y
    }

    /// Minimal non-faces, in ascending cardinality then lexicographic order.
    pub fn primitive_collections(&self) -> Vec<Vec<usize>> {
        let nrays = self.num_rays();
        let mut out = Vec::new();
        for k in 1..=nrays {
            for s in combinations(nrays, k) {
                if self.is_face(&s) {
                    continue;
                }
                let minimal = (0..s.len()).all(|drop| {
                    let t: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                    self.is_face(&t)
                });
                if minimal {
                    out.push(s);
                }
            }
        }
        out
    }

    /// `[X] = Σ_σ (L − 1)^{n − dim σ}` over the torus orbits.
    pub fn class_of_x(&self) -> LPoly {
        let lm1 = LPoly::l() - LPoly::one();
        self.cones.iter().fold(LPoly::zero(), |acc, c| acc + lm1.pow((self.n - c.len()) as u32))
    }

    /// All `y ∈ Pic^∨ ∩ N^I` with `⟨y, x⟩ = d`.
    pub fn degree_classes_of_height(&self, x: &[i64], d: i64) -> Result<Vec<DegreeClass>> {
        if x.len() != self.pic_rank() {
            return Err(Error::Precondition(format!("{x:?} is not a Picard class")));
        }
        let eff = self.effective_cone();
        if !eff.contains_in_interior(x) {
            return Err(Error::NotBig(format!("{x:?} is not in the interior of the effective cone")));
        }
        let dual = eff.dual()?;
        let mut out: Vec<DegreeClass> = enumerate_level(&dual, x, d)?
            .iter()
            .map(|z| self.degree_class_from_dual_coords(z))
            .collect();
        out.sort();
        Ok(out)
    }

    /// `#X(F_q)` summed directly over torus orbits.
    pub fn count_points(&self, q: u64) -> u128 {
        self.cones.iter().map(|c| ((q - 1) as u128).pow((self.n - c.len()) as u32)).sum()
    }

    pub fn class_at(&self, q: i64) -> BigRational {
        self.class_of_x().eval_int(q)
    }
}

impl fmt::Display for ToricVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, {} rays, Picard rank {})", self.name(), self.n, self.num_rays(), self.pic_rank())
    }
}
