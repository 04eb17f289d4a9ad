//! Exact linear algebra over Q for small integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QMat = Vec<Vec<BigRational>>;

pub fn to_q(rows: &[Vec<i64>]) -> QMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, y) in other.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m = to_q(rows);
    rref(&mut m).len()
}

pub fn rank_q(rows: &QMat) -> usize {
    let mut m = rows.clone();
    rref(&mut m).len()
}

/// Basis of `{w : rows·w = 0}` as primitive integer vectors.
pub fn nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let mut m = to_q(rows);
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            primitive_from_q(&v)
        })
        .collect()
}

/// Scales a nonzero rational vector to a primitive integer vector with the same direction.
pub fn primitive_from_q(v: &[BigRational]) -> Vec<i64> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    assert!(!g.is_zero(), "zero vector has no primitive form");
    ints.iter()
        .map(|x| i64::try_from(x / &g).expect("coordinate fits in i64"))
        .collect()
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_vec(v);
    assert!(g != 0, "zero vector has no primitive form");
    v.iter().map(|x| x / g).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[BigRational], b: &[i64]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, &y)| x * BigRational::from_integer(y.into()))
        .fold(BigRational::zero(), |s, t| s + t)
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn det(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).expect("determinant fits in i64")
}

/// Solves `Σ_i λ_i·cols[i] = target` for linearly independent `cols`;
/// `None` if `target` is outside their span.
pub fn solve_in_span(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let n = target.len();
    let k = cols.len();
    // augmented system: n equations, k unknowns
    let mut m: QMat = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> =
                cols.iter().map(|c| BigRational::from_integer(c[r].into())).collect();
            row.push(BigRational::from_integer(target[r].into()));
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    assert_eq!(pivots.len(), k, "columns must be independent");
    let mut sol = vec![BigRational::zero(); k];
    for (r, &pc) in pivots.iter().enumerate() {
        sol[pc] = m[r][k].clone();
    }
    Some(sol)
}

pub fn is_nonnegative(x: &BigRational) -> bool {
    !x.is_negative()
}
