//! Exact linear algebra over the rationals and the integers.
//!
//! Matrices are plain `Vec` of rows; dimensions here stay small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

pub type RatMatrix = Vec<Vec<Rat>>;

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rat>),
    Underdetermined,
    Inconsistent,
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Solves `a x = b` exactly, where `a` has one row per equation.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> LinearSolution {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return LinearSolution::Inconsistent;
    }
    if pivots.len() < n {
        return LinearSolution::Underdetermined;
    }
    LinearSolution::Unique((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Basis of the right kernel `{x : a x = 0}`.
pub fn kernel(a: &RatMatrix, cols: usize) -> Vec<Vec<Rat>> {
    let mut w = a.clone();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -w[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(m: &RatMatrix) -> Rat {
    let n = m.len();
    let mut w = m.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            w.swap(p, c);
            d = -d;
        }
        d *= &w[c][c];
        for i in c + 1..n {
            if !w[i][c].is_zero() {
                let f = &w[i][c] / &w[c][c];
                for k in c..n {
                    let delta = &f * &w[c][k];
                    w[i][k] -= delta;
                }
            }
        }
    }
    d
}

pub fn mat_vec(m: &RatMatrix, v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Rat], b: &[i64]) -> Rat {
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, &y)| acc + x * BigInt::from(y))
}

pub fn to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

/// Scales a nonzero rational vector to the primitive integer vector on its ray.
pub fn primitive_integer(v: &[Rat]) -> Result<Vec<i64>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("zero vector has no primitive generator".into()));
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_i64().ok_or(Error::Overflow("primitive vector")))
        .collect()
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

/// Row-style Hermite normal form of the lattice spanned by `gens` in `Z^dim`.
///
/// Returns the nonzero rows: upper triangular, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Two generating sets span the
/// same lattice exactly when their forms coincide.
pub fn hermite_rows(gens: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<i64>>> {
    let mut m: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let rows = m.len();
    let mut r = 0;
    for c in 0..dim {
        if r == rows {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if m[i][c] != 0 && best.is_none_or(|b| m[i][c].abs() < m[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if m[i][c] != 0 {
                    let q = Integer::div_floor(&m[i][c], &m[r][c]);
                    for k in c..dim {
                        m[i][k] = m[i][k]
                            .checked_sub(q.checked_mul(m[r][k]).ok_or(Error::Overflow("hermite form"))?)
                            .ok_or(Error::Overflow("hermite form"))?;
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for k in c..dim {
                m[r][k] = -m[r][k];
            }
        }
        for i in 0..r {
            let q = Integer::div_floor(&m[i][c], &m[r][c]);
            if q != 0 {
                for k in c..dim {
                    m[i][k] -= q * m[r][k];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("hermite form")))
                .collect()
        })
        .collect()
}

/// Unimodular `U` (columns) with `w U = (g, 0, ..., 0)`, `g = gcd(w) >= 0`.
pub fn row_reducer(w: &[i64]) -> Result<(i64, Vec<Vec<i64>>)> {
    let d = w.len();
    // columns of U
    let mut u: Vec<Vec<i128>> = (0..d)
        .map(|i| (0..d).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut vals: Vec<i128> = w.iter().map(|&x| i128::from(x)).collect();
    for j in 1..d {
        let (a, b) = (vals[0], vals[j]);
        if b == 0 {
            continue;
        }
        let ext = a.extended_gcd(&b);
        let g = ext.gcd;
        let (x, y) = (ext.x, ext.y);
        let c0 = u[0].clone();
        let cj = u[j].clone();
        u[0] = c0.iter().zip(&cj).map(|(p, q)| x * p + y * q).collect();
        u[j] = c0.iter().zip(&cj).map(|(p, q)| -(b / g) * p + (a / g) * q).collect();
        vals[0] = g;
        vals[j] = 0;
    }
    if vals[0] < 0 {
        vals[0] = -vals[0];
        for x in u[0].iter_mut() {
            *x = -*x;
        }
    }
    let g = i64::try_from(vals[0]).map_err(|_| Error::Overflow("row reduction"))?;
    let cols = u
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("row reduction")))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok((g, cols))
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

pub fn abs_det_int(cols: &[Vec<i64>]) -> Rat {
    let m: RatMatrix = cols.iter().map(|c| to_rat(c)).collect();
    det(&m).abs()
}
