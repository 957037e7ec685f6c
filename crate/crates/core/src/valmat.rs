//! Matrices of fractional ideals over a discrete valuation ring.
//!
//! A fractional ideal `t^v R` is recorded by its exponent `v`, and the zero
//! ideal by `+inf`. Products of ideal matrices then become min-plus
//! ("tropical") matrix products: the ideal `sum_j I_ij I_jk` is generated by
//! the smallest exponent among the `v_ij + v_jk`.
//!
//! The standard hereditary order of ramification index `e`, its Jacobson
//! radical `J = y Delta` and dualizing module `omega = y^(1-e) Delta` are all
//! of the form `y^k Delta` for the normal element `y`, whose entries are
//! Laurent monomials in `t`. [`MonomialMatrix`] multiplies such elements
//! exactly and serves as the independent oracle for the closed forms below.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// `t`-adic valuation of a fractional ideal; `Infinite` is the zero ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// Saturating sum; `None` only on machine-integer overflow.
    pub fn checked_add(self, other: Valuation) -> Option<Valuation> {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.checked_add(b).map(Valuation::Finite),
            _ => Some(Valuation::Infinite),
        }
    }
}

impl From<i64> for Valuation {
    fn from(v: i64) -> Self {
        Valuation::Finite(v)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    /// Panics on `i64` overflow; use [`Valuation::checked_add`] where that matters.
    fn add(self, rhs: Valuation) -> Valuation {
        self.checked_add(rhs).expect("valuation overflow")
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Square matrix of valuations; entry `(j, k)` stands for the ideal `t^v R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValMatrix {
    size: usize,
    entries: Vec<Valuation>,
}

impl ValMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Valuation) -> Result<Self> {
        if size == 0 {
            return invalid("matrix size must be positive");
        }
        let mut entries = Vec::with_capacity(size * size);
        for j in 0..size {
            for k in 0..size {
                entries.push(f(j, k));
            }
        }
        Ok(Self { size, entries })
    }

    /// Builds a matrix from finite rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return invalid("valuation matrix must be square");
        }
        Self::from_fn(size, |j, k| Valuation::Finite(rows[j][k]))
    }

    /// Tropical identity: `0` on the diagonal, `+inf` elsewhere.
    pub fn identity(size: usize) -> Result<Self> {
        Self::from_fn(size, |j, k| if j == k { Valuation::Finite(0) } else { Valuation::Infinite })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, j: usize, k: usize) -> Valuation {
        self.entries[j * self.size + k]
    }

    pub fn diagonal(&self) -> impl Iterator<Item = Valuation> + '_ {
        (0..self.size).map(move |j| self.get(j, j))
    }

    /// Rows with `+inf` written as `None`.
    pub fn rows(&self) -> Vec<Vec<Option<i64>>> {
        (0..self.size)
            .map(|j| (0..self.size).map(|k| self.get(j, k).finite()).collect())
            .collect()
    }

    /// Adds `shift` to every finite entry (multiplication by `t^shift`).
    pub fn shifted(&self, shift: i64) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|v| v.checked_add(Valuation::Finite(shift)).ok_or(Error::Overflow("valuation shift")))
            .collect::<Result<_>>()?;
        Ok(Self { size: self.size, entries })
    }
}

impl fmt::Display for ValMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for j in 0..self.size {
            if j > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for k in 0..self.size {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(j, k))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Block sizes `[n_1, ..., n_e]` of a block hereditary order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockStructure(Vec<usize>);

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return invalid("block structure must be nonempty");
        }
        if sizes.contains(&0) {
            return invalid("block sizes must be positive");
        }
        Ok(Self(sizes))
    }

    /// `[1, ..., 1]` of length `e`.
    pub fn trivial(e: usize) -> Result<Self> {
        Self::new(vec![1; e])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// Ramification index `e` of the inflated order.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

fn check_index(e: usize) -> Result<()> {
    if e == 0 {
        return invalid("ramification index must be at least 1");
    }
    Ok(())
}

/// The standard hereditary order: `(1)` on and above the diagonal, `(t)` below.
pub fn standard_order(e: usize) -> Result<ValMatrix> {
    check_index(e)?;
    ValMatrix::from_fn(e, |j, k| Valuation::Finite(if k >= j { 0 } else { 1 }))
}

/// Jacobson radical of the standard order: `(1)` strictly above the diagonal, `(t)` elsewhere.
pub fn jacobson_radical(e: usize) -> Result<ValMatrix> {
    check_index(e)?;
    ValMatrix::from_fn(e, |j, k| Valuation::Finite(if k > j { 0 } else { 1 }))
}

/// Dualizing module: `(t^-1)` strictly above the diagonal, `(1)` elsewhere.
pub fn dualizing_module(e: usize) -> Result<ValMatrix> {
    check_index(e)?;
    ValMatrix::from_fn(e, |j, k| Valuation::Finite(if k > j { -1 } else { 0 }))
}

/// `J^i = y^i Delta`, entry `(j, k) = -floor((k - j - i) / e)`, for any integer `i`.
pub fn radical_power(e: usize, i: i64) -> Result<ValMatrix> {
    check_index(e)?;
    let ei = i64::try_from(e).map_err(|_| Error::Overflow("ramification index"))?;
    let mut overflow = false;
    let m = ValMatrix::from_fn(e, |j, k| {
        let num = (k as i64 - j as i64).checked_sub(i);
        match num {
            Some(n) => Valuation::Finite(-Integer::div_floor(&n, &ei)),
            None => {
                overflow = true;
                Valuation::Infinite
            }
        }
    })?;
    if overflow {
        return Err(Error::Overflow("radical power"));
    }
    Ok(m)
}

/// `omega^i = y^(-i(e-1)) Delta`, entry `(j, k) = -floor((k - j + i(e-1)) / e)`.
pub fn omega_power(e: usize, i: u32) -> Result<ValMatrix> {
    check_index(e)?;
    let shift = i64::from(i)
        .checked_mul(e as i64 - 1)
        .ok_or(Error::Overflow("omega power"))?;
    radical_power(e, -shift)
}

/// Min-plus product: `(A B)_ik = min_j (A_ij + B_jk)`.
pub fn tropical_mul(a: &ValMatrix, b: &ValMatrix) -> Result<ValMatrix> {
    if a.size != b.size {
        return invalid(format!("size mismatch: {} vs {}", a.size, b.size));
    }
    let n = a.size;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            let mut best = Valuation::Infinite;
            for j in 0..n {
                let s = a
                    .get(i, j)
                    .checked_add(b.get(j, k))
                    .ok_or(Error::Overflow("tropical product"))?;
                best = best.min(s);
            }
            entries.push(best);
        }
    }
    Ok(ValMatrix { size: n, entries })
}

/// `k`-fold tropical product of `m` with itself (`k = 0` gives the tropical identity).
pub fn tropical_pow(m: &ValMatrix, k: u32) -> Result<ValMatrix> {
    let mut acc = ValMatrix::identity(m.size)?;
    for _ in 0..k {
        acc = tropical_mul(&acc, m)?;
    }
    Ok(acc)
}

/// Whether `order ⊙ m = m ⊙ order = m`.
pub fn is_bimodule_over(m: &ValMatrix, order: &ValMatrix) -> Result<bool> {
    Ok(tropical_mul(order, m)? == *m && tropical_mul(m, order)? == *m)
}

/// Largest scalar ideal `t^v R` with `t^v I ⊆ M`, i.e. the maximum diagonal valuation.
///
/// `M` must be a bimodule over the standard order of its own size. Every
/// block hereditary order of that size contains the standard one, so
/// bimodules over block orders pass this check as well.
pub fn centralizer(m: &ValMatrix) -> Result<Valuation> {
    let order = standard_order(m.size)?;
    if !is_bimodule_over(m, &order)? {
        return Err(Error::PreconditionViolation(format!(
            "matrix {m} is not closed under multiplication by the order"
        )));
    }
    Ok(m.diagonal().max().expect("size is positive"))
}

/// Replaces entry `(i, j)` by the constant `n_i × n_j` block with the same value.
pub fn inflate(a: &ValMatrix, blocks: &BlockStructure) -> Result<ValMatrix> {
    if blocks.len() != a.size {
        return invalid(format!(
            "block structure has length {} but the matrix has size {}",
            blocks.len(),
            a.size
        ));
    }
    let owner: Vec<usize> = blocks
        .sizes()
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat(i).take(n))
        .collect();
    ValMatrix::from_fn(owner.len(), |r, c| a.get(owner[r], owner[c]))
}

/// Nonzero Laurent monomial `coeff * t^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigRational,
    pub exp: i64,
}

impl Monomial {
    pub fn new(coeff: BigRational, exp: i64) -> Option<Self> {
        (!coeff.is_zero()).then_some(Self { coeff, exp })
    }

    pub fn t_power(exp: i64) -> Self {
        Self { coeff: BigRational::one(), exp }
    }
}

/// Square matrix whose entries are zero or a single Laurent monomial in `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    size: usize,
    entries: Vec<Option<Monomial>>,
}

impl MonomialMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Option<Monomial>) -> Result<Self> {
        if size == 0 {
            return invalid("matrix size must be positive");
        }
        let mut entries = Vec::with_capacity(size * size);
        for j in 0..size {
            for k in 0..size {
                entries.push(f(j, k));
            }
        }
        Ok(Self { size, entries })
    }

    /// `t^exp` times the identity.
    pub fn scalar(size: usize, exp: i64) -> Result<Self> {
        Self::from_fn(size, |j, k| (j == k).then(|| Monomial::t_power(exp)))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, j: usize, k: usize) -> Option<&Monomial> {
        self.entries[j * self.size + k].as_ref()
    }

    /// Whether this is `coeff * t^exp * I`.
    pub fn is_scalar(&self, coeff: &BigRational, exp: i64) -> bool {
        (0..self.size).all(|j| {
            (0..self.size).all(|k| match self.get(j, k) {
                None => j != k,
                Some(m) => j == k && m.coeff == *coeff && m.exp == exp,
            })
        })
    }

    /// The ideal matrix generated entrywise: exponent for monomials, `+inf` for zero.
    pub fn ideal_of(&self) -> ValMatrix {
        ValMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .map(|m| m.as_ref().map_or(Valuation::Infinite, |m| Valuation::Finite(m.exp)))
                .collect(),
        }
    }
}

/// Exact product in the monomial representation.
///
/// Fails with [`Error::RepresentationOverflow`] when an entry would be a sum
/// of monomials of two or more distinct degrees.
pub fn monomial_mul(a: &MonomialMatrix, b: &MonomialMatrix) -> Result<MonomialMatrix> {
    if a.size != b.size {
        return invalid(format!("size mismatch: {} vs {}", a.size, b.size));
    }
    let n = a.size;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            // exponent -> accumulated coefficient
            let mut terms: Vec<(i64, BigRational)> = Vec::new();
            for j in 0..n {
                let (Some(x), Some(y)) = (a.get(i, j), b.get(j, k)) else { continue };
                let exp = x.exp.checked_add(y.exp).ok_or(Error::Overflow("monomial product"))?;
                let coeff = &x.coeff * &y.coeff;
                match terms.iter_mut().find(|(e, _)| *e == exp) {
                    Some((_, c)) => *c += coeff,
                    None => terms.push((exp, coeff)),
                }
            }
            terms.retain(|(_, c)| !c.is_zero());
            let entry = match terms.len() {
                0 => None,
                1 => {
                    let (exp, coeff) = terms.pop().expect("one term");
                    Some(Monomial { coeff, exp })
                }
                _ => {
                    return Err(Error::RepresentationOverflow(format!(
                        "entry ({i}, {k}) has {} distinct degrees",
                        terms.len()
                    )))
                }
            };
            entries.push(entry);
        }
    }
    Ok(MonomialMatrix { size: n, entries })
}

/// The normal element `y`: ones on the superdiagonal and `t` in the bottom-left corner.
pub fn normal_element(e: usize) -> Result<MonomialMatrix> {
    check_index(e)?;
    MonomialMatrix::from_fn(e, |j, k| {
        if e == 1 {
            Some(Monomial::t_power(1))
        } else if k == j + 1 {
            Some(Monomial::t_power(0))
        } else if j == e - 1 && k == 0 {
            Some(Monomial::t_power(1))
        } else {
            None
        }
    })
}

/// `y^-1`: ones on the subdiagonal and `t^-1` in the top-right corner.
pub fn normal_element_inverse(e: usize) -> Result<MonomialMatrix> {
    check_index(e)?;
    MonomialMatrix::from_fn(e, |j, k| {
        if e == 1 {
            Some(Monomial::t_power(-1))
        } else if j == k + 1 {
            Some(Monomial::t_power(0))
        } else if j == 0 && k == e - 1 {
            Some(Monomial::t_power(-1))
        } else {
            None
        }
    })
}

/// `y^k` for any integer `k`, by repeated exact multiplication.
pub fn normal_element_power(e: usize, k: i64) -> Result<MonomialMatrix> {
    let base = if k >= 0 { normal_element(e)? } else { normal_element_inverse(e)? };
    let mut acc = MonomialMatrix::scalar(e, 0)?;
    for _ in 0..k.unsigned_abs() {
        acc = monomial_mul(&acc, &base)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vm(rows: &[&[i64]]) -> ValMatrix {
        ValMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn valuation_saturates() {
        let inf = Valuation::Infinite;
        assert_eq!(inf + Valuation::Finite(3), inf);
        assert_eq!(inf.min(Valuation::Finite(-7)), Valuation::Finite(-7));
        assert_eq!(Valuation::Finite(i64::MAX).checked_add(Valuation::Finite(1)), None);
    }

    #[test]
    fn standard_order_patterns() {
        assert_eq!(standard_order(1).unwrap(), vm(&[&[0]]));
        assert_eq!(standard_order(2).unwrap(), vm(&[&[0, 0], &[1, 0]]));
        assert_eq!(standard_order(3).unwrap(), vm(&[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]));
        assert!(matches!(standard_order(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn radical_and_dualizing_patterns() {
        assert_eq!(jacobson_radical(1).unwrap(), vm(&[&[1]]));
        assert_eq!(jacobson_radical(2).unwrap(), vm(&[&[1, 0], &[1, 1]]));
        assert_eq!(jacobson_radical(3).unwrap(), vm(&[&[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]));
        assert_eq!(dualizing_module(1).unwrap(), vm(&[&[0]]));
        assert_eq!(dualizing_module(2).unwrap(), vm(&[&[0, -1], &[0, 0]]));
        assert_eq!(dualizing_module(3).unwrap(), vm(&[&[0, -1, -1], &[0, 0, -1], &[0, 0, 0]]));
    }

    #[test]
    fn tropical_products() {
        let a = vm(&[&[3, -1], &[0, 7]]);
        assert_eq!(tropical_mul(&ValMatrix::identity(2).unwrap(), &a).unwrap(), a);
        let d = standard_order(2).unwrap();
        assert_eq!(tropical_mul(&d, &d).unwrap(), d);
        let j = jacobson_radical(2).unwrap();
        assert_eq!(tropical_mul(&j, &j).unwrap(), vm(&[&[1, 1], &[2, 1]]));
        assert!(tropical_mul(&d, &standard_order(3).unwrap()).is_err());
    }

    #[test]
    fn radical_powers() {
        assert_eq!(radical_power(2, 2).unwrap(), vm(&[&[1, 1], &[2, 1]]));
        assert_eq!(radical_power(3, 0).unwrap(), standard_order(3).unwrap());
        assert_eq!(radical_power(3, 1).unwrap(), jacobson_radical(3).unwrap());
        for e in 1..=6 {
            assert_eq!(radical_power(e, e as i64).unwrap(), standard_order(e).unwrap().shifted(1).unwrap());
        }
    }

    #[test]
    fn omega_powers() {
        assert_eq!(omega_power(2, 1).unwrap(), dualizing_module(2).unwrap());
        assert_eq!(omega_power(3, 0).unwrap(), standard_order(3).unwrap());
        assert_eq!(omega_power(3, 2).unwrap(), vm(&[&[-1, -1, -2], &[-1, -1, -1], &[0, -1, -1]]));
    }

    #[test]
    fn centralizers() {
        assert_eq!(centralizer(&omega_power(2, 1).unwrap()).unwrap(), Valuation::Finite(0));
        assert_eq!(centralizer(&omega_power(2, 2).unwrap()).unwrap(), Valuation::Finite(-1));
        for e in 1..5 {
            assert_eq!(centralizer(&standard_order(e).unwrap()).unwrap(), Valuation::Finite(0));
        }
        // the lower-triangular pattern is not a bimodule over the standard order
        let bad = vm(&[&[0, 1], &[0, 0]]);
        assert!(matches!(centralizer(&bad), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn inflation() {
        let d = standard_order(2).unwrap();
        let b = BlockStructure::new(vec![1, 2]).unwrap();
        assert_eq!(inflate(&d, &b).unwrap(), vm(&[&[0, 0, 0], &[1, 0, 0], &[1, 0, 0]]));
        let w = omega_power(3, 2).unwrap();
        assert_eq!(inflate(&w, &BlockStructure::trivial(3).unwrap()).unwrap(), w);
        let big = inflate(&w, &BlockStructure::new(vec![2, 1, 2]).unwrap()).unwrap();
        assert_eq!(centralizer(&big).unwrap(), Valuation::Finite(-1));
        assert!(inflate(&w, &b).is_err());
        assert!(BlockStructure::new(vec![]).is_err());
        assert!(BlockStructure::new(vec![1, 0]).is_err());
    }

    #[test]
    fn normal_element_identities() {
        let one = BigRational::one();
        assert!(normal_element(1).unwrap().is_scalar(&one, 1));
        for e in 1..=6 {
            let ye = normal_element_power(e, e as i64).unwrap();
            assert!(ye.is_scalar(&one, 1), "y^{e} != t");
            let prod = monomial_mul(&normal_element(e).unwrap(), &normal_element_inverse(e).unwrap()).unwrap();
            assert!(prod.is_scalar(&one, 0));
            let delta = standard_order(e).unwrap();
            let y = normal_element(e).unwrap().ideal_of();
            assert_eq!(tropical_mul(&y, &delta).unwrap(), jacobson_radical(e).unwrap());
            assert_eq!(tropical_mul(&delta, &y).unwrap(), jacobson_radical(e).unwrap());
        }
    }

    #[test]
    fn non_monomial_product_is_reported() {
        let ones = MonomialMatrix::from_fn(2, |_, k| Some(Monomial::t_power(k as i64))).unwrap();
        assert!(matches!(monomial_mul(&ones, &ones), Err(Error::RepresentationOverflow(_))));
        let cancel = MonomialMatrix::from_fn(2, |j, k| {
            let sign = if j == 1 && k == 1 { -1 } else { 1 };
            Monomial::new(BigRational::from_integer(sign.into()), 0)
        })
        .unwrap();
        let ones = MonomialMatrix::from_fn(2, |_, _| Some(Monomial::t_power(0))).unwrap();
        // row 0 of `ones` times column 1 of `cancel`: 1 + (-1) = 0
        let p = monomial_mul(&ones, &cancel).unwrap();
        assert!(p.get(0, 1).is_none());
    }
}
