//! Affine toric log pairs.
//!
//! A [`Lattice`] is given by a rational basis of the ambient space; cones,
//! divisors and Hilbert bases all live in lattice coordinates, so apart from
//! functionals every vector here is an integer vector. A functional `u` is
//! written in the dual basis and pairs with lattice coordinates by the plain
//! dot product.
//!
//! Sign convention: the divisor `sum n_i D_i` is Q-Cartier iff some `u`
//! satisfies `<u, v_i> = -n_i` for every ray. For `K + D` this gives
//! `<u, v_i> = 1 - d_i`, and `<u, n>` is the log discrepancy of the toric
//! valuation at the primitive point `n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, LinearSolution, RatMatrix};
use crate::orders::LogCentre;
use crate::rational::{self, Rat, RatString};

/// Largest supported cone dimension for enumeration.
pub const MAX_DIM: usize = 4;
/// Largest absolute ray coordinate accepted for enumeration.
pub const MAX_COORD: i64 = 100;
/// Largest number of parallelepiped points enumerated per simplicial cone.
pub const MAX_PARALLELEPIPED_POINTS: u64 = 1_000_000;

/// A full-rank lattice in `Q^d`, stored by its basis (columns) and the inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: RatMatrix,
    inverse: RatMatrix,
}

impl Lattice {
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 {
            return invalid("lattice dimension must be positive");
        }
        let vecs = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        Self::from_basis_vectors(vecs)
    }

    /// Builds a lattice from its basis vectors in ambient coordinates.
    pub fn from_basis_vectors(vectors: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 || vectors.iter().any(|v| v.len() != dim) {
            return invalid("lattice basis must be a nonempty square matrix");
        }
        let basis = linalg::transpose(&vectors);
        let inverse = linalg::inverse(&basis)
            .ok_or_else(|| Error::InvalidArgument("lattice basis is singular".into()))?;
        Ok(Self { basis, inverse })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        linalg::transpose(&self.basis)
    }

    pub fn to_coords(&self, ambient: &[Rat]) -> Vec<Rat> {
        linalg::mat_vec(&self.inverse, ambient)
    }

    pub fn to_ambient(&self, coords: &[i64]) -> Vec<Rat> {
        linalg::mat_vec(&self.basis, &linalg::to_rat(coords))
    }

    /// The dual lattice `M = Hom(N, Z)`, basis in ambient dual coordinates.
    pub fn dual(&self) -> Self {
        Self { basis: linalg::transpose(&self.inverse), inverse: linalg::transpose(&self.basis) }
    }

    /// Sublattice spanned by the given vectors, written in this lattice's coordinates.
    pub fn sublattice(&self, generators: &[Vec<i64>]) -> Result<Self> {
        let vecs = generators.iter().map(|g| self.to_ambient(g)).collect();
        Self::from_basis_vectors(vecs)
    }

    /// Same lattice with a canonical (Hermite-reduced) basis.
    pub fn canonical(&self) -> Result<Self> {
        let vecs = self.basis_vectors();
        let lcm = vecs
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<Vec<i64>> = vecs
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| (x * &lcm).to_integer().to_i64().ok_or(Error::Overflow("lattice basis")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let rows = linalg::hermite_rows(&scaled, self.dim())?;
        let denom = Rat::from_integer(lcm);
        let vecs = rows
            .iter()
            .map(|r| r.iter().map(|&x| rational::int(x) / &denom).collect())
            .collect();
        Self::from_basis_vectors(vecs)
    }

    /// Whether both bases span the same subgroup of `Q^d`.
    pub fn same_as(&self, other: &Lattice) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        // change of basis must be integral and unimodular
        let change: RatMatrix = other
            .basis_vectors()
            .iter()
            .map(|v| self.to_coords(v))
            .collect();
        change.iter().all(|c| linalg::is_integral(c)) && linalg::det(&change).abs().is_one()
    }

    pub fn is_standard(&self) -> bool {
        Lattice::standard(self.dim()).is_ok_and(|s| self.same_as(&s))
    }
}

/// Primitive generator, in lattice coordinates, of the ray through the ambient vector `v`.
pub fn primitive(v: &[Rat], lattice: &Lattice) -> Result<Vec<i64>> {
    if v.len() != lattice.dim() {
        return invalid(format!("vector has length {} in a lattice of rank {}", v.len(), lattice.dim()));
    }
    linalg::primitive_integer(&lattice.to_coords(v))
}

/// Pointed, full-dimensional rational cone with labelled primitive rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    lattice: Lattice,
    rays: Vec<Vec<i64>>,
    labels: Vec<String>,
    facets: Vec<Vec<i64>>,
}

impl Cone {
    /// Rays are primitive integer vectors in lattice coordinates.
    /// Labels default to `D1, D2, ...`.
    pub fn new(lattice: Lattice, rays: Vec<Vec<i64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let d = lattice.dim();
        if rays.is_empty() {
            return invalid("cone needs at least one ray");
        }
        for r in &rays {
            if r.len() != d {
                return invalid(format!("ray {} has the wrong length for rank {d}", rational::fmt_int_vec(r)));
            }
            if linalg::gcd_slice(r) != 1 {
                return invalid(format!("ray {} is not primitive", rational::fmt_int_vec(r)));
            }
        }
        let distinct: BTreeSet<&Vec<i64>> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return invalid("rays must be pairwise distinct");
        }
        let labels = match labels {
            Some(l) if l.len() != rays.len() => return invalid("one label per ray is required"),
            Some(l) => {
                if l.iter().collect::<BTreeSet<_>>().len() != l.len() {
                    return invalid("ray labels must be distinct");
                }
                l
            }
            None => (1..=rays.len()).map(|i| format!("D{i}")).collect(),
        };
        let as_rat: RatMatrix = rays.iter().map(|r| linalg::to_rat(r)).collect();
        if linalg::rank(&as_rat) != d {
            return invalid("cone is not full-dimensional");
        }
        let facets = facet_normals(&rays, d)?;
        let normals: RatMatrix = facets.iter().map(|f| linalg::to_rat(f)).collect();
        if linalg::rank(&normals) != d {
            return invalid("cone is not pointed");
        }
        for r in &rays {
            let tight: RatMatrix = facets
                .iter()
                .filter(|f| dot_i(f, r) == 0)
                .map(|f| linalg::to_rat(f))
                .collect();
            if linalg::rank(&tight) != d - 1 {
                return invalid(format!("ray {} is not extreme", rational::fmt_int_vec(r)));
            }
        }
        Ok(Self { lattice, rays, labels, facets })
    }

    /// Cone over rays given in ambient coordinates; each is made primitive.
    pub fn from_ambient(lattice: Lattice, rays: &[Vec<Rat>], labels: Option<Vec<String>>) -> Result<Self> {
        let rays = rays.iter().map(|r| primitive(r, &lattice)).collect::<Result<_>>()?;
        Self::new(lattice, rays, labels)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Primitive inner facet normals in dual-lattice coordinates, sorted.
    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.facets.iter().all(|f| dot_i(f, p) >= 0)
    }

    /// Rays as ambient vectors.
    pub fn ambient_rays(&self) -> Vec<Vec<Rat>> {
        self.rays.iter().map(|r| self.lattice.to_ambient(r)).collect()
    }
}

fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn facet_normals(rays: &[Vec<i64>], d: usize) -> Result<Vec<Vec<i64>>> {
    let mut found = BTreeSet::new();
    for subset in combinations(rays.len(), d - 1) {
        let m: RatMatrix = subset.iter().map(|&i| linalg::to_rat(&rays[i])).collect();
        let ker = linalg::kernel(&m, d);
        if ker.len() != 1 {
            continue;
        }
        let n = linalg::primitive_integer(&ker[0])?;
        let signs: Vec<i64> = rays.iter().map(|r| dot_i(&n, r).signum()).collect();
        if signs.iter().all(|&s| s >= 0) {
            found.insert(n);
        } else if signs.iter().all(|&s| s <= 0) {
            found.insert(n.iter().map(|x| -x).collect());
        }
    }
    Ok(found.into_iter().collect())
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coefficients `n_i` of a torus-invariant divisor, one per ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDivisor(pub Vec<Rat>);

impl ToricDivisor {
    /// `K = -sum D_i`.
    pub fn canonical(rays: usize) -> Self {
        Self(vec![rational::int(-1); rays])
    }
}

/// Cone plus boundary divisor `D = sum d_i D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConePair {
    cone: Cone,
    boundary: ToricDivisor,
}

impl ConePair {
    /// Boundary coefficients must lie in `[0, 1]`.
    pub fn new(cone: Cone, boundary: ToricDivisor) -> Result<Self> {
        if boundary.0.len() != cone.rays.len() {
            return invalid(format!(
                "boundary has {} coefficients for {} rays",
                boundary.0.len(),
                cone.rays.len()
            ));
        }
        if boundary.0.iter().any(|c| c.is_negative() || *c > Rat::one()) {
            return invalid("boundary coefficients must lie in [0, 1]");
        }
        Ok(Self { cone, boundary })
    }

    pub fn without_boundary(cone: Cone) -> Self {
        let n = cone.rays.len();
        Self { cone, boundary: ToricDivisor(vec![Rat::zero(); n]) }
    }

    /// Pair whose boundary is the discriminant of a log centre, matched on ray labels.
    pub fn from_log_centre(cone: Cone, centre: &LogCentre) -> Result<Self> {
        let mut coeffs = vec![Rat::zero(); cone.rays.len()];
        for (prime, c) in centre.divisor.terms() {
            let Some(i) = cone.labels.iter().position(|l| l == prime) else {
                return invalid(format!("prime {prime} is not a ray label of the cone"));
            };
            coeffs[i] = c.clone();
        }
        Self::new(cone, ToricDivisor(coeffs))
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn boundary(&self) -> &ToricDivisor {
        &self.boundary
    }

    /// Coefficients of `K + D`.
    pub fn log_canonical_divisor(&self) -> ToricDivisor {
        ToricDivisor(self.boundary.0.iter().map(|d| d - Rat::one()).collect())
    }

    pub fn has_standard_coefficients(&self) -> bool {
        self.boundary.0.iter().all(|d| rational::standard_index(d).is_some())
    }
}

/// Linear functional in dual-lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierFunctional(pub Vec<Rat>);

impl CartierFunctional {
    pub fn pair(&self, v: &[i64]) -> Rat {
        linalg::dot_int(&self.0, v)
    }
}

impl fmt::Display for CartierFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::fmt_vec(&self.0))
    }
}

/// The `u` with `<u, v_i> = -n_i` for every ray, or `None` when the system is inconsistent.
pub fn q_cartier_functional(cone: &Cone, divisor: &ToricDivisor) -> Result<Option<CartierFunctional>> {
    if divisor.0.len() != cone.rays.len() {
        return invalid("divisor length does not match the number of rays");
    }
    let a: RatMatrix = cone.rays.iter().map(|r| linalg::to_rat(r)).collect();
    let b: Vec<Rat> = divisor.0.iter().map(|n| -n.clone()).collect();
    match linalg::solve(&a, &b) {
        LinearSolution::Unique(u) => Ok(Some(CartierFunctional(u))),
        LinearSolution::Inconsistent => Ok(None),
        // rays span the space, so the solution is never underdetermined
        LinearSolution::Underdetermined => unreachable!("full-dimensional cone"),
    }
}

/// Functional representing `-(K + D)`.
pub fn log_functional(pair: &ConePair) -> Result<Option<CartierFunctional>> {
    q_cartier_functional(&pair.cone, &pair.log_canonical_divisor())
}

/// Least `m >= 1` with `m u` integral on the lattice.
pub fn cartier_index(u: &CartierFunctional) -> Result<u64> {
    let lcm = u.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    lcm.to_u64().ok_or(Error::Overflow("Cartier index"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KltVerdict {
    pub klt: bool,
    pub functional: Option<CartierFunctional>,
}

impl fmt::Display for KltVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.functional {
            Some(u) => {
                let index = cartier_index(u).map_err(|_| fmt::Error)?;
                write!(f, "klt={} u={u} index={index}", self.klt)
            }
            None => write!(f, "klt={} u=none", self.klt),
        }
    }
}

/// `K + D` is Q-Cartier and every log discrepancy `<u, v_i>` is positive.
pub fn klt_check(pair: &ConePair) -> Result<KltVerdict> {
    let functional = log_functional(pair)?;
    let klt = functional
        .as_ref()
        .is_some_and(|u| pair.cone.rays.iter().all(|v| u.pair(v).is_positive()));
    Ok(KltVerdict { klt, functional })
}

fn check_enumeration_limits(cone: &Cone) -> Result<()> {
    if cone.dim() > MAX_DIM {
        return Err(Error::ResourceLimit(format!("dimension {} exceeds {MAX_DIM}", cone.dim())));
    }
    if cone.rays.iter().flatten().any(|x| x.abs() > MAX_COORD) {
        return Err(Error::ResourceLimit(format!("ray coordinate exceeds {MAX_COORD} in absolute value")));
    }
    Ok(())
}

/// Placing triangulation: rays are added in index order after an initial
/// simplex formed greedily from the first independent rays. Each simplex is
/// a sorted list of ray indices.
pub fn triangulate(cone: &Cone) -> Vec<Vec<usize>> {
    let d = cone.dim();
    let rays = &cone.rays;
    let mut initial: Vec<usize> = Vec::new();
    let mut span: RatMatrix = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        span.push(linalg::to_rat(r));
        if linalg::rank(&span) > initial.len() {
            initial.push(i);
        } else {
            span.pop();
        }
        if initial.len() == d {
            break;
        }
    }
    let mut simplices = vec![initial.clone()];
    for (i, v) in rays.iter().enumerate() {
        if initial.contains(&i) {
            continue;
        }
        let mut facet_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for s in &simplices {
            for skip in 0..d {
                let f: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
                *facet_count.entry(f).or_default() += 1;
            }
        }
        let mut added = Vec::new();
        for s in &simplices {
            for skip in 0..d {
                let f: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
                if facet_count[&f] != 1 {
                    continue;
                }
                let m: RatMatrix = f.iter().map(|&j| linalg::to_rat(&rays[j])).collect();
                let ker = linalg::kernel(&m, d);
                let n = &ker[0];
                let apex = linalg::dot(n, &linalg::to_rat(&rays[s[skip]]));
                let side = linalg::dot(n, &linalg::to_rat(v));
                if (apex.is_positive() && side.is_negative()) || (apex.is_negative() && side.is_positive()) {
                    let mut new = f.clone();
                    new.push(i);
                    new.sort_unstable();
                    added.push(new);
                }
            }
        }
        simplices.extend(added);
    }
    simplices.sort();
    simplices
}

/// Nonzero lattice points of the half-open parallelepiped `{sum l_i v_i : 0 <= l_i < 1}`.
fn parallelepiped_points(gens: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let d = gens.len();
    let cols: RatMatrix = linalg::transpose(&gens.iter().map(|g| linalg::to_rat(g)).collect::<Vec<_>>());
    let det = linalg::det(&cols);
    let vol = det.abs().to_integer().to_u64().ok_or(Error::Overflow("determinant"))?;
    if vol > MAX_PARALLELEPIPED_POINTS {
        return Err(Error::ResourceLimit(format!(
            "simplicial cone of volume {vol} exceeds {MAX_PARALLELEPIPED_POINTS}"
        )));
    }
    if vol == 1 {
        return Ok(Vec::new());
    }
    let inv = linalg::inverse(&cols).expect("simplex generators are independent");
    // adjugate-scaled inverse so that coefficients are integers over `vol`
    let scale = rational::int(vol as i64);
    let adj: Vec<Vec<i128>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * &scale).to_integer().to_i128().ok_or(Error::Overflow("adjugate")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let hnf = linalg::hermite_rows(gens, d)?;
    let diag: Vec<i64> = (0..d).map(|i| hnf[i][i]).collect();
    let vol = i128::from(vol as i64);
    let mut out = Vec::new();
    let mut rep = vec![0i64; d];
    loop {
        let coeffs: Vec<i128> = adj
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(&rep).map(|(a, &x)| a * i128::from(x)).sum();
                s.rem_euclid(vol)
            })
            .collect();
        if coeffs.iter().any(|&c| c != 0) {
            let p: Vec<i64> = (0..d)
                .map(|k| {
                    let s: i128 = coeffs.iter().zip(gens).map(|(c, g)| c * i128::from(g[k])).sum();
                    debug_assert_eq!(s % vol, 0);
                    (s / vol) as i64
                })
                .collect();
            out.push(p);
        }
        // odometer over the box prod [0, diag_i)
        let mut k = 0;
        loop {
            if k == d {
                return Ok(out);
            }
            rep[k] += 1;
            if rep[k] < diag[k] {
                break;
            }
            rep[k] = 0;
            k += 1;
        }
    }
}

/// Minimal generating set of the monoid `cone ∩ N`, sorted lexicographically.
pub fn hilbert_basis(cone: &Cone) -> Result<Vec<Vec<i64>>> {
    check_enumeration_limits(cone)?;
    let simplices = triangulate(cone);
    let per_simplex: Vec<Vec<Vec<i64>>> = simplices
        .par_iter()
        .map(|s| {
            let gens: Vec<Vec<i64>> = s.iter().map(|&i| cone.rays[i].clone()).collect();
            parallelepiped_points(&gens)
        })
        .collect::<Result<_>>()?;
    let mut candidates: BTreeSet<Vec<i64>> = cone.rays.iter().cloned().collect();
    candidates.extend(per_simplex.into_iter().flatten());
    let candidates: Vec<Vec<i64>> = candidates.into_iter().collect();

    // strictly positive on the cone minus the origin
    let grading: Vec<i64> = (0..cone.dim()).map(|k| cone.facets.iter().map(|f| f[k]).sum()).collect();
    let degree = |p: &[i64]| dot_i(&grading, p);
    let basis: Vec<Vec<i64>> = candidates
        .par_iter()
        .filter(|h| {
            let dh = degree(h);
            !candidates.iter().any(|g| {
                if g == *h || degree(g) >= dh {
                    return false;
                }
                let diff: Vec<i64> = h.iter().zip(g).map(|(a, b)| a - b).collect();
                cone.contains(&diff)
            })
        })
        .cloned()
        .collect();
    Ok(basis)
}

/// Whether `X` is canonical: with `<u, v_i> = 1` on every ray, every Hilbert basis element has `<u, h> >= 1`.
pub fn canonical_check(cone: &Cone) -> Result<bool> {
    let k = ToricDivisor::canonical(cone.rays.len());
    let Some(u) = q_cartier_functional(cone, &k)? else {
        return Err(Error::NotApplicable("K is not Q-Cartier".into()));
    };
    let basis = hilbert_basis(cone)?;
    Ok(basis.iter().all(|h| u.pair(h) >= Rat::one()))
}

/// The dual cone in the dual lattice; its rays are the facet normals.
pub fn dual_cone(cone: &Cone) -> Result<Cone> {
    Cone::new(cone.lattice.dual(), cone.facets.clone(), None)
}

/// Hilbert basis of `cone^∨ ∩ M`, in dual-lattice coordinates.
pub fn dual_cone_generators(cone: &Cone) -> Result<Vec<Vec<i64>>> {
    check_enumeration_limits(cone)?;
    hilbert_basis(&dual_cone(cone)?)
}

/// Index-one cover of a klt pair with standard coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogCanonicalCover {
    pub lattice: Lattice,
    pub cone: Cone,
    pub degree: u64,
    /// `u` in the cover's dual coordinates; integral.
    pub functional: CartierFunctional,
    /// Ramification index of the cover along each boundary divisor.
    pub ramification: Vec<u64>,
}

/// Cover lattice `{n : <u, n> ∈ Z}` with the same rays, checked to be crepant and Gorenstein.
pub fn log_canonical_cover(pair: &ConePair) -> Result<LogCanonicalCover> {
    let Some(u) = log_functional(pair)? else {
        return Err(Error::NotApplicable("K + D is not Q-Cartier".into()));
    };
    let expected: Vec<u64> = pair
        .boundary
        .0
        .iter()
        .map(|d| {
            rational::standard_index(d)
                .ok_or_else(|| Error::NonStandardBoundary(format!("coefficient {d} is not of the form (e-1)/e")))
        })
        .collect::<Result<_>>()?;
    let base = &pair.cone.lattice;
    let m = cartier_index(&u)?;
    let mi = i64::try_from(m).map_err(|_| Error::Overflow("index"))?;
    let w: Vec<i64> = u
        .0
        .iter()
        .map(|x| (x * rational::int(mi)).to_integer().to_i64().ok_or(Error::Overflow("functional")))
        .collect::<Result<_>>()?;
    let (g, mut cols) = linalg::row_reducer(&w)?;
    debug_assert_eq!(g.gcd(&mi), 1);
    for x in cols[0].iter_mut() {
        *x = x.checked_mul(mi).ok_or(Error::Overflow("cover lattice"))?;
    }
    let sub = linalg::hermite_rows(&cols, base.dim())?;
    let degree = linalg::abs_det_int(&sub);
    if degree != rational::int(mi) {
        return Err(Error::PreconditionViolation(format!("cover degree {degree} differs from index {m}")));
    }
    let lattice = base.sublattice(&sub)?.canonical()?;
    let rays: Vec<Vec<i64>> = pair
        .cone
        .ambient_rays()
        .iter()
        .map(|r| primitive(r, &lattice))
        .collect::<Result<_>>()?;
    let cone = Cone::new(lattice.clone(), rays, Some(pair.cone.labels.clone()))?;

    // u in cover coordinates: pair u with each cover basis vector written in base coordinates
    let cover_u = CartierFunctional(
        lattice
            .basis_vectors()
            .iter()
            .map(|b| linalg::dot(&u.0, &base.to_coords(b)))
            .collect(),
    );
    if !linalg::is_integral(&cover_u.0) {
        return Err(Error::PreconditionViolation("u is not integral on the cover lattice".into()));
    }
    let mut ramification = Vec::with_capacity(cone.rays.len());
    for (i, (cover_ray, base_ray)) in cone.rays.iter().zip(&pair.cone.rays).enumerate() {
        if !cover_u.pair(cover_ray).is_one() {
            return Err(Error::PreconditionViolation(format!(
                "cover ray {} has log discrepancy {} instead of 1",
                pair.cone.labels[i],
                cover_u.pair(cover_ray)
            )));
        }
        // cover ray = k * base ray in the base lattice
        let cover_in_base = base.to_coords(&lattice.to_ambient(cover_ray));
        let k = (0..base.dim())
            .find(|&j| base_ray[j] != 0)
            .map(|j| &cover_in_base[j] / rational::int(base_ray[j]))
            .expect("rays are nonzero");
        let k = k.to_integer().to_u64().ok_or(Error::Overflow("ramification"))?;
        if k != expected[i] {
            return Err(Error::PreconditionViolation(format!(
                "ramification {k} along {} differs from {}",
                pair.cone.labels[i], expected[i]
            )));
        }
        ramification.push(k);
    }
    Ok(LogCanonicalCover { lattice, cone, degree: m, functional: cover_u, ramification })
}

/// Both sides of the klt / canonical-cover correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceCheck {
    pub klt: bool,
    pub cover_canonical: bool,
}

impl CorrespondenceCheck {
    pub fn agree(&self) -> bool {
        self.klt == self.cover_canonical
    }
}

pub fn cover_correspondence_check(pair: &ConePair) -> Result<CorrespondenceCheck> {
    let klt = klt_check(pair)?.klt;
    let cover = log_canonical_cover(pair)?;
    let cover_canonical = canonical_check(&cover.cone)?;
    Ok(CorrespondenceCheck { klt, cover_canonical })
}

/// JSON shape of a [`ConePair`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConePairRecord {
    /// Basis vectors in ambient coordinates; the standard lattice when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<RatString>>>,
    pub rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Boundary coefficients; zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<RatString>>,
}

impl TryFrom<&ConePairRecord> for ConePair {
    type Error = Error;

    fn try_from(rec: &ConePairRecord) -> Result<Self> {
        let dim = rec.rays.first().map_or(0, Vec::len);
        let lattice = match &rec.lattice {
            Some(vecs) => Lattice::from_basis_vectors(
                vecs.iter().map(|v| v.iter().map(|x| x.0.clone()).collect()).collect(),
            )?,
            None => Lattice::standard(dim)?,
        };
        let cone = Cone::new(lattice, rec.rays.clone(), rec.labels.clone())?;
        match &rec.boundary {
            Some(b) => ConePair::new(cone, ToricDivisor(b.iter().map(|x| x.0.clone()).collect())),
            None => Ok(ConePair::without_boundary(cone)),
        }
    }
}

impl From<&ConePair> for ConePairRecord {
    fn from(pair: &ConePair) -> Self {
        let lattice = pair.cone.lattice();
        let default_labels: Vec<String> = (1..=pair.cone.rays.len()).map(|i| format!("D{i}")).collect();
        Self {
            lattice: (!lattice.basis_vectors().iter().enumerate().all(|(i, v)| {
                v.iter().enumerate().all(|(j, x)| *x == if i == j { Rat::one() } else { Rat::zero() })
            }))
            .then(|| {
                lattice
                    .basis_vectors()
                    .into_iter()
                    .map(|v| v.into_iter().map(RatString).collect())
                    .collect()
            }),
            rays: pair.cone.rays.clone(),
            labels: (pair.cone.labels != default_labels).then(|| pair.cone.labels.clone()),
            boundary: pair
                .boundary
                .0
                .iter()
                .any(|x| !x.is_zero())
                .then(|| pair.boundary.0.iter().cloned().map(RatString).collect()),
        }
    }
}
