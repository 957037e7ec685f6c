#![allow(dead_code)]

use logcentre::rational::{int, ratio, Rat};
use logcentre::toric::{Cone, ConePair, Lattice, ToricDivisor};
use num_integer::Integer;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn gcd(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn det(rows: &[Vec<i64>]) -> i64 {
    match rows.len() {
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            let r = rows;
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        }
        _ => unimplemented!(),
    }
}

fn standard(rng: &mut impl Rng, choices: &[u64]) -> (Rat, u64) {
    let e = *choices.choose(rng).unwrap();
    (ratio(e as i64 - 1, e as i64), e)
}

fn random_lattice(rng: &mut impl Rng, d: usize) -> Lattice {
    let k = rng.gen_range(1..=3);
    let mut vecs: Vec<Vec<Rat>> = (0..d).map(|i| (0..d).map(|j| int(i64::from(i == j))).collect()).collect();
    match rng.gen_range(0..3) {
        0 => {}
        1 => vecs[d - 1][d - 1] = ratio(1, k),
        _ => {
            // (1/k)(1, ..., 1) replaces the last basis vector
            vecs[d - 1] = (0..d).map(|_| ratio(1, k)).collect();
        }
    }
    Lattice::from_basis_vectors(vecs).unwrap()
}

/// Random unimodular matrix as a product of a few elementary operations.
fn unimodular(rng: &mut impl Rng, d: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d);
        while j == i {
            j = rng.gen_range(0..d);
        }
        let c = rng.gen_range(-1..=1);
        for row in m.iter_mut() {
            row[i] += c * row[j];
        }
    }
    m
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Simplicial pair with random primitive rays and standard coefficients.
pub fn simplicial_pair(rng: &mut impl Rng, d: usize) -> ConePair {
    loop {
        let rays: Vec<Vec<i64>> = (0..d)
            .map(|_| loop {
                let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
                if gcd(&v) == 1 {
                    break v;
                }
            })
            .collect();
        if det(&rays) == 0 {
            continue;
        }
        let boundary = (0..d).map(|_| standard(rng, &[1, 1, 2, 3, 4]).0).collect();
        let cone = Cone::new(random_lattice(rng, d), rays, None).unwrap();
        return ConePair::new(cone, ToricDivisor(boundary)).unwrap();
    }
}

/// Three-dimensional pair with four or five rays on which `K + D` is Q-Cartier by construction:
/// every ray has height `6 (1 - d_i)` over a common plane.
pub fn nonsimplicial_pair(rng: &mut impl Rng) -> ConePair {
    loop {
        let n = rng.gen_range(4..=5);
        let mut rays = Vec::new();
        let mut boundary = Vec::new();
        for _ in 0..n {
            let (d, e) = standard(rng, &[1, 2, 3]);
            let h = 6 / e as i64;
            let v = vec![rng.gen_range(-4..=4), rng.gen_range(-4..=4), h];
            if gcd(&v) != 1 {
                continue;
            }
            rays.push(v);
            boundary.push(d);
        }
        let g = unimodular(rng, 3);
        let rays: Vec<Vec<i64>> = rays.iter().map(|v| apply(&g, v)).collect();
        if rays.len() < 4 || rays.iter().flatten().any(|x| x.abs() > 40) {
            continue;
        }
        let Ok(cone) = Cone::new(random_lattice(rng, 3), rays, None) else { continue };
        return ConePair::new(cone, ToricDivisor(boundary)).unwrap();
    }
}

pub fn corpus(rng: &mut impl Rng, count: usize) -> Vec<ConePair> {
    (0..count)
        .map(|i| match i % 3 {
            0 => simplicial_pair(rng, 2),
            1 => simplicial_pair(rng, 3),
            _ => nonsimplicial_pair(rng),
        })
        .collect()
}

/// Canonical iff every nonzero lattice point of the cone pairs to at least 1 with `u`,
/// where `<u, v_i> = 1`. Such points lie in the box spanned by the largest ray coordinate.
pub fn brute_force_canonical(cone: &Cone) -> bool {
    let a: Vec<Vec<Rat>> = cone.rays().iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let ones = vec![Rat::one(); cone.rays().len()];
    let u = match logcentre::linalg::solve(&a, &ones) {
        logcentre::linalg::LinearSolution::Unique(u) => u,
        _ => panic!("K must be Q-Cartier"),
    };
    let r = cone.rays().iter().flatten().map(|x| x.abs()).max().unwrap();
    let d = cone.dim();
    let mut p = vec![-r; d];
    loop {
        if p.iter().any(|&x| x != 0) && cone.contains(&p) {
            let s: Rat = u.iter().zip(&p).map(|(a, &b)| a * int(b)).sum();
            if s < Rat::one() {
                return false;
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                return true;
            }
            p[k] += 1;
            if p[k] <= r {
                break;
            }
            p[k] = -r;
            k += 1;
        }
    }
}
