mod common;

use logcentre::rational::{int, Rat};
use logcentre::toric::{self, Cone, ConePair, Lattice, ToricDivisor};
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pair_from_seed(seed: u64) -> ConePair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match seed % 3 {
        0 => common::simplicial_pair(&mut rng, 2),
        1 => common::simplicial_pair(&mut rng, 3),
        _ => common::nonsimplicial_pair(&mut rng),
    }
}

fn vec3() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-12i64..=12, 3).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #[test]
    fn primitive_ignores_scaling(v in vec3(), k in 1i64..=9) {
        let z3 = Lattice::standard(3).unwrap();
        let scaled: Vec<Rat> = v.iter().map(|&x| int(x * k)).collect();
        let plain: Vec<Rat> = v.iter().map(|&x| int(x)).collect();
        let p = toric::primitive(&scaled, &z3).unwrap();
        prop_assert_eq!(&p, &toric::primitive(&plain, &z3).unwrap());
        prop_assert_eq!(common::gcd(&p), 1);
    }

    #[test]
    fn hilbert_basis_is_minimal(seed in 0u64..400) {
        let pair = pair_from_seed(seed);
        let cone = pair.cone();
        let basis = toric::hilbert_basis(cone).unwrap();
        for r in cone.rays() {
            prop_assert!(basis.contains(r));
        }
        for h in &basis {
            prop_assert!(cone.contains(h));
            for g in &basis {
                if g != h {
                    let diff: Vec<i64> = h.iter().zip(g).map(|(a, b)| a - b).collect();
                    prop_assert!(!cone.contains(&diff), "{:?} = {:?} + lattice point", h, g);
                }
            }
        }
        let mut sorted = basis.clone();
        sorted.sort();
        prop_assert_eq!(&sorted, &basis);
        prop_assert_eq!(toric::hilbert_basis(cone).unwrap(), basis);
    }

    #[test]
    fn hilbert_basis_generates_box_points(seed in 0u64..200) {
        // every lattice point of the cone in a small box is a nonnegative combination of the basis
        let pair = pair_from_seed(seed);
        let cone = pair.cone();
        if cone.dim() != 2 {
            return Ok(());
        }
        let basis = toric::hilbert_basis(cone).unwrap();
        let mut reachable = std::collections::BTreeSet::new();
        reachable.insert(vec![0i64, 0]);
        let bound = 6;
        let mut frontier = vec![vec![0i64, 0]];
        while let Some(p) = frontier.pop() {
            for h in &basis {
                let q = vec![p[0] + h[0], p[1] + h[1]];
                if q.iter().all(|x| x.abs() <= bound * 10) && reachable.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        for x in -bound..=bound {
            for y in -bound..=bound {
                if cone.contains(&[x, y]) {
                    prop_assert!(reachable.contains(&vec![x, y]), "({}, {}) not generated", x, y);
                }
            }
        }
    }

    #[test]
    fn dual_of_dual(seed in 0u64..300) {
        let pair = pair_from_seed(seed);
        let cone = pair.cone();
        let back = toric::dual_cone(&toric::dual_cone(cone).unwrap()).unwrap();
        let mut a = cone.rays().to_vec();
        let mut b = back.rays().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert!(back.lattice().same_as(cone.lattice()));
    }

    #[test]
    fn functional_solves_divisor(seed in 0u64..300) {
        let pair = pair_from_seed(seed);
        let u = toric::log_functional(&pair).unwrap().unwrap();
        for (v, d) in pair.cone().rays().iter().zip(&pair.boundary().0) {
            prop_assert_eq!(u.pair(v), Rat::one() - d);
        }
        let m = toric::cartier_index(&u).unwrap();
        let mu: Vec<Rat> = u.0.iter().map(|x| x * int(m as i64)).collect();
        prop_assert!(mu.iter().all(|x| x.is_integer()));
        for k in 1..m {
            prop_assert!(u.0.iter().any(|x| !(x * int(k as i64)).is_integer()));
        }
    }

    #[test]
    fn cover_is_gorenstein_of_degree_index(seed in 0u64..300) {
        let pair = pair_from_seed(seed);
        let u = toric::log_functional(&pair).unwrap().unwrap();
        let cover = toric::log_canonical_cover(&pair).unwrap();
        prop_assert_eq!(cover.degree, toric::cartier_index(&u).unwrap());
        for v in cover.cone.rays() {
            prop_assert!(cover.functional.pair(v).is_one());
        }
        // the cover lattice is exactly the set of points where u is integral
        let base = pair.cone().lattice();
        for b in cover.lattice.basis_vectors() {
            let coords = base.to_coords(&b);
            prop_assert!(coords.iter().all(|x| x.is_integer()));
        }
    }

    #[test]
    fn canonical_matches_brute_force(seed in 0u64..300) {
        let pair = pair_from_seed(seed);
        let cone = pair.cone();
        if toric::q_cartier_functional(cone, &ToricDivisor::canonical(cone.rays().len())).unwrap().is_some() {
            prop_assert_eq!(toric::canonical_check(cone).unwrap(), common::brute_force_canonical(cone));
        }
    }
}

#[test]
fn cyclic_quotients_of_order_three() {
    // 1/3(1,1) has index 3 and 1/3(1,2) is Gorenstein
    let lattice = Lattice::from_basis_vectors(vec![vec![int(1), int(0)], vec![int(1) / int(3), int(1) / int(3)]]).unwrap();
    let third = Cone::from_ambient(lattice, &[vec![int(1), int(0)], vec![int(0), int(1)]], None).unwrap();
    let u = toric::q_cartier_functional(&third, &ToricDivisor::canonical(2)).unwrap().unwrap();
    assert_eq!(toric::cartier_index(&u).unwrap(), 3);
    assert!(!toric::canonical_check(&third).unwrap());
    assert!(!common::brute_force_canonical(&third));

    let lattice = Lattice::from_basis_vectors(vec![vec![int(1) / int(3), int(2) / int(3)], vec![int(0), int(1)]]).unwrap();
    let a2 = Cone::from_ambient(lattice, &[vec![int(1), int(0)], vec![int(0), int(1)]], None).unwrap();
    let u = toric::q_cartier_functional(&a2, &ToricDivisor::canonical(2)).unwrap().unwrap();
    assert_eq!(toric::cartier_index(&u).unwrap(), 1);
    assert!(toric::canonical_check(&a2).unwrap());
}

#[test]
fn hilbert_basis_thread_independent() {
    let pair = pair_from_seed(2);
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| toric::hilbert_basis(pair.cone()).unwrap())
    };
    assert_eq!(run(1), run(4));
}
