use logcentre::ncpoly::{self, NCPoly, RewriteSystem};
use logcentre::rational::int;
use proptest::prelude::*;

fn poly(rs: &RewriteSystem, terms: &[(Vec<u32>, i64)]) -> NCPoly {
    terms.iter().fold(NCPoly::zero(), |acc, (w, c)| &acc + &NCPoly::term(rs.monomial(w.clone()), int(*c)))
}

fn terms(gens: u32, max_len: usize, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    proptest::collection::vec((proptest::collection::vec(0..gens, 0..=max_len), -4i64..=4), 0..=max_terms)
}

fn sorted_words(p: &NCPoly) -> bool {
    p.terms().all(|(m, _)| m.word.windows(2).all(|w| w[0] <= w[1]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn idempotent(t in terms(3, 8, 5)) {
        let rs = ncpoly::clifford_system().unwrap();
        let nf = rs.normal_form(&poly(&rs, &t)).unwrap();
        prop_assert!(rs.is_normal(&nf));
        prop_assert_eq!(rs.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn linear(p in terms(3, 6, 4), q in terms(3, 6, 4), k in -5i64..=5) {
        let rs = ncpoly::clifford_system().unwrap();
        let (p, q) = (poly(&rs, &p), poly(&rs, &q));
        let sum = rs.normal_form(&(&p + &q)).unwrap();
        prop_assert_eq!(sum, &rs.normal_form(&p).unwrap() + &rs.normal_form(&q).unwrap());
        let scaled = rs.normal_form(&p.scale(&int(k))).unwrap();
        prop_assert_eq!(scaled, rs.normal_form(&p).unwrap().scale(&int(k)));
    }

    #[test]
    fn ordered_monomial_basis(t in terms(3, 8, 5)) {
        let rs = ncpoly::clifford_system().unwrap();
        let nf = rs.normal_form(&poly(&rs, &t)).unwrap();
        prop_assert!(sorted_words(&nf), "{}", rs.display(&nf));
    }

    #[test]
    fn multiplicative(p in terms(3, 6, 3), q in terms(3, 6, 3)) {
        let rs = ncpoly::clifford_system().unwrap();
        let (p, q) = (poly(&rs, &p), poly(&rs, &q));
        let direct = rs.normal_form(&(&p * &q)).unwrap();
        let reduced = &rs.normal_form(&p).unwrap() * &rs.normal_form(&q).unwrap();
        prop_assert_eq!(direct, rs.normal_form(&reduced).unwrap());
    }

    #[test]
    fn commutative_quotient_multiplicative(p in terms(4, 5, 3), q in terms(4, 5, 3)) {
        let rs = ncpoly::conifold_system().unwrap();
        let (p, q) = (poly(&rs, &p), poly(&rs, &q));
        let direct = rs.normal_form(&(&p * &q)).unwrap();
        prop_assert!(sorted_words(&direct));
        let reduced = &rs.normal_form(&p).unwrap() * &rs.normal_form(&q).unwrap();
        prop_assert_eq!(&direct, &rs.normal_form(&reduced).unwrap());
        prop_assert_eq!(direct, rs.normal_form(&(&q * &p)).unwrap());
    }

    #[test]
    fn display_parses_back(t in terms(3, 6, 5)) {
        let rs = ncpoly::clifford_system().unwrap();
        let p = poly(&rs, &t);
        prop_assert_eq!(rs.parse(&rs.display(&p)).unwrap(), p);
    }
}

#[test]
fn central_elements_commute_with_monomials() {
    let rs = ncpoly::clifford_system().unwrap();
    let words: Vec<NCPoly> = ["ab", "ca", "bcb", "c^3 a", "b a^2 c"].iter().map(|s| rs.parse(s).unwrap()).collect();
    for z in ["x", "y", "z", "t", "z^2 - 4xy"] {
        assert!(ncpoly::is_central(&rs.parse(z).unwrap(), &rs, &words).unwrap(), "{z}");
    }
}

#[test]
fn step_cap_from_environment_default() {
    let rs = ncpoly::clifford_system().unwrap();
    if std::env::var(ncpoly::STEP_CAP_VAR).is_err() {
        assert_eq!(rs.step_cap(), ncpoly::DEFAULT_STEP_CAP);
    }
}
