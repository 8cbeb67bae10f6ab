mod common;

use common::{random_member, random_poly, random_relations, IdealOracle};
use proptest::prelude::*;
use qgforms::ncpoly::{verify_certificate, Alphabet, NcPoly, TruncatedIdeal, Word};
use qgforms::rational::Rational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn truncated_membership_matches_dense_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    let (mut agree, mut members) = (0, 0);
    for _ in 0..5 {
        let rels = random_relations(&mut rng);
        let oracle = IdealOracle::new(&rels, 5, 4);
        let ideal = TruncatedIdeal::new(rels.clone(), 4);
        for q in 0..20 {
            let p = if q % 2 == 0 {
                random_member(&mut rng, &rels, 4)
            } else {
                let terms = rng.gen_range(1..4);
                random_poly(&mut rng, 5, 4, terms)
            };
            let cert = ideal.certify(&p).unwrap();
            if let Some(c) = &cert {
                assert!(verify_certificate(&p, &rels, c));
                assert!(c.max_len(&rels) <= 4);
                members += 1;
            }
            assert_eq!(cert.is_some(), oracle.contains(&p), "query {p:?} relations {rels:?}");
            agree += 1;
        }
    }
    assert_eq!(agree, 100);
    assert!(members >= 50);
}

#[test]
fn normal_form_is_zero_exactly_on_members() {
    let mut rng = StdRng::seed_from_u64(11);
    let rels = random_relations(&mut rng);
    let ideal = TruncatedIdeal::new(rels.clone(), 4);
    for _ in 0..20 {
        let m = random_member(&mut rng, &rels, 4);
        assert!(ideal.normal_form(&m).unwrap().is_zero());
        let p = random_poly(&mut rng, 5, 3, 3);
        let nf = ideal.normal_form(&p).unwrap();
        assert!(ideal.contains(&(&p - &nf)).unwrap());
        assert_eq!(nf.is_zero(), ideal.contains(&p).unwrap());
    }
}

fn poly_strategy() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, 0..4), -5i64..=5), 0..5).prop_map(|terms| {
        NcPoly::from_terms(terms.into_iter().map(|(w, c)| (Word::from_slice(&w), Rational::from_integer(c.into()))))
    })
}

proptest! {
    #[test]
    fn product_is_associative(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_is_bilinear(a in poly_strategy(), b in poly_strategy(), c in poly_strategy(), k in -4i64..=4) {
        let k = Rational::from_integer(k.into());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a.scale(&k) * &b, (&a * &b).scale(&k));
    }

    #[test]
    fn leading_word_of_product_concatenates(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (la, lb) = (a.leading().unwrap().0.clone(), b.leading().unwrap().0.clone());
        let prod = &a * &b;
        prop_assert_eq!(prod.leading().unwrap().0, &la.concat(&lb));
    }

    #[test]
    fn certificates_are_sound(seed in 0u64..10_000) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rels = random_relations(&mut rng);
        let p = random_member(&mut rng, &rels, 4);
        let cert = TruncatedIdeal::new(rels.clone(), 4).certify(&p).unwrap();
        prop_assert!(cert.is_some_and(|c| verify_certificate(&p, &rels, &c)));
    }
}

#[test]
fn mixed_alphabets_are_rejected() {
    let a = Alphabet::new(["x", "y"]).unwrap();
    let b = Alphabet::new(["y", "x"]).unwrap();
    let x = a.gen("x").unwrap();
    assert!(qgforms::ncpoly::mul(&a, &x, &b, &x).is_err());
}
