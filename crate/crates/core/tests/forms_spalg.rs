mod common;

use common::{dense_rank, leibniz_det, random_form, random_matrix};
use num_traits::Zero;
use proptest::prelude::*;
use qgforms::catalog::{
    signature_form, sklyanin3, sklyanin3_relations, sklyanin4, sklyanin4_relations, takeuchi_forms, yang_mills,
    yang_mills_relations, ast_forms,
};
use qgforms::forms::{
    check_preregular, dualize, find_twist, odot, polar, rotation_holds, star, verify_polar, MultilinearForm, Slot,
};
use qgforms::linalg::Matrix;
use qgforms::rational::{frac, int};
use qgforms::spalg::{derive_relations, koszul_dual_relations, span_equal, wspace};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Every catalog form with its natural relation degree.
fn fixtures() -> Vec<(&'static str, MultilinearForm, usize)> {
    let mut p = Matrix::from_i64(&[&[1, 2], &[1, 1]]);
    p[(1, 0)] = frac(1, 2);
    let (ast_e, ast_f) = ast_forms(&p, &int(3)).unwrap();
    let (tk_e, tk_f) = takeuchi_forms(2, &int(2), &int(5)).unwrap();
    vec![
        ("signature2", signature_form(2).unwrap(), 2),
        ("signature3", signature_form(3).unwrap(), 2),
        ("signature4", signature_form(4).unwrap(), 2),
        ("ast-e", ast_e, 2),
        ("ast-f", ast_f, 2),
        ("takeuchi-e", tk_e, 2),
        ("takeuchi-f", tk_f, 2),
        ("sklyanin3", sklyanin3(&int(1), &int(2), &int(3)).unwrap(), 2),
        ("sklyanin4", sklyanin4(&int(2), &int(1), &int(-1)).unwrap(), 2),
        ("yangmills", yang_mills(&Matrix::identity(3)).unwrap(), 3),
    ]
}

#[test]
fn catalog_forms_are_preregular_with_exact_twists_and_polars() {
    for (name, form, _) in fixtures() {
        let report = check_preregular(&form);
        assert!(report.is_preregular(), "{name}");
        let twist = find_twist(&form).unwrap();
        assert!(rotation_holds(&form, &twist), "{name}");
        for slot in [Slot::First, Slot::Last] {
            assert!(verify_polar(&form, &polar(&form, slot).unwrap(), slot), "{name} {slot:?}");
        }
    }
}

#[test]
fn relation_spaces_match_published_relations() {
    let s3 = sklyanin3(&int(1), &int(2), &int(3)).unwrap();
    let r3 = derive_relations(&s3, 2).unwrap();
    assert!(span_equal(&r3.basis, &sklyanin3_relations(&int(1), &int(2), &int(3)).unwrap()).unwrap());
    let s4 = sklyanin4(&int(2), &int(1), &int(-1)).unwrap();
    let r4 = derive_relations(&s4, 2).unwrap();
    assert_eq!(r4.basis.len(), 6);
    assert!(span_equal(&r4.basis, &sklyanin4_relations(&int(2), &int(1), &int(-1)).unwrap()).unwrap());
    let g = Matrix::identity(3);
    let ym = derive_relations(&yang_mills(&g).unwrap(), 3).unwrap();
    assert_eq!(ym.basis.len(), 3);
    assert!(span_equal(&ym.basis, &yang_mills_relations(&g).unwrap()).unwrap());
}

#[test]
fn w_spaces_and_annihilators_are_complementary() {
    for (name, form, degree) in fixtures() {
        let rel = derive_relations(&form, degree).unwrap();
        let w = wspace(&form, form.arity() - degree).unwrap();
        assert!(span_equal(&rel.basis, &w.basis).unwrap(), "{name}");
        let dual = koszul_dual_relations(&form, degree).unwrap();
        assert_eq!(rel.basis.len() + dual.basis.len(), form.dim().pow(degree as u32), "{name}");
        for r in &rel.basis {
            for d in &dual.basis {
                assert!(odot(r, d).unwrap().is_zero(), "{name}");
            }
        }
    }
}

#[test]
fn determinants_match_leibniz_expansion() {
    let mut rng = StdRng::seed_from_u64(3);
    for k in 0..50 {
        let n = 2 + k % 3;
        let m = random_matrix(&mut rng, n);
        assert_eq!(m.det(), leibniz_det(&m));
    }
}

#[test]
fn ranks_match_textbook_elimination() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..30 {
        let f = random_form(&mut rng, 2, 3, 0.4);
        for slot in [Slot::First, Slot::Last] {
            let flat = f.flattening(slot);
            assert_eq!(flat.rank(), dense_rank(flat.to_rows()));
        }
    }
}

fn form_strategy() -> impl Strategy<Value = MultilinearForm> {
    (1usize..=3, 2usize..=4, any::<u64>()).prop_map(|(n, m, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        random_form(&mut rng, n, m, 0.5)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dualize_is_an_involution(f in form_strategy()) {
        prop_assert_eq!(dualize(&dualize(&f)), f);
    }

    #[test]
    fn full_contraction_is_symmetric_and_bilinear(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (e, f, g) = (random_form(&mut rng, 2, 3, 0.6), random_form(&mut rng, 2, 3, 0.6), random_form(&mut rng, 2, 3, 0.6));
        prop_assert_eq!(odot(&e, &f).unwrap(), odot(&f, &e).unwrap());
        let sum = MultilinearForm::from_fn(2, 3, |i| f.get(i) + g.get(i)).unwrap();
        prop_assert_eq!(odot(&e, &sum).unwrap(), odot(&e, &f).unwrap() + odot(&e, &g).unwrap());
    }

    #[test]
    fn star_trace_pairs_with_rotated_form(seed in any::<u64>()) {
        // tr(e⋆f) = Σ e_{iK} f_{Ki}: the full contraction of e with f rotated by one slot.
        let mut rng = StdRng::seed_from_u64(seed);
        let (e, f) = (random_form(&mut rng, 2, 3, 0.6), random_form(&mut rng, 2, 3, 0.6));
        let rotated = MultilinearForm::from_fn(2, 3, |i| f.get(&[i[1], i[2], i[0]])).unwrap();
        let s = star(&e, &f).unwrap();
        let trace = (0..2).map(|i| s[(i, i)].clone()).sum::<qgforms::rational::Rational>();
        prop_assert_eq!(trace, odot(&e, &rotated).unwrap());
    }

    #[test]
    fn polars_satisfy_their_identities(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_form(&mut rng, 2, 3, 0.7);
        for slot in [Slot::First, Slot::Last] {
            match polar(&f, slot) {
                Ok(p) => prop_assert!(verify_polar(&f, &p, slot)),
                Err(_) => {
                    let flat = match slot { Slot::First => f.flattening(Slot::Last), Slot::Last => f.flattening(Slot::First) };
                    prop_assert!(flat.rank() < 2);
                }
            }
        }
    }
}
