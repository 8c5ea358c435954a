use proptest::prelude::*;

use schurpos::hopf::gallery::{binomial, element_from_sym, h_label, lambda_k, truncated_sym};
use schurpos::hopf::{qsym_to_sym, sym_to_qsym, Element, HopfPresentation, QSymFunc};
use schurpos::kschur::kschur_in_h;
use schurpos::partition::{partitions_of, Composition, Partition, PartitionFilter};
use schurpos::{rat, SymFunc};

fn arb_qsym() -> impl Strategy<Value = QSymFunc> {
    let pool: Vec<Composition> = (0..=4).flat_map(Composition::all_of).collect();
    prop::collection::vec((prop::sample::select(pool), -3i64..=3), 0..4)
        .prop_map(|terms| QSymFunc::from_terms(terms.into_iter().map(|(a, c)| (a, rat(c, 1)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quasi_shuffle_is_commutative(f in arb_qsym(), g in arb_qsym()) {
        prop_assert_eq!(&f * &g, &g * &f);
    }

    #[test]
    fn quasi_shuffle_is_associative(f in arb_qsym(), g in arb_qsym(), h in arb_qsym()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn character_is_multiplicative_on_qsym(f in arb_qsym(), g in arb_qsym()) {
        prop_assert_eq!((&f * &g).character(), f.character() * g.character());
    }
}

#[test]
fn canonical_morphism_is_the_identity_on_sym() {
    let sym = truncated_sym(6);
    for n in 1..=6 {
        for lambda in partitions_of(n, PartitionFilter::default()) {
            let h = sym.element(&h_label(&lambda)).unwrap();
            let image = sym.canonical_morphism(&h);
            assert_eq!(image, sym_to_qsym(&SymFunc::h(lambda.clone())));
            assert_eq!(qsym_to_sym(&image).unwrap(), SymFunc::h(lambda));
        }
    }
}

#[test]
fn binomial_powers_go_to_p1_powers() {
    let bin = binomial(6);
    for n in 1..=6u32 {
        let label = if n == 1 { "x".to_string() } else { format!("x^{n}") };
        let image = bin.canonical_morphism(&bin.element(&label).unwrap());
        let p1n = SymFunc::p(Partition::new(vec![1; n as usize]).unwrap());
        assert_eq!(qsym_to_sym(&image).unwrap(), p1n);
        // multinomial coefficients
        for alpha in Composition::all_of(n as usize) {
            let mut m: u64 = (1..=n as u64).product();
            for &a in alpha.parts() {
                m /= (1..=a as u64).product::<u64>();
            }
            assert_eq!(image.coefficient(&alpha), rat(m as i64, 1));
        }
    }
}

#[test]
fn gallery_images_are_symmetric_and_multiplicative() {
    let mut gallery = vec![truncated_sym(6), binomial(6)];
    gallery.extend((1..=3).map(|k| lambda_k(k, 6)));
    for hp in &gallery {
        let report = hp.validate();
        assert!(report.all_true(), "{report:?}");
        for idx in hp.basis_indices() {
            assert!(
                qsym_to_sym(&hp.canonical_morphism(&Element::basis(idx))).is_ok(),
                "{}",
                hp.label(idx)
            );
        }
        assert!(hp.check_multiplicativity(6).is_empty());
    }
}

#[test]
fn canonical_morphism_is_linear() {
    let sym = truncated_sym(4);
    let a = sym.element("h(2,1)").unwrap();
    let b = sym.element("h(3)").unwrap();
    let combo = a.scale(&rat(3, 1)).add(&b.scale(&rat(-2, 5)));
    let lhs = sym.canonical_morphism(&combo);
    let rhs = sym.canonical_morphism(&a).scale(&rat(3, 1)) + sym.canonical_morphism(&b).scale(&rat(-2, 5));
    assert_eq!(lhs, rhs);
}

#[test]
fn subalgebra_morphism_matches_inclusion() {
    for k in 1..=3 {
        let sub = lambda_k(k, 6);
        for n in 1..=6 {
            for lambda in partitions_of(n, PartitionFilter::bounded(k)) {
                let f = kschur_in_h(k, &lambda).unwrap();
                let image = sub.canonical_morphism(&element_from_sym(&sub, &f).unwrap());
                assert_eq!(qsym_to_sym(&image).unwrap(), f, "k={k} {lambda}");
            }
        }
    }
}

#[test]
fn presentation_files_round_trip() {
    for hp in [truncated_sym(4), binomial(5), lambda_k(2, 5)] {
        let text = hp.to_json();
        let back = HopfPresentation::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        for idx in hp.basis_indices() {
            let e = Element::basis(idx);
            assert_eq!(back.canonical_morphism(&e), hp.canonical_morphism(&e));
        }
    }
}

#[test]
fn checked_in_presentations_load() {
    let dir = format!("{}/tests/data", env!("CARGO_MANIFEST_DIR"));
    let load = |name: &str| HopfPresentation::from_json(&std::fs::read_to_string(format!("{dir}/{name}")).unwrap());
    let bin = load("binomial3.json").unwrap();
    assert!(bin.validate().all_true());
    let bad = load("corrupted_coproduct.json").unwrap();
    assert!(!bad.validate().coassociative);
    assert!(load("degree_mismatch.json").is_err());
}
