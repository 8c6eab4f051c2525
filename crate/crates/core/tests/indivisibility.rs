use jacobi_core::eisenstein::{eisenstein_k1, integral_normalization};
use jacobi_core::exactarith::{is_fundamental, kronecker, nu_ell};
use jacobi_core::indivisibility::{
    enumerate_fundamentals, reduce_to_fundamental, scan, LocalCondition, LocalConditions,
    ScanOptions, ScanStatus,
};
use jacobi_core::jacobiexp::valid_keys;
use jacobi_core::{Error, ExactRational, ExpansionBuilder, FormSignature, LAdicValuation};
use proptest::prelude::*;

#[test]
fn e41_five_adic_scan() {
    let e = integral_normalization(&eisenstein_k1(4, 200).unwrap(), &[]).unwrap();
    assert_eq!(e.scalar, ExactRational::one());
    let rep = scan(
        &e.expansion,
        5,
        &LocalConditions::none(),
        &ScanOptions::default(),
    )
    .unwrap();
    assert_eq!(rep.examined, 62);
    assert_eq!(rep.hits.len(), 50);
    assert_eq!(rep.status, ScanStatus::Confirmed);
    assert!(rep.exceptional_set.as_ref().unwrap().contains(&5));
    let json = rep.to_json().unwrap();
    for field in [
        "\"ell\"",
        "\"bound\"",
        "\"conditions\"",
        "\"exceptional_set\"",
        "\"hits\"",
        "\"examined\"",
    ] {
        assert!(json.contains(field), "{field} missing");
    }
    let csv = rep.to_csv().unwrap();
    assert_eq!(csv.lines().count(), 51);
    assert!(matches!(
        scan(
            &e.expansion,
            2,
            &LocalConditions::none(),
            &ScanOptions::default()
        ),
        Err(Error::Argument(_))
    ));
}

#[test]
fn local_conditions_restrict_hits() {
    let e = eisenstein_k1(4, 1000).unwrap();
    let cond = LocalConditions::new(vec![
        LocalCondition { p: 5, eps: 1 },
        LocalCondition { p: 7, eps: -1 },
    ])
    .unwrap();
    let rep = scan(&e, 11, &cond, &ScanOptions::default()).unwrap();
    assert!(!rep.hits.is_empty());
    for h in &rep.hits {
        assert!(is_fundamental(h.disc), "{}", h.disc);
        assert_eq!(kronecker(h.disc, 5), 1);
        assert_eq!(kronecker(h.disc, 7), -1);
        assert_eq!(nu_ell(&h.coeff, 11).unwrap(), LAdicValuation::Finite(0));
        assert_eq!(
            h.coeff,
            e.coeff((h.rho * h.rho - h.disc) / 4, h.rho).unwrap()
        );
    }
}

#[test]
fn higher_level_scan_tests_every_lift() {
    let sig = FormSignature::new(4, 1, 3, None).unwrap();
    let mut b = ExpansionBuilder::new(sig, 50);
    for key in valid_keys(&sig, 50) {
        b.set_key(key, ExactRational::from_int(1 + key.rho))
            .unwrap();
    }
    let phi = b.seal();
    let rep = scan(&phi, 5, &LocalConditions::none(), &ScanOptions::default()).unwrap();
    let fundamentals = enumerate_fundamentals(50, 1, 3, &LocalConditions::none()).count() as u64;
    assert_eq!(rep.examined, 3 * fundamentals);
    for h in &rep.hits {
        assert!(h.rho >= 0 && h.rho < 6);
        assert_eq!(h.coeff, ExactRational::from_int(1 + h.rho));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_stays_in_the_orbit(m in 1..=5i64, level in 1..=3i64, n in 1..200i64, r in -40..=40i64) {
        let d = r * r - 4 * m * n;
        prop_assume!(d < 0);
        prop_assume!(num_integer::gcd(d, m * level) == 1);
        let phi = jacobi_core::JacobiExpansion::zero(FormSignature::new(4, m, level, None).unwrap(), 10);
        let red = reduce_to_fundamental(&phi, n, r).unwrap();
        let f = red.f as i64;
        prop_assert!(is_fundamental(red.d0));
        prop_assert_eq!(f * f * red.d0, d);
        prop_assert_eq!(red.r0 * red.r0 - 4 * m * red.n0, red.d0);
        prop_assert_eq!(phi.key_of(n, r), phi.key_of(f * f * red.n0, f * red.r0));
    }
}
