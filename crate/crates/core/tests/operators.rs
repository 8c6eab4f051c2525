use jacobi_core::eisenstein::eisenstein_k1;
use jacobi_core::exactarith::{is_fundamental, nu_ell};
use jacobi_core::jacobiexp::valid_keys;
use jacobi_core::operators::{
    detect_eigenvalue, hecke_tp, hecke_tp_naive, twist, u_d, v_m, Eigenvalue,
};
use jacobi_core::{ExactRational, ExpansionBuilder, FormSignature, JacobiExpansion};
use proptest::prelude::*;

fn q(n: i64) -> ExactRational {
    ExactRational::from_int(n)
}

#[test]
fn eisenstein_eigenvalues() {
    for k in [4i64, 6] {
        let e = eisenstein_k1(k, 1500).unwrap();
        for p in [5i64, 7, 11] {
            let rep = detect_eigenvalue(&e, p).unwrap();
            let sigma = 1 + p.pow(2 * k as u32 - 3);
            assert_eq!(
                rep.eigenvalue,
                Eigenvalue::Certified(q(sigma)),
                "k={k} p={p}"
            );
            assert_eq!(rep.certified_bound, 1500 / (p * p) as u64);
        }
    }
    let e6 = eisenstein_k1(6, 200).unwrap();
    assert_eq!(
        detect_eigenvalue(&e6, 5).unwrap().eigenvalue,
        Eigenvalue::Certified(q(1953126))
    );
}

#[test]
fn perturbed_form_is_not_an_eigenform() {
    let e = eisenstein_k1(4, 400).unwrap();
    let mut b = ExpansionBuilder::new(*e.signature(), 400);
    for (key, v) in e.iter() {
        let v = if key.disc == -7 { v + &q(1) } else { v.clone() };
        b.set_key(*key, v).unwrap();
    }
    let rep = detect_eigenvalue(&b.seal(), 5).unwrap();
    assert_eq!(rep.eigenvalue, Eigenvalue::NotEigen);
    assert!(rep.witness.is_some());
}

#[test]
fn sample_images() {
    let e = eisenstein_k1(4, 100).unwrap();
    let t = twist(&e, 5).unwrap();
    assert_eq!(t.coeff(1, 1).unwrap(), q(-56));
    // (-4 / 5) = +1
    assert_eq!(t.coeff(1, 0).unwrap(), q(126));
    let u = u_d(&e, 2).unwrap();
    assert_eq!(u.index(), 4);
    assert_eq!(u.coeff(1, 2).unwrap(), q(56));
    assert_eq!(u.coeff(1, 1).unwrap(), q(0));
}

#[test]
fn index_raising_on_fundamental_discriminants() {
    let e = eisenstein_k1(4, 300).unwrap();
    for m in [2i64, 3, 5] {
        let vm = v_m(&e, m).unwrap();
        for key in vm.all_keys() {
            if !is_fundamental(key.disc) || key.disc % m == 0 {
                continue;
            }
            let (n, r) = vm.representative(key);
            assert_eq!(
                vm.coeff(n, r).unwrap(),
                e.coeff(n * m, r).unwrap(),
                "m={m} key={key:?}"
            );
        }
    }
}

#[test]
fn valuation_grows_along_square_classes() {
    let e = eisenstein_k1(4, 600).unwrap();
    for ell in [5u64, 7, 11, 13] {
        for (n, r) in [(1i64, 1i64), (1, 0), (2, 1), (3, 1), (4, 1), (6, 1)] {
            let base = nu_ell(&e.coeff(n, r).unwrap(), ell).unwrap();
            for f in [2i64, 3, 4, 5] {
                if (f * f * (4 * n - r * r)) as u64 > 600 {
                    continue;
                }
                let v = nu_ell(&e.coeff(f * f * n, f * r).unwrap(), ell).unwrap();
                assert!(v >= base, "ell={ell} (n,r)=({n},{r}) f={f}");
            }
        }
    }
}

fn arb_expansion() -> impl Strategy<Value = (JacobiExpansion, JacobiExpansion)> {
    (1..=3i64, 1..=3i64, 40..=120u64).prop_flat_map(|(m, level, bound)| {
        let sig = FormSignature::new(4, m, level, None).unwrap();
        let n = valid_keys(&sig, bound).count();
        (
            proptest::collection::vec(-50..=50i64, n),
            proptest::collection::vec(-50..=50i64, n),
        )
            .prop_map(move |(a, b)| {
                let build = |vals: &[i64]| {
                    let mut bl = ExpansionBuilder::new(sig, bound);
                    for (key, v) in valid_keys(&sig, bound).zip(vals) {
                        bl.set_key(key, q(*v)).unwrap();
                    }
                    bl.seal()
                };
                (build(&a), build(&b))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hecke_is_linear_and_fast_path_matches((a, b) in arb_expansion(), c in -5..=5i64) {
        for p in [2i64, 3, 5] {
            if a.level() % p == 0 || a.bound() < (p * p) as u64 {
                continue;
            }
            let sum = a.add(&b.scale(&q(c))).unwrap();
            let lhs = hecke_tp(&sum, p).unwrap();
            let rhs = hecke_tp(&a, p).unwrap().add(&hecke_tp(&b, p).unwrap().scale(&q(c))).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(hecke_tp_naive(&sum, p).unwrap(), lhs);
        }
    }
}
