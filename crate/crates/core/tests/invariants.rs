use qtel_core::exactfield::Var;
use qtel_core::genfun::{check_wz, f_series, jcheck_readings, printed_certificates, wz_residual};
use qtel_core::telescope::{prect1_residual, prect2_residuals, r_residual_at, SearchOptions};
use qtel_core::twistknot::{
    colored_jones, colored_jones_range, cyclotomic_kernel, expected_order, jhat, jhat_recursion, noncomm_a,
    specialize_q1,
};

const SMALL: [i64; 4] = [1, -1, 2, -2];

#[test]
fn telescoper_invariants() {
    let kernel = cyclotomic_kernel();
    for p in SMALL {
        let res = noncomm_a(p, &SearchOptions::default()).unwrap();
        assert_eq!(res.order(), expected_order(p), "p={p}");
        assert!(prect1_residual(&res, &kernel).is_zero(), "p={p}");
        assert!(prect2_residuals(&res.certs, &res.r).iter().all(|e| e.is_zero()), "p={p}");
        let jrec = jhat_recursion(p).unwrap().rec;
        for i in 0..res.r.len() {
            for (n, k) in [(6, 1), (9, 3), (11, 0)] {
                assert!(r_residual_at(&res.r, &jrec, &kernel, i, n, k).unwrap().is_zero());
            }
        }
        // the recursion holds on double sums computed term by term
        let vals = colored_jones_range(p, 10 + res.order() as i64).unwrap();
        let rec = res.normalized();
        for n in 0..=10 {
            assert!(rec.residual(&vals, 0, n).unwrap().is_zero(), "p={p} n={n}");
        }
        let shadow = specialize_q1(&rec).unwrap();
        assert!(!shadow.degree_drop, "p={p}");
    }
}

#[test]
fn certificates_are_scaled_with_the_recursion() {
    let kernel = cyclotomic_kernel();
    let res = noncomm_a(-1, &SearchOptions::default()).unwrap();
    let j = res.to_json().unwrap();
    let rec = res.normalized();
    let unit = rec.op.leading().div(&res.rec.op.leading()).unwrap();
    for (c, s) in res.certs.certs.iter().zip(&j.certificates) {
        assert_eq!(&(c * &unit), &qtel_core::exactfield::parse_ratfun(s).unwrap());
    }
    assert!(prect1_residual(&res, &kernel).is_zero());
}

#[test]
fn jones_is_one_at_n_one() {
    for p in [-3, -2, -1, 1, 2, 3] {
        assert!(colored_jones(p, 1).unwrap().is_one());
    }
}

#[test]
fn jhat_recursions_hold_through_twelve() {
    for p in [-3, -2, -1, 1, 2, 3] {
        let rec = jhat_recursion(p).unwrap().rec;
        assert_eq!(rec.var(), Var::Y);
        let vals: Vec<_> = (0..=12 + rec.order() as i64).map(|k| jhat(p, k).unwrap()).collect();
        for n in 0..=12 {
            assert!(rec.apply(&vals, 0, n).unwrap().is_zero(), "p={p} n={n}");
        }
    }
}

#[test]
fn wz_pair_has_zero_residual() {
    let r = check_wz(&printed_certificates()).unwrap();
    assert!(r.residual_zero);
    let cert = qtel_core::exactfield::parse_ratfun(&r.certificate).unwrap();
    assert!(wz_residual(&cert).is_zero());
    assert_eq!(r.printed_reading, Some(0));
}

#[test]
fn generating_function_interchange() {
    for p in SMALL {
        let (direct, via) = f_series(p, 10, 1).unwrap();
        assert_eq!(direct.first_difference(&via), None, "p={p}");
        assert_eq!(jcheck_readings(p, 10).unwrap(), (true, false), "p={p}");
    }
}
