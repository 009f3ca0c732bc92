use proptest::prelude::*;
use qtel_core::exactfield::gcd::{gcd, gcd_prs};
use qtel_core::exactfield::{qpoch, Int, MPoly, Mono, QPoly, Rat, RatFun, Var};
use qtel_core::genfun::gamma;
use qtel_core::linsolve::{nullspace_poly, solve, FFMatrix};
use qtel_core::oreops::{InhomRec, OreOp};
use qtel_core::twistknot::kernel_value;

fn mpoly_strategy(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0..=max_exp, 0..=max_exp, 0..=max_exp), -5i64..=5), 0..=max_terms).prop_map(|ts| {
        MPoly::from_terms(ts.into_iter().map(|((a, b, c), k)| (Mono::from_exps([a, b, 0, c]), Int::from(k))))
    })
}

/// Polynomials in `x` and `q` only, so that `x ↦ qⁿ` stays a Laurent polynomial.
fn xq_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2), -4i64..=4), 0..=3).prop_map(|ts| {
        MPoly::from_terms(ts.into_iter().map(|((a, c), k)| (Mono::from_exps([a, 0, 0, c]), Int::from(k))))
    })
}

fn ratfun_strategy() -> impl Strategy<Value = RatFun> {
    (mpoly_strategy(3, 2), mpoly_strategy(3, 2)).prop_filter_map("zero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            RatFun::new(n, d).ok()
        }
    })
}

fn op_strategy(max_order: usize) -> impl Strategy<Value = OreOp> {
    prop::collection::vec(xq_poly(), 1..=max_order + 1)
        .prop_map(|cs| OreOp::new(cs.into_iter().map(RatFun::from_poly).collect()))
}

fn qpoly_strategy() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 0..=4)
        .prop_map(|ts| QPoly::from_terms(ts.into_iter().map(|(e, c)| (e, Rat::from(c)))))
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=30).prop_map(|(n, d)| Rat::new(n.into(), d.into()).unwrap())
}

fn eval_poly(p: &MPoly, pt: &[Rat; 4]) -> Rat {
    RatFun::from_poly(p.clone()).eval_rat(pt).unwrap()
}

/// Rank over ℚ by plain Gaussian elimination.
fn rat_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, piv);
        let inv = rows[rank][c].inv().unwrap();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] * &inv;
                let pivot = rows[rank].clone();
                for (e, pv) in rows[r].iter_mut().zip(&pivot) {
                    *e = &*e - &(pv * &f);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn values_of(op: &OreOp, seq: &[QPoly], n: i64) -> QPoly {
    op.apply(seq, 0, n).unwrap().to_qpoly().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rat_is_canonical(n in -1000i64..1000, d in -1000i64..1000) {
        prop_assume!(d != 0);
        let r = Rat::new(n.into(), d.into()).unwrap();
        prop_assert!(!r.den().is_negative() && !r.den().is_zero());
        let back = Rat::new(r.num().clone(), r.den().clone()).unwrap();
        prop_assert_eq!(&back, &r);
        if n == 0 {
            prop_assert!(r.den().is_one());
        }
    }

    #[test]
    fn normalization_is_idempotent(f in ratfun_strategy()) {
        let again = RatFun::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        if !f.is_zero() {
            prop_assert!(f.num().content().gcd(&f.den().content()).is_one());
            prop_assert!(!f.den().lc().is_negative());
        }
    }

    #[test]
    fn field_laws(a in ratfun_strategy(), b in ratfun_strategy(), c in ratfun_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn gcd_divides_and_agrees_with_prs(a in mpoly_strategy(3, 2), b in mpoly_strategy(3, 2), c in mpoly_strategy(2, 2)) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(c.divides(&g));
        prop_assert!(g.divides(&ac) && g.divides(&bc));
        let h = gcd_prs(&ac, &bc);
        prop_assert!(h == g || h == -&g);
    }

    #[test]
    fn laurent_arithmetic_evaluates(a in qpoly_strategy(), b in qpoly_strategy(), q in small_rat()) {
        prop_assume!(!q.is_zero());
        let (va, vb) = (a.eval(&q).unwrap(), b.eval(&q).unwrap());
        prop_assert_eq!((&a * &b).eval(&q).unwrap(), &va * &vb);
        prop_assert_eq!((&a - &b).eval(&q).unwrap(), &va - &vb);
    }
}

#[test]
fn qpoch_recurrence() {
    let one = RatFun::one();
    for base in [RatFun::q_pow(1), &RatFun::q_pow(1) * &RatFun::var(Var::X)] {
        for n in 0..=20 {
            let lhs = qpoch(&base, n + 1).unwrap();
            let rhs = &qpoch(&base, n).unwrap() * &(&one - &(&base * &RatFun::q_pow(n)));
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}

#[test]
fn qpoch_reflection() {
    for base in [RatFun::q_pow(1), &RatFun::q_pow(1) * &RatFun::var(Var::X)] {
        for n in 1..=10 {
            let shifted = &base * &RatFun::q_pow(-n);
            match (qpoch(&base, -n), qpoch(&shifted, n).and_then(|d| d.inv())) {
                (Ok(l), Ok(r)) => assert_eq!(l, r, "n={n}"),
                (Err(_), Err(_)) => {}
                (l, r) => panic!("n={n}: only one side defined: {l:?} vs {r:?}"),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ore_ring_laws(a in op_strategy(3), b in op_strategy(3), c in op_strategy(3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }

    #[test]
    fn ore_product_acts_by_composition(a in op_strategy(2), b in op_strategy(2), seq in prop::collection::vec(qpoly_strategy(), 12)) {
        let ab = a.mul(&b);
        let range = 12 - b.order() - a.order();
        let bj: Vec<QPoly> = (0..(12 - b.order()) as i64).map(|m| values_of(&b, &seq, m)).collect();
        for n in 0..range as i64 {
            prop_assert_eq!(values_of(&ab, &seq, n), values_of(&a, &bj, n));
        }
    }

    #[test]
    fn homogenization_is_sound(
        lower in prop::collection::vec(xq_poly(), 1..=2),
        init in prop::collection::vec(qpoly_strategy(), 2),
        rhs in xq_poly(),
        c in 2i64..6,
    ) {
        // Monic op with polynomial rhs, so the sequence stays Laurent.
        let order = lower.len();
        let mut coeffs: Vec<RatFun> = lower.into_iter().map(RatFun::from_poly).collect();
        coeffs.push(RatFun::one());
        let op = OreOp::new(coeffs);
        let r = &RatFun::from_poly(rhs) + &(&RatFun::from_i64(c) * &RatFun::var(Var::X));
        prop_assume!(!r.is_zero());
        let rec = InhomRec::new(op.clone(), r.clone());
        let nn = 10usize;
        let mut seq: Vec<QPoly> = init[..order].to_vec();
        for n in 0..(nn - order) as i64 {
            let mut next = r.at_q_pow(Var::X, n).unwrap();
            for i in 0..order {
                next = &next - &(&op.coeff(i).at_q_pow(Var::X, n).unwrap() * &RatFun::from_qpoly(&seq[n as usize + i]));
            }
            seq.push(next.to_qpoly().unwrap());
        }
        for n in 0..(nn - order) as i64 {
            prop_assert!(rec.residual(&seq, 0, n).unwrap().is_zero());
        }
        let h = rec.homogenize().unwrap();
        prop_assert_eq!(h.order(), order + 1);
        for n in 0..(nn - order - 1) as i64 {
            prop_assert!(h.apply(&seq, 0, n).unwrap().is_zero(), "n={}", n);
        }
    }
}

fn matrix_strategy() -> impl Strategy<Value = FFMatrix> {
    (1usize..=4, 2usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(mpoly_strategy(2, 1), c), r).prop_map(FFMatrix::from_rows)
    })
}

/// Matrices with a dependent column, a singleton row and a scaled column,
/// the shapes the presolve step rewrites.
fn structured_matrix() -> impl Strategy<Value = FFMatrix> {
    (matrix_strategy(), mpoly_strategy(2, 1), mpoly_strategy(2, 1), 2i64..5).prop_map(|(m, f, g, k)| {
        let mut rows: Vec<Vec<MPoly>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        for row in rows.iter_mut() {
            let dep = &(&row[0] * &f) + &(&row[1] * &g);
            row.push(dep);
            row[1] = row[1].scale(&Int::from(k));
        }
        let mut single = vec![MPoly::zero(); rows[0].len()];
        single[0] = &f + &MPoly::one();
        rows.push(single);
        FFMatrix::from_rows(rows)
    })
}

fn check_nullspace(m: &FFMatrix) -> Result<(), TestCaseError> {
    let basis = nullspace_poly(m);
    for v in &basis {
        prop_assert!(v.iter().any(|e| !e.is_zero()));
        prop_assert!(m.mul_vec(v).iter().all(MPoly::is_zero));
    }
    let pts = [
        [Rat::from(3), Rat::from(-2), Rat::from(1), Rat::from(5)],
        [Rat::new(7.into(), 3.into()).unwrap(), Rat::from(11), Rat::from(1), Rat::new((-2).into(), 5.into()).unwrap()],
        [Rat::from(-13), Rat::new(4.into(), 9.into()).unwrap(), Rat::from(1), Rat::from(17)],
    ];
    let eval_rank = pts
        .iter()
        .map(|pt| rat_rank((0..m.rows()).map(|r| m.row(r).iter().map(|e| eval_poly(e, pt)).collect()).collect()))
        .max()
        .unwrap();
    prop_assert_eq!(eval_rank + basis.len(), m.cols());
    // the basis is independent: its evaluation has full rank
    if !basis.is_empty() {
        let brank = pts
            .iter()
            .map(|pt| rat_rank(basis.iter().map(|v| v.iter().map(|e| eval_poly(e, pt)).collect()).collect()))
            .max()
            .unwrap();
        prop_assert_eq!(brank, basis.len());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn nullspace_vectors_annihilate(m in matrix_strategy()) {
        check_nullspace(&m)?;
    }

    #[test]
    fn presolved_shapes_keep_the_nullspace(m in structured_matrix()) {
        check_nullspace(&m)?;
    }

    #[test]
    fn solve_round_trip(m in matrix_strategy(), x in prop::collection::vec(mpoly_strategy(2, 1), 5)) {
        let b = m.mul_vec(&x[..m.cols()]);
        let v = solve(&m, &b).expect("b lies in the column space");
        let back = m.mul_vec_rat(&v);
        for (l, r) in back.iter().zip(&b) {
            prop_assert_eq!(l, &RatFun::from_poly(r.clone()));
        }
    }
}

#[test]
fn gamma_is_scaled_kernel() {
    for n in 0..=8 {
        for k in 0..=n {
            let scaled = &(&QPoly::one() - &QPoly::q_pow(n)) * &kernel_value(n, k);
            assert_eq!(gamma(n, k).unwrap(), scaled, "n={n} k={k}");
        }
    }
}
