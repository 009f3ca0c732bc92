//! Exact values of the kernel, the cyclotomic function and the colored
//! Jones function, and the corresponding hypergeometric terms.

use crate::error::{Error, Result};
use crate::exactfield::{parse_ratfun, QPoly, Rat, RatFun, Var};
use crate::telescope::HyperTerm;

fn q_pow(e: i64) -> QPoly {
    QPoly::q_pow(e)
}

/// `1 − q^e`
fn one_minus(e: i64) -> QPoly {
    &QPoly::one() - &q_pow(e)
}

/// `(q^a; q)_k` for `k ≥ 0`.
pub fn qpoch_q(a: i64, k: i64) -> QPoly {
    (0..k).fold(QPoly::one(), |acc, j| &acc * &one_minus(a + j))
}

/// Gaussian binomial `[n, j]_q`.
pub fn gauss_binomial(n: i64, j: i64) -> QPoly {
    if j < 0 || j > n {
        return QPoly::zero();
    }
    let j = j.min(n - j);
    let mut row = vec![QPoly::one()];
    for m in 1..=n {
        let mut next = vec![QPoly::zero(); (m.min(j) + 1) as usize];
        for (i, slot) in next.iter_mut().enumerate() {
            let i = i as i64;
            let left = if i >= 1 { row.get(i as usize - 1).cloned().unwrap_or_default() } else { QPoly::zero() };
            let up = row.get(i as usize).cloned().unwrap_or_default();
            *slot = &left + &(&q_pow(i) * &up);
        }
        row = next;
    }
    row[j as usize].clone()
}

/// `c(n, k) = (−1)^k q^{−k(k+1)/2} (q^{1−n}; q)_k (q^{1+n}; q)_k`.
pub fn kernel_value(n: i64, k: i64) -> QPoly {
    if k < 0 {
        return QPoly::zero();
    }
    let sign = if k % 2 == 0 { Rat::one() } else { Rat::from(-1) };
    (&(&qpoch_q(1 - n, k) * &qpoch_q(1 + n, k)) * &q_pow(-k * (k + 1) / 2)).scale(&sign)
}

/// The same kernel as `{n−k}⋯{n+k}/{n}` with `{m} = q^{m/2} − q^{−m/2}`,
/// which simplifies to `q^{−kn} Π_{m≠n} (q^m − 1)`. Needs `n ≥ 1`.
pub fn kernel_value_braces(n: i64, k: i64) -> Result<QPoly> {
    if n < 1 {
        return Err(Error::Domain("the bracket form needs n ≥ 1".into()));
    }
    let mut acc = q_pow(-k * n);
    for m in n - k..=n + k {
        if m != n {
            acc = &acc * &(&q_pow(m) - &QPoly::one());
        }
    }
    Ok(acc)
}

fn sign(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        Rat::from(-1)
    }
}

fn summand_prefactor(p: i64, n: i64, k: i64) -> (i64, Rat) {
    (n * (n + 3) / 2 + p * k * (k + 1) + k * (k - 1) / 2, sign(n + k + 1))
}

/// `Ĵ_p(n)`, summing numerators over the common factor
/// `(q;q)_n/(q;q)_{2n+1}` so that everything stays polynomial.
pub fn jhat(p: i64, n: i64) -> Result<QPoly> {
    check_p(p)?;
    if n < 0 {
        return Err(Error::Domain(format!("Ĵ({n}) needs n ≥ 0")));
    }
    let mut acc = QPoly::zero();
    for k in 0..=n {
        let (e, s) = summand_prefactor(p, n, k);
        let term = &(&q_pow(2 * k + 1) - &QPoly::one()) * &gauss_binomial(2 * n + 1, n - k);
        acc = &acc + &(&term * &q_pow(e)).scale(&s);
    }
    // (q;q)_{2n+1}/(q;q)_n = (q^{n+1}; q)_{n+1}
    acc.div_exact(&qpoch_q(n + 1, n + 1))
}

/// Direct evaluation of one summand of `Ĵ_p(n)` as a fraction in `q`,
/// using `(q^{n−k+1}; q)_k / (q; q)_{n+k+1}`.
pub fn jhat_summand_value(p: i64, n: i64, k: i64) -> RatFun {
    if k < 0 || k > n {
        return RatFun::zero();
    }
    let (e, s) = summand_prefactor(p, n, k);
    let num = (&(&(&q_pow(2 * k + 1) - &QPoly::one()) * &qpoch_q(n - k + 1, k)) * &q_pow(e)).scale(&s);
    let den = qpoch_q(1, n + k + 1);
    RatFun::from_qpoly(&num).div(&RatFun::from_qpoly(&den)).expect("(q;q)_m is nonzero")
}

/// `J_p(n) = Σ_{k=0}^{n} c(n,k) Ĵ_p(k)`.
pub fn colored_jones(p: i64, n: i64) -> Result<QPoly> {
    let jh: Vec<QPoly> = (0..=n).map(|k| jhat(p, k)).collect::<Result<_>>()?;
    colored_jones_from(&jh, n)
}

/// `J(n)` from precomputed `Ĵ(0..=n)`.
pub fn colored_jones_from(jhat_values: &[QPoly], n: i64) -> Result<QPoly> {
    if n < 0 {
        return Err(Error::Domain(format!("J({n}) needs n ≥ 0")));
    }
    let mut acc = QPoly::zero();
    for k in 0..=n {
        let jk = jhat_values.get(k as usize).ok_or_else(|| Error::Index(format!("Ĵ({k}) is not available")))?;
        acc = &acc + &(&kernel_value(n, k) * jk);
    }
    Ok(acc)
}

/// `J_p(0..=nmax)`.
pub fn colored_jones_range(p: i64, nmax: i64) -> Result<Vec<QPoly>> {
    let jh: Vec<QPoly> = (0..=nmax).map(|k| jhat(p, k)).collect::<Result<_>>()?;
    (0..=nmax).map(|n| colored_jones_from(&jh, n)).collect()
}

pub(crate) fn check_p(p: i64) -> Result<()> {
    if p == 0 {
        Err(Error::Unsupported("p = 0 is the unknot".into()))
    } else {
        Ok(())
    }
}

/// The kernel `c(n, k)` as a term in `x = qⁿ`, `y = qᵏ`.
pub fn cyclotomic_kernel() -> HyperTerm {
    HyperTerm::new(
        "c(n,k)",
        parse_ratfun("(x - 1)*(1 - q*x*y)/((x - y)*(1 - q*x))").unwrap(),
        parse_ratfun("-(x - q*y)*(1 - q*x*y)/(q*x*y)").unwrap(),
        |n, k| Ok(RatFun::from_qpoly(&kernel_value(n, k))),
        |n, k| n >= 0 && k >= 0,
    )
}

/// The summand of `Ĵ_p(n)` as a term in `x = qⁿ`, `y = qᵏ`.
pub fn jhat_summand(p: i64) -> Result<HyperTerm> {
    check_p(p)?;
    let qy = &RatFun::var(Var::Y) * &RatFun::q_pow(1);
    let base = parse_ratfun("-(q^3*y^2 - 1)*(y - x)/((q*y^2 - 1)*(1 - q^2*x*y))").unwrap();
    let t = &base * &qy.pow(2 * p)?;
    Ok(HyperTerm::new(
        format!("Ĵ_{p} summand"),
        parse_ratfun("-q^2*x*(1 - q*x)*y/((1 - q^2*x*y)*(y - q*x))").unwrap(),
        t,
        move |n, k| Ok(jhat_summand_value(p, n, k)),
        |n, k| 0 <= k && k <= n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(s: &str) -> QPoly {
        parse_ratfun(s).unwrap().to_qpoly().unwrap()
    }

    #[test]
    fn kernel_small_values() {
        for n in 0..8 {
            assert!(kernel_value(n, 0).is_one());
        }
        assert_eq!(kernel_value(2, 1), qp("q^2 + q^-2 - q - q^-1"));
        for n in 1..=8 {
            for k in n..n + 3 {
                assert!(kernel_value(n, k).is_zero(), "c({n},{k})");
            }
        }
    }

    #[test]
    fn kernel_forms_agree() {
        for n in 1..=6 {
            for k in 0..=n {
                assert_eq!(kernel_value(n, k), kernel_value_braces(n, k).unwrap(), "n={n} k={k}");
            }
        }
        assert!(kernel_value_braces(0, 0).is_err());
    }

    #[test]
    fn jhat_small_values() {
        for p in [-3, -2, -1, 1, 2, 3] {
            assert!(jhat(p, 0).unwrap().is_one());
        }
        assert_eq!(jhat(1, 1).unwrap(), qp("-q^2"));
        assert_eq!(jhat(1, 2).unwrap(), qp("q^5"));
        assert!(jhat(-1, 1).unwrap().is_one());
        assert!(jhat(0, 1).is_err());
        assert!(jhat(1, -1).is_err());
    }

    #[test]
    fn jhat_matches_termwise_sum() {
        for p in [-2, -1, 1, 2] {
            for n in 0..6 {
                let direct = (0..=n).fold(RatFun::zero(), |acc, k| &acc + &jhat_summand_value(p, n, k));
                assert_eq!(direct.to_qpoly().unwrap(), jhat(p, n).unwrap(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn colored_jones_small_values() {
        for p in [-3, -2, -1, 1, 2, 3] {
            assert!(colored_jones(p, 0).unwrap().is_one());
            assert!(colored_jones(p, 1).unwrap().is_one());
        }
        assert_eq!(colored_jones(1, 2).unwrap(), qp("q + q^3 - q^4"));
        let r = colored_jones_range(-1, 5).unwrap();
        assert_eq!(r[4], colored_jones(-1, 4).unwrap());
    }

    #[test]
    fn gauss_binomial_edges() {
        assert!(gauss_binomial(5, 0).is_one());
        assert!(gauss_binomial(5, 6).is_zero());
        assert_eq!(gauss_binomial(4, 2), qp("1 + q + 2*q^2 + q^3 + q^4"));
    }

    #[test]
    fn quotients_match_evaluators() {
        assert!(cyclotomic_kernel().check_quotients(8).unwrap(), "kernel");
        for p in [-2, -1, 1, 2] {
            assert!(jhat_summand(p).unwrap().check_quotients(7).unwrap(), "p={p}");
        }
    }
}
