//! Summation engines: q-Sister-Celine, q-Zeilberger and multi-certificate
//! creative telescoping.

mod celine;
mod multicert;
mod system;
mod zeilberger;

pub use celine::{celine_q, CelineResult};
pub use multicert::{
    boundary_rhs, build_r, chain_certs, default_denominator, find_recursion, multicert_telescope, prect1_residual,
    prect2_residuals, r_residual_at, CertSet, SearchOptions, TelescopeJson, TelescopeResult,
};
pub use system::{columns_to_matrix, Budget};
pub use zeilberger::{qzeilberger, ZeilbergerResult};

use crate::error::Result;
use crate::exactfield::{RatFun, Subst, Var};
use std::fmt;
use std::sync::Arc;

type Evaluator = Arc<dyn Fn(i64, i64) -> Result<RatFun> + Send + Sync>;
type Support = Arc<dyn Fn(i64, i64) -> bool + Send + Sync>;

/// Proper q-hypergeometric term in `n` (via `x = qⁿ`) and `k` (via `y = qᵏ`),
/// given by its shift quotients and an exact evaluator.
#[derive(Clone)]
pub struct HyperTerm {
    pub name: String,
    /// `F(n+1, k) / F(n, k)`
    pub s: RatFun,
    /// `F(n, k+1) / F(n, k)`
    pub t: RatFun,
    eval: Evaluator,
    support: Support,
}

impl HyperTerm {
    pub fn new(
        name: impl Into<String>,
        s: RatFun,
        t: RatFun,
        eval: impl Fn(i64, i64) -> Result<RatFun> + Send + Sync + 'static,
        support: impl Fn(i64, i64) -> bool + Send + Sync + 'static,
    ) -> HyperTerm {
        HyperTerm { name: name.into(), s, t, eval: Arc::new(eval), support: Arc::new(support) }
    }

    /// `F(n, k)` as a function of `q`; zero off the support.
    pub fn eval(&self, n: i64, k: i64) -> Result<RatFun> {
        if !(self.support)(n, k) {
            return Ok(RatFun::zero());
        }
        (self.eval)(n, k)
    }

    pub fn in_support(&self, n: i64, k: i64) -> bool {
        (self.support)(n, k)
    }

    /// `F(n+i, k)/F(n, k)` as a rational function.
    pub fn s_product(&self, i: usize) -> RatFun {
        let mut acc = RatFun::one();
        for j in 0..i {
            acc = &acc * &self.s.shift(Var::X, j as i64);
        }
        acc
    }

    /// `F(n, k+j)/F(n, k)`.
    pub fn t_product(&self, j: usize) -> RatFun {
        let mut acc = RatFun::one();
        for u in 0..j {
            acc = &acc * &self.t.shift(Var::Y, u as i64);
        }
        acc
    }

    /// Checks the quotients against the evaluator for `0 ≤ k ≤ n ≤ nmax`,
    /// skipping points where the quotient has a pole or `F(n, k)` is zero.
    pub fn check_quotients(&self, nmax: i64) -> Result<bool> {
        for n in 0..=nmax {
            for k in 0..=n {
                let f = self.eval(n, k)?;
                if f.is_zero() {
                    continue;
                }
                for (quot, (n1, k1)) in [(&self.s, (n + 1, k)), (&self.t, (n, k + 1))] {
                    let at = [Subst::Mono(n, None), Subst::Mono(k, None), Subst::Keep, Subst::Keep];
                    let Ok(r) = quot.subst(&at) else {
                        continue;
                    };
                    if self.eval(n1, k1)? != &f * &r {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for HyperTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HyperTerm").field("name", &self.name).field("s", &self.s).field("t", &self.t).finish()
    }
}

#[cfg(test)]
pub(crate) mod testterms {
    use super::HyperTerm;
    use crate::exactfield::{parse_ratfun, QPoly, RatFun};
    use crate::twistknot::gauss_binomial;

    /// `q^{k²}·[n, k]²`, whose sum over `k` is `[2n, n]`.
    pub fn binomial_square() -> HyperTerm {
        HyperTerm::new(
            "q^(k^2) [n,k]^2",
            parse_ratfun("((1 - q*x)*y/(y - q*x))^2").unwrap(),
            parse_ratfun("q*(y - x)^2/(1 - q*y)^2").unwrap(),
            |n, k| {
                let b = gauss_binomial(n, k);
                Ok(RatFun::from_qpoly(&(&(&b * &b) * &QPoly::q_pow(k * k))))
            },
            |n, k| 0 <= k && k <= n,
        )
    }

    pub fn central(nmax: i64) -> Vec<QPoly> {
        (0..=nmax).map(|n| gauss_binomial(2 * n, n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::testterms::binomial_square;
    use super::*;

    #[test]
    fn products_telescope_quotients() {
        let h = binomial_square();
        assert!(h.check_quotients(7).unwrap());
        let s2 = h.s_product(2);
        let expect = &h.s * &h.s.shift(Var::X, 1);
        assert_eq!(s2, expect);
        assert!(h.t_product(0).is_one());
    }

    #[test]
    fn support_zeroes_evaluation() {
        let h = binomial_square();
        assert!(h.eval(3, 4).unwrap().is_zero());
        assert!(h.eval(3, -1).unwrap().is_zero());
        assert!(!h.eval(3, 2).unwrap().is_zero());
    }

    #[test]
    fn quotient_check_rejects_wrong_term() {
        let good = binomial_square();
        let bad = HyperTerm::new(
            "bad",
            good.s.clone(),
            &good.t * &RatFun::q_pow(1),
            move |n, k| good.eval(n, k),
            |n, k| 0 <= k && k <= n,
        );
        assert!(!bad.check_quotients(4).unwrap());
    }
}
