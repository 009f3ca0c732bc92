use super::system::columns_to_matrix;
use super::HyperTerm;
use crate::error::Result;
use crate::exactfield::gcd::lcm;
use crate::exactfield::{MPoly, Rat, RatFun, Var};
use crate::linsolve::nullspace_poly;
use crate::oreops::OreOp;

/// `Σ aᵢ(qⁿ) F(n+i, k) = G(n, k+1) − G(n, k)` with `G = cert·F`.
#[derive(Clone, Debug)]
pub struct ZeilbergerResult {
    pub op: OreOp,
    pub cert: RatFun,
    /// Denominator fixed in the certificate ansatz.
    pub denominator: MPoly,
    /// Summing over `k ≥ 0` gives `op·S(n) = boundary_factor(qⁿ)·F(n, 0)`.
    pub boundary_factor: RatFun,
}

impl ZeilbergerResult {
    /// `Σ aᵢ Sᵢ − (cert(q·y)·t − cert)`, which must vanish identically.
    pub fn residual(&self, term: &HyperTerm) -> RatFun {
        let mut acc = RatFun::zero();
        for (i, a) in self.op.coeffs().iter().enumerate() {
            acc = &acc + &(a * &term.s_product(i));
        }
        let tele = &(&self.cert.shift(Var::Y, 1) * &term.t) - &self.cert;
        &acc - &tele
    }

    pub fn is_homogeneous(&self) -> bool {
        self.boundary_factor.is_zero()
    }

    /// Right-hand side of the summed recursion at `n`.
    pub fn rhs_at(&self, term: &HyperTerm, n: i64) -> Result<RatFun> {
        if self.is_homogeneous() {
            return Ok(RatFun::zero());
        }
        Ok(&self.boundary_factor.at_q_pow(Var::X, n)? * &term.eval(n, 0)?)
    }
}

/// q-Zeilberger with a certificate `N(y)/L` where `L` is the common
/// denominator of the shift quotients and `N` has `y`-degree at most
/// `max_numdeg`. Orders `1..=max_order` are tried in turn.
pub fn qzeilberger(term: &HyperTerm, max_order: usize, max_numdeg: u32) -> Result<Option<ZeilbergerResult>> {
    for order in 1..=max_order {
        let s: Vec<RatFun> = (0..=order).map(|i| term.s_product(i)).collect();
        let mut l = term.t.den().clone();
        for si in &s {
            l = lcm(&l, si.den());
        }
        let linv = RatFun::new(MPoly::one(), l.clone())?;
        for h in 0..=max_numdeg {
            let mut cols = s.clone();
            for e in 0..=h {
                let c = &RatFun::from_poly(MPoly::var_pow(Var::Y, e)) * &linv;
                cols.push(-(&(&c.shift(Var::Y, 1) * &term.t) - &c));
            }
            let (m, _) = columns_to_matrix(&cols, Var::Y);
            let basis = nullspace_poly(&m);
            let best = basis
                .into_iter()
                .filter(|v| v[..=order].iter().any(|a| !a.is_zero()))
                .min_by_key(|v| v.iter().map(|a| a.len()).sum::<usize>());
            let Some(v) = best else { continue };
            let op = OreOp::new(v[..=order].iter().cloned().map(RatFun::from_poly).collect());
            let mut num = MPoly::zero();
            for (e, d) in v[order + 1..].iter().enumerate() {
                num = &num + &d.mul_mono(crate::exactfield::Mono::var(Var::Y, e as u32));
            }
            let cert = &RatFun::from_poly(num) * &linv;
            let boundary_factor = -cert.at_value(Var::Y, &Rat::one())?;
            return Ok(Some(ZeilbergerResult { op, cert, denominator: l, boundary_factor }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::testterms::{binomial_square, central};
    use super::*;
    use crate::exactfield::parse_ratfun;
    use crate::twistknot::{jhat, jhat_summand};

    #[test]
    fn central_binomial_first_order() {
        let h = binomial_square();
        let z = qzeilberger(&h, 2, 8).unwrap().unwrap();
        assert_eq!(z.op.order(), 1);
        assert!(z.residual(&h).is_zero());
        assert!(z.is_homogeneous());
        let vals = central(8);
        for n in 0..8 {
            assert!(z.op.apply(&vals, 0, n).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn jhat_one_is_first_order() {
        // Ĵ(n+1) + q^{n+2} Ĵ(n) = 0
        let h = jhat_summand(1).unwrap();
        let z = qzeilberger(&h, 1, 8).unwrap().unwrap();
        assert!(z.residual(&h).is_zero());
        let ratio = z.op.coeff(0).div(&z.op.coeff(1)).unwrap();
        assert_eq!(ratio, parse_ratfun("q^2*x").unwrap());
    }

    #[test]
    fn jhat_orders_and_values() {
        for (p, ord) in [(-1, 1), (2, 2), (-2, 2)] {
            let h = jhat_summand(p).unwrap();
            let z = qzeilberger(&h, ord, 4 * ord as u32 + 4).unwrap().unwrap();
            assert_eq!(z.op.order(), ord, "p={p}");
            assert!(z.residual(&h).is_zero());
            let vals: Vec<_> = (0..=9).map(|n| jhat(p, n).unwrap()).collect();
            for n in 0..=(9 - ord as i64) {
                let lhs = z.op.apply(&vals, 0, n).unwrap();
                assert_eq!(lhs, z.rhs_at(&h, n).unwrap(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn order_cap_is_respected() {
        assert!(qzeilberger(&jhat_summand(2).unwrap(), 1, 3).unwrap().is_none());
    }
}
