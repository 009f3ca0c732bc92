use super::system::columns_to_matrix;
use super::HyperTerm;
use crate::exactfield::{RatFun, Var};
use crate::linsolve::nullspace_poly;
use crate::oreops::OreOp;

/// Relation `Σ_{i≤I, j≤J} a_ij(qⁿ) F(n+i, k+j) = 0`.
#[derive(Clone, Debug)]
pub struct CelineResult {
    /// `a[i][j]`
    pub coeffs: Vec<Vec<RatFun>>,
    /// `Σ_i (Σ_j a_ij) Eⁱ`, which annihilates `Σ_k F(n, k)` when the
    /// summand has natural boundaries.
    pub op: OreOp,
}

impl CelineResult {
    /// `Σ a_ij F(n+i,k+j) / F(n,k)` as a rational function; zero on success.
    pub fn residual(&self, term: &HyperTerm) -> RatFun {
        let mut acc = RatFun::zero();
        for (i, row) in self.coeffs.iter().enumerate() {
            let si = term.s_product(i);
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    acc = &acc + &(&(a * &si) * &term.t_product(j).shift(Var::X, i as i64));
                }
            }
        }
        acc
    }
}

/// q-Sister-Celine: looks for a k-free recurrence of order `i_max` in `n`
/// and `j_max` in `k`. Returns `None` when only the trivial one exists.
pub fn celine_q(term: &HyperTerm, i_max: usize, j_max: usize) -> Option<CelineResult> {
    let mut cols = Vec::new();
    for i in 0..=i_max {
        let si = term.s_product(i);
        for j in 0..=j_max {
            cols.push(&si * &term.t_product(j).shift(Var::X, i as i64));
        }
    }
    let (m, _) = columns_to_matrix(&cols, Var::Y);
    let basis = nullspace_poly(&m);
    let width = j_max + 1;
    let build = |v: &Vec<crate::exactfield::MPoly>| {
        let coeffs: Vec<Vec<RatFun>> =
            (0..=i_max).map(|i| (0..width).map(|j| RatFun::from_poly(v[i * width + j].clone())).collect()).collect();
        let op = OreOp::new(coeffs.iter().map(|row| row.iter().fold(RatFun::zero(), |acc, a| &acc + a)).collect());
        CelineResult { coeffs, op }
    };
    let terms = |r: &CelineResult| r.coeffs.iter().flatten().map(|a| a.num().len()).sum::<usize>();
    basis.iter().map(build).min_by_key(|r| (r.op.is_zero(), terms(r)))
}

#[cfg(test)]
mod tests {
    use super::super::testterms::{binomial_square, central};
    use super::*;
    use crate::twistknot::{jhat, jhat_summand};

    #[test]
    fn trivial_window_has_no_relation() {
        assert!(celine_q(&binomial_square(), 0, 0).is_none());
    }

    #[test]
    fn jhat_needs_a_wide_window() {
        let h = jhat_summand(1).unwrap();
        for (i, j) in [(1, 1), (1, 3), (2, 2)] {
            assert!(celine_q(&h, i, j).is_none_or(|r| r.op.is_zero()), "I={i} J={j}");
        }
        let r = celine_q(&h, 3, 2).unwrap();
        assert!(!r.op.is_zero());
        assert!(r.residual(&h).is_zero());
        let vals: Vec<_> = (0..=10).map(|n| jhat(1, n).unwrap()).collect();
        for n in 0..=(10 - r.op.order() as i64) {
            assert!(r.op.apply(&vals, 0, n).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn agrees_with_zeilberger_on_sums() {
        let h = binomial_square();
        let r = (1..=3).find_map(|j| celine_q(&h, 2, j).filter(|r| !r.op.is_zero())).unwrap();
        assert!(r.residual(&h).is_zero());
        let vals = central(9);
        for n in 0..=(9 - r.op.order() as i64) {
            assert!(r.op.apply(&vals, 0, n).unwrap().is_zero(), "n={n}");
        }
    }
}
