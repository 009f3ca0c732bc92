use crate::error::{Error, Result};
use crate::exactfield::gcd::lcm;
use crate::exactfield::{MPoly, RatFun, Var};
use crate::linsolve::FFMatrix;
use std::time::{Duration, Instant};

/// Optional wall-clock limit for the searches.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { deadline: None }
    }

    pub fn for_duration(d: Duration) -> Budget {
        Budget { deadline: Some(Instant::now() + d) }
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded),
            _ => Ok(()),
        }
    }
}

/// Linear system `Σ u_c · cols[c] = 0`: clears the common denominator and
/// splits every numerator by powers of `var`. Returns the matrix and the
/// common denominator.
pub fn columns_to_matrix(cols: &[RatFun], var: Var) -> (FFMatrix, MPoly) {
    let mut den = MPoly::one();
    for c in cols {
        if !c.is_zero() && !c.den().divides(&den) {
            den = lcm(&den, c.den());
        }
    }
    let nums: Vec<MPoly> = cols
        .iter()
        .map(|c| if c.is_zero() { MPoly::zero() } else { c.num() * &den.try_div(c.den()).unwrap() })
        .collect();
    let mut rows: std::collections::BTreeMap<u32, Vec<MPoly>> = std::collections::BTreeMap::new();
    for (ci, p) in nums.iter().enumerate() {
        for (e, coeff) in p.coeffs_in(var) {
            rows.entry(e).or_insert_with(|| vec![MPoly::zero(); cols.len()])[ci] = coeff;
        }
    }
    (FFMatrix::from_rows(rows.into_values().collect()), den)
}
