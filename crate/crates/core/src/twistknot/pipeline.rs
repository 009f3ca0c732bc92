use super::fixtures::RecFixture;
use super::values::{check_p, colored_jones_range, cyclotomic_kernel, jhat, jhat_summand};
use crate::error::{Error, Result};
use crate::exactfield::{QPoly, Rat, RatFun, Var};
use crate::oreops::{BiOreOp, InhomRec, OreOp};
use crate::telescope::{find_recursion, qzeilberger, SearchOptions, TelescopeResult, ZeilbergerResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Recursion of `Ĵ_p` in `k`, with its q-Zeilberger certificate.
#[derive(Clone, Debug)]
pub struct JhatRecursion {
    pub zeilberger: ZeilbergerResult,
    /// Monic operator in `E_k` with coefficients in `y = qᵏ`.
    pub rec: BiOreOp,
}

/// q-Zeilberger on the summand of `Ĵ_p`, renamed to act on `k`.
pub fn jhat_recursion(p: i64) -> Result<JhatRecursion> {
    let term = jhat_summand(p)?;
    let a = p.unsigned_abs() as usize;
    let zeilberger = qzeilberger(&term, a, 4 * a as u32 + 4)?
        .ok_or_else(|| Error::SearchExhausted(format!("no recursion for Ĵ_{p} up to order {a}")))?;
    if !zeilberger.is_homogeneous() {
        return Err(Error::Ansatz(format!("the recursion for Ĵ_{p} has a boundary term")));
    }
    let coeffs = zeilberger.op.coeffs().iter().map(|c| c.rename(Var::X, Var::Y)).collect();
    let rec = OreOp::new_k(coeffs).monic()?;
    Ok(JhatRecursion { zeilberger, rec })
}

/// Order predicted for `A^nh_p`.
pub fn expected_order(p: i64) -> usize {
    if p > 0 {
        2 * p as usize - 1
    } else {
        2 * p.unsigned_abs() as usize
    }
}

/// The inhomogeneous recursion of `J_p` by multi-certificate telescoping.
pub fn noncomm_a(p: i64, opts: &SearchOptions) -> Result<TelescopeResult> {
    check_p(p)?;
    let jrec = jhat_recursion(p)?;
    let a = p.unsigned_abs() as i64;
    let jvals: Vec<QPoly> = (0..a).map(|k| jhat(p, k)).collect::<Result<_>>()?;
    let n_oracle = (expected_order(p) + opts.extra_order + 4) as i64;
    let oracle = colored_jones_range(p, n_oracle)?;
    find_recursion(&cyclotomic_kernel(), &jrec.rec, p, &jvals, Some(&oracle), opts)
}

/// Outcome of checking `A·J(n) = B(qⁿ)` on a range of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub p: i64,
    /// Largest `n` checked (the first is 0).
    pub last_n: i64,
    pub failing_n: Option<i64>,
}

impl AnnihilationReport {
    pub fn passed(&self) -> bool {
        self.failing_n.is_none()
    }
}

/// Checks `rec` on `J_p(n)` for `n = 0..=nmax − order`, so that only
/// values up to `J_p(nmax)` are needed.
pub fn annihilation_check(rec: &InhomRec, p: i64, nmax: i64) -> Result<AnnihilationReport> {
    let ord = rec.order() as i64;
    if nmax < ord {
        return Err(Error::Domain(format!("nmax = {nmax} is below the order {ord}")));
    }
    let vals = colored_jones_range(p, nmax)?;
    let mut failing_n = None;
    for n in 0..=nmax - ord {
        if !rec.residual(&vals, 0, n)?.is_zero() {
            failing_n = Some(n);
            break;
        }
    }
    Ok(AnnihilationReport { p, last_n: nmax - ord, failing_n })
}

/// `count` seeded random points `(q, qⁿ)` with small rational coordinates.
pub fn random_points(seed: u64, count: usize) -> Vec<(Rat, Rat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| loop {
        let num: i64 = rng.gen_range(-97..=97);
        let den: i64 = rng.gen_range(1..=89);
        let r = Rat::new(num.into(), den.into()).unwrap();
        if !r.is_zero() && !r.is_one() && r != Rat::from(-1) {
            return r;
        }
    };
    (0..count).map(|_| (pick(&mut rng), pick(&mut rng))).collect()
}

/// Whether `a` and `b` agree up to a unit at every point: the vectors of
/// operator coefficients followed by the rhs must be proportional.
pub fn recs_proportional_at(a: &InhomRec, b: &InhomRec, points: &[(Rat, Rat)]) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let vec_of = |r: &InhomRec| -> Vec<RatFun> {
        let mut v = r.op.coeffs().to_vec();
        v.push(r.rhs.clone());
        v
    };
    let (va, vb) = (vec_of(a), vec_of(b));
    let top = a.order();
    for (q, x) in points {
        let pt = [x.clone(), Rat::zero(), Rat::zero(), q.clone()];
        let la = va[top].eval_rat(&pt)?;
        let lb = vb[top].eval_rat(&pt)?;
        if la.is_zero() || lb.is_zero() {
            return Err(Error::Pole("leading coefficient vanishes at a sample point".into()));
        }
        for (ea, eb) in va.iter().zip(&vb) {
            if &ea.eval_rat(&pt)? * &lb != &eb.eval_rat(&pt)? * &la {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Comparison of a computed recursion with a published one.
#[derive(Clone, Debug)]
pub struct FixtureMatch {
    pub p: i64,
    pub order_computed: usize,
    pub order_published: usize,
    /// Equal after normalization (unit of ℚ(q) times a power of qⁿ).
    pub structural: bool,
    /// Proportional at every random point.
    pub pointwise: bool,
    pub points: usize,
}

pub fn compare_with_fixture(rec: &InhomRec, fx: &RecFixture, seed: u64, points: usize) -> Result<FixtureMatch> {
    let structural = rec.normalized() == fx.rec.normalized();
    let pts = random_points(seed, points);
    let pointwise = recs_proportional_at(rec, &fx.rec, &pts)?;
    Ok(FixtureMatch { p: fx.p, order_computed: rec.order(), order_published: fx.order, structural, pointwise, points })
}
