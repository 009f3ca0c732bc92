//! Creative telescoping of `c(n,k)·Ĵ(k)` where `c` is hypergeometric and
//! `Ĵ` satisfies a recursion of order `P` in `k`. The telescoper is
//! `(E_k − 1)·Σ_{j<P} C_j(n,k) E_kʲ`, i.e. `P` certificates.

use super::system::{columns_to_matrix, Budget};
use super::HyperTerm;
use crate::error::{Error, Result};
use crate::exactfield::{MPoly, Mono, QPoly, Rat, RatFun, Var};
use crate::linsolve::nullspace_poly_until;
use crate::oreops::{BiOreOp, InhomRec, OreJson, OreOp};
use serde::Serialize;

/// Certificates `C₀..C_{P−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertSet {
    pub certs: Vec<RatFun>,
}

#[derive(Clone, Debug)]
pub struct TelescopeResult {
    pub p: i64,
    /// Recursion as solved: operator coefficients are the raw solution
    /// entries and `rhs` is the boundary term belonging to them.
    pub rec: InhomRec,
    pub certs: CertSet,
    pub denominator: RatFun,
    /// `R₀..R_P`
    pub r: Vec<RatFun>,
    pub m: usize,
    pub r_d: usize,
    /// `+1` if the rhs is `−G(n,0)`, `−1` if the opposite orientation was
    /// kept by the annihilation check.
    pub boundary_sign: i32,
}

impl TelescopeResult {
    pub fn order(&self) -> usize {
        self.rec.order()
    }

    /// The recursion up to a unit, in the oreops normal form.
    pub fn normalized(&self) -> InhomRec {
        self.rec.normalized()
    }

    /// The normalized recursion with the certificates scaled by the same
    /// unit, so that they still telescope it.
    pub fn to_json(&self) -> Result<TelescopeJson> {
        let norm = self.normalized();
        let unit = norm.op.leading().div(&self.rec.op.leading())?;
        Ok(TelescopeJson {
            rec: norm.to_json(),
            certificates: self.certs.certs.iter().map(|c| (c * &unit).to_string()).collect(),
            boundary_sign: self.boundary_sign,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TelescopeJson {
    #[serde(flatten)]
    pub rec: OreJson,
    pub certificates: Vec<String>,
    pub boundary_sign: i32,
}

/// Search schedule for [`find_recursion`].
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Extra orders beyond the expected one.
    pub extra_order: usize,
    pub max_numdeg: usize,
    /// Extra factor pairs tried on the denominator once the default fails.
    pub extra_factors: usize,
    pub budget: Budget,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            extra_order: 1,
            max_numdeg: 8,
            extra_factors: 1,
            budget: Budget::unlimited(),
            seed: 0x51de_c0de,
        }
    }
}

/// `R_i = r_i(y)·Π_{u=i}^{P−1} t(x, y·qᵘ)` for a monic recursion in `k`.
pub fn build_r(rec: &BiOreOp, t: &RatFun) -> Result<Vec<RatFun>> {
    let p = rec.order();
    if !rec.leading().is_one() {
        return Err(Error::Normalization(format!("leading coefficient is {} instead of 1", rec.leading())));
    }
    let mut out = vec![RatFun::one(); p + 1];
    let mut prod = RatFun::one();
    for i in (0..p).rev() {
        prod = &prod * &t.shift(Var::Y, i as i64);
        out[i] = &rec.coeff(i) * &prod;
    }
    Ok(out)
}

/// Back-substitutes `C_{j−1}(k) = C_j(k−1) + C_{P−1}(k)·R_j(k−1)` from
/// `C_{P−1} = c_top`.
pub fn chain_certs(c_top: &RatFun, r: &[RatFun]) -> CertSet {
    let p = r.len() - 1;
    let mut certs = vec![RatFun::zero(); p];
    if p == 0 {
        return CertSet { certs };
    }
    certs[p - 1] = c_top.clone();
    for j in (1..p).rev() {
        let next = &certs[j].shift(Var::Y, -1) + &(c_top * &r[j].shift(Var::Y, -1));
        certs[j - 1] = next;
    }
    CertSet { certs }
}

/// `1 − y·q^{−i}/x`, i.e. `1 − q^{k−n−i}`.
fn lattice_factor(i: i64) -> RatFun {
    let yx = RatFun::new(MPoly::var(Var::Y), MPoly::var(Var::X)).unwrap();
    &RatFun::one() - &(&yx * &RatFun::q_pow(-i))
}

/// The certificate denominator for `p` full twists.
pub fn default_denominator(p: i64) -> Result<RatFun> {
    let mut d = RatFun::one();
    if p > 0 {
        d = RatFun::from_poly(MPoly::var_pow(Var::Y, p as u32));
        for i in 1 - p..p {
            d = &d * &lattice_factor(i);
        }
    } else if p < 0 {
        let a = -p;
        for i in 1..=2 * a {
            d = &d * &lattice_factor(i - a);
        }
    } else {
        return Err(Error::Unsupported("p = 0 is the unknot".into()));
    }
    Ok(d)
}

/// Extra lattice factors just outside the default range, `pairs` on each side.
fn widened_denominator(p: i64, pairs: usize) -> Result<RatFun> {
    let mut d = default_denominator(p)?;
    let a = p.abs();
    let (lo, hi) = if p > 0 { (1 - a, a - 1) } else { (1 - a, a) };
    for s in 1..=pairs as i64 {
        d = &d * &lattice_factor(lo - s);
        d = &d * &lattice_factor(hi + s);
    }
    Ok(d)
}

/// `Σ a_i S_i + C_{P−1}(k+1)·R₀(k) + C₀(k)`; zero for a valid result.
pub fn prect1_residual(res: &TelescopeResult, kernel: &HyperTerm) -> RatFun {
    let p = res.r.len() - 1;
    let mut acc = RatFun::zero();
    for (i, a) in res.rec.op.coeffs().iter().enumerate() {
        if !a.is_zero() {
            acc = &acc + &(a * &kernel.s_product(i));
        }
    }
    let top = res.certs.certs[p - 1].shift(Var::Y, 1);
    &(&acc + &(&top * &res.r[0])) + &res.certs.certs[0]
}

/// `C_{j−1}(k+1) − C_j(k) − C_{P−1}(k+1)·R_j(k)` for `j = 1..P−1`.
pub fn prect2_residuals(certs: &CertSet, r: &[RatFun]) -> Vec<RatFun> {
    let p = certs.certs.len();
    let top = certs.certs[p - 1].shift(Var::Y, 1);
    (1..p).map(|j| &(&certs.certs[j - 1].shift(Var::Y, 1) - &certs.certs[j]) - &(&top * &r[j])).collect()
}

/// `R_i(qⁿ, qᵏ) − r_i(qᵏ)·c(n, k+P)/c(n, k+i)` using the kernel evaluator.
pub fn r_residual_at(r: &[RatFun], rec: &BiOreOp, kernel: &HyperTerm, i: usize, n: i64, k: i64) -> Result<RatFun> {
    let p = r.len() - 1;
    let lhs = r[i].at_q_pow(Var::X, n)?.at_q_pow(Var::Y, k)?;
    let ri = rec.coeff(i).at_q_pow(Var::Y, k)?;
    let ratio = kernel.eval(n, k + p as i64)?.div(&kernel.eval(n, k + i as i64)?)?;
    Ok(&lhs - &(&ri * &ratio))
}

/// `−G(n, 0)` with `G(n,k) = Σ_j C_j(n,k)·c(n,k+j)·Ĵ(k+j)`.
pub fn boundary_rhs(certs: &CertSet, kernel: &HyperTerm, jhat_values: &[QPoly]) -> Result<RatFun> {
    let one = Rat::one();
    let mut g = RatFun::zero();
    for (j, c) in certs.certs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = jhat_values.get(j).ok_or_else(|| Error::Index(format!("Ĵ({j}) is not available")))?;
        let cj = c.at_value(Var::Y, &one)?;
        let tj = kernel.t_product(j).at_value(Var::Y, &one)?;
        g = &g + &(&(&cj * &tj) * &RatFun::from_qpoly(v));
    }
    Ok(-g)
}

/// One attempt with fixed order `m`, numerator degree `r_d` and
/// denominator `d`. Returns `None` if only the trivial solution exists.
#[allow(clippy::too_many_arguments)]
pub fn multicert_telescope(
    kernel: &HyperTerm,
    jhat_rec: &BiOreOp,
    p: i64,
    m: usize,
    r_d: usize,
    d: &RatFun,
    jhat_values: &[QPoly],
    budget: Budget,
    seed: u64,
) -> Result<Option<TelescopeResult>> {
    if d.is_zero() {
        return Err(Error::Ansatz("certificate denominator vanishes".into()));
    }
    let rec = jhat_rec.monic()?;
    let pp = rec.order();
    if pp == 0 {
        return Err(Error::Ansatz("recursion in k has order 0".into()));
    }
    let r = build_r(&rec, &kernel.t)?;
    let dinv = d.inv()?;
    let mut cols: Vec<RatFun> = (0..=m).map(|i| kernel.s_product(i)).collect();
    for e in 0..=r_d {
        let u = &RatFun::from_poly(MPoly::var_pow(Var::Y, e as u32)) * &dinv;
        // prect1 with the lower certificates eliminated:
        // Σ_{i=0}^{P} U(k+1−i)·R_i(k−i)
        let mut col = RatFun::zero();
        for (i, ri) in r.iter().enumerate() {
            let shift = i as i64;
            col = &col + &(&u.shift(Var::Y, 1 - shift) * &ri.shift(Var::Y, -shift));
        }
        cols.push(col);
    }
    budget.check()?;
    let (mat, _) = columns_to_matrix(&cols, Var::Y);
    let basis = nullspace_poly_until(&mat, seed, budget.deadline)?;
    let best = basis
        .into_iter()
        .filter(|v| v[..=m].iter().any(|a| !a.is_zero()))
        .min_by_key(|v| v.iter().map(|a| a.len()).sum::<usize>());
    let Some(v) = best else { return Ok(None) };
    let mut num = MPoly::zero();
    for (e, de) in v[m + 1..].iter().enumerate() {
        num = &num + &de.mul_mono(Mono::var(Var::Y, e as u32));
    }
    let top = &RatFun::from_poly(num) * &dinv;
    let certs = chain_certs(&top, &r);
    let op = OreOp::new(v[..=m].iter().cloned().map(RatFun::from_poly).collect());
    let rhs = boundary_rhs(&certs, kernel, jhat_values)?;
    let res =
        TelescopeResult { p, rec: InhomRec::new(op, rhs), certs, denominator: d.clone(), r, m, r_d, boundary_sign: 1 };
    if !prect1_residual(&res, kernel).is_zero() || prect2_residuals(&res.certs, &res.r).iter().any(|e| !e.is_zero()) {
        return Err(Error::Ansatz("solution does not satisfy the certificate system".into()));
    }
    Ok(Some(res))
}

/// Escalates `(m, r_d)` from the expected order, then widens the
/// denominator. When `oracle` holds values `S(0), S(1), ...` of the summed
/// sequence, the boundary orientation that annihilates them is kept.
pub fn find_recursion(
    kernel: &HyperTerm,
    jhat_rec: &BiOreOp,
    p: i64,
    jhat_values: &[QPoly],
    oracle: Option<&[QPoly]>,
    opts: &SearchOptions,
) -> Result<TelescopeResult> {
    let target = if p > 0 { 2 * p as usize - 1 } else { 2 * p.unsigned_abs() as usize };
    let mut tried = Vec::new();
    for widen in 0..=opts.extra_factors {
        let d = if widen == 0 { default_denominator(p)? } else { widened_denominator(p, widen)? };
        for m in target..=target + opts.extra_order {
            for r_d in 0..=opts.max_numdeg {
                opts.budget.check()?;
                tried.push(format!("(m={m}, r_d={r_d}, widen={widen})"));
                let Some(mut res) =
                    multicert_telescope(kernel, jhat_rec, p, m, r_d, &d, jhat_values, opts.budget, opts.seed)?
                else {
                    continue;
                };
                if let Some(vals) = oracle {
                    orient(&mut res, vals)?;
                }
                return Ok(res);
            }
        }
    }
    Err(Error::SearchExhausted(format!("p = {p}: no telescoper for {}", tried.join(", "))))
}

/// Keeps whichever sign of the boundary term makes the recursion hold on
/// the oracle values.
fn orient(res: &mut TelescopeResult, vals: &[QPoly]) -> Result<()> {
    let ord = res.order();
    let holds = |rec: &InhomRec| -> Result<bool> {
        for n in 0..(vals.len() - ord) as i64 {
            if !rec.residual(vals, 0, n)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if vals.len() <= ord || holds(&res.rec)? {
        return Ok(());
    }
    let flipped = InhomRec::new(res.rec.op.clone(), -&res.rec.rhs);
    if holds(&flipped)? {
        res.rec = flipped;
        res.boundary_sign = -1;
        return Ok(());
    }
    Err(Error::Ansatz(format!("p = {}: neither boundary orientation annihilates the sums", res.p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_ratfun;
    use crate::twistknot::{colored_jones_range, cyclotomic_kernel, jhat, jhat_recursion};

    fn rf(s: &str) -> RatFun {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn default_denominators() {
        assert_eq!(default_denominator(1).unwrap(), rf("y*(1 - y/x)"));
        assert_eq!(default_denominator(-1).unwrap(), rf("(1 - y/x)*(1 - y/(q*x))"));
        assert_eq!(default_denominator(2).unwrap(), rf("y^2*(1 - q*y/x)*(1 - y/x)*(1 - y/(q*x))"));
        assert!(default_denominator(0).is_err());
    }

    #[test]
    fn r_chain_matches_kernel_ratios() {
        let kernel = cyclotomic_kernel();
        for p in [1, -1, 2, -2] {
            let rec = jhat_recursion(p).unwrap().rec;
            let r = build_r(&rec, &kernel.t).unwrap();
            assert!(r[rec.order()].is_one());
            for i in 0..=rec.order() {
                for (n, k) in [(7, 1), (9, 2), (8, 0)] {
                    assert!(r_residual_at(&r, &rec, &kernel, i, n, k).unwrap().is_zero(), "p={p} i={i}");
                }
            }
        }
    }

    #[test]
    fn r_needs_monic_recursion() {
        let rec = jhat_recursion(1).unwrap().rec.scale_left(&rf("2"));
        assert!(matches!(build_r(&rec, &cyclotomic_kernel().t), Err(Error::Normalization(_))));
    }

    #[test]
    fn chain_from_top_certificate() {
        let top = rf("x/(1 - y)");
        assert_eq!(chain_certs(&top, &[rf("x"), RatFun::one()]).certs, vec![top.clone()]);
        let r = vec![rf("y"), rf("x + y"), RatFun::one()];
        let c = chain_certs(&top, &r);
        assert_eq!(c.certs[1], top);
        assert!(prect2_residuals(&c, &r).iter().all(RatFun::is_zero));
        let zero = chain_certs(&RatFun::zero(), &r);
        assert!(zero.certs.iter().all(RatFun::is_zero));
    }

    #[test]
    fn boundary_of_zero_certificates_is_zero() {
        let certs = CertSet { certs: vec![RatFun::zero(); 2] };
        assert!(boundary_rhs(&certs, &cyclotomic_kernel(), &[]).unwrap().is_zero());
    }

    #[test]
    fn p1_telescoper() {
        let kernel = cyclotomic_kernel();
        let rec = jhat_recursion(1).unwrap().rec;
        let jv = vec![jhat(1, 0).unwrap()];
        let d = default_denominator(1).unwrap();
        let res = multicert_telescope(&kernel, &rec, 1, 1, 0, &d, &jv, Budget::unlimited(), 7).unwrap().unwrap();
        assert_eq!(res.order(), 1);
        assert!(prect1_residual(&res, &kernel).is_zero());
        let norm = res.normalized();
        assert_eq!(norm.op, OreOp::parse("q^2*x^4 - q^2*x^3 + (q*x - 1)*E").unwrap());
        assert_eq!(norm.rhs, rf("q*x^3 - x"));
        let vals = colored_jones_range(1, 8).unwrap();
        for n in 0..8 {
            assert!(norm.residual(&vals, 0, n).unwrap().is_zero());
        }
    }

    #[test]
    fn search_finds_expected_orders() {
        let kernel = cyclotomic_kernel();
        for (p, ord) in [(-1, 2), (2, 3)] {
            let rec = jhat_recursion(p).unwrap().rec;
            let jv: Vec<QPoly> = (0..p.abs()).map(|k| jhat(p, k).unwrap()).collect();
            let oracle = colored_jones_range(p, 10).unwrap();
            let res = find_recursion(&kernel, &rec, p, &jv, Some(&oracle), &SearchOptions::default()).unwrap();
            assert_eq!(res.order(), ord);
            assert_eq!(res.boundary_sign, 1);
            assert!(prect2_residuals(&res.certs, &res.r).iter().all(RatFun::is_zero));
            let j = res.to_json().unwrap();
            assert_eq!(j.rec.order, ord);
            assert_eq!(j.certificates.len(), p.unsigned_abs() as usize);
        }
    }

    #[test]
    fn exhausted_search_reports() {
        let kernel = cyclotomic_kernel();
        let rec = jhat_recursion(2).unwrap().rec;
        let jv: Vec<QPoly> = (0..2).map(|k| jhat(2, k).unwrap()).collect();
        let opts = SearchOptions { extra_order: 0, max_numdeg: 1, extra_factors: 0, ..SearchOptions::default() };
        let rec_m2 = jhat_recursion(-2).unwrap().rec;
        let jv_m2: Vec<QPoly> = (0..2).map(|k| jhat(-2, k).unwrap()).collect();
        let short = find_recursion(&kernel, &rec_m2, -2, &jv_m2, None, &opts);
        assert!(matches!(short, Err(Error::SearchExhausted(_))));
        let expired = SearchOptions { budget: Budget::for_duration(std::time::Duration::ZERO), ..opts };
        std::thread::sleep(std::time::Duration::from_millis(2));
        assert!(matches!(find_recursion(&kernel, &rec, 2, &jv, None, &expired), Err(Error::BudgetExceeded)));
    }
}
