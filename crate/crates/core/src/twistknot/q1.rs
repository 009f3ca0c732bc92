//! The `q = 1` shadow of `A^nh_p` and its relation to the A-polynomial.

use super::fixtures::{apoly_fixture, FixtureSource};
use crate::error::{Error, Result};
use crate::exactfield::{MPoly, Mono, Rat, RatFun, Subst, Var};
use crate::oreops::InhomRec;

/// Names for printing polynomials with `Q ↦ x`, `L ↦ y`.
pub const LQ_NAMES: [&str; 4] = ["Q", "L", "", ""];
/// Names for printing polynomials with `M ↦ x`, `L ↦ y`.
pub const LM_NAMES: [&str; 4] = ["M", "L", "", ""];

/// `A^nh(L, Q, 1)` and `B(Q, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q1Shadow {
    /// Polynomial in `Q` (as `x`) and `L` (as `y`).
    pub op: MPoly,
    pub rhs: MPoly,
    pub order: usize,
    /// `true` if the `L`-degree is below the order of the recursion.
    pub degree_drop: bool,
}

fn at_q1(f: &RatFun) -> Result<MPoly> {
    let s = f.subst(&[Subst::Keep, Subst::Keep, Subst::Keep, Subst::Value(Rat::one())])?;
    if !s.is_poly() {
        return Err(Error::Domain(format!("{f} is not a polynomial")));
    }
    Ok(s.num().clone())
}

/// Sets `q = 1`, `qⁿ ↦ Q`, `E ↦ L` in the normalized recursion.
pub fn specialize_q1(rec: &InhomRec) -> Result<Q1Shadow> {
    let rec = rec.normalized();
    let mut op = MPoly::zero();
    for (i, a) in rec.op.coeffs().iter().enumerate() {
        op = &op + &at_q1(a)?.mul_mono(Mono::var(Var::Y, i as u32));
    }
    let order = rec.order();
    let degree_drop = op.is_zero() || op.degree(Var::Y) < order as u32;
    Ok(Q1Shadow { op, rhs: at_q1(&rec.rhs)?, order, degree_drop })
}

/// `M² ↦ Q`; fails on an odd power of `M`.
pub fn m_squared_to_q(a: &MPoly) -> Result<MPoly> {
    let mut terms = Vec::new();
    for (m, c) in a.terms() {
        let e = m.exp(Var::X);
        if e % 2 != 0 {
            return Err(Error::Convention(format!("odd power M^{e} in {a}")));
        }
        terms.push((m.with_exp(Var::X, e / 2), c.clone()));
    }
    Ok(MPoly::from_terms(terms))
}

/// `Q ↦ M²`.
pub fn q_to_m_squared(a: &MPoly) -> MPoly {
    MPoly::from_terms(a.terms().iter().map(|(m, c)| (m.with_exp(Var::X, 2 * m.exp(Var::X)), c.clone())))
}

#[derive(Clone, Debug)]
pub struct AJReport {
    pub p: i64,
    pub a_nh_at_1: MPoly,
    /// `A_p(L, M)` with `M² ↦ Q`.
    pub a_poly: MPoly,
    pub quotient: Option<MPoly>,
    pub degree_drop: bool,
}

impl AJReport {
    pub fn passed(&self) -> bool {
        !self.degree_drop && self.quotient.as_ref().is_some_and(|f| !f.uses(Var::Y))
    }
}

/// Divides `A^nh_p(L, Q, 1)` by the published A-polynomial under `M² ↦ Q`.
pub fn check_aj(p: i64, rec: &InhomRec, src: &FixtureSource) -> Result<AJReport> {
    let shadow = specialize_q1(rec)?;
    let a_poly = m_squared_to_q(&apoly_fixture(src, p)?)?;
    let quotient = shadow.op.try_div(&a_poly);
    Ok(AJReport { p, a_nh_at_1: shadow.op, a_poly, quotient, degree_drop: shadow.degree_drop })
}

/// Result of testing the conjectural second-order step in `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub triple: [i64; 3],
    /// Convention under which the identity holds: `"Q=M^2"` or `"Q=M"`.
    pub convention: Option<&'static str>,
    /// Signs applied to the second and third members when it holds.
    pub signs: Option<[i64; 2]>,
}

fn lm(s: &str) -> MPoly {
    let f = crate::exactfield::parse_ratfun_with(s, &[("M", Var::X), ("L", Var::Y)]).unwrap();
    f.num().clone()
}

/// Checks `c₀·A_p + c₁·A_{p+1} + c₂·A_{p+2} = 0` for the published
/// step operator, where `shadows` are `A^nh(L, Q, 1)` for the triple.
pub fn hoste_shanahan_check(triple: [i64; 3], shadows: [&MPoly; 3]) -> StepReport {
    let c0 = lm("M^2*(M - 1)^4*(M + 1)^4*(L + M)^4");
    let c1 = -&lm("(M - 1)^2*(M + 1)^2*(M^4 - L*M^4 + 2*L*M^3 + L^2*M^2 + M^2 + 2*L*M^2 + 2*L*M + L^2 - L)");
    let one = MPoly::one();
    let (k0, k1, k2) = if triple[0] > 0 { (&c0, &c1, &one) } else { (&one, &c1, &c0) };
    for (name, squared) in [("Q=M^2", true), ("Q=M", false)] {
        let a: Vec<MPoly> = shadows.iter().map(|s| if squared { q_to_m_squared(s) } else { (*s).clone() }).collect();
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                let sum = &(&(k0 * &a[0]) + &(k1 * &a[1]).scale(&s1.into())) + &(k2 * &a[2]).scale(&s2.into());
                if sum.is_zero() {
                    return StepReport { triple, convention: Some(name), signs: Some([s1, s2]) };
                }
            }
        }
    }
    StepReport { triple, convention: None, signs: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_ratfun_with;
    use crate::twistknot::fixtures::rec_fixture;

    fn lq(s: &str) -> MPoly {
        parse_ratfun_with(s, &[("Q", Var::X), ("L", Var::Y)]).unwrap().num().clone()
    }

    fn shadow(p: i64) -> Q1Shadow {
        specialize_q1(&rec_fixture(&FixtureSource::Embedded, p).unwrap().rec).unwrap()
    }

    #[test]
    fn p1_shadow() {
        let s = shadow(1);
        assert_eq!(s.order, 1);
        assert!(!s.degree_drop);
        let expect = lq("(Q - 1)*(L + Q^3)");
        assert!(s.op == expect || s.op == -&expect, "{}", s.op.fmt_named(&LQ_NAMES));
        let b = lq("Q*(Q^2 - 1)");
        assert!(s.rhs == b || s.rhs == -&b, "{}", s.rhs.fmt_named(&LQ_NAMES));
    }

    #[test]
    fn aj_quotient_for_p1() {
        let rec = rec_fixture(&FixtureSource::Embedded, 1).unwrap().rec;
        let r = check_aj(1, &rec, &FixtureSource::Embedded).unwrap();
        assert!(r.passed());
        let q = r.quotient.unwrap();
        assert!(q == lq("Q - 1") || q == lq("1 - Q"));
    }

    #[test]
    fn aj_holds_for_published_recursions() {
        for p in [-3, -2, -1, 2, 3] {
            let rec = rec_fixture(&FixtureSource::Embedded, p).unwrap().rec;
            assert!(check_aj(p, &rec, &FixtureSource::Embedded).unwrap().passed(), "p={p}");
        }
    }

    #[test]
    fn m_squared_round_trip() {
        let a = lq("L^2 + Q^3*L - 1");
        assert_eq!(m_squared_to_q(&q_to_m_squared(&a)).unwrap(), a);
        assert!(m_squared_to_q(&lq("L + Q")).is_err());
    }

    #[test]
    fn step_identity_detects_constructed_triples() {
        let c0 = lm("M^2*(M - 1)^4*(M + 1)^4*(L + M)^4");
        let c1 = -&lm("(M - 1)^2*(M + 1)^2*(M^4 - L*M^4 + 2*L*M^3 + L^2*M^2 + M^2 + 2*L*M^2 + 2*L*M + L^2 - L)");
        let a0 = lm("L + M^3");
        let a1 = lm("L^2 - M");
        let a2 = -&(&(&c0 * &a0) + &(&c1 * &a1));
        let r = hoste_shanahan_check([1, 2, 3], [&a0, &a1, &a2]);
        assert_eq!(r.convention, Some("Q=M"));
        assert_eq!(r.signs, Some([1, 1]));
        let r = hoste_shanahan_check([1, 2, 3], [&a0, &a1, &a1]);
        assert_eq!(r.convention, None);
    }

    #[test]
    fn step_identity_on_published_shadows() {
        for triple in [[1, 2, 3], [-3, -2, -1]] {
            let s: Vec<MPoly> = triple.iter().map(|&p| shadow(p).op).collect();
            let r = hoste_shanahan_check(triple, [&s[0], &s[1], &s[2]]);
            assert_eq!(r.convention, Some("Q=M"), "{triple:?}");
            assert_eq!(r.signs, Some([1, 1]), "{triple:?}");
        }
    }
}
