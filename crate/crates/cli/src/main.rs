//! `qtel`: colored Jones values, recursions and their verification for
//! twist knots.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtel_core::exactfield::{QPoly, RatFun};
use qtel_core::genfun::genfun_check;
use qtel_core::oreops::ratfun_latex;
use qtel_core::telescope::{Budget, SearchOptions, TelescopeResult};
use qtel_core::twistknot::{
    annihilation_check, check_aj, colored_jones, compare_with_fixture, expected_order, jhat, noncomm_a, rec_fixture,
    specialize_q1, FixtureSource, LQ_NAMES,
};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser, Debug)]
#[command(name = "qtel", version, about = "q-holonomic recursions for twist knots")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every randomized check.
    #[arg(long, default_value_t = 0x51de_c0de)]
    seed: u64,
    /// Directory with published fixtures; QTEL_FIXTURES takes precedence.
    #[arg(long)]
    fixture_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Search {
    /// Highest E-order tried (default: one above the expected order).
    #[arg(long)]
    max_order: Option<usize>,
    /// Highest numerator degree of the certificate ansatz.
    #[arg(long, default_value_t = 8)]
    max_numdeg: usize,
    /// Wall-clock limit for the search, in seconds.
    #[arg(long)]
    timeout: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Colored Jones polynomial J_p(n).
    Jones {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Cyclotomic coefficient Ĵ_p(n).
    Jhat {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Inhomogeneous recursion of J_p.
    Recursion {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        common: Common,
    },
    /// Fixture comparison, annihilation and AJ checks.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, default_value_t = 10)]
        nmax: i64,
        /// Number of random points for the fixture comparison.
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        common: Common,
    },
    /// The q = 1 shadow of the recursion.
    Specialize {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        common: Common,
    },
    /// WZ identity, series shift and the two computations of F(z, q).
    GenfunCheck {
        /// Check only this p (default: 1 and -1).
        #[arg(long, allow_hyphen_values = true)]
        p: Option<i64>,
        /// Order of the F(z, q) comparison.
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = 6)]
        k_max: i64,
        /// Order of the H(k, z) comparison.
        #[arg(long, default_value_t = 20)]
        h_order: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Compute(qtel_core::Error),
}

impl From<qtel_core::Error> for Failure {
    fn from(e: qtel_core::Error) -> Self {
        match e {
            qtel_core::Error::Domain(m) => Failure::Usage(m),
            e => Failure::Compute(e),
        }
    }
}

fn fixture_source(c: &Common) -> FixtureSource {
    match (FixtureSource::from_env(), &c.fixture_dir) {
        (FixtureSource::Embedded, Some(d)) => FixtureSource::Dir(d.clone()),
        (src, _) => src,
    }
}

fn search_options(p: i64, s: &Search, seed: u64) -> SearchOptions {
    let mut o = SearchOptions { max_numdeg: s.max_numdeg, seed, ..SearchOptions::default() };
    if let Some(m) = s.max_order {
        o.extra_order = m.saturating_sub(expected_order(p));
    }
    if let Some(t) = s.timeout {
        o.budget = Budget::for_duration(Duration::from_secs(t));
    }
    o
}

fn require_p(p: i64) -> Result<(), Failure> {
    if p == 0 {
        return Err(Failure::Usage("--p must be nonzero".into()));
    }
    Ok(())
}

fn print_value(kind: &str, p: i64, n: i64, v: &QPoly, f: Format) {
    match f {
        Format::Text => println!("{v}"),
        Format::Latex => println!("{}", ratfun_latex(&RatFun::from_qpoly(v))),
        Format::Json => println!("{}", json!({ "kind": kind, "p": p, "n": n, "value": v.to_string() })),
    }
}

fn compute(p: i64, s: &Search, seed: u64) -> Result<TelescopeResult, Failure> {
    require_p(p)?;
    Ok(noncomm_a(p, &search_options(p, s, seed))?)
}

fn print_report(v: &Value, lines: &[String], f: Format) {
    match f {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).unwrap()),
        _ => lines.iter().for_each(|l| println!("{l}")),
    }
}

fn verify(p: i64, nmax: i64, points: usize, s: &Search, c: &Common) -> Result<bool, Failure> {
    if nmax < 0 {
        return Err(Failure::Usage("--nmax must be nonnegative".into()));
    }
    let res = compute(p, s, c.seed)?;
    let rec = res.normalized();
    let src = fixture_source(c);
    let mut lines = vec![format!("p = {p}: order {}", rec.order())];
    let fixture = match rec_fixture(&src, p) {
        Ok(fx) => {
            let m = compare_with_fixture(&rec, &fx, c.seed, points)?;
            lines.push(format!(
                "fixture {}: order {} vs {}, structural {}, pointwise {} ({} points)",
                fx.file, m.order_computed, m.order_published, m.structural, m.pointwise, m.points
            ));
            Some(json!({
                "file": fx.file,
                "order_published": m.order_published,
                "structural": m.structural,
                "pointwise": m.pointwise,
                "points": m.points,
                "ok": m.order_computed == m.order_published && m.pointwise,
            }))
        }
        Err(qtel_core::Error::Fixture(_)) => {
            lines.push("fixture: none published".into());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let ann = annihilation_check(&rec, p, nmax)?;
    lines.push(format!(
        "annihilation n = 0..{}: {}",
        ann.last_n,
        match ann.failing_n {
            None => "ok".to_string(),
            Some(n) => format!("fails at n = {n}"),
        }
    ));
    let aj = match check_aj(p, &rec, &src) {
        Ok(r) => {
            let q = r.quotient.as_ref().map(|f| f.fmt_named(&LQ_NAMES));
            lines.push(format!(
                "AJ: quotient {}, degree drop {}",
                q.clone().unwrap_or_else(|| "not divisible".into()),
                r.degree_drop
            ));
            Some((r.passed(), json!({ "quotient": q, "degree_drop": r.degree_drop, "ok": r.passed() })))
        }
        Err(qtel_core::Error::Fixture(_)) => {
            lines.push("AJ: no published A-polynomial".into());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let fixture_ok = fixture.as_ref().is_none_or(|f| f["ok"] == json!(true));
    let ok = fixture_ok && ann.passed() && aj.as_ref().is_none_or(|a| a.0);
    lines.push(if ok { "verified".into() } else { "FAILED".into() });
    let v = json!({
        "p": p,
        "order": rec.order(),
        "fixture": fixture,
        "annihilation": { "last_n": ann.last_n, "failing_n": ann.failing_n },
        "aj": aj.map(|a| a.1),
        "ok": ok,
    });
    print_report(&v, &lines, c.format);
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::Jones { p, n, common } => {
            require_p(p)?;
            print_value("jones", p, n, &colored_jones(p, n)?, common.format);
        }
        Cmd::Jhat { p, n, common } => {
            require_p(p)?;
            print_value("jhat", p, n, &jhat(p, n)?, common.format);
        }
        Cmd::Recursion { p, search, common } => {
            let res = compute(p, &search, common.seed)?;
            match common.format {
                Format::Text => println!("{}", res.normalized()),
                Format::Latex => println!("{}", res.normalized().to_latex()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&res.to_json()?).unwrap()),
            }
        }
        Cmd::Verify { p, nmax, points, search, common } => return verify(p, nmax, points, &search, &common),
        Cmd::Specialize { p, search, common } => {
            let res = compute(p, &search, common.seed)?;
            let sh = specialize_q1(&res.normalized())?;
            let aj = check_aj(p, &res.normalized(), &fixture_source(&common)).ok();
            let quotient = aj.as_ref().and_then(|r| r.quotient.as_ref()).map(|f| f.fmt_named(&LQ_NAMES));
            let v = json!({
                "p": p,
                "order": sh.order,
                "a_nh_at_1": sh.op.fmt_named(&LQ_NAMES),
                "b_at_1": sh.rhs.fmt_named(&LQ_NAMES),
                "degree_drop": sh.degree_drop,
                "aj_quotient": quotient,
            });
            let lines = vec![
                format!("A(L, Q, 1) = {}", sh.op.fmt_named(&LQ_NAMES)),
                format!("B(Q, 1) = {}", sh.rhs.fmt_named(&LQ_NAMES)),
                format!("order {}, degree drop {}", sh.order, sh.degree_drop),
                format!("quotient by A_p(L, M) at M^2 = Q: {}", quotient.unwrap_or_else(|| "none".into())),
            ];
            print_report(&v, &lines, common.format);
        }
        Cmd::GenfunCheck { p, nmax, k_max, h_order, common } => {
            let ps = match p {
                Some(p) => {
                    require_p(p)?;
                    vec![p]
                }
                None => vec![1, -1],
            };
            let r = genfun_check(&ps, k_max, h_order, nmax)?;
            let v = serde_json::to_value(&r).unwrap();
            let lines = vec![
                format!("WZ identity: {}", if r.identity_ok { "holds" } else { "FAILS" }),
                format!("certificate re-derived: {}", r.corrected_certificate.as_deref().unwrap_or("no")),
                format!("delta: {}", r.delta.map_or("none".into(), |d| d.to_string())),
                format!("series agree through z^{}", r.series_match_up_to.map_or("-".into(), |n| n.to_string())),
                format!("sum equals (1 - q^n) J(n): {}", r.jcheck_is_scaled_j),
                format!("sum equals (1 - q^n) Jhat(n): {}", r.jcheck_is_scaled_jhat),
            ];
            print_report(&v, &lines, common.format);
            return Ok(r.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
