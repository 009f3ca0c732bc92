//! Published recursions and A-polynomials, embedded at build time. The
//! `QTEL_FIXTURES` environment variable or an explicit directory can
//! replace them.

use crate::error::{Error, Result};
use crate::exactfield::{parse_ratfun, parse_ratfun_with, MPoly, Var};
use crate::oreops::{InhomRec, OreOp};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

const EMBEDDED: [(&str, &str); 7] = [
    ("thm0/p1.json", include_str!("../../fixtures/thm0/p1.json")),
    ("thm0/p-1.json", include_str!("../../fixtures/thm0/p-1.json")),
    ("thm0/p2.json", include_str!("../../fixtures/thm0/p2.json")),
    ("thm0/p-2.json", include_str!("../../fixtures/thm0/p-2.json")),
    ("appB/p3.json", include_str!("../../fixtures/appB/p3.json")),
    ("appB/p-3.json", include_str!("../../fixtures/appB/p-3.json")),
    ("appC/apoly.json", include_str!("../../fixtures/appC/apoly.json")),
];

#[derive(Clone, Debug, Default)]
pub enum FixtureSource {
    #[default]
    Embedded,
    Dir(PathBuf),
}

impl FixtureSource {
    /// `QTEL_FIXTURES` if set, otherwise the embedded copies.
    pub fn from_env() -> FixtureSource {
        match std::env::var_os("QTEL_FIXTURES") {
            Some(d) if !d.is_empty() => FixtureSource::Dir(PathBuf::from(d)),
            _ => FixtureSource::Embedded,
        }
    }

    fn read(&self, rel: &str) -> Result<String> {
        match self {
            FixtureSource::Embedded => EMBEDDED
                .iter()
                .find(|(name, _)| *name == rel)
                .map(|(_, s)| s.to_string())
                .ok_or_else(|| Error::Fixture(format!("no embedded fixture {rel}"))),
            FixtureSource::Dir(d) => read_file(&d.join(rel)),
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct RecFile {
    p: i64,
    order: usize,
    operator: String,
    rhs: String,
}

/// A published pair `(A^nh_p, B_p)`.
#[derive(Clone, Debug)]
pub struct RecFixture {
    pub p: i64,
    pub order: usize,
    pub rec: InhomRec,
    /// Relative path of the file it came from.
    pub file: String,
}

pub fn rec_fixture_path(p: i64) -> Result<String> {
    match p {
        1 | -1 | 2 | -2 => Ok(format!("thm0/p{p}.json")),
        3 | -3 => Ok(format!("appB/p{p}.json")),
        _ => Err(Error::Fixture(format!("no published recursion for p = {p}"))),
    }
}

pub fn rec_fixture(src: &FixtureSource, p: i64) -> Result<RecFixture> {
    let file = rec_fixture_path(p)?;
    let raw: RecFile = serde_json::from_str(&src.read(&file)?).map_err(|e| Error::Fixture(format!("{file}: {e}")))?;
    if raw.p != p {
        return Err(Error::Fixture(format!("{file} is for p = {}", raw.p)));
    }
    let op = OreOp::parse(&raw.operator)?;
    if op.order() != raw.order {
        return Err(Error::Fixture(format!("{file}: declared order {} but parsed {}", raw.order, op.order())));
    }
    let rhs = parse_ratfun(&raw.rhs)?;
    Ok(RecFixture { p, order: raw.order, rec: InhomRec::new(op, rhs), file })
}

/// `A_p(L, M)` with `M ↦ x` and `L ↦ y`.
pub fn apoly_fixture(src: &FixtureSource, p: i64) -> Result<MPoly> {
    let table: BTreeMap<String, String> = serde_json::from_str(&src.read("appC/apoly.json")?)
        .map_err(|e| Error::Fixture(format!("appC/apoly.json: {e}")))?;
    let s = table.get(&p.to_string()).ok_or_else(|| Error::Fixture(format!("no A-polynomial for p = {p}")))?;
    let f = parse_ratfun_with(s, &[("M", Var::X), ("L", Var::Y)])?;
    if !f.is_poly() {
        return Err(Error::Fixture(format!("A-polynomial for p = {p} is not a polynomial")));
    }
    Ok(f.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_parse() {
        for (p, ord) in [(1, 1), (-1, 2), (2, 3), (-2, 4), (3, 5), (-3, 6)] {
            let fx = rec_fixture(&FixtureSource::Embedded, p).unwrap();
            assert_eq!(fx.order, ord);
            assert_eq!(fx.rec.order(), ord);
            assert!(apoly_fixture(&FixtureSource::Embedded, p).is_ok());
        }
        assert!(matches!(rec_fixture(&FixtureSource::Embedded, 4), Err(Error::Fixture(_))));
        assert!(matches!(apoly_fixture(&FixtureSource::Embedded, 7), Err(Error::Fixture(_))));
    }

    #[test]
    fn directory_source_matches_embedded() {
        let dir = FixtureSource::Dir(PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")));
        for p in [1, -2, 3] {
            assert_eq!(rec_fixture(&dir, p).unwrap().rec, rec_fixture(&FixtureSource::Embedded, p).unwrap().rec);
        }
        let missing = FixtureSource::Dir(PathBuf::from("/nonexistent/qtel"));
        assert!(matches!(rec_fixture(&missing, 1), Err(Error::Fixture(_))));
    }
}
