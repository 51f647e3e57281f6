//! Published reference matrices and the checks run against them.
//!
//! The matrices ship as text files under `fixtures/` and are also compiled
//! into the library. Expected verdicts and digraph data are kept here in
//! code, so a corrupted fixture file shows up as a failed check.
//!
//! Diffeomorphism-class counts (`O_n`, `Spin_n`) are not recomputed: that
//! needs Bott equivalence, which this crate does not implement. They are
//! checked only by counting the listed representatives.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::criteria::{is_orientable, is_spin, pair_terms};
use crate::digraph::{build_digraph, digraph_spin};
use crate::matrix::BottMatrix;
use crate::parse::{parse_matrix, ParsedMatrix};

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name, ".txt")))
    };
}

const BUILTIN: &[(&str, &str)] = &[
    fixture!("4stepeg-1"),
    fixture!("4stepeg-2"),
    fixture!("4stepeg-3"),
    fixture!("4stepeg-4"),
    fixture!("4stepeg-5"),
    fixture!("4stepeg-6"),
    fixture!("4stepeg-7"),
    fixture!("4stepeg-8"),
    fixture!("be4-1"),
    fixture!("be4-2"),
    fixture!("be4-3"),
    fixture!("be5-1"),
    fixture!("be5-2"),
    fixture!("be5-3"),
    fixture!("be5-4"),
    fixture!("be5-5"),
    fixture!("be5-6"),
    fixture!("be5-7"),
    fixture!("be5-8"),
    fixture!("egdigraph-c1"),
    fixture!("egdigraph-c2"),
    fixture!("egdigraph-c3"),
    fixture!("egdigraph-c4"),
    fixture!("spin23-1"),
    fixture!("spin23-2"),
];

/// Expected spin pattern of the eight orientable `B(5)` representatives.
pub const BE5_SPIN_PATTERN: [bool; 8] = [true, true, true, true, false, false, false, false];

/// Diffeomorphism-class counts for `n = 1..=5`.
pub const ORIENTABLE_CLASSES: [usize; 5] = [1, 1, 2, 3, 8];
pub const SPIN_CLASSES: [usize; 5] = [1, 1, 2, 3, 4];

pub const CLASS_COUNT_NOTE: &str = "O_n and Spin_n count manifolds up to diffeomorphism; \
Bott equivalence is not implemented, so these counts are checked only against the listed representatives";

#[derive(Debug)]
pub enum FixtureError {
    Io(std::io::Error),
    /// The directory holds no `.txt` files.
    Empty,
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureError::Io(e) => write!(f, "cannot read fixtures: {e}"),
            FixtureError::Empty => f.write_str("fixture directory contains no .txt files"),
        }
    }
}

impl std::error::Error for FixtureError {}

/// Fixture texts keyed by name (file stem).
#[derive(Clone, Debug)]
pub struct FixtureSet {
    files: BTreeMap<String, String>,
}

impl FixtureSet {
    pub fn builtin() -> Self {
        FixtureSet {
            files: BUILTIN.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    /// Load every `*.txt` file in `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self, FixtureError> {
        let mut files = BTreeMap::new();
        for entry in std::fs::read_dir(dir).map_err(FixtureError::Io)? {
            let path = entry.map_err(FixtureError::Io)?.path();
            if path.extension().is_some_and(|e| e == "txt") {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
                let text = std::fs::read_to_string(&path).map_err(FixtureError::Io)?;
                files.insert(stem, text);
            }
        }
        if files.is_empty() {
            return Err(FixtureError::Empty);
        }
        Ok(FixtureSet { files })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    /// The named fixture as a Bott matrix.
    pub fn matrix(&self, name: &str) -> Result<BottMatrix, String> {
        let text = self.files.get(name).ok_or_else(|| "missing fixture".to_string())?;
        match parse_matrix(text) {
            Ok(ParsedMatrix::Bott(c)) => Ok(c),
            Ok(ParsedMatrix::General(_)) => Err("not strictly upper triangular".into()),
            Err(e) => Err(e.to_string()),
        }
    }

    fn group(&self, prefix: &str, count: usize) -> Vec<(String, Result<BottMatrix, String>)> {
        (1..=count)
            .map(|i| {
                let name = format!("{prefix}{i}");
                let m = self.matrix(&name);
                (name, m)
            })
            .collect()
    }
}

fn builtin_group(prefix: &str, count: usize) -> Vec<BottMatrix> {
    FixtureSet::builtin()
        .group(prefix, count)
        .into_iter()
        .map(|(_, m)| m.expect("builtin fixtures parse"))
        .collect()
}

/// The eight 4-dimensional spin Bott matrices.
pub fn four_step_spin_list() -> Vec<BottMatrix> {
    builtin_group("4stepeg-", 8)
}

/// The three orientable `B(4)` representatives.
pub fn be4_representatives() -> Vec<BottMatrix> {
    builtin_group("be4-", 3)
}

/// The eight orientable `B(5)` representatives.
pub fn be5_representatives() -> Vec<BottMatrix> {
    builtin_group("be5-", 8)
}

/// The two orientable 3-dimensional Bott matrices.
pub fn orientable_three_folds() -> Vec<BottMatrix> {
    builtin_group("spin23-", 2)
}

/// The digraph examples `C_1, ..., C_4`.
pub fn digraph_examples() -> Vec<BottMatrix> {
    FixtureSet::builtin()
        .group("egdigraph-c", 4)
        .into_iter()
        .map(|(_, m)| m.expect("builtin fixtures parse"))
        .collect()
}

/// For `n >= 5`: `c_{1,2} = c_{1,n-2} = c_{n-2,n-1} = c_{n-2,n} = 1`, all else
/// zero. Orientable but not spin; the pair `(1, n-2)` fails.
pub fn orientable_not_spin_family(n: usize) -> BottMatrix {
    assert!(n >= 5, "family starts at n = 5");
    BottMatrix::from_entries(n, &[(1, 2), (1, n - 2), (n - 2, n - 1), (n - 2, n)])
        .expect("entries are strictly upper triangular")
}

/// Known complete list of spin Bott matrices for small `n`, when published.
pub fn reference_spin_set(n: usize) -> Option<Vec<BottMatrix>> {
    match n {
        2 => Some(vec![BottMatrix::zero(2).expect("n = 2")]),
        3 => Some(orientable_three_folds()),
        4 => Some(four_step_spin_list()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentativesReport {
    pub checks: Vec<CheckResult>,
    pub note: &'static str,
}

impl RepresentativesReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for RepresentativesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        writeln!(f, "note: {}", self.note)
    }
}

struct Checker {
    checks: Vec<CheckResult>,
}

impl Checker {
    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult { name: name.into(), passed, detail: detail.into() });
    }

    fn matrix(&mut self, name: &str, m: Result<BottMatrix, String>) -> Option<BottMatrix> {
        match m {
            Ok(c) => Some(c),
            Err(e) => {
                self.record(name, false, e);
                None
            }
        }
    }

    fn expect_spin(&mut self, name: &str, m: Result<BottMatrix, String>, spin: bool) -> Option<bool> {
        let c = self.matrix(name, m)?;
        let v = is_spin(&c);
        let ok = v.orientable && v.spin == spin;
        self.record(name, ok, format!("expected orientable=true spin={spin}, got {v}"));
        Some(v.spin)
    }
}

/// Run every reference check against the built-in fixtures.
pub fn verify_representatives() -> RepresentativesReport {
    verify_with(&FixtureSet::builtin())
}

/// Run every reference check against `fixtures`.
pub fn verify_with(fixtures: &FixtureSet) -> RepresentativesReport {
    let mut ck = Checker { checks: Vec::new() };

    // Every orientable 4-dimensional Bott matrix is spin, and the list is complete.
    let mut four = BTreeSet::new();
    for (name, m) in fixtures.group("4stepeg-", 8) {
        if let Some(c) = m.clone().ok().filter(|c| c.dim() == 4) {
            four.insert(c.pack());
        }
        ck.expect_spin(&name, m, true);
    }
    let exhaustive: BTreeSet<u64> = (0..1u64 << 6)
        .filter(|&i| is_spin(&BottMatrix::unpack(4, i).expect("6 free entries")).spin)
        .collect();
    ck.record(
        "4stepeg-complete",
        four == exhaustive,
        format!("{} listed, {} spin among all 64 matrices", four.len(), exhaustive.len()),
    );

    // n = 2: only the torus; n = 3: the two listed matrices.
    let torus_only = (0..2u64)
        .filter(|&i| is_orientable(&BottMatrix::unpack(2, i).expect("1 free entry")))
        .eq([0u64]);
    ck.record("spin23-torus", torus_only, "the torus is the only orientable 2-dimensional case");
    let mut three = BTreeSet::new();
    for (name, m) in fixtures.group("spin23-", 2) {
        if let Some(c) = m.clone().ok().filter(|c| c.dim() == 3) {
            three.insert(c.pack());
        }
        ck.expect_spin(&name, m, true);
    }
    let orientable3: BTreeSet<u64> = (0..8u64)
        .filter(|&i| is_orientable(&BottMatrix::unpack(3, i).expect("3 free entries")))
        .collect();
    ck.record(
        "spin23-complete",
        three == orientable3,
        format!("{} listed, {} orientable among all 8 matrices", three.len(), orientable3.len()),
    );

    let mut spin_counts = vec![1usize, 1, 0, 0, 0];
    let mut orientable_counts = vec![1usize, 1, 2, 0, 0];
    spin_counts[2] = three.len();
    for (name, m) in fixtures.group("be4-", 3) {
        orientable_counts[3] += 1;
        if ck.expect_spin(&name, m, true) == Some(true) {
            spin_counts[3] += 1;
        }
    }
    for ((name, m), &expected) in fixtures.group("be5-", 8).into_iter().zip(&BE5_SPIN_PATTERN) {
        orientable_counts[4] += 1;
        if ck.expect_spin(&name, m, expected) == Some(true) {
            spin_counts[4] += 1;
        }
    }
    ck.record(
        "class-count-table",
        spin_counts == SPIN_CLASSES && orientable_counts == ORIENTABLE_CLASSES,
        format!(
            "representatives give O_n = {orientable_counts:?}, Spin_n = {spin_counts:?} for n = 1..5"
        ),
    );

    check_digraph_examples(&mut ck, fixtures);

    for n in 5..=10 {
        let c = orientable_not_spin_family(n);
        let v = is_spin(&c);
        let terms = pair_terms(&c, 1, n - 2).expect("1 < n - 2");
        let witness = v.pair_witness.map(|(j, k, _)| (j, k));
        let ok = v.orientable && !v.spin && witness == Some((1, n - 2)) && terms.sum() == 1;
        ck.record(
            format!("orientable-not-spin-n{n}"),
            ok,
            format!("{v}; P+Q at (1,{}) = {}", n - 2, terms.sum()),
        );
    }

    RepresentativesReport { checks: ck.checks, note: CLASS_COUNT_NOTE }
}

struct DigraphExpectation {
    name: &'static str,
    dim: usize,
    out: &'static [(usize, &'static [usize])],
    // (j, k, M_jk, c_{j,k} * binomial(N_k, 2)) for the pairs singled out
    pairs: &'static [(usize, usize, usize, usize)],
    spin: bool,
    witness: Option<(usize, usize)>,
}

const DIGRAPH_EXPECTATIONS: [DigraphExpectation; 4] = [
    DigraphExpectation {
        name: "egdigraph-c1",
        dim: 6,
        out: &[(2, &[5, 6]), (3, &[5, 6]), (4, &[5, 6])],
        pairs: &[(2, 3, 2, 0), (2, 4, 2, 0), (3, 4, 2, 0)],
        spin: true,
        witness: None,
    },
    DigraphExpectation {
        name: "egdigraph-c2",
        dim: 6,
        out: &[(1, &[2, 3, 4, 5]), (2, &[3, 6]), (3, &[5, 6])],
        pairs: &[(1, 2, 1, 1), (1, 3, 1, 1), (2, 3, 1, 1)],
        spin: true,
        witness: None,
    },
    DigraphExpectation {
        name: "egdigraph-c3",
        dim: 5,
        out: &[(1, &[3, 5]), (2, &[3, 4]), (3, &[4, 5])],
        pairs: &[(1, 2, 1, 0)],
        spin: false,
        witness: Some((1, 2)),
    },
    DigraphExpectation {
        name: "egdigraph-c4",
        dim: 7,
        out: &[(2, &[3, 4, 5, 6]), (3, &[4, 5, 6, 7]), (5, &[6, 7])],
        pairs: &[(2, 3, 3, 6)],
        spin: false,
        witness: Some((2, 3)),
    },
];

fn check_digraph_examples(ck: &mut Checker, fixtures: &FixtureSet) {
    for exp in &DIGRAPH_EXPECTATIONS {
        let Some(c) = ck.matrix(exp.name, fixtures.matrix(exp.name)) else { continue };
        let mut problems = Vec::new();
        if c.dim() != exp.dim {
            ck.record(exp.name, false, format!("expected dimension {}, found {}", exp.dim, c.dim()));
            continue;
        }
        let d = build_digraph(&c);
        for v in 1..=exp.dim {
            let want: &[usize] = exp.out.iter().find(|(u, _)| *u == v).map_or(&[], |(_, s)| s);
            if d.out_neighbours(v) != want {
                problems.push(format!("N+(u{v}) = {:?}, expected {want:?}", d.out_neighbours(v)));
            }
        }
        for &(j, k, m, b) in exp.pairs {
            let got_m = d.common_out(j, k).expect("valid pair");
            let got_b = d.binomial_term(j, k).expect("valid pair");
            if (got_m, got_b) != (m, b) {
                problems.push(format!("(M, binom) at ({j},{k}) = ({got_m}, {got_b}), expected ({m}, {b})"));
            }
        }
        let dv = digraph_spin(&d);
        let cv = is_spin(&c);
        let witness = dv.pair_witness.map(|(j, k, _)| (j, k));
        if dv.spin != exp.spin || cv.spin != exp.spin || !dv.orientable || witness != exp.witness {
            problems.push(format!("digraph verdict {dv}, closed-form verdict {cv}"));
        }
        let detail = if problems.is_empty() {
            format!("{dv}")
        } else {
            problems.join("; ")
        };
        ck.record(exp.name, problems.is_empty(), detail);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_pass() {
        let report = verify_representatives();
        assert!(report.all_passed(), "{report}");
        assert!(report.checks.len() > 30);
    }

    #[test]
    fn corrupted_be5_is_reported() {
        let mut set = FixtureSet::builtin();
        // make the fifth representative spin-compatible: drop row 3
        set.files.insert("be5-5".into(), "0 1 1 0 0\n0 0 1 0 1\n0 0 0 0 0\n0 0 0 0 0\n0 0 0 0 0\n".into());
        let report = verify_with(&set);
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"be5-5"), "{failed:?}");
    }

    #[test]
    fn missing_fixture_is_reported() {
        let mut set = FixtureSet::builtin();
        set.files.remove("egdigraph-c2");
        let report = verify_with(&set);
        assert!(report.failures().any(|c| c.name == "egdigraph-c2" && c.detail == "missing fixture"));
    }

    #[test]
    fn reference_sets() {
        assert_eq!(reference_spin_set(4).unwrap().len(), 8);
        assert_eq!(reference_spin_set(3).unwrap().len(), 2);
        assert!(reference_spin_set(5).is_none());
    }
}
