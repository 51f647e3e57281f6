//! Exhaustive and sampled sweeps over Bott matrices, cross-checking every
//! spin criterion against the cohomology ring.
//!
//! Exhaustive order is the integer order of the packed index (see
//! [`BottMatrix::pack`]). Sampling derives the `i`-th matrix from the seed
//! and `i` alone, so samples can be produced in any order and in parallel.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::CohomologyRing;
use crate::criteria::{is_spin, spin_by_pairs};
use crate::digraph::{build_digraph, digraph_spin};
use crate::error::{Error, Result};
use crate::matrix::BottMatrix;
use crate::reference::reference_spin_set;

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 7;
pub const DEFAULT_CHECK_CAP: usize = 20;

/// Environment variable overriding the exhaustive enumeration cap.
pub const MAX_N_ENV: &str = "BOTT_MAX_N";

const CHUNK: u64 = 1 << 12;

/// Dimension guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for exhaustive sweeps.
    pub exhaustive_cap: usize,
    /// Largest `n` for single checks and sampling.
    pub check_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP, check_cap: DEFAULT_CHECK_CAP }
    }
}

impl Limits {
    /// Defaults, with `BOTT_MAX_N` replacing the exhaustive cap when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.exhaustive_cap = cap;
        }
        limits
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

fn span(n: usize, mode: Mode, limits: Limits) -> Result<u64> {
    match mode {
        Mode::Exhaustive => {
            // beyond 63 free entries the index space does not fit a u64
            let max = limits.exhaustive_cap.min(11);
            if n > max {
                return Err(Error::DimensionTooLarge { n, max });
            }
            if n == 0 {
                return Err(Error::Empty);
            }
            Ok(1u64 << BottMatrix::free_entries(n))
        }
        Mode::Sample { count, .. } => {
            let max = limits.check_cap.min(crate::MAX_DIM);
            if n > max {
                return Err(Error::DimensionTooLarge { n, max });
            }
            if n == 0 {
                return Err(Error::Empty);
            }
            Ok(count)
        }
    }
}

/// The `index`-th sampled matrix for `seed`: every free entry is a fair coin.
pub fn sample_matrix(n: usize, seed: u64, index: u64) -> BottMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut rows = vec![0u32; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for j in i + 1..n {
            if rng.random::<bool>() {
                *row |= 1 << j;
            }
        }
    }
    BottMatrix::from_rows(rows).expect("strictly upper triangular by construction")
}

fn matrix_at(n: usize, mode: Mode, index: u64) -> BottMatrix {
    match mode {
        Mode::Exhaustive => BottMatrix::unpack(n, index).expect("index below 2^free"),
        Mode::Sample { seed, .. } => sample_matrix(n, seed, index),
    }
}

/// Stream of matrices for a sweep.
pub struct MatrixStream {
    n: usize,
    mode: Mode,
    next: u64,
    end: u64,
}

impl Iterator for MatrixStream {
    type Item = BottMatrix;

    fn next(&mut self) -> Option<BottMatrix> {
        if self.next >= self.end {
            return None;
        }
        let m = matrix_at(self.n, self.mode, self.next);
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).ok();
        (left.unwrap_or(usize::MAX), left)
    }
}

pub fn enumerate_all(n: usize, mode: Mode, limits: Limits) -> Result<MatrixStream> {
    let end = span(n, mode, limits)?;
    Ok(MatrixStream { n, mode, next: 0, end })
}

/// One disagreement between two criteria on one matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Packed index (exhaustive) or sample number.
    pub index: u64,
    pub matrix: String,
    pub criterion_a: &'static str,
    pub a: bool,
    pub criterion_b: &'static str,
    pub b: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub mode: Mode,
    pub total: u64,
    pub orientable_count: u64,
    pub spin_count: u64,
    pub mismatches: Vec<Mismatch>,
    /// Whether the spin matrices equal the published complete list, for the
    /// dimensions that have one (exhaustive mode only).
    pub reference_spin_set_matches: Option<bool>,
    pub elapsed_ms: u128,
}

impl SweepReport {
    /// No mismatches and no reference disagreement.
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.reference_spin_set_matches != Some(false)
    }

    /// Copy with the timing zeroed, for comparing runs.
    pub fn without_elapsed(&self) -> Self {
        SweepReport { elapsed_ms: 0, ..self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }

    pub const CSV_HEADER: &'static str = "n,total,orientable,spin,mismatches,elapsed_ms";

    /// `CSV_HEADER` plus one data row.
    pub fn to_csv(&self) -> String {
        format!(
            "{}\n{},{},{},{},{},{}\n",
            Self::CSV_HEADER,
            self.n,
            self.total,
            self.orientable_count,
            self.spin_count,
            self.mismatches.len(),
            self.elapsed_ms
        )
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            Mode::Exhaustive => writeln!(f, "n={} mode=exhaustive", self.n)?,
            Mode::Sample { count, seed } => writeln!(f, "n={} mode=sample count={count} seed={seed}", self.n)?,
        }
        writeln!(f, "total={}", self.total)?;
        writeln!(f, "orientable_count={}", self.orientable_count)?;
        writeln!(f, "spin_count={}", self.spin_count)?;
        writeln!(f, "mismatches={}", self.mismatches.len())?;
        for m in &self.mismatches {
            writeln!(
                f,
                "  #{} [{}]: {}={} vs {}={}",
                m.index, m.matrix, m.criterion_a, m.a, m.criterion_b, m.b
            )?;
        }
        if let Some(ok) = self.reference_spin_set_matches {
            writeln!(f, "reference_spin_set_matches={ok}")?;
        }
        writeln!(f, "elapsed_ms={}", self.elapsed_ms)
    }
}

/// Per-matrix verdicts from every route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub orientable: bool,
    pub spin: bool,
    pub mismatches: Vec<(&'static str, bool, &'static str, bool)>,
}

/// Evaluate the closed form, the digraph criterion, the pairwise reduction
/// and the ring expansion on one matrix and collect disagreements. The
/// closed form is the reference side of every comparison.
pub fn cross_check(c: &BottMatrix) -> CrossCheck {
    let closed = is_spin(c);
    let graph = digraph_spin(&build_digraph(c));
    let pairs = spin_by_pairs(c);
    let w = CohomologyRing::new(c).total_class();
    let ring_orientable = w.degree_part(1).is_zero();
    let ring_spin = ring_orientable && w.degree_part(2).is_zero();

    let mut mismatches = Vec::new();
    let mut compare = |name: &'static str, a: bool, other: &'static str, b: bool| {
        if a != b {
            mismatches.push((name, a, other, b));
        }
    };
    compare("closed_form_orientable", closed.orientable, "ring_w1_zero", ring_orientable);
    compare("closed_form_orientable", closed.orientable, "digraph_orientable", graph.orientable);
    compare("closed_form_spin", closed.spin, "ring_w1_w2_zero", ring_spin);
    compare("closed_form_spin", closed.spin, "digraph_spin", graph.spin);
    compare("closed_form_spin", closed.spin, "spin_by_pairs", pairs);
    CrossCheck { orientable: closed.orientable, spin: closed.spin, mismatches }
}

#[derive(Default)]
struct Partial {
    total: u64,
    orientable: u64,
    spin: u64,
    mismatches: Vec<Mismatch>,
    spin_indices: Vec<u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.total += other.total;
        self.orientable += other.orientable;
        self.spin += other.spin;
        self.mismatches.extend(other.mismatches);
        self.spin_indices.extend(other.spin_indices);
        self
    }
}

fn run_range(n: usize, mode: Mode, start: u64, end: u64, collect_spin: bool) -> Partial {
    let mut p = Partial::default();
    for index in start..end {
        let c = matrix_at(n, mode, index);
        let check = cross_check(&c);
        p.total += 1;
        p.orientable += u64::from(check.orientable);
        if check.spin {
            p.spin += 1;
            if collect_spin {
                p.spin_indices.push(index);
            }
        }
        for (criterion_a, a, criterion_b, b) in check.mismatches {
            p.mismatches.push(Mismatch { index, matrix: c.to_inline(), criterion_a, a, criterion_b, b });
        }
    }
    p
}

/// Sweep all (or sampled) `n x n` Bott matrices.
///
/// `threads == 1` runs serially on the calling thread; `0` uses the default
/// rayon pool; any other value builds a dedicated pool of that size. The
/// index space is cut into contiguous chunks whose partial reports are
/// merged in index order, so the result does not depend on `threads`.
pub fn sweep(n: usize, mode: Mode, threads: usize, limits: Limits) -> Result<SweepReport> {
    let started = Instant::now();
    let end = span(n, mode, limits)?;
    let reference = match mode {
        Mode::Exhaustive => reference_spin_set(n),
        Mode::Sample { .. } => None,
    };
    let collect_spin = reference.is_some();
    let chunks: Vec<(u64, u64)> =
        (0..end.div_ceil(CHUNK)).map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(end))).collect();

    let merged = if threads == 1 {
        chunks
            .iter()
            .map(|&(s, e)| run_range(n, mode, s, e, collect_spin))
            .fold(Partial::default(), Partial::merge)
    } else {
        let work = || {
            chunks
                .par_iter()
                .map(|&(s, e)| run_range(n, mode, s, e, collect_spin))
                .collect::<Vec<_>>()
                .into_iter()
                .fold(Partial::default(), Partial::merge)
        };
        if threads == 0 {
            work()
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool")
                .install(work)
        }
    };

    let reference_spin_set_matches = reference.map(|list| {
        let expected: BTreeSet<u64> = list.iter().map(BottMatrix::pack).collect();
        let found: BTreeSet<u64> = merged.spin_indices.iter().copied().collect();
        expected == found
    });

    Ok(SweepReport {
        n,
        mode,
        total: merged.total,
        orientable_count: merged.orientable,
        spin_count: merged.spin,
        mismatches: merged.mismatches,
        reference_spin_set_matches,
        elapsed_ms: started.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_counts() {
        let limits = Limits::default();
        for (n, total) in [(1, 1), (2, 2), (4, 64), (5, 1024)] {
            assert_eq!(enumerate_all(n, Mode::Exhaustive, limits).unwrap().count(), total);
        }
        let packed: Vec<u64> =
            enumerate_all(3, Mode::Exhaustive, limits).unwrap().map(|c| c.pack()).collect();
        assert_eq!(packed, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn caps() {
        let limits = Limits::default();
        assert_eq!(
            enumerate_all(8, Mode::Exhaustive, limits).err(),
            Some(Error::DimensionTooLarge { n: 8, max: 7 })
        );
        assert!(enumerate_all(30, Mode::Sample { count: 1, seed: 0 }, limits).is_err());
        assert!(enumerate_all(0, Mode::Exhaustive, limits).is_err());
        let wide = Limits { exhaustive_cap: 40, ..limits };
        assert_eq!(
            enumerate_all(12, Mode::Exhaustive, wide).err(),
            Some(Error::DimensionTooLarge { n: 12, max: 11 })
        );
    }

    #[test]
    fn samples_are_reproducible() {
        let mode = Mode::Sample { count: 20, seed: 7 };
        let a: Vec<_> = enumerate_all(6, mode, Limits::default()).unwrap().collect();
        let b: Vec<_> = enumerate_all(6, mode, Limits::default()).unwrap().collect();
        assert_eq!(a, b);
        let c: Vec<_> =
            enumerate_all(6, Mode::Sample { count: 20, seed: 8 }, Limits::default()).unwrap().collect();
        assert_ne!(a, c);
    }

    #[test]
    fn small_sweeps() {
        let r = sweep(2, Mode::Exhaustive, 1, Limits::default()).unwrap();
        assert_eq!((r.total, r.orientable_count, r.spin_count), (2, 1, 1));
        assert_eq!(r.reference_spin_set_matches, Some(true));
        let r = sweep(3, Mode::Exhaustive, 1, Limits::default()).unwrap();
        assert_eq!((r.total, r.orientable_count, r.spin_count), (8, 2, 2));
        assert!(r.is_clean());
    }

    #[test]
    fn csv_row() {
        let r = sweep(2, Mode::Exhaustive, 1, Limits::default()).unwrap().without_elapsed();
        assert_eq!(r.to_csv(), "n,total,orientable,spin,mismatches,elapsed_ms\n2,2,1,1,0,0\n");
    }
}
