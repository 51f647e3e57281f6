//! Bott matrices, general Bott matrices and permutation conjugation.
//!
//! Rows are stored as bitmasks: bit `j - 1` of row `i` holds the entry
//! `c_{i,j}`. Every public method takes and reports 1-based indices.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;

use crate::error::{Error, Result};

/// Largest dimension representable by the row bitmasks.
pub const MAX_DIM: usize = 32;

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterate the 0-based positions of the set bits of `mask`, ascending.
#[inline]
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
    }
    Ok(())
}

fn check_index(what: &'static str, index: usize, n: usize) -> Result<usize> {
    if index == 0 || index > n {
        Err(Error::IndexOutOfRange { what, index, max: n })
    } else {
        Ok(index - 1)
    }
}

/// A strictly upper triangular binary matrix: the complete datum of a real
/// Bott manifold `Y_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BottMatrix {
    rows: Vec<u32>,
}

impl BottMatrix {
    /// The `n x n` zero matrix (the torus `T^n`).
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(BottMatrix { rows: vec![0; n] })
    }

    /// Build from row bitmasks (bit `j - 1` of `rows[i - 1]` is `c_{i,j}`).
    pub fn from_rows(rows: Vec<u32>) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        for (i, &row) in rows.iter().enumerate() {
            // allowed columns are i+1..n (0-based)
            let allowed = low_mask(n) & !low_mask(i + 1);
            let bad = row & !allowed;
            if bad != 0 {
                let col = bad.trailing_zeros() as usize;
                if col >= n {
                    return Err(Error::NonSquare {
                        row: i + 1,
                        found: col + 1,
                        expected: n,
                    });
                }
                return Err(Error::NotStrictlyUpper { row: i + 1, col: col + 1 });
            }
        }
        Ok(BottMatrix { rows })
    }

    /// Build an `n x n` matrix from its nonzero entries `(i, j)`, 1-based.
    pub fn from_entries(n: usize, entries: &[(usize, usize)]) -> Result<Self> {
        check_dim(n)?;
        let mut rows = vec![0u32; n];
        for &(i, j) in entries {
            let i0 = check_index("row", i, n)?;
            let j0 = check_index("column", j, n)?;
            rows[i0] |= 1 << j0;
        }
        Self::from_rows(rows)
    }

    /// Build from a dense 0/1 grid.
    pub fn from_grid<R: AsRef<[u8]>>(grid: &[R]) -> Result<Self> {
        Self::from_rows(grid_to_rows(grid)?)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Raw row bitmasks.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// `c_{i,j}` for 1-based `i, j`. Panics if an index is out of range.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        let n = self.dim();
        assert!((1..=n).contains(&i) && (1..=n).contains(&j), "entry ({i},{j}) out of range");
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    /// Bitmask of row `i` (1-based).
    pub fn row(&self, i: usize) -> u32 {
        self.rows[i - 1]
    }

    /// Bitmask of the rows `r` with `c_{r,j} = 1` (bit `r - 1`).
    pub fn column(&self, j: usize) -> u32 {
        column_of(&self.rows, j - 1)
    }

    /// Number of ones in row `i` (1-based).
    pub fn row_sum(&self, i: usize) -> usize {
        self.rows[i - 1].count_ones() as usize
    }

    /// `C_{jk}`: rows `j` and `k` of `C`, every other row zero.
    pub fn row_pair_matrix(&self, j: usize, k: usize) -> Result<Self> {
        let n = self.dim();
        let (j0, k0) = check_pair(j, k, n)?;
        let mut rows = vec![0; n];
        rows[j0] = self.rows[j0];
        rows[k0] = self.rows[k0];
        Ok(BottMatrix { rows })
    }

    /// `C^k`: the trailing principal submatrix left after deleting the first
    /// `k` rows and columns.
    pub fn delete_leading(&self, k: usize) -> Result<Self> {
        let n = self.dim();
        if k >= n {
            return Err(Error::IndexOutOfRange { what: "deletion count", index: k, max: n - 1 });
        }
        let rows = self.rows[k..].iter().map(|&r| r >> k).collect();
        Ok(BottMatrix { rows })
    }

    /// The leading principal `t x t` submatrix, the Bott matrix of the
    /// stage `Y_t` of the tower.
    pub fn leading(&self, t: usize) -> Result<Self> {
        let n = self.dim();
        check_index("leading size", t, n)?;
        let mask = low_mask(t);
        let rows = self.rows[..t].iter().map(|&r| r & mask).collect();
        Ok(BottMatrix { rows })
    }

    /// Whether this is the zero matrix.
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Number of free entries, `n(n-1)/2`.
    pub fn free_entries(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    /// Pack the free entries row-major (`c_{1,2}` is bit 0, then `c_{1,3}`,
    /// ..., `c_{n-1,n}` is the most significant).
    pub fn pack(&self) -> u64 {
        let n = self.dim();
        let mut out = 0u64;
        let mut pos = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.rows[i] >> j & 1 == 1 {
                    out |= 1 << pos;
                }
                pos += 1;
            }
        }
        out
    }

    /// Inverse of [`BottMatrix::pack`].
    pub fn unpack(n: usize, index: u64) -> Result<Self> {
        check_dim(n)?;
        let free = Self::free_entries(n);
        if free < 64 && index >> free != 0 {
            return Err(Error::IndexOutOfRange {
                what: "packed matrix",
                index: index as usize,
                max: ((1u64 << free) - 1) as usize,
            });
        }
        let mut rows = vec![0u32; n];
        let mut pos = 0;
        for (i, row) in rows.iter_mut().enumerate() {
            for j in i + 1..n {
                if index >> pos & 1 == 1 {
                    *row |= 1 << j;
                }
                pos += 1;
            }
        }
        Ok(BottMatrix { rows })
    }

    /// As a [`GeneralBottMatrix`] (always valid).
    pub fn to_general(&self) -> GeneralBottMatrix {
        GeneralBottMatrix { rows: self.rows.clone() }
    }

    /// Matrix text format: `n` lines of `n` space-separated digits.
    pub fn to_text(&self) -> String {
        rows_to_text(&self.rows)
    }

    /// Compact single-line form, rows joined by `;` (e.g. `"01;00"`).
    pub fn to_inline(&self) -> String {
        rows_to_inline(&self.rows)
    }

    /// Dense 0/1 grid.
    pub fn to_grid(&self) -> Vec<Vec<u8>> {
        rows_to_grid(&self.rows)
    }
}

impl fmt::Debug for BottMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BottMatrix[{}]", self.to_inline())
    }
}

impl fmt::Display for BottMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A binary matrix with zero diagonal whose digraph is acyclic, i.e. a
/// conjugate `P C P^{-1}` of some Bott matrix `C`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneralBottMatrix {
    rows: Vec<u32>,
}

impl GeneralBottMatrix {
    /// Validate row bitmasks: zero diagonal, no directed cycle.
    pub fn from_rows(rows: Vec<u32>) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        for (i, &row) in rows.iter().enumerate() {
            if row & !low_mask(n) != 0 {
                return Err(Error::NonSquare {
                    row: i + 1,
                    found: 32 - row.leading_zeros() as usize,
                    expected: n,
                });
            }
            if row >> i & 1 == 1 {
                return Err(Error::DiagonalNonzero { index: i + 1 });
            }
        }
        topological_order(&rows)?;
        Ok(GeneralBottMatrix { rows })
    }

    pub fn from_grid<R: AsRef<[u8]>>(grid: &[R]) -> Result<Self> {
        Self::from_rows(grid_to_rows(grid)?)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// `b_{i,j}` for 1-based `i, j`.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        let n = self.dim();
        assert!((1..=n).contains(&i) && (1..=n).contains(&j), "entry ({i},{j}) out of range");
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows[i - 1]
    }

    pub fn column(&self, j: usize) -> u32 {
        column_of(&self.rows, j - 1)
    }

    /// `Some(C)` when the matrix is already strictly upper triangular.
    pub fn as_bott(&self) -> Option<BottMatrix> {
        BottMatrix::from_rows(self.rows.clone()).ok()
    }

    /// `B_{jk}`: rows `j` and `k` of `B`, every other row zero.
    pub fn row_pair_matrix(&self, j: usize, k: usize) -> Result<Self> {
        let n = self.dim();
        let (j0, k0) = check_pair(j, k, n)?;
        let mut rows = vec![0; n];
        rows[j0] = self.rows[j0];
        rows[k0] = self.rows[k0];
        Ok(GeneralBottMatrix { rows })
    }

    /// Find `sigma` and a Bott matrix `C` with `b_{sigma(i),sigma(j)} = c_{i,j}`.
    ///
    /// `sigma` lists the vertices in topological order; among the vertices
    /// available at each step the smallest original index goes first.
    pub fn normalize(&self) -> (Permutation, BottMatrix) {
        let order = topological_order(&self.rows).expect("validated at construction");
        let n = self.dim();
        let mut rows = vec![0u32; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, &target) in order.iter().enumerate() {
                if self.rows[order[i]] >> target & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        let c = BottMatrix::from_rows(rows).expect("topological order yields upper triangular");
        (Permutation { images: order }, c)
    }

    pub fn to_text(&self) -> String {
        rows_to_text(&self.rows)
    }

    pub fn to_inline(&self) -> String {
        rows_to_inline(&self.rows)
    }

    pub fn to_grid(&self) -> Vec<Vec<u8>> {
        rows_to_grid(&self.rows)
    }
}

impl fmt::Debug for GeneralBottMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneralBottMatrix[{}]", self.to_inline())
    }
}

impl fmt::Display for GeneralBottMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<BottMatrix> for GeneralBottMatrix {
    fn from(c: BottMatrix) -> Self {
        GeneralBottMatrix { rows: c.rows }
    }
}

/// A permutation `sigma` of `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// `i -> n + 1 - i`.
    pub fn reversal(n: usize) -> Self {
        Permutation { images: (0..n).rev().collect() }
    }

    /// From the 1-based image list `[sigma(1), ..., sigma(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation { n });
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Permutation { images: out })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `sigma(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// The 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// The matrix `B` with `b_{sigma(i),sigma(j)} = c_{i,j}`.
    pub fn conjugate(&self, c: &BottMatrix) -> GeneralBottMatrix {
        assert_eq!(self.len(), c.dim(), "permutation and matrix sizes differ");
        let mut rows = vec![0u32; c.dim()];
        for (i, &row) in c.rows.iter().enumerate() {
            for j in bits(row) {
                rows[self.images[i]] |= 1 << self.images[j];
            }
        }
        GeneralBottMatrix { rows }
    }
}

fn check_pair(j: usize, k: usize, n: usize) -> Result<(usize, usize)> {
    let j0 = check_index("row", j, n)?;
    let k0 = check_index("row", k, n)?;
    if j0 >= k0 {
        return Err(Error::IndexOutOfRange { what: "pair (need j < k) row", index: j, max: k.saturating_sub(1) });
    }
    Ok((j0, k0))
}

fn column_of(rows: &[u32], j0: usize) -> u32 {
    rows.iter()
        .enumerate()
        .filter(|(_, &r)| r >> j0 & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn grid_to_rows<R: AsRef<[u8]>>(grid: &[R]) -> Result<Vec<u32>> {
    let n = grid.len();
    check_dim(n)?;
    grid.iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NonSquare { row: i + 1, found: row.len(), expected: n });
            }
            row.iter().enumerate().try_fold(0u32, |acc, (j, &v)| match v {
                0 => Ok(acc),
                1 => Ok(acc | 1 << j),
                other => Err(Error::NonBinary { row: i + 1, col: j + 1, token: other.to_string() }),
            })
        })
        .collect()
}

fn rows_to_grid(rows: &[u32]) -> Vec<Vec<u8>> {
    let n = rows.len();
    rows.iter().map(|&r| (0..n).map(|j| (r >> j & 1) as u8).collect()).collect()
}

fn rows_to_text(rows: &[u32]) -> String {
    let mut out = String::new();
    for row in rows_to_grid(rows) {
        let line: Vec<&str> = row.iter().map(|&v| if v == 1 { "1" } else { "0" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn rows_to_inline(rows: &[u32]) -> String {
    rows_to_grid(rows)
        .iter()
        .map(|row| row.iter().map(|&v| if v == 1 { '1' } else { '0' }).collect::<String>())
        .collect::<Vec<_>>()
        .join(";")
}

/// Kahn's algorithm with a min-heap, so ties go to the smallest index.
/// Returns the 0-based vertex order, or the vertices of a directed cycle.
pub(crate) fn topological_order(rows: &[u32]) -> Result<Vec<usize>> {
    let n = rows.len();
    let mut indegree = vec![0usize; n];
    for &row in rows {
        for j in bits(row) {
            indegree[j] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for w in bits(rows[v]) {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every leftover vertex has a leftover predecessor; walk backwards
    // until a vertex repeats.
    let leftover: Vec<bool> = (0..n).map(|v| indegree[v] > 0).collect();
    let start = (0..n).find(|&v| leftover[v]).expect("some vertex remains");
    let mut path = vec![start];
    let mut pos = vec![usize::MAX; n];
    pos[start] = 0;
    let mut v = start;
    loop {
        let pred = (0..n)
            .find(|&u| leftover[u] && rows[u] >> v & 1 == 1)
            .expect("leftover vertex has a leftover predecessor");
        if pos[pred] != usize::MAX {
            let mut cycle: Vec<usize> = path[pos[pred]..].iter().map(|x| x + 1).collect();
            // path was built backwards along edges
            cycle.reverse();
            return Err(Error::CyclicDigraph { cycle });
        }
        pos[pred] = path.len();
        path.push(pred);
        v = pred;
    }
}
