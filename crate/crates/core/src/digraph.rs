//! The acyclic digraph `D_C` whose adjacency matrix is the Bott matrix, and
//! the spin criterion read off its degrees.
//!
//! For vertices `u_1, ..., u_n`, `N_i` is the out-degree of `u_i`, `I_i` its
//! in-degree and `M_jk = |N+(u_j) & N+(u_k)|` the number of common out-neighbours.
//! `Y_n(C)` is spin iff every `N_k` is even and `M_jk` has the parity of
//! `c_{j,k} * binomial(N_k, 2)` for all `j < k`.

use std::fmt::Write as _;

use crate::criteria::{PairTerms, SpinVerdict};
use crate::error::{Error, Result};
use crate::matrix::{bits, BottMatrix, GeneralBottMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottDigraph {
    out: Vec<u32>,
    inn: Vec<u32>,
}

impl BottDigraph {
    /// Digraph of an arbitrary adjacency matrix; fails on a directed cycle or
    /// a loop.
    pub fn from_adjacency(rows: Vec<u32>) -> Result<Self> {
        let b = GeneralBottMatrix::from_rows(rows)?;
        Ok(Self::from(&b))
    }

    fn from_rows(out: &[u32]) -> Self {
        let n = out.len();
        let mut inn = vec![0u32; n];
        for (i, &row) in out.iter().enumerate() {
            for j in bits(row) {
                inn[j] |= 1 << i;
            }
        }
        BottDigraph { out: out.to_vec(), inn }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    /// `N+(u_i)` as 1-based vertex numbers.
    pub fn out_neighbours(&self, i: usize) -> Vec<usize> {
        bits(self.out[i - 1]).map(|v| v + 1).collect()
    }

    /// `N-(u_i)` as 1-based vertex numbers.
    pub fn in_neighbours(&self, i: usize) -> Vec<usize> {
        bits(self.inn[i - 1]).map(|v| v + 1).collect()
    }

    /// `N_i`.
    pub fn out_degree(&self, i: usize) -> usize {
        self.out[i - 1].count_ones() as usize
    }

    /// `I_i`.
    pub fn in_degree(&self, i: usize) -> usize {
        self.inn[i - 1].count_ones() as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.out[i - 1] >> (j - 1) & 1 == 1
    }

    /// Edges `(i, j)` in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| bits(row).map(move |j| (i + 1, j + 1)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// `M_jk`.
    pub fn common_out(&self, j: usize, k: usize) -> Result<usize> {
        self.check_pair(j, k)?;
        Ok((self.out[j - 1] & self.out[k - 1]).count_ones() as usize)
    }

    /// `c_{j,k} * binomial(N_k, 2)` as an integer, with the mirrored term
    /// `c_{k,j} * binomial(N_j, 2)` added so the value does not depend on the
    /// vertex ordering. For `D_C` the mirrored term is always zero.
    pub fn binomial_term(&self, j: usize, k: usize) -> Result<usize> {
        self.check_pair(j, k)?;
        let choose2 = |m: usize| m * m.saturating_sub(1) / 2;
        let forward = usize::from(self.has_edge(j, k)) * choose2(self.out_degree(k));
        let backward = usize::from(self.has_edge(k, j)) * choose2(self.out_degree(j));
        Ok(forward + backward)
    }

    fn check_pair(&self, j: usize, k: usize) -> Result<()> {
        let n = self.vertex_count();
        if j == 0 || k > n || j >= k {
            return Err(Error::IndexOutOfRange { what: "vertex pair (need j < k) vertex", index: j, max: n });
        }
        Ok(())
    }

    /// Pairs `j < k` where `M_jk` and the binomial term differ in parity.
    pub fn failing_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for j in 1..=n {
            for k in j + 1..=n {
                let m = self.common_out(j, k).expect("valid pair");
                let b = self.binomial_term(j, k).expect("valid pair");
                if m % 2 != b % 2 {
                    out.push((j, k));
                }
            }
        }
        out
    }
}

impl From<&BottMatrix> for BottDigraph {
    fn from(c: &BottMatrix) -> Self {
        Self::from_rows(c.rows())
    }
}

impl From<&GeneralBottMatrix> for BottDigraph {
    fn from(b: &GeneralBottMatrix) -> Self {
        Self::from_rows(b.rows())
    }
}

pub fn build_digraph(c: &BottMatrix) -> BottDigraph {
    BottDigraph::from(c)
}

pub fn common_out(d: &BottDigraph, j: usize, k: usize) -> Result<usize> {
    d.common_out(j, k)
}

/// Spin from out-degrees and common out-neighbour counts. The pair witness
/// reports `M_jk mod 2` as `P` and the binomial term mod 2 as `Q`.
pub fn digraph_spin(d: &BottDigraph) -> SpinVerdict {
    let n = d.vertex_count();
    let row_witness = (1..=n).find(|&k| d.out_degree(k) % 2 == 1);
    let pair_witness = (1..=n)
        .flat_map(|j| (j + 1..=n).map(move |k| (j, k)))
        .map(|(j, k)| {
            let m = d.common_out(j, k).expect("valid pair");
            let b = d.binomial_term(j, k).expect("valid pair");
            (j, k, PairTerms { p: (m % 2) as u8, q: (b % 2) as u8 })
        })
        .find(|(_, _, t)| !t.holds());
    let orientable = row_witness.is_none();
    SpinVerdict { orientable, spin: orientable && pair_witness.is_none(), row_witness, pair_witness }
}

/// Graphviz DOT, byte-stable: nodes `u1..un`, then one edge line per
/// adjacency bit in row-major order.
///
/// With a verdict, the graph is labelled `orientable=<bool> spin=<bool>`,
/// vertices of odd out-degree are drawn red and every failing pair gets a
/// dashed red undirected annotation edge labelled with `M` and the binomial term.
pub fn export_dot(d: &BottDigraph, verdict: Option<&SpinVerdict>) -> String {
    let n = d.vertex_count();
    let mut out = String::from("digraph {\n");
    if let Some(v) = verdict {
        writeln!(out, "  label=\"orientable={} spin={}\";", v.orientable, v.spin).unwrap();
    }
    for i in 1..=n {
        if verdict.is_some() && d.out_degree(i) % 2 == 1 {
            writeln!(out, "  u{i} [color=red];").unwrap();
        } else {
            writeln!(out, "  u{i};").unwrap();
        }
    }
    for (i, j) in d.edges() {
        writeln!(out, "  u{i} -> u{j};").unwrap();
    }
    if let Some(v) = verdict {
        if !v.spin {
            for (j, k) in d.failing_pairs() {
                let m = d.common_out(j, k).expect("valid pair");
                let b = d.binomial_term(j, k).expect("valid pair");
                writeln!(
                    out,
                    "  u{j} -> u{k} [style=dashed, color=red, dir=none, constraint=false, label=\"M={m} binom={b}\"];"
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&str]) -> BottMatrix {
        let g: Vec<Vec<u8>> =
            rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
        BottMatrix::from_grid(&g).unwrap()
    }

    fn c1() -> BottMatrix {
        grid(&["000000", "000011", "000011", "000011", "000000", "000000"])
    }

    #[test]
    fn edgeless() {
        let d = build_digraph(&BottMatrix::zero(2).unwrap());
        assert_eq!(d.edge_count(), 0);
        assert_eq!(export_dot(&d, None), "digraph {\n  u1;\n  u2;\n}\n");
        assert_eq!(common_out(&d, 1, 2).unwrap(), 0);
    }

    #[test]
    fn c1_neighbourhoods() {
        let d = build_digraph(&c1());
        for i in 2..=4 {
            assert_eq!(d.out_neighbours(i), vec![5, 6]);
        }
        for i in [1, 5, 6] {
            assert!(d.out_neighbours(i).is_empty());
        }
        assert_eq!(d.in_neighbours(5), vec![2, 3, 4]);
        assert_eq!(d.in_degree(6), 3);
        assert_eq!(common_out(&d, 2, 3).unwrap(), 2);
        assert!(digraph_spin(&d).spin);
        assert_eq!(d.edges().count(), 6);
    }

    #[test]
    fn pair_range_checked() {
        let d = build_digraph(&c1());
        assert!(d.common_out(3, 3).is_err());
        assert!(d.common_out(0, 1).is_err());
        assert!(d.common_out(5, 7).is_err());
    }

    #[test]
    fn cyclic_adjacency_rejected() {
        assert!(matches!(
            BottDigraph::from_adjacency(vec![0b10, 0b01]),
            Err(Error::CyclicDigraph { .. })
        ));
    }

    #[test]
    fn dot_with_verdict() {
        let c3 = grid(&["00101", "00110", "00011", "00000", "00000"]);
        let d = build_digraph(&c3);
        let v = digraph_spin(&d);
        let dot = export_dot(&d, Some(&v));
        assert!(dot.contains("label=\"orientable=true spin=false\""));
        assert!(dot.contains("u1 -> u2 [style=dashed, color=red"));
        assert_eq!(dot, export_dot(&d, Some(&v)));
    }
}
