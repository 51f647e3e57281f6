//! Closed-form orientability and spin criteria on the Bott numbers.
//!
//! `Y_n(C)` is orientable iff every row of `C` has even sum, and spin iff in
//! addition, for every `j < k`,
//!
//! ```text
//! P_jk + Q_jk = sum_r c_{j,r} c_{k,r} + c_{j,k} * sum_{r<s} c_{k,r} c_{k,s}  = 0  (mod 2).
//! ```

use std::fmt;

use serde::Serialize;

use crate::cohomology::{Monomial, RingElement};
use crate::error::{Error, Result};
use crate::matrix::{low_mask, BottMatrix, GeneralBottMatrix};

/// The two mod 2 terms of the pair condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairTerms {
    pub p: u8,
    pub q: u8,
}

impl PairTerms {
    pub fn sum(self) -> u8 {
        (self.p + self.q) % 2
    }

    /// The pair condition `P + Q = 0 mod 2`.
    pub fn holds(self) -> bool {
        self.sum() == 0
    }
}

/// A certificate for a negative verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Row `i` has odd sum.
    Row { i: usize },
    /// Pair `(j, k)` violates the pair condition.
    Pair { j: usize, k: usize, terms: PairTerms },
}

/// Outcome of a spin check.
///
/// `spin` implies `orientable`. A non-orientable verdict still records the
/// first failing pair for diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinVerdict {
    pub orientable: bool,
    pub spin: bool,
    /// First row (1-based) with odd sum.
    pub row_witness: Option<usize>,
    /// First pair `j < k` (lexicographic) violating the pair condition.
    pub pair_witness: Option<(usize, usize, PairTerms)>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WitnessJson {
    Row {
        i: usize,
    },
    Pair {
        j: usize,
        k: usize,
        #[serde(rename = "P")]
        p: u8,
        #[serde(rename = "Q")]
        q: u8,
    },
}

#[derive(Serialize)]
struct VerdictJson {
    orientable: bool,
    spin: bool,
    witness: Option<WitnessJson>,
}

impl SpinVerdict {
    fn from_scan(row_witness: Option<usize>, pair_witness: Option<(usize, usize, PairTerms)>) -> Self {
        let orientable = row_witness.is_none();
        SpinVerdict { orientable, spin: orientable && pair_witness.is_none(), row_witness, pair_witness }
    }

    /// The witness explaining a negative verdict: the odd row when not
    /// orientable, otherwise the failing pair.
    pub fn witness(&self) -> Option<Witness> {
        if let Some(i) = self.row_witness {
            return Some(Witness::Row { i });
        }
        self.pair_witness.map(|(j, k, terms)| Witness::Pair { j, k, terms })
    }

    /// `{"orientable": bool, "spin": bool, "witness": {...} | null}`.
    pub fn to_json(&self) -> serde_json::Value {
        let witness = self.witness().map(|w| match w {
            Witness::Row { i } => WitnessJson::Row { i },
            Witness::Pair { j, k, terms } => WitnessJson::Pair { j, k, p: terms.p, q: terms.q },
        });
        serde_json::to_value(VerdictJson { orientable: self.orientable, spin: self.spin, witness })
            .expect("plain data serializes")
    }
}

impl fmt::Display for SpinVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "orientable={} spin={}", self.orientable, self.spin)?;
        match self.witness() {
            Some(Witness::Row { i }) => write!(f, " witness row {i}"),
            Some(Witness::Pair { j, k, terms }) => {
                write!(f, " witness pair ({j},{k}) P={} Q={}", terms.p, terms.q)
            }
            None => Ok(()),
        }
    }
}

pub fn is_orientable(c: &BottMatrix) -> bool {
    c.rows().iter().all(|r| r.count_ones() % 2 == 0)
}

/// `P_jk` and `Q_jk` for `1 <= j < k <= n`.
pub fn pair_terms(c: &BottMatrix, j: usize, k: usize) -> Result<PairTerms> {
    let n = c.dim();
    if j == 0 || k > n || j >= k {
        return Err(Error::IndexOutOfRange { what: "pair (need 1 <= j < k <= n) row", index: j, max: n });
    }
    Ok(pair_terms_unchecked(c.rows(), j - 1, k - 1))
}

// 0-based j < k
fn pair_terms_unchecked(rows: &[u32], j: usize, k: usize) -> PairTerms {
    let n = rows.len();
    let entry = |i: usize, r: usize| rows[i] >> r & 1;
    let p = (0..n).map(|r| entry(j, r) * entry(k, r)).sum::<u32>() % 2;
    let mut pairs = 0u32;
    for r in 0..n {
        for s in r + 1..n {
            pairs += entry(k, r) * entry(k, s);
        }
    }
    let q = entry(j, k) * pairs % 2;
    PairTerms { p: p as u8, q: q as u8 }
}

/// Orientability plus the pair condition over all `j < k`.
pub fn is_spin(c: &BottMatrix) -> SpinVerdict {
    let rows = c.rows();
    let n = rows.len();
    let row_witness = (0..n).find(|&i| rows[i].count_ones() % 2 == 1).map(|i| i + 1);
    let pair_witness = (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .map(|(j, k)| (j, k, pair_terms_unchecked(rows, j, k)))
        .find(|(_, _, t)| !t.holds())
        .map(|(j, k, t)| (j + 1, k + 1, t));
    SpinVerdict::from_scan(row_witness, pair_witness)
}

/// Pair terms for a general Bott matrix. `Q` is symmetrised,
/// `b_{j,k} S_k + b_{k,j} S_j` with `S_i = sum_{r<s} b_{i,r} b_{i,s}`, so that
/// the condition is invariant under conjugation by permutations. At most one
/// of `b_{j,k}`, `b_{k,j}` is nonzero, and on an upper triangular matrix this
/// is exactly [`pair_terms`].
pub fn general_pair_terms(b: &GeneralBottMatrix, j: usize, k: usize) -> Result<PairTerms> {
    let n = b.dim();
    if j == 0 || k > n || j >= k {
        return Err(Error::IndexOutOfRange { what: "pair (need 1 <= j < k <= n) row", index: j, max: n });
    }
    Ok(general_pair_terms_unchecked(b.rows(), j - 1, k - 1))
}

fn general_pair_terms_unchecked(rows: &[u32], j: usize, k: usize) -> PairTerms {
    let n = rows.len();
    let entry = |i: usize, r: usize| rows[i] >> r & 1;
    let out_pairs = |i: usize| {
        let mut acc = 0u32;
        for r in 0..n {
            for s in r + 1..n {
                acc += entry(i, r) * entry(i, s);
            }
        }
        acc
    };
    let p = (0..n).map(|r| entry(j, r) * entry(k, r)).sum::<u32>() % 2;
    let q = (entry(j, k) * out_pairs(k) + entry(k, j) * out_pairs(j)) % 2;
    PairTerms { p: p as u8, q: q as u8 }
}

/// The spin criterion evaluated directly on `B`, without normalizing.
pub fn is_spin_general(b: &GeneralBottMatrix) -> SpinVerdict {
    let rows = b.rows();
    let n = rows.len();
    let row_witness = (0..n).find(|&i| rows[i].count_ones() % 2 == 1).map(|i| i + 1);
    let pair_witness = (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .map(|(j, k)| (j, k, general_pair_terms_unchecked(rows, j, k)))
        .find(|(_, _, t)| !t.holds())
        .map(|(j, k, t)| (j + 1, k + 1, t));
    SpinVerdict::from_scan(row_witness, pair_witness)
}

/// `C` is spin iff every two-row matrix `C_jk` is spin.
pub fn spin_by_pairs(c: &BottMatrix) -> bool {
    let n = c.dim();
    if n == 1 {
        return is_spin(c).spin;
    }
    (1..=n).all(|j| {
        (j + 1..=n).all(|k| is_spin(&c.row_pair_matrix(j, k).expect("j < k <= n")).spin)
    })
}

/// Same reduction for general Bott matrices, using `B_jk`.
pub fn spin_by_pairs_general(b: &GeneralBottMatrix) -> bool {
    let n = b.dim();
    if n == 1 {
        return is_spin_general(b).spin;
    }
    (1..=n).all(|j| {
        (j + 1..=n).all(|k| is_spin_general(&b.row_pair_matrix(j, k).expect("j < k <= n")).spin)
    })
}

/// `w_{n-1} = c_{1,2} c_{2,3} ... c_{n-1,n} * y_1 ... y_{n-1}`.
pub fn w_top_minus_one(c: &BottMatrix) -> Result<RingElement> {
    let n = c.dim();
    if n < 2 {
        return Err(Error::IndexOutOfRange { what: "dimension (need n >= 2)", index: n, max: crate::MAX_DIM });
    }
    let chain = (1..n).all(|i| c.entry(i, i + 1));
    Ok(if chain {
        Monomial::from_mask(low_mask(n - 1)).into()
    } else {
        RingElement::zero()
    })
}

/// Verdicts for the fibres `C^0 = C, C^1, ..., C^{n-2}` of the tower of
/// circle bundles obtained by peeling off the first coordinate.
pub fn fibre_chain_verdicts(c: &BottMatrix) -> Vec<SpinVerdict> {
    (0..=c.dim().saturating_sub(2))
        .map(|k| is_spin(&c.delete_leading(k).expect("k < n")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Permutation;

    fn grid(rows: &[&str]) -> BottMatrix {
        let g: Vec<Vec<u8>> =
            rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
        BottMatrix::from_grid(&g).unwrap()
    }

    fn family(n: usize) -> BottMatrix {
        BottMatrix::from_entries(n, &[(1, 2), (1, n - 2), (n - 2, n - 1), (n - 2, n)]).unwrap()
    }

    #[test]
    fn klein_bottle_not_orientable() {
        let c = grid(&["01", "00"]);
        assert!(!is_orientable(&c));
        let v = is_spin(&c);
        assert_eq!(v.witness(), Some(Witness::Row { i: 1 }));
        assert!(!v.spin);
        assert_eq!(v.to_string(), "orientable=false spin=false witness row 1");
        assert_eq!(fibre_chain_verdicts(&c), vec![v]);
    }

    #[test]
    fn family_fails_at_one_n_minus_two() {
        let c = family(5);
        let t = pair_terms(&c, 1, 3).unwrap();
        assert_eq!(t.sum(), 1);
        let v = is_spin(&c);
        assert!(v.orientable && !v.spin);
        assert_eq!(v.pair_witness.map(|(j, k, _)| (j, k)), Some((1, 3)));
    }

    #[test]
    fn zero_pairs() {
        let z = BottMatrix::zero(5).unwrap();
        for j in 1..5 {
            for k in j + 1..=5 {
                assert_eq!(pair_terms(&z, j, k).unwrap(), PairTerms { p: 0, q: 0 });
            }
        }
        assert!(pair_terms(&z, 3, 3).is_err());
        assert!(pair_terms(&z, 4, 6).is_err());
        assert!(spin_by_pairs(&z));
        assert!(fibre_chain_verdicts(&z).iter().all(|v| v.spin));
    }

    #[test]
    fn c2_first_pair() {
        let c2 = grid(&["011110", "001001", "000011", "000000", "000000", "000000"]);
        assert_eq!(pair_terms(&c2, 1, 2).unwrap(), PairTerms { p: 1, q: 1 });
    }

    #[test]
    fn top_minus_one() {
        let c = grid(&["010", "001", "000"]);
        assert_eq!(w_top_minus_one(&c).unwrap(), Monomial::from_indices(&[1, 2]).into());
        assert!(w_top_minus_one(&BottMatrix::zero(4).unwrap()).unwrap().is_zero());
        assert!(w_top_minus_one(&BottMatrix::zero(1).unwrap()).is_err());
    }

    #[test]
    fn json_witnesses() {
        let v = is_spin(&grid(&["00101", "00110", "00011", "00000", "00000"]));
        assert_eq!(
            v.to_json(),
            serde_json::json!({"orientable": true, "spin": false,
                "witness": {"kind": "pair", "j": 1, "k": 2, "P": 1, "Q": 0}})
        );
        let v = is_spin(&grid(&["01", "00"]));
        assert_eq!(
            v.to_json(),
            serde_json::json!({"orientable": false, "spin": false, "witness": {"kind": "row", "i": 1}})
        );
        let v = is_spin(&BottMatrix::zero(3).unwrap());
        assert_eq!(v.to_json(), serde_json::json!({"orientable": true, "spin": true, "witness": null}));
    }

    // Restricting the Q term to b_{j,k} with j < k, as one would read the
    // criterion off the upper triangular case, breaks under conjugation.
    #[test]
    fn one_sided_q_is_not_conjugation_invariant() {
        let c = grid(&["0110", "0011", "0000", "0000"]);
        assert!(is_spin(&c).spin);
        let b = Permutation::reversal(4).conjugate(&c);
        let rows = b.rows();
        let entry = |i: usize, r: usize| rows[i] >> r & 1;
        let one_sided_fails = (0..4).any(|j| {
            (j + 1..4).any(|k| {
                let p: u32 = (0..4).map(|r| entry(j, r) * entry(k, r)).sum();
                let s: u32 = (0..4).flat_map(|r| (r + 1..4).map(move |t| (r, t)))
                    .map(|(r, t)| entry(k, r) * entry(k, t))
                    .sum();
                (p + entry(j, k) * s) % 2 == 1
            })
        });
        assert!(one_sided_fails);
        assert!(is_spin_general(&b).spin);
    }

    #[test]
    fn reversal_conjugate_of_spin_matrix_is_spin() {
        let c = grid(&["0101", "0011", "0000", "0000"]);
        let b = Permutation::reversal(4).conjugate(&c);
        assert!(b.as_bott().is_none());
        assert_eq!(is_spin_general(&b).spin, is_spin(&c).spin);
        assert!(is_spin_general(&b).spin);
    }
}
