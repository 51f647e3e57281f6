//! The mod 2 cohomology ring of a real Bott manifold and its
//! Stiefel-Whitney classes.
//!
//! `H*(Y_n; Z/2)` is presented as `Z/2[x_1, ..., x_{2n}]` modulo
//! `x_j x_{n+j}`, `x_1 + x_{n+1}` and `x_j + x_{n+j} + sum_{i<j} c_{i,j} x_{n+i}`.
//! The relations eliminate `x_1, ..., x_n`, so we work with
//! `y_i = x_{n+i}` only. Multiplying `x_i = y_i + sum_{j<i} c_{j,i} y_j`
//! by `y_i` and using `x_i y_i = 0` gives the single rewrite rule
//!
//! ```text
//! y_i^2  ->  sum_{j<i, c_{j,i}=1} y_j y_i
//! ```
//!
//! The rule holds for `i = n` as well: `x_n x_{2n} = 0` together with
//! `x_n = x_{2n} + sum_{i<n} c_{i,n} x_{n+i}` yields the same identity with
//! coefficients from column `n`. Every element therefore has a normal form as
//! a Z/2-combination of square-free monomials in `y_1, ..., y_n`, and these
//! `2^n` monomials form a basis. The top monomial `y_1 ... y_n` pairs to 1
//! with the mod 2 fundamental class.
//!
//! This module expands products the slow, honest way and is the oracle the
//! closed-form criteria are checked against.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{bits, low_mask, BottMatrix};

/// A square-free monomial in `y_1, ..., y_n`; bit `i - 1` set iff `y_i` divides it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_mask(mask: u32) -> Self {
        Monomial(mask)
    }

    /// The generator `y_i` (1-based).
    pub fn var(i: usize) -> Self {
        assert!((1..=32).contains(&i), "variable index {i} out of range");
        Monomial(1 << (i - 1))
    }

    /// Product of the listed generators (1-based, must be distinct).
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut mask = 0;
        for &i in indices {
            let m = Monomial::var(i).0;
            assert!(mask & m == 0, "repeated index {i}");
            mask |= m;
        }
        Monomial(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// The 1-based indices of the generators, ascending.
    pub fn indices(self) -> Vec<usize> {
        bits(self.0).map(|b| b + 1).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    fn display_key(self) -> (usize, Vec<usize>) {
        (self.degree(), self.indices())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("y{i}")).collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `H*(Y_n; Z/2)` in normal form: a set of square-free
/// monomials, addition being symmetric difference.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElement {
    terms: BTreeSet<Monomial>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one() -> Self {
        RingElement::from(Monomial::ONE)
    }

    /// Sum of the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        let mut out = RingElement::zero();
        for m in monomials {
            out.toggle(m);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().copied()
    }

    /// Coefficient of `m`.
    pub fn coefficient(&self, m: Monomial) -> bool {
        self.terms.contains(&m)
    }

    /// The homogeneous part of degree `k`.
    pub fn degree_part(&self, k: usize) -> RingElement {
        RingElement { terms: self.terms.iter().copied().filter(|m| m.degree() == k).collect() }
    }

    /// `Some(k)` if every term has degree `k`; `None` for mixed degrees.
    /// The zero element is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.iter().map(|m| m.degree());
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    /// Union of the generators appearing in any term.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, m| acc | m.0)
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.insert(m) {
            self.terms.remove(&m);
        }
    }

    fn sorted_terms(&self) -> Vec<Monomial> {
        let mut terms: Vec<Monomial> = self.terms.iter().copied().collect();
        terms.sort_by_key(|m| m.display_key());
        terms
    }
}

impl From<Monomial> for RingElement {
    fn from(m: Monomial) -> Self {
        RingElement { terms: BTreeSet::from([m]) }
    }
}

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        for &m in &rhs.terms {
            self.toggle(m);
        }
    }
}

impl Add for &RingElement {
    type Output = RingElement;

    fn add(self, rhs: &RingElement) -> RingElement {
        RingElement { terms: self.terms.symmetric_difference(&rhs.terms).copied().collect() }
    }
}

impl Add for RingElement {
    type Output = RingElement;

    fn add(mut self, rhs: RingElement) -> RingElement {
        self += &rhs;
        self
    }
}

impl fmt::Display for RingElement {
    /// Terms sorted by degree then index list, joined by ` + `; zero is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.sorted_terms().iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which colliding square to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    HighestFirst,
    LowestFirst,
}

/// `H*(Y_n; Z/2)` for a fixed Bott matrix.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    matrix: BottMatrix,
    // square_rule[i]: mask of j < i with c_{j,i} = 1 (0-based)
    square_rule: Vec<u32>,
}

impl CohomologyRing {
    pub fn new(c: &BottMatrix) -> Self {
        let square_rule = (1..=c.dim()).map(|i| c.column(i)).collect();
        CohomologyRing { matrix: c.clone(), square_rule }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &BottMatrix {
        &self.matrix
    }

    /// `y_1 y_2 ... y_n`.
    pub fn top_monomial(&self) -> Monomial {
        Monomial(low_mask(self.dim()))
    }

    pub fn generator(&self, i: usize) -> Result<RingElement> {
        self.check_var(i)?;
        Ok(Monomial::var(i).into())
    }

    /// `A_t = sum_{i<t} c_{i,t} y_i`, the class with `1 + A_t = (1 + x_t)(1 + x_{n+t})`.
    pub fn twist_class(&self, t: usize) -> Result<RingElement> {
        self.check_var(t)?;
        Ok(RingElement::from_monomials(bits(self.square_rule[t - 1]).map(|j| Monomial(1 << j))))
    }

    /// The normal form of `y_i^2`.
    pub fn reduce_square(&self, i: usize) -> Result<RingElement> {
        self.check_var(i)?;
        let yi = 1u32 << (i - 1);
        Ok(RingElement::from_monomials(bits(self.square_rule[i - 1]).map(|j| Monomial(yi | 1 << j))))
    }

    /// Product in normal form, rewriting the highest colliding square first.
    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.multiply_with(a, b, ReductionOrder::HighestFirst)
    }

    pub fn multiply_with(
        &self,
        a: &RingElement,
        b: &RingElement,
        order: ReductionOrder,
    ) -> Result<RingElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = RingElement::zero();
        let mut memo = HashMap::new();
        for &ma in &a.terms {
            for &mb in &b.terms {
                if ma.0 & mb.0 == 0 {
                    out.toggle(Monomial(ma.0 | mb.0));
                } else {
                    let mut exps = exponents(ma.0, self.dim());
                    for j in bits(mb.0) {
                        exps[j] += 1;
                    }
                    out += &self.normal_form(&exps, order, &mut memo);
                }
            }
        }
        Ok(out)
    }

    /// `a^r`.
    pub fn power(&self, a: &RingElement, r: usize) -> Result<RingElement> {
        let mut acc = RingElement::one();
        for _ in 0..r {
            if acc.is_zero() {
                break;
            }
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Normal form of the monomial `prod y_i^{exps[i-1]}`.
    pub fn normalize_exponents(&self, exps: &[u8], order: ReductionOrder) -> Result<RingElement> {
        if exps.len() > self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: exps.len() });
        }
        let mut full = exps.to_vec();
        full.resize(self.dim(), 0);
        Ok(self.normal_form(&full, order, &mut HashMap::new()))
    }

    fn normal_form(
        &self,
        exps: &[u8],
        order: ReductionOrder,
        memo: &mut HashMap<Vec<u8>, RingElement>,
    ) -> RingElement {
        let colliding = exps.iter().enumerate().filter(|(_, &e)| e >= 2).map(|(i, _)| i);
        let pick = match order {
            ReductionOrder::HighestFirst => colliding.max(),
            ReductionOrder::LowestFirst => colliding.min(),
        };
        let Some(i) = pick else {
            let mask = exps.iter().enumerate().filter(|(_, &e)| e == 1).fold(0, |m, (i, _)| m | 1 << i);
            return Monomial(mask).into();
        };
        if let Some(hit) = memo.get(exps) {
            return hit.clone();
        }
        // y_i^2 -> sum_j y_j y_i: one factor y_i is traded for y_j.
        let mut out = RingElement::zero();
        for j in bits(self.square_rule[i]) {
            let mut next = exps.to_vec();
            next[i] -= 1;
            next[j] += 1;
            out += &self.normal_form(&next, order, memo);
        }
        memo.insert(exps.to_vec(), out.clone());
        out
    }

    /// The total Stiefel-Whitney class `prod_{j=2}^{n} (1 + A_j)`.
    pub fn total_class(&self) -> RingElement {
        let mut w = RingElement::one();
        for j in 2..=self.dim() {
            let mut factor = RingElement::one();
            factor += &self.twist_class(j).expect("j in range");
            w = self.multiply(&w, &factor).expect("same ring");
        }
        w
    }

    /// `w_0, ..., w_n` from the product expansion.
    pub fn sw_classes(&self) -> Vec<RingElement> {
        let w = self.total_class();
        (0..=self.dim()).map(|k| w.degree_part(k)).collect()
    }

    /// `w_1` read off the row sums, no expansion.
    pub fn w1_formula(&self) -> RingElement {
        RingElement::from_monomials(
            (1..=self.dim())
                .filter(|&i| self.matrix.row_sum(i) % 2 == 1)
                .map(Monomial::var),
        )
    }

    /// `w_k` by `w_k(Y_n) = sum_{t=1}^{n-1} w_{k-1}(Y_t) A_{t+1}`, where `Y_t`
    /// is the stage with the leading `t x t` submatrix. Every stage lives in
    /// the same ring since `A_{t+1}` only involves `y_1, ..., y_t`.
    pub fn wk_recursive(&self, k: usize) -> Result<RingElement> {
        let n = self.dim();
        if k > n {
            return Err(Error::IndexOutOfRange { what: "degree", index: k, max: n });
        }
        if k == 0 {
            return Ok(RingElement::one());
        }
        let twists: Vec<RingElement> =
            (1..=n).map(|t| self.twist_class(t).expect("t in range")).collect();
        // prev[t - 1] = w_{d-1}(Y_t)
        let mut prev = vec![RingElement::one(); n];
        for _ in 1..=k {
            let mut cur = vec![RingElement::zero(); n];
            for t in 2..=n {
                let mut acc = cur[t - 2].clone();
                acc += &self.multiply(&prev[t - 2], &twists[t - 1])?;
                cur[t - 1] = acc;
            }
            prev = cur;
        }
        Ok(prev.pop().expect("n >= 1"))
    }

    /// Rank of the span of the normal forms of all degree-`k` monomials
    /// (repeated factors allowed). Equals `binomial(n, k)` exactly when the
    /// square-free monomials of degree `k` are a basis of the degree-`k` part
    /// and the reduction never leaves that degree.
    ///
    /// Enumerates `binomial(n + k - 1, k)` monomials; meant for small `n`.
    pub fn graded_dimension(&self, k: usize) -> usize {
        let n = self.dim();
        let mut basis: HashMap<Monomial, RingElement> = HashMap::new();
        let mut rank = 0;
        let mut memo = HashMap::new();
        for_each_multiset(n, k, &mut |exps| {
            let mut v = self.normal_form(exps, ReductionOrder::HighestFirst, &mut memo);
            assert!(v.is_zero() || v.homogeneous_degree() == Some(k), "reduction changed the degree");
            while let Some(lead) = v.terms.iter().next_back().copied() {
                match basis.get(&lead) {
                    Some(row) => v += row,
                    None => {
                        basis.insert(lead, v);
                        rank += 1;
                        break;
                    }
                }
            }
        });
        rank
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim() {
            Err(Error::IndexOutOfRange { what: "variable", index: i, max: self.dim() })
        } else {
            Ok(())
        }
    }

    fn check_element(&self, a: &RingElement) -> Result<()> {
        let support = a.support();
        if support & !low_mask(self.dim()) != 0 {
            let needed = 32 - support.leading_zeros() as usize;
            return Err(Error::DimensionMismatch { left: self.dim(), right: needed });
        }
        Ok(())
    }
}

fn exponents(mask: u32, n: usize) -> Vec<u8> {
    (0..n).map(|i| (mask >> i & 1) as u8).collect()
}

fn for_each_multiset(n: usize, k: usize, f: &mut dyn FnMut(&[u8])) {
    fn go(pos: usize, left: usize, exps: &mut Vec<u8>, f: &mut dyn FnMut(&[u8])) {
        if pos + 1 == exps.len() {
            exps[pos] = left as u8;
            f(exps);
            exps[pos] = 0;
            return;
        }
        for e in 0..=left {
            exps[pos] = e as u8;
            go(pos + 1, left - e, exps, f);
        }
        exps[pos] = 0;
    }
    let mut exps = vec![0u8; n];
    go(0, k, &mut exps, f);
}

/// A Stiefel-Whitney monomial `w_1^{r_1} ... w_n^{r_n}` of total degree
/// `sum i * r_i`, stored as the multiplicities `r_1, ..., r_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// From multiplicities `[r_1, r_2, ...]`.
    pub fn new(multiplicities: Vec<usize>) -> Self {
        Partition(multiplicities)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.0
    }

    /// `sum i * r_i`.
    pub fn weight(&self) -> usize {
        self.0.iter().enumerate().map(|(i, r)| (i + 1) * r).sum()
    }

    /// All partitions of `n`, largest part first (`w_n`, then `w_{n-1} w_1`, ...).
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(left: usize, max_part: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(parts.clone());
                return;
            }
            for p in (1..=max_part.min(left)).rev() {
                parts.push(p);
                go(left - p, p, parts, out);
                parts.pop();
            }
        }
        let mut lists = Vec::new();
        go(n, n, &mut Vec::new(), &mut lists);
        lists
            .into_iter()
            .map(|parts| {
                let mut r = vec![0; n];
                for p in parts {
                    r[p - 1] += 1;
                }
                Partition(r)
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(i, &r)| if r == 1 { format!("w{}", i + 1) } else { format!("w{}^{}", i + 1, r) })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// All Stiefel-Whitney data of one real Bott manifold.
#[derive(Clone, Debug)]
pub struct SwProfile {
    ring: CohomologyRing,
    classes: Vec<RingElement>,
    orientable: bool,
    spin: Option<bool>,
    sw_numbers: Vec<(Partition, bool)>,
}

#[derive(Serialize)]
struct SwProfileJson<'a> {
    w: Vec<String>,
    orientable: bool,
    spin: Option<bool>,
    sw_numbers_all_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    sw_numbers: Option<Vec<SwNumberJson<'a>>>,
}

#[derive(Serialize)]
struct SwNumberJson<'a> {
    partition: &'a [usize],
    monomial: String,
    value: u8,
}

impl SwProfile {
    pub fn matrix(&self) -> &BottMatrix {
        self.ring.matrix()
    }

    pub fn ring(&self) -> &CohomologyRing {
        &self.ring
    }

    /// `w_0, ..., w_n`.
    pub fn classes(&self) -> &[RingElement] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &RingElement {
        &self.classes[k]
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    /// `None` when the manifold is not orientable.
    pub fn spin(&self) -> Option<bool> {
        self.spin
    }

    pub fn sw_numbers(&self) -> &[(Partition, bool)] {
        &self.sw_numbers
    }

    pub fn sw_numbers_all_zero(&self) -> bool {
        self.sw_numbers.iter().all(|(_, v)| !v)
    }

    /// `<w_1^{r_1} ... w_n^{r_n}, mu>`: the coefficient of `y_1 ... y_n`.
    pub fn sw_number(&self, partition: &Partition) -> Result<bool> {
        let n = self.ring.dim();
        let r = partition.multiplicities();
        if r.iter().skip(n).any(|&x| x > 0) || partition.weight() != n {
            return Err(Error::BadPartition { weight: partition.weight(), n });
        }
        let mut acc = RingElement::one();
        for (i, &ri) in r.iter().enumerate().take(n) {
            if ri == 0 {
                continue;
            }
            let p = self.ring.power(&self.classes[i + 1], ri)?;
            acc = self.ring.multiply(&acc, &p)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc.coefficient(self.ring.top_monomial()))
    }

    /// JSON: `{"w": [...], "orientable", "spin", "sw_numbers_all_zero"}`,
    /// plus the individual numbers when `with_numbers` is set.
    pub fn to_json(&self, with_numbers: bool) -> serde_json::Value {
        let numbers = with_numbers.then(|| {
            self.sw_numbers
                .iter()
                .map(|(p, v)| SwNumberJson {
                    partition: p.multiplicities(),
                    monomial: p.to_string(),
                    value: *v as u8,
                })
                .collect()
        });
        serde_json::to_value(SwProfileJson {
            w: self.classes.iter().map(|w| w.to_string()).collect(),
            orientable: self.orientable,
            spin: self.spin,
            sw_numbers_all_zero: self.sw_numbers_all_zero(),
            sw_numbers: numbers,
        })
        .expect("plain data serializes")
    }
}

/// Expand the total class, split it by degree and evaluate every
/// Stiefel-Whitney number.
pub fn total_sw_class(c: &BottMatrix) -> SwProfile {
    let ring = CohomologyRing::new(c);
    let classes = ring.sw_classes();
    let orientable = classes.get(1).is_none_or(RingElement::is_zero);
    let spin = orientable.then(|| classes.get(2).is_none_or(RingElement::is_zero));
    let mut profile = SwProfile { ring, classes, orientable, spin, sw_numbers: Vec::new() };
    profile.sw_numbers = Partition::all(c.dim())
        .into_iter()
        .map(|p| {
            let v = profile.sw_number(&p).expect("generated partitions have weight n");
            (p, v)
        })
        .collect();
    profile
}

/// `w_0, ..., w_n` without the Stiefel-Whitney numbers.
pub fn sw_classes(c: &BottMatrix) -> Vec<RingElement> {
    CohomologyRing::new(c).sw_classes()
}

pub fn reduce_square(c: &BottMatrix, i: usize) -> Result<RingElement> {
    CohomologyRing::new(c).reduce_square(i)
}

pub fn multiply(c: &BottMatrix, a: &RingElement, b: &RingElement) -> Result<RingElement> {
    CohomologyRing::new(c).multiply(a, b)
}

pub fn w1_formula(c: &BottMatrix) -> RingElement {
    CohomologyRing::new(c).w1_formula()
}

pub fn wk_recursive(c: &BottMatrix, k: usize) -> Result<RingElement> {
    CohomologyRing::new(c).wk_recursive(k)
}

pub fn sw_number(profile: &SwProfile, partition: &Partition) -> Result<bool> {
    profile.sw_number(partition)
}

pub fn graded_dimension(c: &BottMatrix, k: usize) -> usize {
    CohomologyRing::new(c).graded_dimension(k)
}
