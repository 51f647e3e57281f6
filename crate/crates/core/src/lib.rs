//! Orientability, spin structures and Stiefel-Whitney classes of real Bott
//! manifolds, computed from their Bott matrices.
//!
//! A real Bott manifold `Y_n(C)` is determined by a strictly upper
//! triangular binary matrix `C`. This crate offers three independent ways to
//! decide whether it is spin:
//!
//! * [`criteria`]: closed-form parity conditions on the entries of `C`;
//! * [`digraph`]: the same conditions phrased through out-degrees and common
//!   out-neighbours of the acyclic digraph with adjacency matrix `C`;
//! * [`cohomology`]: brute-force expansion of the total Stiefel-Whitney class
//!   in `H*(Y_n; Z/2)`.
//!
//! [`enumeration`] sweeps whole families of matrices and reports any
//! disagreement between them.
//!
//! ```
//! use realbott::{BottMatrix, criteria::is_spin, cohomology::total_sw_class};
//!
//! let c = BottMatrix::from_entries(4, &[(1, 2), (1, 3), (2, 3), (2, 4)]).unwrap();
//! assert!(is_spin(&c).spin);
//! assert_eq!(total_sw_class(&c).spin(), Some(true));
//! ```

pub mod cli;
pub mod cohomology;
pub mod criteria;
pub mod digraph;
pub mod enumeration;
pub mod error;
pub mod matrix;
pub mod parse;
pub mod reference;

pub use cohomology::{CohomologyRing, Monomial, Partition, RingElement, SwProfile};
pub use criteria::{PairTerms, SpinVerdict, Witness};
pub use digraph::BottDigraph;
pub use enumeration::{Limits, Mode, SweepReport};
pub use error::{Error, Result};
pub use matrix::{BottMatrix, GeneralBottMatrix, Permutation, MAX_DIM};
pub use parse::{parse_inline, parse_matrix, ParsedMatrix};
