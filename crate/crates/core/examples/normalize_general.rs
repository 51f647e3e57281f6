//! Reorder a general Bott matrix (acyclic, zero diagonal) into strictly
//! upper-triangular form and compare the spin verdicts before and after.

use realbott::criteria::{is_spin, is_spin_general};
use realbott::{BottMatrix, GeneralBottMatrix, Permutation};

fn main() {
    let c = BottMatrix::from_entries(4, &[(1, 2), (1, 3), (2, 3), (2, 4)]).unwrap();
    let sigma = Permutation::from_images(&[3, 1, 4, 2]).unwrap();
    let b: GeneralBottMatrix = sigma.conjugate(&c);
    println!("B =\n{}", b.to_text());
    let (tau, c2) = b.normalize();
    println!("topological order {:?} gives\n{}", tau.images(), c2.to_text());
    let before = is_spin_general(&b);
    let after = is_spin(&c2);
    println!("general criterion: {before}");
    println!("after normalizing: {after}");
    assert_eq!(before.spin, after.spin);
}
