//! Work directly in H*(Y_n; Z/2): square relations, products and graded ranks.

use realbott::cohomology::{CohomologyRing, ReductionOrder};
use realbott::BottMatrix;

fn main() {
    let c = BottMatrix::from_entries(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
    let ring = CohomologyRing::new(&c);
    for i in 1..=3 {
        println!("y{i}^2 = {}", ring.reduce_square(i).unwrap());
    }
    let y = |i| ring.generator(i).unwrap();
    let sum = y(1) + y(2);
    let a = ring.multiply(&sum, &y(3)).unwrap();
    let b = ring.multiply_with(&sum, &y(3), ReductionOrder::LowestFirst).unwrap();
    println!("(y1 + y2) * y3 = {a}");
    assert_eq!(a, b);
    println!("(y1 + y2 + y3)^3 = {}", ring.power(&(sum + y(3)), 3).unwrap());
    let dims: Vec<usize> = (0..=3).map(|k| ring.graded_dimension(k)).collect();
    println!("graded dimensions: {dims:?}");
}
