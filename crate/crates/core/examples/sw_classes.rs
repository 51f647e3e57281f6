//! Expand the total Stiefel-Whitney class in the cohomology ring and list
//! the Stiefel-Whitney numbers.

use realbott::cohomology::total_sw_class;
use realbott::BottMatrix;

fn main() {
    let c = BottMatrix::from_entries(4, &[(1, 2), (1, 4), (2, 3), (2, 4)]).unwrap();
    println!("C =\n{c}");
    let profile = total_sw_class(&c);
    for (k, w) in profile.classes().iter().enumerate() {
        println!("w{k} = {w}");
    }
    println!("orientable={} spin={:?}", profile.orientable(), profile.spin());
    for (p, value) in profile.sw_numbers() {
        println!("<{p}, mu> = {}", u8::from(*value));
    }
    // Real Bott manifolds bound, so every number above is zero.
    assert!(profile.sw_numbers_all_zero());
}
