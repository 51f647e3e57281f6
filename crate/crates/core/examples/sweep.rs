//! Cross-check every criterion over all n x n Bott matrices, then over a
//! random sample of larger ones.
//!
//!     cargo run --release --example sweep -- 6

use realbott::enumeration::{sweep, Limits, Mode};

fn main() {
    let n: usize = std::env::args().nth(1).map_or(5, |s| s.parse().expect("n"));
    let limits = Limits::from_env();
    let report = sweep(n, Mode::Exhaustive, 0, limits).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2);
    });
    print!("{report}");
    let sampled = sweep(n + 2, Mode::Sample { count: 2000, seed: 7 }, 0, limits).unwrap();
    print!("{sampled}");
    print!("{}", realbott::SweepReport::CSV_HEADER);
    println!();
    print!("{}", report.to_csv().lines().last().unwrap_or_default());
    println!();
    if !(report.is_clean() && sampled.is_clean()) {
        std::process::exit(1);
    }
}
