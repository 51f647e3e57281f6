//! Decide orientability and spin for a few matrices and show the witnesses.
//!
//!     cargo run --example check_spin -- "0110;0011;0000;0000"

use realbott::criteria::is_spin;
use realbott::parse::{parse_inline, ParsedMatrix};
use realbott::criteria::is_spin_general;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec!["0110;0011;0000;0000".to_string(), "00101;00110;00011;00000;00000".to_string(), "011;000;000".to_string()]
    } else {
        args
    };
    for s in inputs {
        let verdict = match parse_inline(&s) {
            Ok(ParsedMatrix::Bott(c)) => is_spin(&c),
            Ok(ParsedMatrix::General(b)) => is_spin_general(&b),
            Err(e) => {
                eprintln!("{s}: {e}");
                std::process::exit(2);
            }
        };
        println!("{s}: {verdict}");
    }
}
