//! Read matrices in the text, inline and JSON formats and convert between them.

use realbott::parse::{parse_matrix, to_json};

fn main() {
    let text = "# a four-step example\n0 1 1 0\n0 0 1 1\n0 0 0 0\n0 0 0 0\n";
    let m = parse_matrix(text).unwrap();
    let grid = m.to_general().to_grid();
    let json = to_json(&grid);
    println!("{json}");
    let back = parse_matrix(&json).unwrap();
    assert_eq!(back.to_text(), m.to_text());
    match parse_matrix("0 1\n1 0\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
