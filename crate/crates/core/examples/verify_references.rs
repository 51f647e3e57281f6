//! Run the checks against the published reference matrices.

use realbott::reference::verify_representatives;

fn main() {
    let report = verify_representatives();
    print!("{report}");
    if !report.all_passed() {
        std::process::exit(1);
    }
}
