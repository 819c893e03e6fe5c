//! Runs every verification suite over the standard parameter matrix and
//! prints one report line per suite:
//!
//! ```sh
//! cargo run --release -p dihedral --example suite_matrix
//! ```

use dihedral::presentation::Presentation;
use dihedral::verify::{run_suite, Suite, SuiteBounds};

fn main() {
    for (n, k) in [(4i64, 3i64), (5, 4), (6, 5), (8, 3), (8, 5), (8, 7)] {
        let p = Presentation::new(n, k).unwrap();
        for suite in Suite::all() {
            let r = run_suite(&p, suite, &SuiteBounds::default()).unwrap();
            print!("{}", r.to_text());
        }
    }
}
