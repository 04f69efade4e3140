//! Runs the smoke-sized property suites and prints their summary.

use halfspace::verify::{run_verify, Scope, Size, Suite};

fn main() {
    let report = run_verify(&Suite::ALL, &Scope::new(Size::Smoke));
    print!("{}", report.to_text());
    if !report.passed {
        std::process::exit(1);
    }
}
