//! The `halfspace report` document built in-process, printed as JSON and
//! read back.

use halfspace::report::{build_report, ReportDocument};
use halfspace::{Result, Weight};

fn main() -> Result<()> {
    let doc = build_report(2, &Weight::from(&[-2, 1, 1][..]), 2)?;
    print!("{}", doc.to_text());
    let json = doc.to_json();
    assert_eq!(ReportDocument::from_json(&json)?, doc);
    println!("\n{json}");
    Ok(())
}
