//! Load a problem file and print the report in both formats.
//!
//! ```text
//! cargo run --example custom_problem -- crates/core/examples/problems/spin7_g2.toml
//! ```

use ratvis::cli::{parse_problem, report_text};
use ratvis::visibility::visible_degrees;

fn main() -> ratvis::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/problems/g2_u2.toml").to_string());
    let src = std::fs::read_to_string(&path).map_err(|e| ratvis::Error::Validation(format!("{path}: {e}")))?;
    let problem = parse_problem(&path, &src)?;
    let report = visible_degrees(&problem)?;
    print!("{}", report_text(&report));
    println!("{}", serde_json::to_string_pretty(&report.degrees).expect("serializable"));
    Ok(())
}
