//! Recompute the visible-degree tables from the catalog.

use ratvis::cli::compare_rows;
use ratvis::visibility::catalog;

fn main() {
    let entries: Vec<_> = catalog().into_iter().filter(|e| e.table > 0).collect();
    let report = compare_rows(&entries);
    for row in &report.rows {
        println!(
            "{:<8} {:<18} expected {:<16} computed {:<16} {}",
            row.id,
            row.name,
            format!("{:?}", row.expected),
            row.computed.as_ref().map_or_else(|| "-".to_string(), |c| format!("{c:?}")),
            if row.pass { "ok" } else { "MISMATCH" }
        );
    }
    println!("{} rows, {} mismatches", report.rows.len(), report.failures);
}
