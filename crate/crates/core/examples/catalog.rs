//! Run part of the built-in verification catalog.
//!
//!     cargo run --release --example catalog -- [name-prefix]

use reeb_bubble::cli::{catalog_suite, CatalogOptions};

fn main() {
    let only = std::env::args().nth(1).or_else(|| Some("fig".into()));
    let report = catalog_suite(&CatalogOptions {
        only,
        ..Default::default()
    });
    for r in &report.results {
        println!(
            "{:<18} {}",
            r.name,
            if r.report.all_match {
                "match"
            } else {
                "MISMATCH"
            }
        );
    }
    println!(
        "{} instances in {} ms",
        report.results.len(),
        report.elapsed_ms
    );
}
