//! Plain-text renderings for the command line.

use std::fmt::Write as _;

use crate::calculus::{InferenceReport, RingPresentationReport};
use crate::coefficients::CoefficientRing;
use crate::graded_algebra::{all_pairing_invariants, GradedModule};

use super::catalog::CatalogReport;

fn cell(m: &GradedModule, k: usize) -> String {
    let p = m.piece(k);
    let mut s = p.free_rank.to_string();
    for t in &p.torsion {
        s.push_str(&format!("+Z/{t}"));
    }
    s
}

/// One row per ring, one column per degree.
pub fn homology_table(rows: &[(CoefficientRing, GradedModule)]) -> String {
    let top = rows.iter().map(|(_, m)| m.max_degree()).max().unwrap_or(0);
    let mut s = format!("{:<6}", "ring");
    for k in 0..=top {
        let _ = write!(s, " {:>6}", format!("H_{k}"));
    }
    s.push('\n');
    for (r, m) in rows {
        let _ = write!(s, "{:<6}", r.to_string());
        for k in 0..=top {
            let _ = write!(s, " {:>6}", cell(m, k));
        }
        s.push('\n');
    }
    s
}

pub fn ring_report(rep: &RingPresentationReport) -> String {
    let r = &rep.ring;
    let mut s = format!("coefficients {}, top degree {}\n", r.ring(), r.top_degree());
    s.push_str("basis:\n");
    for e in r.basis() {
        let _ = writeln!(s, "  {:<10} degree {}", e.id, e.degree);
    }
    let table = r.table();
    s.push_str("products:\n");
    if table.is_empty() {
        s.push_str("  (all positive-degree products vanish)\n");
    }
    for p in table {
        let terms: Vec<String> = p.result.iter().map(|(id, c)| format!("{c} {id}")).collect();
        let _ = writeln!(s, "  {} * {} = {}", p.left, p.right, terms.join(" + "));
    }
    s.push_str("pairings:\n");
    for inv in all_pairing_invariants(r) {
        if inv.rank == 0 {
            continue;
        }
        let d: Vec<String> = inv.divisors.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(
            s,
            "  ({},{}) rank {} divisors [{}]",
            inv.p,
            inv.q,
            inv.rank,
            d.join(",")
        );
    }
    s
}

pub fn inference_report(rep: &InferenceReport) -> String {
    let mut s = format!(
        "m = {}, n = {}, qualifies: {}\n",
        rep.m,
        rep.n,
        if rep.qualifies { "yes" } else { "no" }
    );
    let _ = writeln!(s, "isomorphisms in degrees j <= {}", rep.iso_range);
    let _ = writeln!(s, "truncated cohomology: {}", rep.truncated);
    let _ = writeln!(s, "rank of Reeb space homology: {}", rep.rank_w);
    if let Some(m) = rep.rank_m {
        let _ = writeln!(s, "rank of source homology: {m}");
    }
    for a in &rep.assumptions {
        let _ = writeln!(s, "assumption: {a}");
    }
    for st in &rep.statements {
        let _ = writeln!(s, "  {st}");
    }
    s
}

pub fn catalog_table(rep: &CatalogReport) -> String {
    let mut s = format!(
        "{:<24} {:>2} {:<5} {:<11} {:>8}\n",
        "instance", "n", "tier", "verdict", "ms"
    );
    for r in &rep.results {
        let tier = r.report.rings.iter().map(|v| v.tier).max().unwrap_or(1);
        let _ = writeln!(
            s,
            "{:<24} {:>2} {:<5} {:<11} {:>8}",
            r.name,
            r.report.descriptor.n,
            tier,
            if r.report.all_match {
                "match"
            } else {
                "MISMATCH"
            },
            r.report.elapsed_ms
        );
        if !r.report.all_match {
            for v in &r.report.rings {
                for w in &v.witnesses {
                    let _ = writeln!(
                        s,
                        "    ! {} {}: expected {}, got {}",
                        v.ring, w.check, w.expected, w.got
                    );
                }
            }
        }
    }
    let _ = writeln!(
        s,
        "{} instances, seed {}, {} ms: {}",
        rep.results.len(),
        rep.seed,
        rep.elapsed_ms,
        if rep.all_match {
            "all match"
        } else {
            "MISMATCH"
        }
    );
    s
}
