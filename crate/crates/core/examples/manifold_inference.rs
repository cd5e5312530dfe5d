//! What an S-type schedule says about the source manifold.
//!
//!     cargo run --example manifold_inference

use reeb_bubble::calculus::manifold_inference;
use reeb_bubble::coefficients::CoefficientRing;
use reeb_bubble::graded_algebra::ManifoldExpr;
use reeb_bubble::reeb_descriptor::{BubblingRecord, RecordKind, ReebDescriptor, SphereSpec};

fn main() {
    let d = ReebDescriptor::new(3)
        .with_handle(ManifoldExpr::sphere(1))
        .with_record(BubblingRecord::new(
            RecordKind::S,
            vec![SphereSpec::new(1).with(1, 1)],
        ));
    for m in [4, 6, 9] {
        let r = manifold_inference(&d, m, CoefficientRing::Integers).unwrap();
        println!(
            "m = {m}: qualifies {}, iso range j <= {}, truncated {}, rank M {:?}",
            r.qualifies, r.iso_range, r.truncated, r.rank_m
        );
    }
}
