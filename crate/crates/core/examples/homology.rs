//! Homology of bubbled Reeb spaces over several coefficient rings.
//!
//!     cargo run --example homology

use reeb_bubble::calculus::homology_of_descriptor;
use reeb_bubble::cli::homology_table;
use reeb_bubble::coefficients::CoefficientRing;
use reeb_bubble::graded_algebra::ManifoldExpr;
use reeb_bubble::reeb_descriptor::{BubblingRecord, RecordKind, ReebDescriptor, SphereSpec};

fn main() {
    let rings = [
        CoefficientRing::Integers,
        CoefficientRing::Rationals,
        CoefficientRing::prime_field(2).unwrap(),
    ];

    // a point record on the disc: the Reeb space is S^4
    let sphere = ReebDescriptor::new(4).with_record(BubblingRecord::point());

    // S^1 and S^2 x S^1 cores (classes nu1; nu2 in degree 2, nu3 in degree 1),
    // then a record with a circle and a 2-sphere
    let d = ReebDescriptor::new(5)
        .with_handle(ManifoldExpr::sphere(1))
        .with_handle(ManifoldExpr::product(
            ManifoldExpr::sphere(2),
            ManifoldExpr::sphere(1),
        ))
        .with_record(BubblingRecord::new(
            RecordKind::M,
            vec![
                SphereSpec::new(1).with(1, 2),
                SphereSpec::new(2).with(2, -1),
            ],
        ));

    for (name, d) in [("sphere", &sphere), ("two cores", &d)] {
        let rows: Vec<_> = rings
            .iter()
            .map(|&r| (r, homology_of_descriptor(d, r).unwrap()))
            .collect();
        println!("{name}:\n{}", homology_table(&rows));
    }
}
