//! Cup-product presentation, and how the integers see a coefficient that the
//! rationals cannot.
//!
//!     cargo run --example cohomology_ring

use reeb_bubble::calculus::cohomology_ring_of_descriptor;
use reeb_bubble::cli::coefficient_pair;
use reeb_bubble::coefficients::CoefficientRing;
use reeb_bubble::graded_algebra::{compare_invariants, pairing_invariants, Verdict};

fn main() {
    let z = CoefficientRing::Integers;
    let q = CoefficientRing::Rationals;
    let f2 = CoefficientRing::prime_field(2).unwrap();

    let rep = cohomology_ring_of_descriptor(&coefficient_pair(2), z).unwrap();
    for e in rep.ring.basis() {
        println!("{:<6} degree {}", e.id, e.degree);
    }
    for p in rep.ring.table() {
        println!("{} * {} = {:?}", p.left, p.right, p.result);
    }

    for ring in [z, q, f2] {
        let one = cohomology_ring_of_descriptor(&coefficient_pair(1), ring)
            .unwrap()
            .ring;
        let two = cohomology_ring_of_descriptor(&coefficient_pair(2), ring)
            .unwrap()
            .ring;
        let (a, b) = (
            pairing_invariants(&one, 1, 2).unwrap(),
            pairing_invariants(&two, 1, 2).unwrap(),
        );
        let verdict = match compare_invariants(&one, &two).unwrap() {
            Verdict::Consistent => "consistent".to_string(),
            Verdict::Distinguished { witness } => format!("distinguished by {witness:?}"),
        };
        println!(
            "{ring}: (1,2) pairing rank {} divisors {:?} vs rank {} divisors {:?}: {verdict}",
            a.rank, a.divisors, b.rank, b.divisors
        );
    }
}
