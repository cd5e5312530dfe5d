//! Explicit triangulations: products, connected sums, degree maps, and their
//! Alexander-Whitney cup products.
//!
//!     cargo run --example simplicial_models

use reeb_bubble::coefficients::CoefficientRing;
use reeb_bubble::graded_algebra::pairing_invariants;
use reeb_bubble::simplicial::{
    connected_sum_complex, cup_ring_of_complex, degree_map, homology_of_complex, product_complex,
    sphere_complex,
};

fn main() {
    let z = CoefficientRing::Integers;
    let circle = sphere_complex(1);
    let torus = product_complex(&circle, &circle);
    println!(
        "torus: {} vertices, homology {}",
        torus.n_vertices(),
        homology_of_complex(&torus, z)
    );

    let genus2 = connected_sum_complex(&torus, &torus, 2).unwrap().complex;
    let ring = cup_ring_of_complex(&genus2, z).unwrap().ring;
    let inv = pairing_invariants(&ring, 1, 1).unwrap();
    println!(
        "genus 2: homology {}, (1,1) form rank {}",
        homology_of_complex(&genus2, z),
        inv.form_rank
    );

    let s2 = sphere_complex(2);
    let s2xs2 = product_complex(&s2, &s2);
    let inv = pairing_invariants(&cup_ring_of_complex(&s2xs2, z).unwrap().ring, 2, 2).unwrap();
    println!(
        "S^2 x S^2: (2,2) pairing rank {}, form divisors {:?}",
        inv.rank, inv.form_divisors
    );

    for d in [-2, 3] {
        let m = degree_map(2, d).unwrap();
        println!(
            "degree {d} map on S^2: {} domain vertices, checked degree {:?}",
            m.map.domain().n_vertices(),
            m.degrees
        );
    }
}
