//! Cohomology rings of products, connected sums and wedges of spheres.
//!
//!     cargo run --example graded_algebra

use reeb_bubble::coefficients::CoefficientRing;
use reeb_bubble::graded_algebra::{
    all_pairing_invariants, cps_cohomology, gcps_cohomology, GcpsExpr, ManifoldExpr,
};

fn main() {
    let z = CoefficientRing::Integers;
    let s = ManifoldExpr::sphere;
    let torus = ManifoldExpr::product(s(1), s(1));
    let genus2 = ManifoldExpr::connsum(torus.clone(), torus.clone());

    for (name, e) in [
        ("torus", &torus),
        ("genus 2", &genus2),
        ("S^2 x S^3", &ManifoldExpr::product(s(2), s(3))),
    ] {
        let r = cps_cohomology(e, z).unwrap();
        println!("{name}: ranks {:?}", r.ranks());
        for p in r.table() {
            println!("  {} * {} = {:?}", p.left, p.right, p.result);
        }
    }

    let wedge = gcps_cohomology(&GcpsExpr(vec![torus.clone(), torus]), z).unwrap();
    println!("wedge of two tori: ranks {:?}", wedge.ranks());
    for inv in all_pairing_invariants(&wedge) {
        println!(
            "  ({},{}) rank {} form rank {}",
            inv.p, inv.q, inv.rank, inv.form_rank
        );
    }
}
