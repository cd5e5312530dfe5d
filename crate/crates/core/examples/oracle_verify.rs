//! Check the calculus against both oracle tiers, and watch a corrupted
//! calculus get caught.
//!
//!     cargo run --example oracle_verify

use reeb_bubble::calculus::homology_of_descriptor;
use reeb_bubble::cli::coefficient_pair;
use reeb_bubble::coefficients::CoefficientRing;
use reeb_bubble::oracle::{
    chain_model, simplicial_model, verify_descriptor, verify_descriptor_with, Tier2Options,
    VerifyOptions,
};

fn main() {
    let d = coefficient_pair(2);
    let rings = vec![
        CoefficientRing::Integers,
        CoefficientRing::Rationals,
        CoefficientRing::prime_field(2).unwrap(),
    ];

    let cone = chain_model(&d).unwrap();
    println!("tier 1 cone: cell counts {:?}", cone.ranks);
    let model = simplicial_model(&d, Tier2Options::default()).unwrap();
    println!(
        "tier 2 complex: {} simplices",
        model.complex.total_simplices()
    );

    let opts = VerifyOptions {
        rings,
        ..Default::default()
    };
    let report = verify_descriptor(&d, &opts);
    print!("{}", report.table());

    let corrupted = |d: &_, r| {
        let mut h = homology_of_descriptor(d, r)?;
        h.pieces[1].free_rank += 1;
        Ok(h)
    };
    let bad = verify_descriptor_with(&d, &opts, corrupted);
    assert!(!bad.all_match);
    println!("corrupted calculus:\n{}", bad.table());
}
