//! Realize prescribed cohomology data as a bubbling schedule and check that
//! the resulting ring carries the requested structure constants.
//!
//!     cargo run --example planner

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reeb_bubble::calculus::{
    cohomology_ring_of_descriptor, random_plan, realize_plan, RandomPlanConfig,
};
use reeb_bubble::cli::planner_example;
use reeb_bubble::coefficients::CoefficientRing;
use reeb_bubble::reeb_descriptor::to_json;

fn main() {
    let z = CoefficientRing::Integers;
    let realized = realize_plan(&planner_example()).unwrap();
    println!("{}", to_json(&realized.descriptor));
    println!("expected ranks {:?}", realized.expected_ranks);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut shown = 0;
    while shown < 5 {
        let plan = random_plan(&mut rng, &RandomPlanConfig::default());
        let r = realize_plan(&plan).unwrap();
        if r.expected_constants.is_empty() {
            continue;
        }
        shown += 1;
        let rep = cohomology_ring_of_descriptor(&r.descriptor, z).unwrap();
        assert_eq!(rep.ring.ranks(), r.expected_ranks);
        for c in &r.expected_constants {
            let got = rep.ring.structure_constant(
                rep.index(&c.nu),
                rep.index(&c.beta),
                rep.index(&c.tau),
            );
            assert_eq!(got, z.from_i64(c.value));
        }
        println!(
            "n = {}, ranks {:?}, {} structure constants reproduced",
            plan.n,
            r.expected_ranks,
            r.expected_constants.len()
        );
    }
}
