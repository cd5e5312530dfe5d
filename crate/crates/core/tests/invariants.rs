//! Property suites over seeded random descriptors, cores and complexes.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use reeb_bubble::calculus::{
    cohomology_ring_of_descriptor, random_plan, realize_plan, RandomPlanConfig,
};
use reeb_bubble::cli::coefficient_pair;
use reeb_bubble::graded_algebra::{
    compare_invariants, connsum_ring, cps_cohomology, tensor_ring, Verdict,
};
use reeb_bubble::oracle::{
    chain_model_homology, simplicial_model, tier2_obstruction, Tier2Options,
};
use reeb_bubble::reeb_descriptor::{
    connected_sum_descriptors, parse, random_core, to_json, validate, ReebDescriptor,
};
use reeb_bubble::simplicial::{
    cup_ring_of_complex, degree_map, fundamental_cycle, multiple_of, sphere_complex, ChainComplex,
};

fn assert_green(failures: Vec<String>) -> Result<(), TestCaseError> {
    prop_assert!(failures.is_empty(), "{}", failures.join("\n"));
    Ok(())
}

fn cheap() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn first_homology_survives_every_record(seed in any::<u64>()) {
        assert_green(h1_invariance(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn each_record_adds_one_top_class(seed in any::<u64>()) {
        assert_green(top_degree_growth(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn middle_ranks_grow_by_sphere_counts(seed in any::<u64>()) {
        assert_green(rank_additivity(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn integral_homology_is_free(seed in any::<u64>()) {
        assert_green(freeness(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn ranks_agree_across_coefficient_rings(seed in any::<u64>()) {
        assert_green(ring_coherence(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn inclusion_is_a_ring_monomorphism(seed in any::<u64>()) {
        assert_green(inclusion_monomorphism(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn sign_flips_keep_pairings(seed in any::<u64>()) {
        assert_green(unit_rescaling(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn boundaries_square_to_zero(seed in any::<u64>()) {
        assert_green(boundary_squared(&seeded_descriptor(seed), false))?;
    }

    #[test]
    fn gluings_are_mayer_vietoris_exact(seed in any::<u64>()) {
        assert_green(mayer_vietoris_exactness(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn base_times_circle_is_kunneth(seed in any::<u64>()) {
        assert_green(kunneth_on_base(&seeded_descriptor(seed)))?;
    }

    #[test]
    fn calculus_rings_are_graded_commutative_and_associative(seed in any::<u64>()) {
        let d = seeded_descriptor(seed);
        for ring in [Z, f(2)] {
            let r = cohomology_ring_of_descriptor(&d, ring).unwrap().ring;
            prop_assert!(r.validate().is_ok(), "{:?}", r.validate());
            prop_assert!(compare_invariants(&r, &r).unwrap().is_consistent());
        }
    }

    #[test]
    fn prefixes_of_valid_schedules_are_valid(seed in any::<u64>()) {
        let d = seeded_descriptor(seed);
        for r in 0..=d.records.len() {
            prop_assert!(validate(&prefix(&d, r)).is_empty());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let d = seeded_descriptor(seed);
        let text = to_json(&d);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn chain_model_ignores_order_of_disjoint_records(seed in any::<u64>()) {
        let d = seeded_descriptor(seed);
        let targets: Vec<BTreeSet<_>> = d
            .records
            .iter()
            .map(|r| r.spheres.iter().flat_map(|s| s.coefficients.keys().copied()).collect())
            .collect();
        let disjoint = targets.iter().enumerate().all(|(i, a)| targets[i + 1..].iter().all(|b| a.is_disjoint(b)));
        if disjoint {
            let mut e = d.clone();
            e.records.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            for ring in [Z, f(3)] {
                prop_assert_eq!(chain_model_homology(&d, ring).unwrap(), chain_model_homology(&e, ring).unwrap());
            }
        }
    }

    #[test]
    fn connected_sums_commute_and_associate(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let pick = |s: u64, n: usize| {
            (0u64..).map(|i| seeded_descriptor(s.wrapping_add(i))).find(|d| d.n == n).unwrap()
        };
        let n = seeded_descriptor(a).n;
        let (x, y, z) = (pick(a, n), pick(b, n), pick(c, n));
        let ring = |d: &ReebDescriptor| cohomology_ring_of_descriptor(d, Z).unwrap().ring;
        let xy = connected_sum_descriptors(&x, &y).unwrap();
        let yx = connected_sum_descriptors(&y, &x).unwrap();
        prop_assert!(compare_invariants(&ring(&xy), &ring(&yx)).unwrap().is_consistent());
        let left = connected_sum_descriptors(&xy, &z).unwrap();
        let right = connected_sum_descriptors(&x, &connected_sum_descriptors(&y, &z).unwrap()).unwrap();
        prop_assert!(compare_invariants(&ring(&left), &ring(&right)).unwrap().is_consistent());
    }

    #[test]
    fn planner_round_trip(seed in any::<u64>()) {
        let plan = random_plan(&mut ChaCha8Rng::seed_from_u64(seed), &RandomPlanConfig::default());
        let realized = realize_plan(&plan).unwrap();
        prop_assert!(validate(&realized.descriptor).is_empty());
        let rep = cohomology_ring_of_descriptor(&realized.descriptor, Z).unwrap();
        prop_assert_eq!(&rep.ring.module().padded(plan.n).free_ranks(), &realized.expected_ranks);
        for c in &realized.expected_constants {
            let got = rep.ring.structure_constant(rep.index(&c.nu), rep.index(&c.beta), rep.index(&c.tau));
            prop_assert_eq!(got, Z.from_i64(c.value));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn tensor_ranks_are_convolutions(a in any::<u64>(), b in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(a ^ b.rotate_left(17));
        let (ka, kb) = (1 + (a % 4) as usize, 1 + (b % 4) as usize);
        let (x, y) = (random_core(&mut rng, ka, true), random_core(&mut rng, kb, true));
        let (rx, ry) = (cps_cohomology(&x, Z).unwrap(), cps_cohomology(&y, Z).unwrap());
        let t = tensor_ring(&rx, &ry).unwrap();
        let (px, py) = (rx.ranks(), ry.ranks());
        for k in 0..=ka + kb {
            let conv: usize = (0..=k).map(|i| px.get(i).unwrap_or(&0) * py.get(k - i).unwrap_or(&0)).sum();
            prop_assert_eq!(t.ranks().get(k).copied().unwrap_or(0), conv, "degree {}", k);
        }
        prop_assert!(t.validate().is_ok());
    }

    #[test]
    fn connsum_ranks_add_in_the_middle(a in any::<u64>(), dim in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(a);
        let (x, y) = (random_core(&mut rng, dim, true), random_core(&mut rng, dim, true));
        let (rx, ry) = (cps_cohomology(&x, Z).unwrap(), cps_cohomology(&y, Z).unwrap());
        let c = connsum_ring(&rx, &ry).unwrap();
        let (px, py, pc) = (rx.ranks(), ry.ranks(), c.ranks());
        prop_assert_eq!(pc[0], 1);
        prop_assert_eq!(pc[dim], 1);
        for k in 1..dim {
            prop_assert_eq!(pc[k], px[k] + py[k]);
        }
        prop_assert!(c.validate().is_ok());
    }

    #[test]
    fn degree_maps_multiply_the_fundamental_class(l in 1usize..=3, d in -3i64..=3) {
        let m = degree_map(l, d).unwrap();
        let pushed = m.map.push_chain(l, &m.fundamental);
        let target = fundamental_cycle(m.map.codomain(), l).unwrap();
        prop_assert_eq!(multiple_of(&pushed, &target), Some(d));
    }

    #[test]
    fn sphere_products_are_kunneth(a in 1usize..=3, b in 1usize..=3) {
        assert_green(kunneth_convolution(&sphere_complex(a), &sphere_complex(b)))?;
    }

    #[test]
    fn coefficient_magnitude_is_detected_over_the_integers(c in 1i64..=3, e in 1i64..=3, flip in any::<bool>()) {
        let sign = if flip { -1 } else { 1 };
        let ring = |c: i64| cohomology_ring_of_descriptor(&coefficient_pair(c), Z).unwrap().ring;
        let v = compare_invariants(&ring(c), &ring(sign * e)).unwrap();
        if c == e {
            prop_assert_eq!(v, Verdict::Consistent);
        } else {
            prop_assert!(!v.is_consistent());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    /// Simplicial models of small descriptors: Euler characteristic, cup-ring
    /// axioms and pairings against the calculus.
    #[test]
    fn simplicial_models_agree_with_calculus(seed in any::<u64>()) {
        let d = seeded_descriptor(seed);
        let opts = Tier2Options { allow_pinch: true };
        if d.n <= 4 && tier2_obstruction(&d, opts).is_none() {
            let k = simplicial_model(&d, opts).unwrap().complex;
            let chains = ChainComplex::of_complex(&k);
            prop_assert!(chains.check_d_squared().is_ok());
            let betti = reeb_bubble::calculus::homology_of_descriptor(&d, Q).unwrap().free_ranks();
            let chi: i64 = betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            prop_assert_eq!(chains.euler_characteristic(), chi);
            prop_assert_eq!(k.euler_characteristic(), chi);
            let cup = cup_ring_of_complex(&k, f(2)).unwrap().ring;
            prop_assert!(cup.validate().is_ok());
            let calc = cohomology_ring_of_descriptor(&d, f(2)).unwrap().ring;
            let trim = |mut v: Vec<usize>| { while v.len() > 1 && v.last() == Some(&0) { v.pop(); } v };
            prop_assert_eq!(trim(cup.ranks()), trim(calc.ranks()));
            prop_assert_eq!(compare_invariants(&cup, &calc).unwrap(), Verdict::Consistent);
        }
    }
}
