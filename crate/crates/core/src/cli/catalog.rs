//! The built-in verification catalog: reconstructions of standard spaces, the coefficient
//! 1-vs-2 pair, planner instances and seeded random planner instances.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{
    random_plan, realize_plan, realize_plan_general, GeneralPlan, GeneralSphere, Plan,
    PlanCoefficient, PlanMode, RandomPlanConfig,
};
use crate::coefficients::CoefficientRing;
use crate::graded_algebra::ManifoldExpr;
use crate::oracle::{verify_descriptor, TierChoice, VerificationReport, VerifyOptions};
use crate::reeb_descriptor::{BaseSpec, BubblingRecord, RecordKind, ReebDescriptor, SphereSpec};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const RANDOM_PLAN_INSTANCES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub summary: String,
    pub descriptor: ReebDescriptor,
}

fn entry(name: &str, summary: &str, descriptor: ReebDescriptor) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        summary: summary.into(),
        descriptor,
    }
}

fn s(k: usize) -> ManifoldExpr {
    ManifoldExpr::sphere(k)
}

fn torus() -> ManifoldExpr {
    ManifoldExpr::product(s(1), s(1))
}

fn rec(kind: RecordKind, spheres: Vec<SphereSpec>) -> BubblingRecord {
    BubblingRecord::new(kind, spheres)
}

/// `n = 3`, base one circle, one M record whose circle wraps `c` times.
pub fn coefficient_pair(c: i64) -> ReebDescriptor {
    ReebDescriptor::new(3)
        .with_handle(s(1))
        .with_record(rec(RecordKind::M, vec![SphereSpec::new(1).with(1, c)]))
}

/// The plan realizing `nu * beta = 3 tau` on a 2-sphere core at `n = 4`.
pub fn planner_example() -> Plan {
    Plan {
        n: 4,
        s: vec![0, 1, 0],
        g: vec![0, 1, 0, 1],
        a: vec![vec![0, 1, 0]],
        coefficients: vec![PlanCoefficient {
            record: 1,
            k1: 2,
            k2: 1,
            k3: 1,
            value: 3,
        }],
        mode: PlanMode::Standard,
    }
}

fn fixed_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in [2, 3, 5] {
        out.push(entry(
            &format!("disc-n{n}"),
            "projection of the unit sphere: the Reeb space is a disc",
            ReebDescriptor::new(n),
        ));
    }
    out.push(entry(
        "handles-k2",
        "special generic map into the plane with two round handles",
        ReebDescriptor::new(2).with_handle(s(1)).with_handle(s(1)),
    ));
    out.push(entry(
        "handles-k3",
        "three round handles",
        ReebDescriptor::new(2)
            .with_handle(s(1))
            .with_handle(s(1))
            .with_handle(s(1)),
    ));
    for n in 2..=5 {
        out.push(entry(
            &format!("sphere-n{n}"),
            "a point record on the disc: the Reeb space is a sphere",
            ReebDescriptor::new(n).with_record(BubblingRecord::point()),
        ));
    }
    out.push(entry(
        "m-bubbling-annulus",
        "M-bubbling along a point pair on an annulus",
        ReebDescriptor::new(2)
            .with_handle(s(1))
            .with_record(rec(RecordKind::M, vec![SphereSpec::new(0)])),
    ));
    out.push(entry(
        "m-bubbling-two-records",
        "two M-bubblings on two handles",
        ReebDescriptor::new(2)
            .with_handle(s(1))
            .with_handle(s(1))
            .with_record(rec(RecordKind::M, vec![SphereSpec::new(0)]))
            .with_record(rec(
                RecordKind::S,
                vec![SphereSpec::new(0), SphereSpec::new(0)],
            )),
    ));
    out.push(entry(
        "coeff-1",
        "circle attached with degree 1",
        coefficient_pair(1),
    ));
    out.push(entry(
        "coeff-2",
        "circle attached with degree 2",
        coefficient_pair(2),
    ));
    out.push(entry(
        "coeff-minus-3",
        "circle attached with degree -3",
        coefficient_pair(-3),
    ));
    out.push(entry(
        "planner-n4",
        "planner example: nu * beta = 3 tau on a 2-sphere core",
        realize_plan(&planner_example())
            .expect("legal plan")
            .descriptor,
    ));
    out.push(entry(
        "planner-points",
        "planner with all coefficients zero: point-like records",
        realize_plan(&Plan {
            n: 3,
            s: vec![1, 0],
            g: vec![0, 0, 2],
            a: vec![vec![0, 0], vec![0, 0]],
            coefficients: vec![],
            mode: PlanMode::Standard,
        })
        .expect("legal plan")
        .descriptor,
    ));
    out.push(entry(
        "planner-normal",
        "normal-mode planner: one sphere per record",
        realize_plan(&Plan {
            n: 4,
            s: vec![1, 1, 0],
            g: vec![0, 1, 0, 2],
            a: vec![vec![0, 1, 0], vec![0, 0, 0]],
            coefficients: vec![PlanCoefficient {
                record: 1,
                k1: 2,
                k2: 1,
                k3: 1,
                value: -2,
            }],
            mode: PlanMode::Normal,
        })
        .expect("legal plan")
        .descriptor,
    ));
    out.push(entry(
        "general-torus",
        "torus core, untargeted 2-sphere: the product class annihilates beta",
        realize_plan_general(&GeneralPlan {
            n: 4,
            base: BaseSpec {
                handles: vec![torus()],
            },
            g: vec![0, 1, 0, 1],
            spheres: vec![GeneralSphere {
                dim: 2,
                coefficients: Default::default(),
            }],
        })
        .expect("legal plan"),
    ));
    out.push(entry(
        "general-genus2",
        "genus-2 core, circle attached to one meridian",
        realize_plan_general(&GeneralPlan {
            n: 4,
            base: BaseSpec {
                handles: vec![ManifoldExpr::connsum(torus(), torus())],
            },
            g: vec![0, 0, 1, 1],
            spheres: vec![GeneralSphere {
                dim: 1,
                coefficients: [("nu1".to_string(), 1)].into(),
            }],
        })
        .expect("legal plan"),
    ));
    out.push(entry(
        "torus-core-n3",
        "torus core at n = 3, circle on the second factor",
        ReebDescriptor::new(3)
            .with_handle(torus())
            .with_record(rec(RecordKind::M, vec![SphereSpec::new(1).with(2, -2)])),
    ));
    out.push(entry(
        "s1xs2-core-n4",
        "S^1 x S^2 core with circle and 2-sphere generators",
        ReebDescriptor::new(4)
            .with_handle(ManifoldExpr::product(s(1), s(2)))
            .with_record(rec(
                RecordKind::M,
                vec![SphereSpec::new(1).with(1, 3), SphereSpec::new(2).with(2, 1)],
            )),
    ));
    out.push(entry(
        "connsum-core-n3",
        "S^2 # S^2 core with an untargeted circle",
        ReebDescriptor::new(3)
            .with_handle(ManifoldExpr::connsum(s(2), s(2)))
            .with_record(rec(RecordKind::S, vec![SphereSpec::new(1)])),
    ));
    out.push(entry(
        "normal-records-n4",
        "normal M and S records",
        ReebDescriptor::new(4)
            .with_handle(s(1))
            .with_handle(s(2))
            .with_record(rec(
                RecordKind::NormalM,
                vec![SphereSpec::new(2).with(2, 2)],
            ))
            .with_record(rec(
                RecordKind::NormalS,
                vec![SphereSpec::new(1).with(1, -1)],
            )),
    ));
    out.push(entry(
        "s-schedule-n4",
        "S-type schedule qualifying for source manifold inference",
        ReebDescriptor::new(4)
            .with_handle(s(1))
            .with_record(rec(RecordKind::S, vec![SphereSpec::new(1).with(1, 1)]))
            .with_record(BubblingRecord::point()),
    ));
    out.push(entry(
        "two-targets-n3",
        "one circle wrapping two handles",
        ReebDescriptor::new(3)
            .with_handle(s(1))
            .with_handle(s(1))
            .with_record(rec(
                RecordKind::M,
                vec![SphereSpec::new(1).with(1, 2).with(2, -3)],
            )),
    ));
    out.push(entry(
        "mixed-n5",
        "three records over S^1, S^2, S^3 cores",
        ReebDescriptor::new(5)
            .with_handle(s(1))
            .with_handle(s(2))
            .with_handle(s(3))
            .with_record(rec(
                RecordKind::M,
                vec![
                    SphereSpec::new(1).with(1, 2),
                    SphereSpec::new(3).with(3, -1),
                    SphereSpec::new(0),
                ],
            ))
            .with_record(rec(RecordKind::S, vec![SphereSpec::new(2).with(2, 3)]))
            .with_record(BubblingRecord::point()),
    ));
    out
}

/// Every instance, in canonical order. The seed only affects the random
/// planner instances at the end.
pub fn catalog(seed: u64) -> Vec<CatalogEntry> {
    let mut out = fixed_entries();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = RandomPlanConfig::default();
    for i in 0..RANDOM_PLAN_INSTANCES {
        let plan = random_plan(&mut rng, &cfg);
        let r = realize_plan(&plan).expect("random plans are legal");
        out.push(entry(
            &format!("random-plan-{}", i + 1),
            &format!("seeded random planner instance (n = {})", plan.n),
            r.descriptor,
        ));
    }
    out
}

#[derive(Clone, Debug)]
pub struct CatalogOptions {
    pub seed: u64,
    /// Keep only the instance of this name or, if there is none, the
    /// instances whose names start with it.
    pub only: Option<String>,
    pub rings: Vec<CoefficientRing>,
    pub tier: TierChoice,
    pub allow_pinch: bool,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            seed: DEFAULT_SEED,
            only: None,
            rings: standard_rings(),
            tier: TierChoice::Auto,
            allow_pinch: false,
        }
    }
}

/// Z, Q, Z/2, Z/3.
pub fn standard_rings() -> Vec<CoefficientRing> {
    vec![
        CoefficientRing::Integers,
        CoefficientRing::Rationals,
        CoefficientRing::prime_field(2).expect("prime"),
        CoefficientRing::prime_field(3).expect("prime"),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogResult {
    pub name: String,
    pub summary: String,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub seed: u64,
    pub results: Vec<CatalogResult>,
    pub all_match: bool,
    pub elapsed_ms: u64,
}

pub fn select(entries: Vec<CatalogEntry>, only: Option<&str>) -> Vec<CatalogEntry> {
    let Some(o) = only else { return entries };
    if entries.iter().any(|e| e.name == o) {
        entries.into_iter().filter(|e| e.name == o).collect()
    } else {
        entries
            .into_iter()
            .filter(|e| e.name.starts_with(o))
            .collect()
    }
}

/// Verifies every selected instance in parallel; results keep catalog order.
pub fn catalog_suite(opts: &CatalogOptions) -> CatalogReport {
    let start = Instant::now();
    let entries = select(catalog(opts.seed), opts.only.as_deref());
    let vopts = VerifyOptions {
        rings: opts.rings.clone(),
        tier: opts.tier,
        allow_pinch: opts.allow_pinch,
    };
    let results: Vec<CatalogResult> = entries
        .into_par_iter()
        .map(|e| CatalogResult {
            report: verify_descriptor(&e.descriptor, &vopts),
            name: e.name,
            summary: e.summary,
        })
        .collect();
    CatalogReport {
        seed: opts.seed,
        all_match: results.iter().all(|r| r.report.all_match),
        results,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::reeb_descriptor::validate;

    #[test]
    fn catalog_shape() {
        let c = catalog(DEFAULT_SEED);
        assert!(c.len() >= 25);
        let names: BTreeSet<_> = c.iter().map(|e| e.name.clone()).collect();
        assert_eq!(names.len(), c.len());
        let ns: BTreeSet<_> = c.iter().map(|e| e.descriptor.n).collect();
        assert_eq!(ns, (2..=5).collect());
        for e in &c {
            let d = &e.descriptor;
            assert!(validate(d).is_empty(), "{}", e.name);
            assert!(d.records.len() <= 3, "{}", e.name);
            for r in &d.records {
                assert!(r.spheres.len() <= 3, "{}", e.name);
                for s in &r.spheres {
                    assert!(s.coefficients.values().all(|c| c.abs() <= 3), "{}", e.name);
                }
            }
        }
    }

    #[test]
    fn seed_only_moves_random_instances() {
        let (a, b) = (catalog(1), catalog(2));
        let fixed = fixed_entries().len();
        assert_eq!(a[..fixed], b[..fixed]);
        assert_ne!(a[fixed..], b[fixed..]);
    }

    #[test]
    fn only_filter() {
        let r = catalog_suite(&CatalogOptions {
            only: Some("handles-k2".into()),
            ..Default::default()
        });
        let names: Vec<_> = r.results.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, vec!["handles-k2"]);
        assert!(r.all_match);
        assert_eq!(select(catalog(DEFAULT_SEED), Some("sphere")).len(), 4);
        assert!(select(catalog(DEFAULT_SEED), Some("nope")).is_empty());
    }
}
