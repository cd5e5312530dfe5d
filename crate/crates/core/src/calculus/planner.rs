//! Realizability planners: turn prescribed cohomology data into a bubbling
//! schedule on a base whose cores are spheres (or, for the general planner,
//! arbitrary CPS manifolds).

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::CalculusError;
use crate::coefficients::CoefficientRing;
use crate::graded_algebra::ManifoldExpr;
use crate::reeb_descriptor::{
    base_cohomology, validate, BaseSpec, BubblingRecord, ClassId, RecordKind, ReebDescriptor,
    SphereSpec,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlanMode {
    #[default]
    Standard,
    /// One generating sphere per record (normal bubbling).
    Normal,
}

/// Coefficient of the `k2`-th sphere of dimension `n - k1` in record `record`
/// on the `k3`-th base class of that degree. All indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanCoefficient {
    pub record: usize,
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub value: i64,
}

/// `s[k-1]` handles of core `S^k`; `g[k-1] = rank G_k`; `a[j][k-1]` spheres
/// of dimension `n - k` in record `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Plan {
    pub n: usize,
    pub s: Vec<usize>,
    pub g: Vec<usize>,
    pub a: Vec<Vec<usize>>,
    #[serde(default)]
    pub coefficients: Vec<PlanCoefficient>,
    #[serde(default)]
    pub mode: PlanMode,
}

/// A structure constant the realized ring must reproduce:
/// `nu * beta = value * tau`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedConstant {
    pub record: usize,
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub value: i64,
    pub nu: String,
    pub beta: String,
    pub tau: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizedPlan {
    pub descriptor: ReebDescriptor,
    /// Expected cohomology ranks in degrees `0..=n`.
    pub expected_ranks: Vec<usize>,
    pub expected_constants: Vec<ExpectedConstant>,
}

fn plan_violations(p: &Plan) -> Vec<String> {
    let mut v = Vec::new();
    let n = p.n;
    if n < 2 {
        v.push(format!("n must be at least 2, got {n}"));
        return v;
    }
    if p.s.len() != n - 1 {
        v.push(format!(
            "s needs n-1 = {} entries, got {}",
            n - 1,
            p.s.len()
        ));
    }
    if p.g.len() != n {
        v.push(format!("g needs n = {n} entries, got {}", p.g.len()));
        return v;
    }
    if p.g[0] != 0 {
        v.push(format!("G_1 must be 0, got rank {}", p.g[0]));
    }
    let top = p.g[n - 1];
    if top == 0 {
        v.push("G_n must be nonzero".into());
    }
    if p.a.len() != top {
        v.push(format!(
            "a needs rank G_n = {top} sequences, got {}",
            p.a.len()
        ));
    }
    for (j, seq) in p.a.iter().enumerate() {
        if seq.len() != n - 1 {
            v.push(format!(
                "a[{}] needs n-1 = {} entries, got {}",
                j + 1,
                n - 1,
                seq.len()
            ));
        } else if seq[0] != 0 {
            v.push(format!(
                "a[{}] has spheres of dimension n-1 (entry k=1 is {})",
                j + 1,
                seq[0]
            ));
        }
    }
    if p.a.iter().all(|s| s.len() == n - 1) {
        for k in 1..n {
            let sum: usize = p.a.iter().map(|s| s[k - 1]).sum();
            if sum != p.g[k - 1] {
                v.push(format!(
                    "column k={k} of a sums to {sum}, but rank G_{k} = {}",
                    p.g[k - 1]
                ));
            }
        }
    }
    if p.mode == PlanMode::Normal {
        let lower: usize = p.g[..n - 1].iter().sum();
        if lower > top {
            v.push(format!(
                "normal mode needs sum of rank G_k (k < n) = {lower} <= rank G_n = {top}"
            ));
        }
        for (j, seq) in p.a.iter().enumerate() {
            let c: usize = seq.iter().sum();
            if c > 1 {
                v.push(format!(
                    "normal mode allows one sphere per record, record {} has {c}",
                    j + 1
                ));
            }
        }
    }
    let mut seen = BTreeSet::new();
    for (i, c) in p.coefficients.iter().enumerate() {
        let at = format!("coefficients[{i}]");
        if !seen.insert((c.record, c.k1, c.k2, c.k3)) {
            v.push(format!("{at}: duplicate entry"));
        }
        if c.record == 0 || c.record > p.a.len() {
            v.push(format!(
                "{at}: record {} out of range 1..={}",
                c.record,
                p.a.len()
            ));
            continue;
        }
        if c.k1 < 2 || c.k1 >= n {
            v.push(format!("{at}: k1 = {} out of range 2..={}", c.k1, n - 1));
            continue;
        }
        let count = p.a[c.record - 1].get(c.k1 - 1).copied().unwrap_or(0);
        if c.k2 == 0 || c.k2 > count {
            v.push(format!(
                "{at}: k2 = {} but record {} has {count} spheres of dim {}",
                c.k2,
                c.record,
                n - c.k1
            ));
        }
        let classes = p.s.get(n - c.k1 - 1).copied().unwrap_or(0);
        if c.k3 == 0 || c.k3 > classes {
            v.push(format!(
                "{at}: k3 = {} but the base has {classes} classes of degree {}",
                c.k3,
                n - c.k1
            ));
        }
    }
    v
}

/// Builds the descriptor realizing a plan: `s_k` handles `S^k`, then one
/// M-record per generator of `G_n`.
pub fn realize_plan(p: &Plan) -> Result<RealizedPlan, CalculusError> {
    let v = plan_violations(p);
    if !v.is_empty() {
        return Err(CalculusError::Plan(v));
    }
    let n = p.n;
    let mut d = ReebDescriptor::new(n);
    // class id of the k3-th degree-k class
    let mut first_id = vec![0u32; n];
    let mut next = 1u32;
    for (k, first) in first_id.iter_mut().enumerate().skip(1) {
        *first = next;
        for _ in 0..p.s[k - 1] {
            d.base.handles.push(ManifoldExpr::sphere(k));
            next += 1;
        }
    }
    let coeff: BTreeMap<(usize, usize, usize, usize), i64> = p
        .coefficients
        .iter()
        .map(|c| ((c.record, c.k1, c.k2, c.k3), c.value))
        .collect();
    let mut expected = Vec::new();
    for (j0, seq) in p.a.iter().enumerate() {
        let j = j0 + 1;
        let mut spheres = Vec::new();
        for k1 in 2..n {
            let dim = n - k1;
            for k2 in 1..=seq[k1 - 1] {
                let mut sphere = SphereSpec::new(dim);
                for k3 in 1..=p.s[dim - 1] {
                    let value = coeff.get(&(j, k1, k2, k3)).copied().unwrap_or(0);
                    let id = ClassId(first_id[dim] + k3 as u32 - 1);
                    if value != 0 {
                        sphere.coefficients.insert(id, value);
                    }
                    expected.push(ExpectedConstant {
                        record: j,
                        k1,
                        k2,
                        k3,
                        value,
                        nu: id.to_string(),
                        beta: format!("beta{j}.{}", spheres.len() + 1),
                        tau: format!("tau{j}"),
                    });
                }
                spheres.push(sphere);
            }
        }
        let kind = match p.mode {
            PlanMode::Standard => RecordKind::M,
            PlanMode::Normal => {
                if spheres.is_empty() {
                    spheres.push(SphereSpec::new(0));
                }
                RecordKind::NormalM
            }
        };
        d.records.push(BubblingRecord::new(kind, spheres));
    }
    let mut ranks = vec![1];
    ranks.extend((1..n).map(|k| p.s[k - 1] + p.g[k - 1]));
    ranks.push(p.g[n - 1]);
    debug_assert!(validate(&d).is_empty());
    Ok(RealizedPlan {
        descriptor: d,
        expected_ranks: ranks,
        expected_constants: expected,
    })
}

/// One generating sphere for the general planner, with coefficients keyed by
/// base ring class id (`nu<j>` or `t<j>`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralSphere {
    pub dim: usize,
    #[serde(default)]
    pub coefficients: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralPlan {
    pub n: usize,
    pub base: BaseSpec,
    /// Ranks of `G_1..G_n`; needs `G_1 = 0` and `G_n` of rank one.
    pub g: Vec<usize>,
    pub spheres: Vec<GeneralSphere>,
}

/// Single M-record on an arbitrary CPS base. Only sphere-representable base
/// classes may be targeted.
pub fn realize_plan_general(p: &GeneralPlan) -> Result<ReebDescriptor, CalculusError> {
    let n = p.n;
    let mut v = Vec::new();
    if p.g.len() != n {
        v.push(format!("g needs n = {n} entries, got {}", p.g.len()));
    } else {
        if p.g[n - 1] != 1 {
            return Err(CalculusError::TopRank(p.g[n - 1]));
        }
        if p.g[0] != 0 {
            v.push(format!("G_1 must be 0, got rank {}", p.g[0]));
        }
        for k in 1..n {
            let c = p
                .spheres
                .iter()
                .filter(|s| s.dim > 0 && s.dim + k == n)
                .count();
            if c != p.g[k - 1] {
                v.push(format!(
                    "{c} spheres of dim {} but rank G_{k} = {}",
                    n - k,
                    p.g[k - 1]
                ));
            }
        }
    }
    if !v.is_empty() {
        return Err(CalculusError::Plan(v));
    }
    let mut d = ReebDescriptor {
        n,
        base: p.base.clone(),
        records: Vec::new(),
    };
    let base = base_cohomology(&d, CoefficientRing::Integers)
        .ok_or_else(|| CalculusError::Invalid(validate(&d)))?;
    let mut spheres = Vec::new();
    for s in &p.spheres {
        let mut spec = SphereSpec::new(s.dim);
        for (id, &c) in &s.coefficients {
            let i = base
                .index_of(id)
                .ok_or_else(|| CalculusError::UnknownClass(id.clone()))?;
            if !base.basis()[i].sphere_representable {
                return Err(CalculusError::NonRepresentable(id.clone()));
            }
            let cid: ClassId = id
                .parse()
                .map_err(|_| CalculusError::UnknownClass(id.clone()))?;
            spec.coefficients.insert(cid, c);
        }
        spheres.push(spec);
    }
    d.records.push(BubblingRecord::new(RecordKind::M, spheres));
    let v = validate(&d);
    if v.is_empty() {
        Ok(d)
    } else {
        Err(CalculusError::Invalid(v))
    }
}

#[derive(Clone, Debug)]
pub struct RandomPlanConfig {
    pub n_max: usize,
    pub top_rank_max: usize,
    pub s_max: usize,
    pub coefficient_max: i64,
}

impl Default for RandomPlanConfig {
    fn default() -> Self {
        RandomPlanConfig {
            n_max: 5,
            top_rank_max: 3,
            s_max: 2,
            coefficient_max: 3,
        }
    }
}

/// A random legal plan: `G_n` of rank `1..=top_rank_max`, spheres spread over
/// the records, every designated coefficient filled in.
pub fn random_plan<R: Rng>(rng: &mut R, cfg: &RandomPlanConfig) -> Plan {
    let n = rng.gen_range(2..=cfg.n_max.max(2));
    let s: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..=cfg.s_max)).collect();
    let top = rng.gen_range(1..=cfg.top_rank_max.max(1));
    let mut a = vec![vec![0usize; n - 1]; top];
    for seq in a.iter_mut() {
        for k in 2..n {
            seq[k - 1] = rng.gen_range(0..=1);
        }
    }
    let mut g: Vec<usize> = (1..n).map(|k| a.iter().map(|s| s[k - 1]).sum()).collect();
    g.push(top);
    let mut coefficients = Vec::new();
    for (j, seq) in a.iter().enumerate() {
        for k1 in 2..n {
            for k2 in 1..=seq[k1 - 1] {
                for k3 in 1..=s[n - k1 - 1] {
                    let value = rng.gen_range(-cfg.coefficient_max..=cfg.coefficient_max);
                    coefficients.push(PlanCoefficient {
                        record: j + 1,
                        k1,
                        k2,
                        k3,
                        value,
                    });
                }
            }
        }
    }
    Plan {
        n,
        s,
        g,
        a,
        coefficients,
        mode: PlanMode::Standard,
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::calculus::cohomology_ring_of_descriptor;
    use crate::graded_algebra::pairing_invariants;

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn square_plan() -> Plan {
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

    #[test]
    fn square_degree_example() {
        let r = realize_plan(&square_plan()).unwrap();
        assert_eq!(r.descriptor.base.handles, vec![ManifoldExpr::sphere(2)]);
        assert_eq!(
            r.descriptor.records[0].spheres,
            vec![SphereSpec::new(2).with(1, 3)]
        );
        let ring = cohomology_ring_of_descriptor(&r.descriptor, Z)
            .unwrap()
            .ring;
        assert_eq!(ring.ranks(), r.expected_ranks);
        assert_eq!(
            pairing_invariants(&ring, 2, 2).unwrap().divisors,
            vec![BigInt::from(3)]
        );
    }

    #[test]
    fn zero_coefficients_give_bare_records() {
        let p = Plan {
            n: 3,
            s: vec![1, 0],
            g: vec![0, 0, 2],
            a: vec![vec![0, 0]; 2],
            coefficients: vec![],
            mode: PlanMode::Standard,
        };
        let r = realize_plan(&p).unwrap();
        assert_eq!(r.descriptor.records.len(), 2);
        assert!(r.descriptor.records.iter().all(|x| x.spheres.is_empty()));
        let ring = cohomology_ring_of_descriptor(&r.descriptor, Z)
            .unwrap()
            .ring;
        assert_eq!(ring.ranks(), vec![1, 1, 0, 2]);
        assert_eq!(ring.products().count(), 0);
    }

    #[test]
    fn normal_mode_constraints() {
        let mut p = square_plan();
        p.mode = PlanMode::Normal;
        assert!(realize_plan(&p).is_ok());
        p.g = vec![0, 2, 0, 1];
        p.a = vec![vec![0, 2, 0]];
        let Err(CalculusError::Plan(v)) = realize_plan(&p) else {
            panic!()
        };
        assert_eq!(v.len(), 2, "{v:?}");
    }

    #[test]
    fn violations_are_exhaustive() {
        let p = Plan {
            n: 3,
            s: vec![1],
            g: vec![1, 0, 1],
            a: vec![vec![1, 0], vec![0, 0]],
            coefficients: vec![PlanCoefficient {
                record: 3,
                k1: 2,
                k2: 1,
                k3: 1,
                value: 1,
            }],
            mode: PlanMode::Standard,
        };
        let Err(CalculusError::Plan(v)) = realize_plan(&p) else {
            panic!()
        };
        // s length, G_1, a count, a[1] k=1, record index
        assert_eq!(v.len(), 5, "{v:?}");
    }

    #[test]
    fn random_plans_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let p = random_plan(&mut rng, &RandomPlanConfig::default());
            let r = realize_plan(&p).unwrap();
            let ring = cohomology_ring_of_descriptor(&r.descriptor, Z)
                .unwrap()
                .ring;
            assert_eq!(ring.ranks(), r.expected_ranks);
            for e in &r.expected_constants {
                let c = ring.structure_constant(
                    ring.index_of(&e.nu).unwrap(),
                    ring.index_of(&e.beta).unwrap(),
                    ring.index_of(&e.tau).unwrap(),
                );
                assert_eq!(c, Z.from_i64(e.value));
            }
        }
    }

    #[test]
    fn general_planner() {
        let torus = ManifoldExpr::product(ManifoldExpr::sphere(1), ManifoldExpr::sphere(1));
        let base = BaseSpec {
            handles: vec![torus.clone()],
        };
        let p = GeneralPlan {
            n: 4,
            base: base.clone(),
            g: vec![0, 1, 0, 1],
            spheres: vec![GeneralSphere {
                dim: 2,
                coefficients: BTreeMap::new(),
            }],
        };
        let d = realize_plan_general(&p).unwrap();
        assert_eq!(d.records.len(), 1);
        let bad = GeneralPlan {
            spheres: vec![GeneralSphere {
                dim: 2,
                coefficients: [("t1".to_string(), 1)].into(),
            }],
            ..p.clone()
        };
        assert!(matches!(
            realize_plan_general(&bad),
            Err(CalculusError::NonRepresentable(_))
        ));
        let two = GeneralPlan {
            g: vec![0, 1, 0, 2],
            ..p
        };
        assert!(matches!(
            realize_plan_general(&two),
            Err(CalculusError::TopRank(2))
        ));
        let g2 = ManifoldExpr::connsum(torus.clone(), torus);
        let p = GeneralPlan {
            n: 4,
            base: BaseSpec { handles: vec![g2] },
            g: vec![0, 0, 1, 1],
            spheres: vec![GeneralSphere {
                dim: 1,
                coefficients: [("nu1".to_string(), 1)].into(),
            }],
        };
        let d = realize_plan_general(&p).unwrap();
        let ring = cohomology_ring_of_descriptor(&d, Z).unwrap().ring;
        assert_eq!(
            ring.product_by_id("nu1", "beta1.1").unwrap(),
            vec![("tau1".into(), Z.from_i64(1))]
        );
        for other in ["nu2", "nu3", "nu4"] {
            assert!(ring.product_by_id(other, "beta1.1").unwrap().is_empty());
        }
    }
}
