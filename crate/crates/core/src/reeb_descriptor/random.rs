use rand::seq::SliceRandom;
use rand::Rng;

use super::{base_sphere_classes, BubblingRecord, ClassId, RecordKind, ReebDescriptor, SphereSpec};
use crate::graded_algebra::ManifoldExpr;

/// Bounds for random descriptors; defaults match the desk-scale catalog.
#[derive(Clone, Debug)]
pub struct RandomDescriptorConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub max_handles: usize,
    pub max_records: usize,
    pub max_spheres: usize,
    pub max_coefficient: i64,
    /// Allow products and connected sums as cores, not just spheres.
    pub composite_cores: bool,
    /// At most one nonzero coefficient per sphere.
    pub single_target: bool,
}

impl Default for RandomDescriptorConfig {
    fn default() -> Self {
        RandomDescriptorConfig {
            n_min: 2,
            n_max: 5,
            max_handles: 3,
            max_records: 3,
            max_spheres: 3,
            max_coefficient: 3,
            composite_cores: true,
            single_target: false,
        }
    }
}

/// A random closed manifold of dimension `k >= 1` built from spheres.
pub fn random_core<R: Rng>(rng: &mut R, k: usize, composite: bool) -> ManifoldExpr {
    if !composite || k < 2 {
        return ManifoldExpr::sphere(k);
    }
    let product = |rng: &mut R| {
        let a = rng.gen_range(1..k);
        ManifoldExpr::product(ManifoldExpr::sphere(a), ManifoldExpr::sphere(k - a))
    };
    match rng.gen_range(0..6) {
        0..=2 => ManifoldExpr::sphere(k),
        3 | 4 => product(rng),
        _ => ManifoldExpr::connsum(product(rng), product(rng)),
    }
}

/// A random valid descriptor.
pub fn random_descriptor<R: Rng>(rng: &mut R, cfg: &RandomDescriptorConfig) -> ReebDescriptor {
    let n = rng.gen_range(cfg.n_min.max(2)..=cfg.n_max.max(cfg.n_min.max(2)));
    let mut d = ReebDescriptor::new(n);
    for _ in 0..rng.gen_range(0..=cfg.max_handles) {
        let k = rng.gen_range(1..n);
        d.base
            .handles
            .push(random_core(rng, k, cfg.composite_cores));
    }
    let classes = base_sphere_classes(&d);
    for _ in 0..rng.gen_range(0..=cfg.max_records) {
        let kind = *[
            RecordKind::M,
            RecordKind::S,
            RecordKind::NormalM,
            RecordKind::NormalS,
            RecordKind::Point,
        ]
        .choose(rng)
        .expect("nonempty");
        let count = match kind {
            RecordKind::Point => 0,
            k if k.is_normal() => 1,
            _ => rng.gen_range(0..=cfg.max_spheres),
        };
        let mut spheres = Vec::new();
        for _ in 0..count {
            // n = 2 admits only point generators
            let dim = if n < 3 { 0 } else { rng.gen_range(0..=n - 2) };
            let mut s = SphereSpec::new(dim);
            if dim > 0 {
                let mut targets: Vec<ClassId> = classes
                    .iter()
                    .filter(|c| c.degree == dim)
                    .map(|c| c.id)
                    .collect();
                targets.shuffle(rng);
                let take = if cfg.single_target {
                    targets.len().min(1)
                } else {
                    rng.gen_range(0..=targets.len())
                };
                for id in targets.into_iter().take(take) {
                    let c = rng.gen_range(-cfg.max_coefficient..=cfg.max_coefficient);
                    if c != 0 || !cfg.single_target {
                        s.coefficients.insert(id, c);
                    }
                }
            }
            spheres.push(s);
        }
        d.records.push(BubblingRecord::new(kind, spheres));
    }
    d
}
