//! Invariant checks shared by the proptest suite and the acceptance run.
//! Each check returns the list of violations it found, empty when green.

#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reeb_bubble::calculus::{cohomology_ring_of_descriptor, homology_of_descriptor};
use reeb_bubble::coefficients::CoefficientRing;
use reeb_bubble::graded_algebra::{all_pairing_invariants, GradedModule};
use reeb_bubble::oracle::{
    base_model, chain_model, chain_model_homology, simplicial_model, tier2_obstruction,
    Tier2Options,
};
use reeb_bubble::reeb_descriptor::{random_descriptor, RandomDescriptorConfig, ReebDescriptor};
use reeb_bubble::simplicial::{
    homology_of_complex, mayer_vietoris, product_complex, sphere_complex, ChainComplex,
    SimplicialComplex,
};

pub const Z: CoefficientRing = CoefficientRing::Integers;
pub const Q: CoefficientRing = CoefficientRing::Rationals;

pub fn f(p: u64) -> CoefficientRing {
    CoefficientRing::prime_field(p).unwrap()
}

/// The `i`-th of a reproducible stream of random descriptors.
pub fn seeded_descriptor(seed: u64) -> ReebDescriptor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_descriptor(&mut rng, &RandomDescriptorConfig::default())
}

pub fn prefix(d: &ReebDescriptor, records: usize) -> ReebDescriptor {
    let mut p = d.clone();
    p.records.truncate(records);
    p
}

fn homology(d: &ReebDescriptor, ring: CoefficientRing) -> GradedModule {
    homology_of_descriptor(d, ring)
        .expect("valid descriptor")
        .padded(d.n)
}

pub fn h1_invariance(d: &ReebDescriptor) -> Vec<String> {
    let mut out = Vec::new();
    for r in 0..d.records.len() {
        for ring in [Z, f(2)] {
            let (before, after) = (
                homology(&prefix(d, r), ring),
                homology(&prefix(d, r + 1), ring),
            );
            if before.piece(1) != after.piece(1) {
                out.push(format!(
                    "record {r} over {ring}: H_1 {:?} -> {:?}",
                    before.piece(1),
                    after.piece(1)
                ));
            }
        }
    }
    out
}

pub fn top_degree_growth(d: &ReebDescriptor) -> Vec<String> {
    let n = d.n;
    (0..d.records.len())
        .filter_map(|r| {
            let (a, b) = (homology(&prefix(d, r), Z), homology(&prefix(d, r + 1), Z));
            (b.piece(n).free_rank != a.piece(n).free_rank + 1).then(|| {
                format!(
                    "record {r}: H_{n} rank {} -> {}",
                    a.piece(n).free_rank,
                    b.piece(n).free_rank
                )
            })
        })
        .collect()
}

pub fn rank_additivity(d: &ReebDescriptor) -> Vec<String> {
    let n = d.n;
    let mut out = Vec::new();
    for (r, rec) in d.records.iter().enumerate() {
        let (a, b) = (homology(&prefix(d, r), Z), homology(&prefix(d, r + 1), Z));
        for k in 2..n {
            let added = rec
                .positive_spheres()
                .filter(|(_, s)| s.dim == n - k)
                .count();
            if b.piece(k).free_rank != a.piece(k).free_rank + added {
                out.push(format!(
                    "record {r} degree {k}: {} -> {} with {added} spheres",
                    a.piece(k).free_rank,
                    b.piece(k).free_rank
                ));
            }
        }
    }
    out
}

pub fn freeness(d: &ReebDescriptor) -> Vec<String> {
    let mut out = Vec::new();
    if !homology(d, Z).is_free() {
        out.push(format!("calculus homology has torsion: {}", homology(d, Z)));
    }
    match chain_model_homology(d, Z) {
        Ok(h) if !h.is_free() => out.push(format!("chain model homology has torsion: {h}")),
        Ok(_) => {}
        Err(e) => out.push(format!("chain model: {e}")),
    }
    out
}

pub fn ring_coherence(d: &ReebDescriptor) -> Vec<String> {
    let z = homology(d, Z).free_ranks();
    [Q, f(2), f(3)]
        .into_iter()
        .filter_map(|ring| {
            let r = homology(d, ring).free_ranks();
            (r != z).then(|| format!("ranks over {ring} {r:?} differ from Z ranks {z:?}"))
        })
        .collect()
}

/// The table on the classes of the space before each record is unchanged.
pub fn inclusion_monomorphism(d: &ReebDescriptor) -> Vec<String> {
    let mut out = Vec::new();
    for r in 0..d.records.len() {
        let small = cohomology_ring_of_descriptor(&prefix(d, r), Z)
            .unwrap()
            .ring;
        let big = cohomology_ring_of_descriptor(&prefix(d, r + 1), Z)
            .unwrap()
            .ring;
        for a in 0..small.len() {
            if small.basis()[a].id != big.basis()[a].id {
                out.push(format!("record {r}: class {a} relabelled"));
            }
            for b in 0..small.len() {
                for c in 0..small.len() {
                    if small.structure_constant(a, b, c) != big.structure_constant(a, b, c) {
                        out.push(format!("record {r}: constant ({a},{b};{c}) changed"));
                    }
                }
            }
            for c in small.len()..big.len() {
                for b in 0..small.len() {
                    if !big.structure_constant(a, b, c).is_zero() {
                        out.push(format!(
                            "record {r}: old classes {a},{b} multiply into new class {c}"
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Flipping the sign of any coefficient, or of any basis class, keeps every
/// pairing invariant.
pub fn unit_rescaling(d: &ReebDescriptor) -> Vec<String> {
    let mut out = Vec::new();
    let reference = all_pairing_invariants(&cohomology_ring_of_descriptor(d, Z).unwrap().ring);
    for (r, rec) in d.records.iter().enumerate() {
        for (j, s) in rec.spheres.iter().enumerate() {
            for id in s.coefficients.keys() {
                let mut e = d.clone();
                let c = e.records[r].spheres[j].coefficients.get_mut(id).unwrap();
                *c = -*c;
                let inv =
                    all_pairing_invariants(&cohomology_ring_of_descriptor(&e, Z).unwrap().ring);
                if inv != reference {
                    out.push(format!(
                        "negating records[{r}].spheres[{j}].{id} changed the pairings"
                    ));
                }
            }
        }
    }
    let ring = cohomology_ring_of_descriptor(d, Z).unwrap().ring;
    for i in 0..ring.len() {
        if all_pairing_invariants(&ring.negate_basis_element(i)) != reference {
            out.push(format!(
                "negating basis class {} changed the pairings",
                ring.basis()[i].id
            ));
        }
    }
    out
}

fn tier2_model(d: &ReebDescriptor) -> Option<SimplicialComplex> {
    let opts = Tier2Options { allow_pinch: true };
    if tier2_obstruction(d, opts).is_some() {
        return None;
    }
    Some(
        simplicial_model(d, opts)
            .expect("supported descriptor builds")
            .complex,
    )
}

pub fn boundary_squared(d: &ReebDescriptor, with_tier2: bool) -> Vec<String> {
    let mut out = Vec::new();
    match chain_model(d) {
        Ok(c) => {
            if let Err(e) = c.check_d_squared() {
                out.push(format!("chain model: {e}"));
            }
        }
        Err(e) => out.push(format!("chain model: {e}")),
    }
    let base = base_model(d).expect("base model");
    if let Err(e) = ChainComplex::of_complex(&base.complex).check_d_squared() {
        out.push(format!("base complex: {e}"));
    }
    if with_tier2 {
        if let Some(k) = tier2_model(d) {
            if let Err(e) = ChainComplex::of_complex(&k).check_d_squared() {
                out.push(format!("simplicial model: {e}"));
            }
        }
    }
    out
}

/// Gluings of the base complex: a sphere wedged on at the base point, and two
/// copies glued along the first embedded sphere class.
type Gluing = (&'static str, SimplicialComplex, Vec<(u32, u32)>);

pub fn mayer_vietoris_exactness(d: &ReebDescriptor) -> Vec<String> {
    let base = base_model(d).expect("base model").complex;
    let mut out = Vec::new();
    let mut gluings: Vec<Gluing> = vec![("wedge with a sphere", sphere_complex(d.n), vec![(0, 0)])];
    if let Some(e) = base_model(d)
        .unwrap()
        .nus
        .iter()
        .find_map(|nu| nu.embedding.clone())
    {
        gluings.push((
            "double along a sphere class",
            base.clone(),
            e.iter().map(|&v| (v, v)).collect(),
        ));
    }
    for (what, other, pairs) in gluings {
        for ring in [Q, f(2)] {
            match mayer_vietoris(&base, &other, &pairs, ring) {
                Ok(mv) => out.extend(
                    mv.failures()
                        .into_iter()
                        .map(|m| format!("{what} over {ring}: {m}")),
                ),
                Err(e) => out.push(format!("{what}: {e}")),
            }
        }
    }
    out
}

pub fn kunneth_convolution(k: &SimplicialComplex, l: &SimplicialComplex) -> Vec<String> {
    let hk = homology_of_complex(k, Z).free_ranks();
    let hl = homology_of_complex(l, Z).free_ranks();
    let got = homology_of_complex(&product_complex(k, l), Z)
        .padded(k.dim() + l.dim())
        .free_ranks();
    let mut expected = vec![0usize; k.dim() + l.dim() + 1];
    for (i, a) in hk.iter().enumerate() {
        for (j, b) in hl.iter().enumerate() {
            expected[i + j] += a * b;
        }
    }
    if got == expected {
        Vec::new()
    } else {
        vec![format!("product ranks {got:?}, convolution {expected:?}")]
    }
}

/// The base complex times a circle, skipped for large bases.
pub fn kunneth_on_base(d: &ReebDescriptor) -> Vec<String> {
    let base = base_model(d).expect("base model").complex;
    if base.total_simplices() > 400 {
        return Vec::new();
    }
    kunneth_convolution(&base, &sphere_complex(1))
}

pub type Suite = (&'static str, fn(&ReebDescriptor) -> Vec<String>);

pub const SUITES: [Suite; 10] = [
    ("H1 invariance", h1_invariance),
    ("degree-n growth", top_degree_growth),
    ("rank additivity", rank_additivity),
    ("freeness over Z", freeness),
    ("coefficient coherence", ring_coherence),
    ("inclusion monomorphism", inclusion_monomorphism),
    ("unit rescaling", unit_rescaling),
    ("boundary squared", |d| boundary_squared(d, true)),
    ("Mayer-Vietoris exactness", mayer_vietoris_exactness),
    ("Kunneth convolution", kunneth_on_base),
];
