//! Tier 2: an honest simplicial complex homotopy equivalent to the Reeb space.
//!
//! Per record: each generating sphere `S^l` gets a triangulated domain `X`
//! with a map to the base realizing its coefficient vector; the record space
//! is `#_j (X_j x S^{n-l_j})` with sections `X_j x {0}` meeting only at the
//! base point; the attaching map is replaced by its mapping cylinder, and the
//! record space is glued to the cylinder's domain end.

use std::collections::BTreeSet;

use super::base::{base_model, BaseModel};
use super::OracleError;
use crate::reeb_descriptor::{validate, BubblingRecord, ReebDescriptor, SphereSpec};
use crate::simplicial::{
    connected_sum_at, degree_map, glue_along, mapping_cylinder, product_complex, product_vertex,
    sphere_complex, sphere_to_wedge_map, wedge_complex, Simplex, SimplicialComplex,
    SimplicialError, SimplicialMap,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tier2Options {
    /// Allow spheres with several nonzero coefficients, realized by pinch maps.
    pub allow_pinch: bool,
}

#[derive(Clone, Debug)]
pub struct SimplicialModel {
    pub complex: SimplicialComplex,
    /// Vertices `0..base_vertices` are the base wedge.
    pub base_vertices: usize,
}

/// Why Tier 2 cannot model a descriptor, or `None` if it can.
pub fn tier2_obstruction(d: &ReebDescriptor, opts: Tier2Options) -> Option<String> {
    let base = base_model(d).ok()?;
    for (r, rec) in d.records.iter().enumerate() {
        for (j, s) in rec.positive_spheres() {
            let targets: Vec<_> = s.targets().collect();
            if targets.len() > 1 && !opts.allow_pinch {
                return Some(format!(
                    "tier-1 only: records[{r}].spheres[{j}] has {} nonzero coefficients and pinch maps are disabled",
                    targets.len()
                ));
            }
            for (id, _) in targets {
                if base.nus[id.index()].embedding.is_none() {
                    return Some(format!(
                        "tier-1 only: {id} is not carried by an embedded standard sphere"
                    ));
                }
            }
        }
    }
    None
}

/// Domain of one generating sphere and its vertex map into the base.
fn sphere_attachment(
    s: &SphereSpec,
    base: &BaseModel,
    opts: Tier2Options,
) -> Result<(SimplicialComplex, Vec<u32>), OracleError> {
    let l = s.dim;
    let targets: Vec<_> = s.targets().collect();
    let embedding = |id: crate::reeb_descriptor::ClassId| {
        base.nus[id.index()].embedding.clone().ok_or_else(|| {
            OracleError::Tier1Only(format!(
                "{id} is not carried by an embedded standard sphere"
            ))
        })
    };
    match targets.len() {
        0 => {
            let x = sphere_complex(l);
            let n = x.n_vertices();
            Ok((x, vec![0; n]))
        }
        1 => {
            let (id, c) = targets[0];
            let m = degree_map(l, c)?;
            let e = embedding(id)?;
            let vm = m.map.vertex_map().iter().map(|&v| e[v as usize]).collect();
            Ok((m.map.domain().clone(), vm))
        }
        t => {
            if !opts.allow_pinch {
                return Err(OracleError::Tier1Only(format!(
                    "sphere with {t} nonzero coefficients needs pinch maps"
                )));
            }
            let degrees: Vec<i64> = targets.iter().map(|(_, c)| *c).collect();
            let m = sphere_to_wedge_map(l, &degrees)?;
            let w = wedge_complex(&vec![sphere_complex(l); t]);
            let mut to_base = vec![0u32; w.complex.n_vertices()];
            for (i, (id, _)) in targets.iter().enumerate() {
                let e = embedding(*id)?;
                for (v, &wv) in w.vertex_maps[i].iter().enumerate() {
                    to_base[wv as usize] = e[v];
                }
            }
            let vm = m
                .map
                .vertex_map()
                .iter()
                .map(|&v| to_base[v as usize])
                .collect();
            Ok((m.map.domain().clone(), vm))
        }
    }
}

/// Facet through vertex 0 avoiding every other vertex in `avoid`.
fn facet_at_base_point(
    c: &SimplicialComplex,
    avoid: &BTreeSet<u32>,
) -> Result<Simplex, SimplicialError> {
    let d = c.dim();
    c.simplices(d)
        .iter()
        .find(|f| f[0] == 0 && f[1..].iter().all(|v| !avoid.contains(v)))
        .cloned()
        .ok_or(SimplicialError::NoMatchingFacet)
}

/// `#_j (X_j x S^{n-l_j})` and, per `j`, the labels of the section `X_j x {0}`.
fn record_space(
    n: usize,
    domains: &[SimplicialComplex],
) -> Result<(SimplicialComplex, Vec<Vec<u32>>), OracleError> {
    if domains.is_empty() {
        return Ok((sphere_complex(n), Vec::new()));
    }
    let mut e: Option<SimplicialComplex> = None;
    let mut sections: Vec<Vec<u32>> = Vec::new();
    for x in domains {
        let fibre = sphere_complex(n - x.dim());
        let nl = fibre.n_vertices();
        let p = product_complex(x, &fibre);
        let sec: Vec<u32> = (0..x.n_vertices() as u32)
            .map(|v| product_vertex(v, 0, nl))
            .collect();
        match e.take() {
            None => {
                e = Some(p);
                sections.push(sec);
            }
            Some(cur) => {
                let used: BTreeSet<u32> = sections.iter().flatten().copied().collect();
                let fk = facet_at_base_point(&cur, &used)?;
                let fl = facet_at_base_point(&p, &sec.iter().copied().collect())?;
                let c = connected_sum_at(&cur, &fk, &p, &fl)?;
                for s in sections.iter_mut() {
                    for v in s.iter_mut() {
                        *v = c.vertex_maps[0][*v as usize];
                    }
                }
                sections.push(sec.iter().map(|&v| c.vertex_maps[1][v as usize]).collect());
                e = Some(c.complex);
            }
        }
    }
    Ok((e.expect("nonempty"), sections))
}

fn attach_record(
    t: &SimplicialComplex,
    n: usize,
    base: &BaseModel,
    rec: &BubblingRecord,
    opts: Tier2Options,
) -> Result<SimplicialComplex, OracleError> {
    let mut domains = Vec::new();
    let mut maps = Vec::new();
    for (_, s) in rec.positive_spheres() {
        let (x, vm) = sphere_attachment(s, base, opts)?;
        domains.push(x);
        maps.push(vm);
    }
    let bouquet = wedge_complex(&domains);
    let mut g = vec![0u32; bouquet.complex.n_vertices()];
    for (vm, emb) in maps.iter().zip(&bouquet.vertex_maps) {
        for (x, &a) in emb.iter().enumerate() {
            g[a as usize] = vm[x];
        }
    }
    let g = SimplicialMap::new(bouquet.complex.clone(), base.complex.clone(), g)?;
    let cyl = mapping_cylinder(&g);
    let base_pairs: Vec<(u32, u32)> = (0..base.complex.n_vertices() as u32)
        .map(|w| (w, cyl.vertex_maps[1][w as usize]))
        .collect();
    let t1 = glue_along(t, &cyl.complex, &base_pairs)?;
    let bouquet_in_t = |a: u32| t1.vertex_maps[1][cyl.vertex_maps[0][a as usize] as usize];

    let (e, sections) = record_space(n, &domains)?;
    let mut pairs: BTreeSet<(u32, u32)> = BTreeSet::new();
    pairs.insert((bouquet_in_t(0), 0));
    for (sec, emb) in sections.iter().zip(&bouquet.vertex_maps) {
        for (x, &a) in emb.iter().enumerate() {
            pairs.insert((bouquet_in_t(a), sec[x]));
        }
    }
    let pairs: Vec<(u32, u32)> = pairs.into_iter().collect();
    Ok(glue_along(&t1.complex, &e, &pairs)?.complex)
}

pub fn simplicial_model(
    d: &ReebDescriptor,
    opts: Tier2Options,
) -> Result<SimplicialModel, OracleError> {
    let v = validate(d);
    if !v.is_empty() {
        return Err(OracleError::Invalid(v));
    }
    if let Some(reason) = tier2_obstruction(d, opts) {
        return Err(OracleError::Tier1Only(reason));
    }
    let base = base_model(d)?;
    let mut t = base.complex.clone();
    for rec in &d.records {
        t = attach_record(&t, d.n, &base, rec, opts)?;
    }
    Ok(SimplicialModel {
        complex: t,
        base_vertices: base.complex.n_vertices(),
    })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::coefficients::CoefficientRing;
    use crate::graded_algebra::{pairing_invariants, ManifoldExpr};
    use crate::reeb_descriptor::RecordKind;
    use crate::simplicial::{cup_ring_of_complex, homology_of_complex, ChainComplex};

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn circle_bubbled(c: i64) -> ReebDescriptor {
        ReebDescriptor::new(3)
            .with_handle(ManifoldExpr::sphere(1))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![SphereSpec::new(1).with(1, c)],
            ))
    }

    #[test]
    fn coefficient_one_and_two() {
        for c in [1i64, 2] {
            let m = simplicial_model(&circle_bubbled(c), Tier2Options::default()).unwrap();
            ChainComplex::of_complex(&m.complex)
                .check_d_squared()
                .unwrap();
            assert_eq!(
                homology_of_complex(&m.complex, Z).free_ranks(),
                vec![1, 1, 1, 1]
            );
            let r = cup_ring_of_complex(&m.complex, Z).unwrap().ring;
            assert_eq!(
                pairing_invariants(&r, 1, 2).unwrap().divisors,
                vec![BigInt::from(c)]
            );
            let f2 = CoefficientRing::prime_field(2).unwrap();
            let r2 = cup_ring_of_complex(&m.complex, f2).unwrap().ring;
            assert_eq!(
                pairing_invariants(&r2, 1, 2).unwrap().rank,
                if c == 1 { 1 } else { 0 }
            );
        }
    }

    #[test]
    fn point_record_gives_sphere() {
        let d = ReebDescriptor::new(3).with_record(BubblingRecord::point());
        let m = simplicial_model(&d, Tier2Options::default()).unwrap();
        assert_eq!(
            homology_of_complex(&m.complex, Z).free_ranks(),
            vec![1, 0, 0, 1]
        );
    }

    #[test]
    fn multi_target_needs_pinch() {
        let d = ReebDescriptor::new(3)
            .with_handle(ManifoldExpr::sphere(1))
            .with_handle(ManifoldExpr::sphere(1))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![SphereSpec::new(1).with(1, 1).with(2, 1)],
            ));
        match simplicial_model(&d, Tier2Options::default()) {
            Err(OracleError::Tier1Only(msg)) => assert!(msg.contains("tier-1 only")),
            other => panic!("{other:?}"),
        }
        let m = simplicial_model(&d, Tier2Options { allow_pinch: true }).unwrap();
        assert_eq!(
            homology_of_complex(&m.complex, Z).free_ranks(),
            vec![1, 2, 1, 1]
        );
    }

    #[test]
    fn several_spheres_in_one_record() {
        let d = ReebDescriptor::new(4)
            .with_handle(ManifoldExpr::sphere(1))
            .with_handle(ManifoldExpr::sphere(2))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![
                    SphereSpec::new(1).with(1, -1),
                    SphereSpec::new(2).with(2, 2),
                    SphereSpec::new(0),
                ],
            ))
            .with_record(BubblingRecord::point());
        let m = simplicial_model(&d, Tier2Options::default()).unwrap();
        assert_eq!(
            homology_of_complex(&m.complex, Z).free_ranks(),
            vec![1, 1, 2, 1, 2]
        );
    }
}
