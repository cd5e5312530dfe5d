//! Triangulated base: the wedge of the handle cores, with a chosen sphere (or
//! cycle) carrying each sphere-representable class.

use crate::coefficients::matrix::SparseVec;
use crate::coefficients::CoefficientRing;
use crate::graded_algebra::{cps_cohomology, ManifoldExpr};
use crate::reeb_descriptor::{base_sphere_classes, ReebDescriptor};
use crate::simplicial::{
    connected_sum_complex, fundamental_cycle, product_complex, product_vertex, push_chain,
    sphere_complex, wedge_complex, SimplicialComplex, SimplicialError,
};

/// Cycle representing a `nu` class, and the embedded standard sphere carrying
/// it when there is one.
#[derive(Clone, Debug)]
pub struct NuRep {
    pub degree: usize,
    /// Vertex map `sphere_complex(degree) -> base`, sending 0 to 0.
    pub embedding: Option<Vec<u32>>,
    pub cycle: SparseVec,
}

#[derive(Clone, Debug)]
pub struct BaseModel {
    pub complex: SimplicialComplex,
    pub nus: Vec<NuRep>,
}

/// One entry per basis class of the core's cohomology ring, `None` for
/// classes that are not sphere-representable.
struct CoreModel {
    complex: SimplicialComplex,
    reps: Vec<Option<NuRep>>,
}

fn transport(rep: &NuRep, from: &SimplicialComplex, to: &SimplicialComplex, vm: &[u32]) -> NuRep {
    NuRep {
        degree: rep.degree,
        embedding: rep
            .embedding
            .as_ref()
            .map(|e| e.iter().map(|&v| vm[v as usize]).collect()),
        cycle: push_chain(from, to, vm, rep.degree, &rep.cycle),
    }
}

fn core_model(e: &ManifoldExpr) -> Result<CoreModel, SimplicialError> {
    match e {
        ManifoldExpr::Sphere(k) => {
            let complex = sphere_complex(*k);
            let cycle = fundamental_cycle(&complex, *k).expect("sphere");
            let embedding = Some((0..complex.n_vertices() as u32).collect());
            Ok(CoreModel {
                reps: vec![Some(NuRep {
                    degree: *k,
                    embedding,
                    cycle,
                })],
                complex,
            })
        }
        ManifoldExpr::Product(a, b) => {
            let (ma, mb) = (core_model(a)?, core_model(b)?);
            let complex = product_complex(&ma.complex, &mb.complex);
            let nb = mb.complex.n_vertices();
            let left: Vec<u32> = (0..ma.complex.n_vertices() as u32)
                .map(|v| product_vertex(v, 0, nb))
                .collect();
            let right: Vec<u32> = (0..nb as u32).map(|v| product_vertex(0, v, nb)).collect();
            let mut reps = Vec::new();
            reps.extend(ma.reps.iter().map(|r| {
                r.as_ref()
                    .map(|r| transport(r, &ma.complex, &complex, &left))
            }));
            reps.extend(mb.reps.iter().map(|r| {
                r.as_ref()
                    .map(|r| transport(r, &mb.complex, &complex, &right))
            }));
            reps.extend(std::iter::repeat_n(None, ma.reps.len() * mb.reps.len()));
            Ok(CoreModel { complex, reps })
        }
        ManifoldExpr::Connsum(a, b) => {
            let (ma, mb) = (core_model(a)?, core_model(b)?);
            let dim = e.dim();
            let c = connected_sum_complex(&ma.complex, &mb.complex, dim)?;
            let mut reps = Vec::new();
            let mut tops = Vec::new();
            for (side, (m, x)) in [(&ma, a), (&mb, b)].into_iter().enumerate() {
                let ring = cps_cohomology(x, CoefficientRing::Integers).expect("validated core");
                let top = ring.indices_in_degree(dim)[0];
                for (i, r) in m.reps.iter().enumerate() {
                    if i == top {
                        tops.push(r.is_some());
                    } else {
                        reps.push(
                            r.as_ref().map(|r| {
                                transport(r, &m.complex, &c.complex, &c.vertex_maps[side])
                            }),
                        );
                    }
                }
            }
            let top = (tops[0] && tops[1]).then(|| NuRep {
                degree: dim,
                embedding: None,
                cycle: fundamental_cycle(&c.complex, dim).expect("closed orientable manifold"),
            });
            reps.push(top);
            Ok(CoreModel {
                complex: c.complex,
                reps,
            })
        }
    }
}

/// Wedge of the triangulated cores at vertex 0, with `nus[j]` representing
/// class `nu<j+1>`.
pub fn base_model(d: &ReebDescriptor) -> Result<BaseModel, SimplicialError> {
    let cores = d
        .base
        .handles
        .iter()
        .map(core_model)
        .collect::<Result<Vec<_>, _>>()?;
    let parts: Vec<SimplicialComplex> = cores.iter().map(|c| c.complex.clone()).collect();
    let w = wedge_complex(&parts);
    let mut nus = Vec::new();
    for (core, vm) in cores.iter().zip(&w.vertex_maps) {
        for r in core.reps.iter().flatten() {
            nus.push(transport(r, &core.complex, &w.complex, vm));
        }
    }
    let classes = base_sphere_classes(d);
    debug_assert_eq!(classes.len(), nus.len());
    debug_assert!(classes.iter().zip(&nus).all(|(c, r)| c.degree == r.degree));
    Ok(BaseModel {
        complex: w.complex,
        nus,
    })
}
