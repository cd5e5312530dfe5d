use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Simplex, SimplicialComplex, SimplicialError, SimplicialMap};

/// Result of combining complexes: the new complex and, for each input, where
/// its vertices went.
#[derive(Clone, Debug)]
pub struct Combined {
    pub complex: SimplicialComplex,
    pub vertex_maps: Vec<Vec<u32>>,
}

/// Boundary of the standard `(k+1)`-simplex.
pub fn sphere_complex(k: usize) -> SimplicialComplex {
    let n = k + 2;
    let facets = (0..n as u32).map(|skip| (0..n as u32).filter(|&v| v != skip).collect());
    SimplicialComplex::from_facets(n, facets).expect("valid sphere")
}

/// The full simplex on `n` vertices.
pub fn simplex_complex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets(n, [(0..n as u32).collect()]).expect("valid simplex")
}

/// Label of the product vertex `(a, b)`.
pub fn product_vertex(a: u32, b: u32, l_vertices: usize) -> u32 {
    a * l_vertices as u32 + b
}

/// Staircase triangulation of `|K| x |L|`, vertices ordered lexicographically.
pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    let nl = l.n_vertices();
    let mut facets = Vec::new();
    for s in k.facets() {
        for t in l.facets() {
            // lattice paths from (0,0) to (p,q)
            let (p, q) = (s.len() - 1, t.len() - 1);
            let mut stack = vec![(0usize, 0usize, vec![product_vertex(s[0], t[0], nl)])];
            while let Some((i, j, path)) = stack.pop() {
                if i == p && j == q {
                    facets.push(path);
                    continue;
                }
                if i < p {
                    let mut np = path.clone();
                    np.push(product_vertex(s[i + 1], t[j], nl));
                    stack.push((i + 1, j, np));
                }
                if j < q {
                    let mut np = path;
                    np.push(product_vertex(s[i], t[j + 1], nl));
                    stack.push((i, j + 1, np));
                }
            }
        }
    }
    SimplicialComplex::from_facets(k.n_vertices() * nl, facets).expect("valid product")
}

/// Wedge at vertex 0 of every summand. The empty wedge is a point.
pub fn wedge_complex(parts: &[SimplicialComplex]) -> Combined {
    if parts.is_empty() {
        return Combined {
            complex: SimplicialComplex::point(),
            vertex_maps: Vec::new(),
        };
    }
    let mut maps = Vec::new();
    let mut next = 1u32;
    let mut facets = Vec::new();
    for p in parts {
        let map: Vec<u32> = (0..p.n_vertices() as u32)
            .map(|v| {
                if v == 0 {
                    0
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        facets.extend(
            p.facets()
                .into_iter()
                .map(|f| f.iter().map(|&v| map[v as usize]).collect::<Simplex>()),
        );
        maps.push(map);
    }
    let complex = SimplicialComplex::from_facets(next as usize, facets).expect("valid wedge");
    Combined {
        complex,
        vertex_maps: maps,
    }
}

/// Connected sum along facets of two closed `dim`-manifolds, picking the
/// first facet through vertex 0 on each side so that vertex 0 survives as a
/// common base point.
pub fn connected_sum_complex(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    dim: usize,
) -> Result<Combined, SimplicialError> {
    let pick = |c: &SimplicialComplex| {
        c.simplices(dim)
            .iter()
            .find(|f| f[0] == 0)
            .cloned()
            .ok_or(SimplicialError::NoMatchingFacet)
    };
    if k.dim() != dim || l.dim() != dim {
        return Err(SimplicialError::DimensionMismatch {
            expected: dim,
            left: k.dim(),
            right: l.dim(),
        });
    }
    let (fk, fl) = (pick(k)?, pick(l)?);
    connected_sum_at(k, &fk, l, &fl)
}

/// Connected sum removing the given facets and identifying them vertex by
/// vertex in increasing order.
pub fn connected_sum_at(
    k: &SimplicialComplex,
    fk: &[u32],
    l: &SimplicialComplex,
    fl: &[u32],
) -> Result<Combined, SimplicialError> {
    let dim = fk.len().saturating_sub(1);
    if fk.len() != fl.len() || k.dim() != dim || l.dim() != dim {
        return Err(SimplicialError::DimensionMismatch {
            expected: dim,
            left: k.dim(),
            right: l.dim(),
        });
    }
    if !k.contains(fk) || !l.contains(fl) {
        return Err(SimplicialError::NoMatchingFacet);
    }
    let nk = k.n_vertices() as u32;
    let glue: HashMap<u32, u32> = fl.iter().copied().zip(fk.iter().copied()).collect();
    let mut next = nk;
    let lmap: Vec<u32> = (0..l.n_vertices() as u32)
        .map(|v| {
            glue.get(&v).copied().unwrap_or_else(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let kmap: Vec<u32> = (0..nk).collect();
    let mut facets: Vec<Simplex> = k
        .facets()
        .into_iter()
        .filter(|f| f.as_slice() != fk)
        .collect();
    // faces of the removed facet must survive even if it was their only coface
    facets.extend(boundary_faces(fk));
    facets.extend(
        l.facets()
            .into_iter()
            .filter(|f| f.as_slice() != fl)
            .map(|f| f.iter().map(|&v| lmap[v as usize]).collect::<Simplex>()),
    );
    let complex = SimplicialComplex::from_facets(next as usize, facets)?;
    if complex.count(dim) != k.count(dim) + l.count(dim) - 2 {
        return Err(SimplicialError::NoMatchingFacet);
    }
    Ok(Combined {
        complex,
        vertex_maps: vec![kmap, lmap],
    })
}

fn boundary_faces(f: &[u32]) -> Vec<Simplex> {
    (0..f.len())
        .map(|i| {
            let mut g = f.to_vec();
            g.remove(i);
            g
        })
        .filter(|g| !g.is_empty())
        .collect()
}

/// Simplicial suspension. The two cone points are the last two vertices
/// (north, then south).
pub fn suspension(k: &SimplicialComplex) -> SimplicialComplex {
    let n = k.n_vertices() as u32;
    let (north, south) = (n, n + 1);
    let mut facets = Vec::new();
    for f in k.facets() {
        for apex in [north, south] {
            let mut g = f.clone();
            g.push(apex);
            facets.push(g);
        }
    }
    SimplicialComplex::from_facets(n as usize + 2, facets).expect("valid suspension")
}

/// Stellar subdivision of one simplex. The new vertex gets the next free label.
pub fn stellar_subdivide(
    k: &SimplicialComplex,
    s: &[u32],
) -> Result<(SimplicialComplex, u32), SimplicialError> {
    if !k.contains(s) {
        return Err(SimplicialError::Malformed(format!(
            "{s:?} is not a simplex"
        )));
    }
    let w = k.n_vertices() as u32;
    let mut facets = Vec::new();
    for f in k.facets() {
        if s.iter().all(|v| f.contains(v)) {
            // replace f by the join of w with (∂s) * (f \ s)
            let rest: Vec<u32> = f.iter().copied().filter(|v| !s.contains(v)).collect();
            for face in boundary_faces(s).into_iter().chain(if s.len() == 1 {
                vec![vec![]]
            } else {
                vec![]
            }) {
                let mut g = face;
                g.extend(&rest);
                g.push(w);
                facets.push(g);
            }
        } else {
            facets.push(f);
        }
    }
    Ok((SimplicialComplex::from_facets(w as usize + 1, facets)?, w))
}

/// Barycentric subdivision. Vertex `i` of the result is the barycenter of the
/// returned simplex `i`; vertices are ordered by dimension, then lexicographically.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> (SimplicialComplex, Vec<Simplex>) {
    let mut centers: Vec<Simplex> = Vec::new();
    for d in 0..=k.dim() {
        centers.extend(k.simplices(d).iter().cloned());
    }
    let label: HashMap<&Simplex, u32> = centers
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i as u32))
        .collect();
    let mut facets = Vec::new();
    for f in k.facets() {
        // all maximal flags of faces of f
        let mut stack: Vec<(Simplex, Vec<u32>)> = vec![(f.clone(), vec![label[&f]])];
        while let Some((s, chain)) = stack.pop() {
            if s.len() == 1 {
                facets.push(chain);
                continue;
            }
            for i in 0..s.len() {
                let mut g = s.clone();
                g.remove(i);
                let mut c = chain.clone();
                c.push(label[&g]);
                stack.push((g, c));
            }
        }
    }
    let complex = SimplicialComplex::from_facets(centers.len(), facets).expect("valid subdivision");
    (complex, centers)
}

/// Mapping cylinder of a simplicial map. Domain vertices keep their labels,
/// codomain vertex `y` becomes `n_domain + y`.
pub fn mapping_cylinder(f: &SimplicialMap) -> Combined {
    let nx = f.domain().n_vertices() as u32;
    let ny = f.codomain().n_vertices();
    let shift = |y: u32| nx + y;
    let mut facets: Vec<Simplex> = Vec::new();
    for s in f.domain().facets() {
        for i in 0..s.len() {
            let mut g: BTreeSet<u32> = s[..=i].iter().copied().collect();
            g.extend(s[i..].iter().map(|&v| shift(f.image(v))));
            facets.push(g.into_iter().collect());
        }
    }
    facets.extend(
        f.codomain()
            .facets()
            .into_iter()
            .map(|t| t.into_iter().map(shift).collect::<Simplex>()),
    );
    let complex = SimplicialComplex::from_facets(nx as usize + ny, facets).expect("valid cylinder");
    Combined {
        complex,
        vertex_maps: vec![(0..nx).collect(), (0..ny as u32).map(shift).collect()],
    }
}

/// Pushout of `K` and `L` along the full subcomplexes spanned by the paired
/// vertices. `pairs` lists `(vertex of K, vertex of L)`.
pub fn glue_along(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    pairs: &[(u32, u32)],
) -> Result<Combined, SimplicialError> {
    let to_k: BTreeMap<u32, u32> = pairs.iter().map(|&(a, b)| (b, a)).collect();
    let from_k: BTreeMap<u32, u32> = pairs.iter().copied().collect();
    if to_k.len() != pairs.len() || from_k.len() != pairs.len() {
        return Err(SimplicialError::NotIsomorphic(
            "vertex pairing is not a bijection".into(),
        ));
    }
    let a: BTreeSet<Simplex> = k
        .induced(&from_k.keys().copied().collect::<Vec<_>>())
        .into_iter()
        .collect();
    let b: BTreeSet<Simplex> = l
        .induced(&to_k.keys().copied().collect::<Vec<_>>())
        .into_iter()
        .map(|s| {
            let mut t: Simplex = s.iter().map(|v| to_k[v]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    if a != b {
        return Err(SimplicialError::NotIsomorphic(format!(
            "subcomplexes differ: {} vs {} simplices",
            a.len(),
            b.len()
        )));
    }
    let mut next = k.n_vertices() as u32;
    let lmap: Vec<u32> = (0..l.n_vertices() as u32)
        .map(|v| {
            to_k.get(&v).copied().unwrap_or_else(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let mut facets = k.facets();
    facets.extend(
        l.facets()
            .into_iter()
            .map(|f| f.iter().map(|&v| lmap[v as usize]).collect::<Simplex>()),
    );
    let complex = SimplicialComplex::from_facets(next as usize, facets)?;
    Ok(Combined {
        complex,
        vertex_maps: vec![(0..k.n_vertices() as u32).collect(), lmap],
    })
}
