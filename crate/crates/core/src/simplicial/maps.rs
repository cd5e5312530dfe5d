use std::collections::VecDeque;

use super::constructions::{
    connected_sum_at, sphere_complex, stellar_subdivide, suspension, wedge_complex,
};
use super::{Simplex, SimplicialComplex, SimplicialError};
use crate::coefficients::matrix::SparseVec;
use crate::coefficients::{CoefficientRing, Scalar};

/// Vertex map between complexes that sends simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    domain: SimplicialComplex,
    codomain: SimplicialComplex,
    vertex_map: Vec<u32>,
}

impl SimplicialMap {
    pub fn new(
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        vertex_map: Vec<u32>,
    ) -> Result<Self, SimplicialError> {
        if vertex_map.len() != domain.n_vertices() {
            return Err(SimplicialError::NotSimplicial(
                "vertex map has the wrong length".into(),
            ));
        }
        for f in domain.facets() {
            let mut img: Simplex = f.iter().map(|&v| vertex_map[v as usize]).collect();
            img.sort_unstable();
            img.dedup();
            if !codomain.contains(&img) {
                return Err(SimplicialError::NotSimplicial(format!(
                    "{f:?} maps to non-simplex {img:?}"
                )));
            }
        }
        Ok(SimplicialMap {
            domain,
            codomain,
            vertex_map,
        })
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &SimplicialComplex {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[u32] {
        &self.vertex_map
    }

    pub fn image(&self, v: u32) -> u32 {
        self.vertex_map[v as usize]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap, SimplicialError> {
        let vm = self.vertex_map.iter().map(|&v| g.image(v)).collect();
        SimplicialMap::new(self.domain.clone(), g.codomain.clone(), vm)
    }

    /// Same map, read into a bigger complex through an injective vertex map.
    pub fn into_codomain(
        &self,
        target: &SimplicialComplex,
        embed: &[u32],
    ) -> Result<SimplicialMap, SimplicialError> {
        let vm = self.vertex_map.iter().map(|&v| embed[v as usize]).collect();
        SimplicialMap::new(self.domain.clone(), target.clone(), vm)
    }

    /// Induced chain map in degree `k` on integral chains.
    pub fn push_chain(&self, k: usize, chain: &SparseVec) -> SparseVec {
        push_chain(&self.domain, &self.codomain, &self.vertex_map, k, chain)
    }
}

/// Pushes an oriented chain through a vertex map: degenerate images vanish,
/// otherwise the sign is that of the sorting permutation.
pub fn push_chain(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    vertex_map: &[u32],
    k: usize,
    chain: &SparseVec,
) -> SparseVec {
    let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
    for (j, v) in chain {
        let s = &domain.simplices(k)[*j];
        let mut img: Vec<u32> = s.iter().map(|&x| vertex_map[x as usize]).collect();
        let mut sign = false;
        // insertion sort counting transpositions
        for i in 1..img.len() {
            let mut p = i;
            while p > 0 && img[p - 1] > img[p] {
                img.swap(p - 1, p);
                sign = !sign;
                p -= 1;
            }
        }
        if img.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let idx = codomain.index_of(&img).expect("simplicial map");
        let val = if sign { -v } else { v.clone() };
        let e = acc.entry(idx).or_insert_with(|| v.ring().zero());
        *e = &*e + &val;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Fundamental cycle of a closed connected orientable pseudomanifold of
/// dimension `d`, normalized to coefficient `+1` on the first `d`-simplex.
/// Returns `None` if the complex is not of that kind.
pub fn fundamental_cycle(k: &SimplicialComplex, d: usize) -> Option<SparseVec> {
    let z = CoefficientRing::Integers;
    let n = k.count(d);
    if n == 0 {
        return None;
    }
    if d == 0 {
        return (n == 1).then(|| vec![(0, z.one())]);
    }
    let mut cofaces: Vec<Vec<(usize, i64)>> = vec![Vec::new(); k.count(d - 1)];
    for (j, s) in k.simplices(d).iter().enumerate() {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            cofaces[k.index_of(&f)?].push((j, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    if cofaces.iter().any(|c| c.len() != 2) {
        return None;
    }
    let mut coef = vec![0i64; n];
    coef[0] = 1;
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, c) in cofaces.iter().enumerate() {
        for &(j, _) in c {
            faces_of[j].push(fi);
        }
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        for &fi in &faces_of[j] {
            let (a, b) = (cofaces[fi][0], cofaces[fi][1]);
            let ((me, ms), (other, os)) = if a.0 == j { (a, b) } else { (b, a) };
            let _ = me;
            // coef[j]*ms + coef[other]*os = 0
            let want = -coef[j] * ms * os;
            if coef[other] == 0 {
                coef[other] = want;
                queue.push_back(other);
            } else if coef[other] != want {
                return None;
            }
        }
    }
    if coef.contains(&0) {
        return None;
    }
    Some(
        coef.iter()
            .enumerate()
            .map(|(j, &c)| (j, z.from_i64(c)))
            .collect(),
    )
}

/// Coefficient `m` with `chain = m * cycle`, if such a multiple exists.
pub fn multiple_of(chain: &SparseVec, cycle: &SparseVec) -> Option<i64> {
    if chain.is_empty() {
        return Some(0);
    }
    let (i0, c0) = &cycle[0];
    let v0 = chain.iter().find(|(i, _)| i == i0).map(|(_, v)| v.clone());
    let v0 = v0?;
    let (q, r) = v0.div_rem(c0);
    if !r.is_zero() {
        return None;
    }
    let m = i64::try_from(q.as_bigint()?).ok()?;
    let expect: SparseVec = cycle.iter().map(|(i, c)| (*i, c * &q)).collect();
    (expect == *chain).then_some(m)
}

/// A map from a triangulated `l`-sphere, with the domain orientation used to
/// read off degrees.
#[derive(Clone, Debug)]
pub struct SphereMap {
    pub map: SimplicialMap,
    pub dim: usize,
    pub fundamental: SparseVec,
    /// Multiplier on each target sphere.
    pub degrees: Vec<i64>,
}

/// Map from a subdivided `l`-sphere onto `sphere_complex(l)` of degree `d`.
/// Vertex 0 of the domain maps to vertex 0.
pub fn degree_map(l: usize, d: i64) -> Result<SphereMap, SimplicialError> {
    if l == 0 {
        return Err(SimplicialError::Malformed("degree maps need l >= 1".into()));
    }
    let map = raw_degree_map(l, d)?;
    let target = fundamental_cycle(map.codomain(), l).expect("sphere");
    let fund = fundamental_cycle(map.domain(), l).expect("domain is a sphere");
    let got = multiple_of(&map.push_chain(l, &fund), &target).expect("image is a multiple");
    let map = if got == d {
        map
    } else if got == -d {
        map.then(&reflection(l))?
    } else {
        return Err(SimplicialError::DegreeCheckFailed {
            expected: vec![d],
            got: vec![got],
        });
    };
    let check = multiple_of(&map.push_chain(l, &fund), &target).expect("image is a multiple");
    if check != d {
        return Err(SimplicialError::DegreeCheckFailed {
            expected: vec![d],
            got: vec![check],
        });
    }
    Ok(SphereMap {
        map,
        dim: l,
        fundamental: fund,
        degrees: vec![d],
    })
}

/// Swap of vertices 1 and 2 on `sphere_complex(l)`; degree -1, fixes vertex 0.
fn reflection(l: usize) -> SimplicialMap {
    let s = sphere_complex(l);
    let vm: Vec<u32> = (0..s.n_vertices() as u32)
        .map(|v| match v {
            1 => 2,
            2 => 1,
            v => v,
        })
        .collect();
    SimplicialMap::new(s.clone(), s, vm).expect("automorphism")
}

fn raw_degree_map(l: usize, d: i64) -> Result<SimplicialMap, SimplicialError> {
    let target = sphere_complex(l);
    if d == 0 {
        let dom = sphere_complex(l);
        let n = dom.n_vertices();
        return SimplicialMap::new(dom, target, vec![0; n]);
    }
    if l == 1 {
        let m = 3 * d.unsigned_abs() as u32;
        let facets = (0..m).map(|i| vec![i, (i + 1) % m]);
        let dom = SimplicialComplex::from_facets(m as usize, facets)?;
        let vm = (0..m)
            .map(|i| if d > 0 { i % 3 } else { (3 - i % 3) % 3 })
            .collect();
        return SimplicialMap::new(dom, target, vm);
    }
    let inner = raw_degree_map(l - 1, d)?;
    let dom = suspension(inner.domain());
    let n = inner.domain().n_vertices();
    // collapse of the suspended sphere: vertices fixed, north -> l+1, south -> 0
    let mut vm: Vec<u32> = inner.vertex_map().to_vec();
    vm.push(l as u32 + 1);
    vm.push(0);
    debug_assert_eq!(vm.len(), n + 2);
    SimplicialMap::new(dom, target, vm)
}

/// Map from a triangulated `l`-sphere into the wedge of `degrees.len()` copies
/// of `sphere_complex(l)` whose fundamental class goes to
/// `Σ degrees[i] * [sphere i]`. Built by pinching: each lobe is a degree map,
/// lobes are joined by connected sums along facets that map to the base point.
pub fn sphere_to_wedge_map(l: usize, degrees: &[i64]) -> Result<SphereMap, SimplicialError> {
    if l == 0 || degrees.is_empty() {
        return Err(SimplicialError::Malformed(
            "need l >= 1 and at least one sphere".into(),
        ));
    }
    let spheres: Vec<SimplicialComplex> = (0..degrees.len()).map(|_| sphere_complex(l)).collect();
    let wedge = wedge_complex(&spheres);
    let lobe_cycles: Vec<SparseVec> = wedge
        .vertex_maps
        .iter()
        .map(|vm| {
            let s = &spheres[0];
            let f = fundamental_cycle(s, l).expect("sphere");
            push_chain(s, &wedge.complex, vm, l, &f)
        })
        .collect();

    let mut signs: Vec<i64> = vec![1; degrees.len()];
    for _attempt in 0..2 {
        let built = assemble_lobes(l, degrees, &signs, &wedge.complex, &wedge.vertex_maps)?;
        let fund = fundamental_cycle(built.domain(), l)
            .ok_or_else(|| SimplicialError::Malformed("pinched domain is not a sphere".into()))?;
        let image = built.push_chain(l, &fund);
        let got = decompose(&image, &lobe_cycles)?;
        if got == degrees {
            return Ok(SphereMap {
                map: built,
                dim: l,
                fundamental: fund,
                degrees: got,
            });
        }
        for i in 0..degrees.len() {
            if got[i] == -degrees[i] {
                signs[i] = -signs[i];
            } else if got[i] != degrees[i] {
                return Err(SimplicialError::DegreeCheckFailed {
                    expected: degrees.to_vec(),
                    got,
                });
            }
        }
    }
    Err(SimplicialError::DegreeCheckFailed {
        expected: degrees.to_vec(),
        got: vec![],
    })
}

fn decompose(image: &SparseVec, lobes: &[SparseVec]) -> Result<Vec<i64>, SimplicialError> {
    let mut out = Vec::new();
    let mut rest = image.clone();
    for lobe in lobes {
        let part: SparseVec = image
            .iter()
            .filter(|(i, _)| lobe.iter().any(|(j, _)| j == i))
            .cloned()
            .collect();
        rest.retain(|(i, _)| !lobe.iter().any(|(j, _)| j == i));
        out.push(multiple_of(&part, lobe).ok_or_else(|| {
            SimplicialError::Malformed("image is not a combination of lobe classes".into())
        })?);
    }
    if !rest.is_empty() {
        return Err(SimplicialError::Malformed(
            "image leaves the wedge spheres".into(),
        ));
    }
    Ok(out)
}

fn assemble_lobes(
    l: usize,
    degrees: &[i64],
    signs: &[i64],
    wedge: &SimplicialComplex,
    embeds: &[Vec<u32>],
) -> Result<SimplicialMap, SimplicialError> {
    let mut lobes: Vec<(SimplicialComplex, Vec<u32>)> = Vec::new();
    for (i, (&d, &s)) in degrees.iter().zip(signs).enumerate() {
        let m = degree_map(l, d * s)?;
        let mut dom = m.map.domain().clone();
        let mut vm: Vec<u32> = m
            .map
            .vertex_map()
            .iter()
            .map(|&v| embeds[i][v as usize])
            .collect();
        if degrees.len() > 1 {
            // make several facets whose vertices all go to the base point
            for _ in 0..=l {
                let f = dom
                    .simplices(l)
                    .iter()
                    .filter(|f| f.iter().any(|&v| vm[v as usize] == 0))
                    .max_by_key(|f| f.iter().filter(|&&v| vm[v as usize] == 0).count())
                    .cloned()
                    .expect("some facet meets the base point");
                let (nd, w) = stellar_subdivide(&dom, &f)?;
                dom = nd;
                debug_assert_eq!(w as usize, vm.len());
                vm.push(0);
            }
        }
        lobes.push((dom, vm));
    }
    let mut iter = lobes.into_iter();
    let (mut dom, mut vm) = iter.next().expect("at least one lobe");
    let based = |c: &SimplicialComplex, vm: &[u32], avoid: &[Simplex]| -> Option<Simplex> {
        c.simplices(l)
            .iter()
            .rev()
            .find(|f| f.iter().all(|&v| vm[v as usize] == 0) && !avoid.contains(f))
            .cloned()
    };
    for (ld, lvm) in iter {
        let fk = based(&dom, &vm, &[]).ok_or(SimplicialError::NoMatchingFacet)?;
        let fl = based(&ld, &lvm, &[]).ok_or(SimplicialError::NoMatchingFacet)?;
        let c = connected_sum_at(&dom, &fk, &ld, &fl)?;
        let mut nvm = vec![0u32; c.complex.n_vertices()];
        for (v, &t) in c.vertex_maps[0].iter().enumerate() {
            nvm[t as usize] = vm[v];
        }
        for (v, &t) in c.vertex_maps[1].iter().enumerate() {
            nvm[t as usize] = lvm[v];
        }
        dom = c.complex;
        vm = nvm;
    }
    SimplicialMap::new(dom, wedge.clone(), vm)
}
