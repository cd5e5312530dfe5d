//! Cohomology rings of spheres, products, connected sums and wedges, computed
//! purely algebraically.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ring::{koszul, Ext};
use super::{BasisElement, GradedAlgebraError, PresentedGradedRing};
use crate::coefficients::CoefficientRing;

/// Closed manifold built from spheres by products and connected sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ManifoldExpr {
    Sphere(usize),
    Product(Box<ManifoldExpr>, Box<ManifoldExpr>),
    Connsum(Box<ManifoldExpr>, Box<ManifoldExpr>),
}

impl ManifoldExpr {
    pub fn sphere(k: usize) -> Self {
        ManifoldExpr::Sphere(k)
    }

    pub fn product(a: ManifoldExpr, b: ManifoldExpr) -> Self {
        ManifoldExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn connsum(a: ManifoldExpr, b: ManifoldExpr) -> Self {
        ManifoldExpr::Connsum(Box::new(a), Box::new(b))
    }

    pub fn dim(&self) -> usize {
        match self {
            ManifoldExpr::Sphere(k) => *k,
            ManifoldExpr::Product(a, b) => a.dim() + b.dim(),
            ManifoldExpr::Connsum(a, _) => a.dim(),
        }
    }

    pub fn validate(&self) -> Result<(), GradedAlgebraError> {
        match self {
            ManifoldExpr::Sphere(0) => Err(GradedAlgebraError::ZeroSphere),
            ManifoldExpr::Sphere(_) => Ok(()),
            ManifoldExpr::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            ManifoldExpr::Connsum(a, b) => {
                a.validate()?;
                b.validate()?;
                if a.dim() != b.dim() {
                    return Err(GradedAlgebraError::TopDegreeMismatch(a.dim(), b.dim()));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldExpr::Sphere(k) => write!(f, "S^{k}"),
            ManifoldExpr::Product(a, b) => write!(f, "({a} x {b})"),
            ManifoldExpr::Connsum(a, b) => write!(f, "({a} # {b})"),
        }
    }
}

/// Wedge of manifolds; the empty wedge is a point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GcpsExpr(pub Vec<ManifoldExpr>);

pub fn sphere_ring(
    k: usize,
    ring: CoefficientRing,
) -> Result<PresentedGradedRing, GradedAlgebraError> {
    if k == 0 {
        return Err(GradedAlgebraError::ZeroSphere);
    }
    Ok(PresentedGradedRing::new(
        ring,
        k,
        vec![BasisElement::new(format!("s{k}"), k, true)],
    ))
}

/// Brackets a tensor id so nested products keep distinct names.
fn factor_id(id: &str) -> String {
    if id.contains('⊗') {
        format!("({id})")
    } else {
        id.to_string()
    }
}

/// Graded tensor product. Basis order: `a⊗1` for each `a`, then `1⊗b`, then `a⊗b`.
pub fn tensor_ring(
    a: &PresentedGradedRing,
    b: &PresentedGradedRing,
) -> Result<PresentedGradedRing, GradedAlgebraError> {
    if a.ring() != b.ring() {
        return Err(GradedAlgebraError::RingMismatch(a.ring(), b.ring()));
    }
    let ring = a.ring();
    let mut pairs: Vec<(Ext, Ext)> = Vec::new();
    pairs.extend((0..a.len()).map(|i| (Ext::Class(i), Ext::Unit)));
    pairs.extend((0..b.len()).map(|j| (Ext::Unit, Ext::Class(j))));
    for i in 0..a.len() {
        for j in 0..b.len() {
            pairs.push((Ext::Class(i), Ext::Class(j)));
        }
    }
    let index: HashMap<(Ext, Ext), usize> =
        pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let basis = pairs
        .iter()
        .map(|&(x, y)| match (x, y) {
            (Ext::Class(i), Ext::Unit) => {
                let e = &a.basis()[i];
                BasisElement::new(
                    format!("{}⊗1", factor_id(&e.id)),
                    e.degree,
                    e.sphere_representable,
                )
            }
            (Ext::Unit, Ext::Class(j)) => {
                let e = &b.basis()[j];
                BasisElement::new(
                    format!("1⊗{}", factor_id(&e.id)),
                    e.degree,
                    e.sphere_representable,
                )
            }
            (Ext::Class(i), Ext::Class(j)) => {
                let (x, y) = (&a.basis()[i], &b.basis()[j]);
                BasisElement::new(
                    format!("{}⊗{}", factor_id(&x.id), factor_id(&y.id)),
                    x.degree + y.degree,
                    false,
                )
            }
            _ => unreachable!(),
        })
        .collect();
    let mut out = PresentedGradedRing::new(ring, a.top_degree() + b.top_degree(), basis);
    for (p, &(x1, y1)) in pairs.iter().enumerate() {
        for (q, &(x2, y2)) in pairs.iter().enumerate().skip(p) {
            let sign = koszul(b.ext_degree(y1), a.ext_degree(x2));
            let mut coords = Vec::new();
            for (ex, cx) in a.ext_product(x1, x2) {
                for (ey, cy) in b.ext_product(y1, y2) {
                    let c = &cx * &cy;
                    let c = if sign { -c } else { c };
                    coords.push((index[&(ex, ey)], c));
                }
            }
            out.set_product(p, q, coords);
        }
    }
    Ok(out)
}

/// Connected sum of two algebras with free rank-one tops of the same degree.
/// The top classes `t1`, `t2` are identified through `(t1, t2) ~ 0`, so `t2`
/// becomes `-t`. Basis order: non-top classes of `a1`, of `a2`, then `t`.
pub fn connsum_ring(
    a1: &PresentedGradedRing,
    a2: &PresentedGradedRing,
) -> Result<PresentedGradedRing, GradedAlgebraError> {
    if a1.ring() != a2.ring() {
        return Err(GradedAlgebraError::RingMismatch(a1.ring(), a2.ring()));
    }
    let d = a1.top_degree();
    if d != a2.top_degree() {
        return Err(GradedAlgebraError::TopDegreeMismatch(d, a2.top_degree()));
    }
    if d == 0 {
        return Err(GradedAlgebraError::TopNotRankOne(0));
    }
    let tops = [a1.indices_in_degree(d), a2.indices_in_degree(d)];
    for t in &tops {
        if t.len() != 1 {
            return Err(GradedAlgebraError::TopNotRankOne(t.len()));
        }
    }
    let ring = a1.ring();
    let mut basis = Vec::new();
    let mut maps: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (side, alg) in [a1, a2].into_iter().enumerate() {
        let tag = if side == 0 { "L" } else { "R" };
        for (i, e) in alg.basis().iter().enumerate() {
            if i == tops[side][0] {
                maps[side].push(usize::MAX);
                continue;
            }
            maps[side].push(basis.len());
            basis.push(BasisElement::new(
                format!("{tag}.{}", e.id),
                e.degree,
                e.sphere_representable,
            ));
        }
    }
    let t = basis.len();
    let top_rep =
        a1.basis()[tops[0][0]].sphere_representable && a2.basis()[tops[1][0]].sphere_representable;
    basis.push(BasisElement::new("top", d, top_rep));
    for m in maps.iter_mut() {
        for v in m.iter_mut() {
            if *v == usize::MAX {
                *v = t;
            }
        }
    }
    let mut out = PresentedGradedRing::new(ring, d, basis);
    for (side, alg) in [a1, a2].into_iter().enumerate() {
        for ((x, y), coords) in alg.products() {
            if x > y {
                continue;
            }
            let mapped = coords
                .iter()
                .map(|(k, v)| {
                    if *k == tops[side][0] && side == 1 {
                        (t, -v)
                    } else {
                        (maps[side][*k], v.clone())
                    }
                })
                .collect();
            // products of non-top classes only; any product involving the top
            // class vanishes for degree reasons
            out.set_product(maps[side][*x], maps[side][*y], mapped);
        }
    }
    Ok(out)
}

/// Wedge sum: positive-degree parts add up and cross products vanish.
pub fn wedge_rings(
    ring: CoefficientRing,
    parts: &[PresentedGradedRing],
) -> Result<PresentedGradedRing, GradedAlgebraError> {
    let mut basis = Vec::new();
    let mut offsets = Vec::new();
    for (w, p) in parts.iter().enumerate() {
        if p.ring() != ring {
            return Err(GradedAlgebraError::RingMismatch(ring, p.ring()));
        }
        offsets.push(basis.len());
        for e in p.basis() {
            let mut e = e.clone();
            e.id = format!("w{w}.{}", e.id);
            basis.push(e);
        }
    }
    let top = parts.iter().map(|p| p.top_degree()).max().unwrap_or(0);
    let mut out = PresentedGradedRing::new(ring, top, basis);
    for (p, off) in parts.iter().zip(offsets) {
        for ((x, y), coords) in p.products() {
            if x <= y {
                out.set_product(
                    x + off,
                    y + off,
                    coords.iter().map(|(k, v)| (k + off, v.clone())).collect(),
                );
            }
        }
    }
    Ok(out)
}

pub fn cps_cohomology(
    e: &ManifoldExpr,
    ring: CoefficientRing,
) -> Result<PresentedGradedRing, GradedAlgebraError> {
    e.validate()?;
    match e {
        ManifoldExpr::Sphere(k) => sphere_ring(*k, ring),
        ManifoldExpr::Product(a, b) => {
            tensor_ring(&cps_cohomology(a, ring)?, &cps_cohomology(b, ring)?)
        }
        ManifoldExpr::Connsum(a, b) => {
            connsum_ring(&cps_cohomology(a, ring)?, &cps_cohomology(b, ring)?)
        }
    }
}

pub fn gcps_cohomology(
    e: &GcpsExpr,
    ring: CoefficientRing,
) -> Result<PresentedGradedRing, GradedAlgebraError> {
    let parts =
        e.0.iter()
            .map(|m| cps_cohomology(m, ring))
            .collect::<Result<Vec<_>, _>>()?;
    wedge_rings(ring, &parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Scalar;

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn s(k: usize) -> ManifoldExpr {
        ManifoldExpr::sphere(k)
    }

    fn torus() -> ManifoldExpr {
        ManifoldExpr::product(s(1), s(1))
    }

    #[test]
    fn nested_products_keep_distinct_ids() {
        let x = ManifoldExpr::product(s(2), s(1));
        let y = ManifoldExpr::product(s(1), s(2));
        let r = cps_cohomology(&ManifoldExpr::product(x, y), Z).unwrap();
        assert!(r.validate().is_ok(), "{:?}", r.validate());
        assert_eq!(r.ranks(), vec![1, 2, 3, 4, 3, 2, 1]);
    }

    #[test]
    fn spheres() {
        assert_eq!(sphere_ring(1, Z).unwrap().ranks(), vec![1, 1]);
        let f2 = CoefficientRing::prime_field(2).unwrap();
        assert_eq!(sphere_ring(2, f2).unwrap().ranks(), vec![1, 0, 1]);
        let g = sphere_ring(3, CoefficientRing::Rationals).unwrap();
        assert_eq!(g.ranks(), vec![1, 0, 0, 1]);
        assert!(g.product(0, 0).is_empty());
        assert!(matches!(
            sphere_ring(0, Z),
            Err(GradedAlgebraError::ZeroSphere)
        ));
    }

    #[test]
    fn torus_ring_has_koszul_sign() {
        let t = cps_cohomology(&torus(), Z).unwrap();
        t.validate().unwrap();
        assert_eq!(t.ranks(), vec![1, 2, 1]);
        let (x, y, top) = (0, 1, 2);
        assert_eq!(t.product(x, y), &[(top, Z.one())]);
        assert_eq!(t.product(y, x), &[(top, Z.from_i64(-1))]);
        assert!(t.product(x, x).is_empty());
        assert!(t.product(y, y).is_empty());
    }

    #[test]
    fn s2_times_s2() {
        let r = cps_cohomology(&ManifoldExpr::product(s(2), s(2)), Z).unwrap();
        r.validate().unwrap();
        assert_eq!(r.ranks(), vec![1, 0, 2, 0, 1]);
        assert_eq!(r.product(0, 1), &[(2, Z.one())]);
        assert_eq!(r.product(1, 0), &[(2, Z.one())]);
        assert!(r.product(0, 0).is_empty());
    }

    #[test]
    fn tensor_with_unit_is_a_copy() {
        let t = cps_cohomology(&torus(), Z).unwrap();
        let u = PresentedGradedRing::unit_only(Z);
        let c = tensor_ring(&t, &u).unwrap();
        assert_eq!(c.ranks(), t.ranks());
        assert_eq!(c.product(0, 1), t.product(0, 1));
    }

    #[test]
    fn genus_two() {
        let g2 = cps_cohomology(&ManifoldExpr::connsum(torus(), torus()), Z).unwrap();
        g2.validate().unwrap();
        assert_eq!(g2.ranks(), vec![1, 4, 1]);
        assert_eq!(g2.product(0, 1), &[(4, Z.one())]);
        assert_eq!(g2.product(2, 3), &[(4, Z.from_i64(-1))]);
        for a in 0..2 {
            for b in 2..4 {
                assert!(g2.product(a, b).is_empty());
            }
        }
        assert_eq!(
            g2.basis().iter().filter(|b| b.sphere_representable).count(),
            4
        );
    }

    #[test]
    fn connsum_rejects_mismatched_tops() {
        let e = ManifoldExpr::connsum(s(1), s(2));
        assert!(matches!(
            cps_cohomology(&e, Z),
            Err(GradedAlgebraError::TopDegreeMismatch(1, 2))
        ));
    }

    #[test]
    fn representability_of_product_classes() {
        let r = cps_cohomology(&ManifoldExpr::product(s(1), s(2)), Z).unwrap();
        assert_eq!(r.ranks(), vec![1, 1, 1, 1]);
        let flags: Vec<(usize, bool)> = r
            .basis()
            .iter()
            .map(|b| (b.degree, b.sphere_representable))
            .collect();
        assert_eq!(flags, vec![(1, true), (2, true), (3, false)]);
    }

    #[test]
    fn wedges() {
        let p = gcps_cohomology(&GcpsExpr::default(), Z).unwrap();
        assert_eq!(p.ranks(), vec![1]);
        let w = gcps_cohomology(&GcpsExpr(vec![s(1), s(2)]), Z).unwrap();
        assert_eq!(w.ranks(), vec![1, 1, 1]);
        assert_eq!(w.products().count(), 0);
        let tt = gcps_cohomology(&GcpsExpr(vec![torus(), torus()]), Z).unwrap();
        tt.validate().unwrap();
        assert_eq!(tt.ranks(), vec![1, 4, 2]);
        assert!(tt.product(0, 3).is_empty());
        assert_eq!(tt.product(3, 4), &[(5, Scalar::Int(1.into()))]);
    }

    #[test]
    fn expr_json_shape() {
        let e: ManifoldExpr = serde_json::from_str(r#"{"connsum":[{"product":[{"sphere":1},{"sphere":1}]},{"product":[{"sphere":1},{"sphere":1}]}]}"#).unwrap();
        assert_eq!(e, ManifoldExpr::connsum(torus(), torus()));
        assert!(serde_json::from_str::<ManifoldExpr>(r#"{"torus":1}"#).is_err());
    }
}
