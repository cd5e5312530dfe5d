//! Combinatorial description of a fold map obtained by bubbling: a base
//! special generic Reeb space plus an ordered schedule of bubbling records.

mod io;
mod random;
mod types;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use io::{load, parse, save, to_json};
pub use random::{random_core, random_descriptor, RandomDescriptorConfig};
pub use types::{BaseSpec, BubblingRecord, ClassId, RecordKind, ReebDescriptor, SphereSpec};

use crate::coefficients::CoefficientRing;
use crate::graded_algebra::{gcps_cohomology, GcpsExpr, PresentedGradedRing};

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read or write `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("invalid descriptor:\n{}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("target dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

fn list(v: &[Violation]) -> String {
    v.iter()
        .map(|x| format!("  - {x}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// One failed check, located by a JSON-path-like string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// A sphere-representable base class: the `nu<j>` classes coefficients may target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseClass {
    pub id: ClassId,
    pub degree: usize,
    /// Index of the class in the base cohomology ring basis.
    pub ring_index: usize,
}

/// Base ring with the `nu<j>`/`t<j>` naming used throughout. `None` if some
/// handle is not a valid manifold expression.
pub fn base_cohomology(d: &ReebDescriptor, ring: CoefficientRing) -> Option<PresentedGradedRing> {
    let mut r = gcps_cohomology(&GcpsExpr(d.base.handles.clone()), ring).ok()?;
    let (mut nu, mut t) = (0, 0);
    r.relabel(|_, e| {
        let mut e = e.clone();
        if e.sphere_representable {
            nu += 1;
            e.id = format!("nu{nu}");
        } else {
            t += 1;
            e.id = format!("t{t}");
        }
        e
    });
    Some(r)
}

pub fn base_sphere_classes(d: &ReebDescriptor) -> Vec<BaseClass> {
    let Some(r) = base_cohomology(d, CoefficientRing::Integers) else {
        return Vec::new();
    };
    r.basis()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.sphere_representable)
        .enumerate()
        .map(|(j, (i, e))| BaseClass {
            id: ClassId::from_index(j),
            degree: e.degree,
            ring_index: i,
        })
        .collect()
}

/// Every violation, not just the first. An empty list means valid.
pub fn validate(d: &ReebDescriptor) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |location: String, message: String| out.push(Violation { location, message });
    let n = d.n;
    if n < 2 {
        bad(
            "n".into(),
            format!("target dimension must be at least 2, got {n}"),
        );
    }
    let mut base_ok = true;
    for (h, core) in d.base.handles.iter().enumerate() {
        let loc = format!("base.handles[{h}]");
        if let Err(e) = core.validate() {
            bad(loc.clone(), format!("invalid manifold expression: {e}"));
            base_ok = false;
            continue;
        }
        let k = core.dim();
        if k < 1 || k + 1 > n {
            bad(
                loc,
                format!("core dimension {k} outside [1, n-1] for n = {n}"),
            );
        }
    }
    let classes = if base_ok {
        base_sphere_classes(d)
    } else {
        Vec::new()
    };
    for (r, rec) in d.records.iter().enumerate() {
        let loc = format!("records[{r}]");
        if rec.kind.is_normal() && rec.spheres.len() != 1 {
            bad(
                loc.clone(),
                format!(
                    "normal record needs exactly one sphere, has {}",
                    rec.spheres.len()
                ),
            );
        }
        if rec.kind == RecordKind::Point && !rec.spheres.is_empty() {
            bad(loc.clone(), "point record must have no spheres".into());
        }
        for (j, s) in rec.spheres.iter().enumerate() {
            let loc = format!("{loc}.spheres[{j}]");
            if s.dim == 0 {
                if !s.coefficients.is_empty() {
                    bad(loc, "dim 0 sphere cannot carry coefficients".into());
                }
                continue;
            }
            if s.dim + 2 > n {
                bad(loc.clone(), format!("dim > n-2 (dim {}, n {n})", s.dim));
            }
            for id in s.coefficients.keys() {
                let cloc = format!("{loc}.coefficients.{id}");
                if !base_ok {
                    continue;
                }
                match classes.get(id.index()) {
                    None => bad(
                        cloc,
                        format!(
                            "unknown class {id}: base has {} sphere classes",
                            classes.len()
                        ),
                    ),
                    Some(c) if c.degree != s.dim => bad(
                        cloc,
                        format!(
                            "degree mismatch: {id} has degree {}, sphere has dim {}",
                            c.degree, s.dim
                        ),
                    ),
                    Some(_) => {}
                }
            }
        }
    }
    out
}

pub fn ensure_valid(d: &ReebDescriptor) -> Result<(), DescriptorError> {
    let v = validate(d);
    if v.is_empty() {
        Ok(())
    } else {
        Err(DescriptorError::Invalid(v))
    }
}

/// Connected sum of the underlying maps: handles and records concatenate and
/// the second descriptor's class ids shift past the first's.
pub fn connected_sum_descriptors(
    d1: &ReebDescriptor,
    d2: &ReebDescriptor,
) -> Result<ReebDescriptor, DescriptorError> {
    if d1.n != d2.n {
        return Err(DescriptorError::DimensionMismatch(d1.n, d2.n));
    }
    ensure_valid(d1)?;
    ensure_valid(d2)?;
    let shift = base_sphere_classes(d1).len() as u32;
    let mut out = d1.clone();
    out.base.handles.extend(d2.base.handles.iter().cloned());
    for rec in &d2.records {
        let mut rec = rec.clone();
        for s in &mut rec.spheres {
            s.coefficients = s
                .coefficients
                .iter()
                .map(|(k, v)| (ClassId(k.0 + shift), *v))
                .collect();
        }
        out.records.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::ManifoldExpr;

    fn s(k: usize) -> ManifoldExpr {
        ManifoldExpr::sphere(k)
    }

    fn messages(d: &ReebDescriptor) -> Vec<String> {
        validate(d).into_iter().map(|v| v.message).collect()
    }

    #[test]
    fn empty_base_is_valid() {
        assert!(validate(&ReebDescriptor::new(3)).is_empty());
        assert!(base_sphere_classes(&ReebDescriptor::new(3)).is_empty());
    }

    #[test]
    fn sphere_dimension_bound() {
        let d = ReebDescriptor::new(3)
            .with_handle(s(2))
            .with_record(BubblingRecord::new(RecordKind::M, vec![SphereSpec::new(2)]));
        let m = messages(&d);
        assert_eq!(m.len(), 1);
        assert!(m[0].starts_with("dim > n-2"));
    }

    #[test]
    fn degree_mismatch_and_unknown_ids() {
        let d = ReebDescriptor::new(4)
            .with_handle(s(1))
            .with_handle(s(2))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![SphereSpec::new(1).with(2, 1).with(7, 1)],
            ));
        let m = messages(&d);
        assert_eq!(m.len(), 2);
        assert!(m[0].starts_with("degree mismatch"));
        assert!(m[1].starts_with("unknown class nu7"));
    }

    #[test]
    fn all_violations_reported() {
        let d = ReebDescriptor::new(1)
            .with_handle(s(3))
            .with_record(BubblingRecord::new(RecordKind::NormalS, vec![]))
            .with_record(BubblingRecord::new(
                RecordKind::Point,
                vec![SphereSpec::new(0).with(1, 1)],
            ));
        assert_eq!(validate(&d).len(), 5);
    }

    #[test]
    fn sphere_classes() {
        let d = ReebDescriptor::new(3).with_handle(s(1)).with_handle(s(2));
        let c: Vec<_> = base_sphere_classes(&d)
            .iter()
            .map(|c| (c.id.to_string(), c.degree))
            .collect();
        assert_eq!(c, vec![("nu1".to_string(), 1), ("nu2".to_string(), 2)]);
        let t = ReebDescriptor::new(4).with_handle(ManifoldExpr::product(s(1), s(1)));
        let c: Vec<_> = base_sphere_classes(&t).iter().map(|c| c.degree).collect();
        assert_eq!(c, vec![1, 1]);
        let r = base_cohomology(&t, CoefficientRing::Integers).unwrap();
        assert_eq!(r.basis()[2].id, "t1");
    }

    #[test]
    fn connected_sums() {
        let a = ReebDescriptor::new(2).with_handle(s(1));
        let sum = connected_sum_descriptors(&a, &a).unwrap();
        assert_eq!(sum.base.handles, vec![s(1), s(1)]);
        assert_eq!(
            connected_sum_descriptors(&a, &ReebDescriptor::new(2)).unwrap(),
            a
        );
        let r = ReebDescriptor::new(3)
            .with_handle(s(1))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![SphereSpec::new(1).with(1, 2)],
            ));
        let rr = connected_sum_descriptors(&r, &r).unwrap();
        assert!(validate(&rr).is_empty());
        assert_eq!(
            rr.records[1].spheres[0].coefficients.keys().next(),
            Some(&ClassId(2))
        );
        assert!(matches!(
            connected_sum_descriptors(&a, &ReebDescriptor::new(3)),
            Err(DescriptorError::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn prefixes_stay_valid() {
        let d = ReebDescriptor::new(4)
            .with_handle(s(2))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![SphereSpec::new(2).with(1, 3)],
            ))
            .with_record(BubblingRecord::point());
        for k in 0..=d.records.len() {
            let mut p = d.clone();
            p.records.truncate(k);
            assert!(validate(&p).is_empty());
        }
    }
}
