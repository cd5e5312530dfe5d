use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graded_algebra::ManifoldExpr;

/// Identifier `nu<j>` of the `j`-th sphere-representable base class (1-based,
/// handle-then-leaf order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub u32);

impl ClassId {
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(i: usize) -> Self {
        ClassId(i as u32 + 1)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu{}", self.0)
    }
}

impl FromStr for ClassId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("malformed class id `{s}` (expected nu<j> with j >= 1)");
        let digits = s.strip_prefix("nu").ok_or_else(bad)?;
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || digits.starts_with('0')
        {
            return Err(bad());
        }
        digits.parse().map(ClassId).map_err(|_| bad())
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ClassId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RecordKind {
    M,
    S,
    #[serde(rename = "normal-M")]
    NormalM,
    #[serde(rename = "normal-S")]
    NormalS,
    #[serde(rename = "point")]
    Point,
}

impl RecordKind {
    pub fn is_normal(self) -> bool {
        matches!(self, RecordKind::NormalM | RecordKind::NormalS)
    }

    /// S-type records (and point records) keep the source a disjoint union of
    /// almost-spheres fibrewise, which is what manifold inference needs.
    pub fn is_s_type(self) -> bool {
        matches!(
            self,
            RecordKind::S | RecordKind::NormalS | RecordKind::Point
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereSpec {
    pub dim: usize,
    #[serde(default)]
    pub coefficients: BTreeMap<ClassId, i64>,
}

impl SphereSpec {
    pub fn new(dim: usize) -> Self {
        SphereSpec {
            dim,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn with(mut self, target: u32, coefficient: i64) -> Self {
        self.coefficients.insert(ClassId(target), coefficient);
        self
    }

    /// Nonzero coefficients only.
    pub fn targets(&self) -> impl Iterator<Item = (ClassId, i64)> + '_ {
        self.coefficients
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (*k, c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubblingRecord {
    pub kind: RecordKind,
    #[serde(default)]
    pub spheres: Vec<SphereSpec>,
}

impl BubblingRecord {
    pub fn new(kind: RecordKind, spheres: Vec<SphereSpec>) -> Self {
        BubblingRecord { kind, spheres }
    }

    pub fn point() -> Self {
        BubblingRecord {
            kind: RecordKind::Point,
            spheres: Vec::new(),
        }
    }

    /// Spheres of positive dimension; point generators carry no classes.
    pub fn positive_spheres(&self) -> impl Iterator<Item = (usize, &SphereSpec)> {
        self.spheres.iter().enumerate().filter(|(_, s)| s.dim > 0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub handles: Vec<ManifoldExpr>,
}

/// A base special generic Reeb space (boundary connected sum of core x disc
/// pieces) together with an ordered schedule of bubbling records.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReebDescriptor {
    pub n: usize,
    pub base: BaseSpec,
    #[serde(default)]
    pub records: Vec<BubblingRecord>,
}

impl ReebDescriptor {
    pub fn new(n: usize) -> Self {
        ReebDescriptor {
            n,
            base: BaseSpec::default(),
            records: Vec::new(),
        }
    }

    pub fn with_handle(mut self, core: ManifoldExpr) -> Self {
        self.base.handles.push(core);
        self
    }

    pub fn with_record(mut self, r: BubblingRecord) -> Self {
        self.records.push(r);
        self
    }

    pub fn sphere_count(&self) -> usize {
        self.records
            .iter()
            .map(|r| r.positive_spheres().count())
            .sum()
    }
}
