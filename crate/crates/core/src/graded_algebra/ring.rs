use std::collections::BTreeMap;

use serde::Serialize;

use super::{GradedAlgebraError, GradedModule};
use crate::coefficients::matrix::{axpy, SparseVec};
use crate::coefficients::{CoefficientRing, Scalar};

/// Where a basis class comes from in a bubbled Reeb space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Class of a standalone algebra (a manifold or wedge).
    Base,
    /// Image of a class of the space before bubbling.
    Inclusion,
    /// Dual of a new generating sphere of a bubbling record.
    Bubbled { record: usize, sphere: usize },
    /// Top class contributed by a bubbling record.
    Top { record: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisElement {
    pub id: String,
    pub degree: usize,
    pub provenance: Provenance,
    pub sphere_representable: bool,
}

impl BasisElement {
    pub fn new(id: impl Into<String>, degree: usize, sphere_representable: bool) -> Self {
        BasisElement {
            id: id.into(),
            degree,
            provenance: Provenance::Base,
            sphere_representable,
        }
    }
}

/// A graded-commutative ring that is free over the coefficient ring, given by
/// an explicit basis of positive-degree classes and a multiplication table.
/// The unit in degree zero is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGradedRing {
    ring: CoefficientRing,
    top_degree: usize,
    basis: Vec<BasisElement>,
    products: BTreeMap<(usize, usize), SparseVec>,
}

/// A basis element or the implicit unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Ext {
    Unit,
    Class(usize),
}

pub(crate) fn koszul(p: usize, q: usize) -> bool {
    p % 2 == 1 && q % 2 == 1
}

impl PresentedGradedRing {
    pub fn new(ring: CoefficientRing, top_degree: usize, basis: Vec<BasisElement>) -> Self {
        PresentedGradedRing {
            ring,
            top_degree,
            basis,
            products: BTreeMap::new(),
        }
    }

    /// The ring `R` concentrated in degree zero.
    pub fn unit_only(ring: CoefficientRing) -> Self {
        Self::new(ring, 0, Vec::new())
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.id == id)
    }

    pub fn element(&self, id: &str) -> Result<usize, GradedAlgebraError> {
        self.index_of(id)
            .ok_or_else(|| GradedAlgebraError::UnknownClass(id.to_string()))
    }

    pub fn indices_in_degree(&self, k: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].degree == k)
            .collect()
    }

    /// Free ranks in degrees `0..=top_degree`, counting the unit.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.top_degree + 1];
        r[0] = 1;
        for b in &self.basis {
            if b.degree < r.len() {
                r[b.degree] += 1;
            }
        }
        r
    }

    pub fn module(&self) -> GradedModule {
        GradedModule::from_free_ranks(&self.ranks())
    }

    /// Product of two basis classes as sparse coordinates.
    pub fn product(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        self.products.get(&(a, b)).map_or(&[], |v| v.as_slice())
    }

    /// Structure constant: coefficient of basis class `c` in `a * b`.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Scalar {
        self.product(a, b)
            .iter()
            .find(|(k, _)| *k == c)
            .map_or_else(|| self.ring.zero(), |(_, v)| v.clone())
    }

    /// Product by ids; convenient in tests and reports.
    pub fn product_by_id(
        &self,
        a: &str,
        b: &str,
    ) -> Result<Vec<(String, Scalar)>, GradedAlgebraError> {
        let (i, j) = (self.element(a)?, self.element(b)?);
        Ok(self
            .product(i, j)
            .iter()
            .map(|(k, v)| (self.basis[*k].id.clone(), v.clone()))
            .collect())
    }

    pub fn products(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.products.iter()
    }

    /// Sets `a * b` and, by graded commutativity, `b * a`.
    pub fn set_product(&mut self, a: usize, b: usize, coords: Vec<(usize, Scalar)>) {
        let mut coords: SparseVec = coords.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        coords.sort_by_key(|(k, _)| *k);
        let sign = koszul(self.degree(a), self.degree(b));
        let swapped: SparseVec = if sign {
            coords.iter().map(|(k, v)| (*k, -v)).collect()
        } else {
            coords.clone()
        };
        if coords.is_empty() {
            self.products.remove(&(a, b));
            self.products.remove(&(b, a));
        } else {
            self.products.insert((b, a), swapped);
            self.products.insert((a, b), coords);
        }
    }

    pub(crate) fn ext_degree(&self, e: Ext) -> usize {
        match e {
            Ext::Unit => 0,
            Ext::Class(i) => self.degree(i),
        }
    }

    pub(crate) fn ext_product(&self, x: Ext, y: Ext) -> Vec<(Ext, Scalar)> {
        match (x, y) {
            (Ext::Unit, Ext::Unit) => vec![(Ext::Unit, self.ring.one())],
            (Ext::Unit, e) | (e, Ext::Unit) => vec![(e, self.ring.one())],
            (Ext::Class(a), Ext::Class(b)) => self
                .product(a, b)
                .iter()
                .map(|(k, v)| (Ext::Class(*k), v.clone()))
                .collect(),
        }
    }

    /// Multiplies two elements given as dense coordinate vectors over the basis.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.ring.zero(); self.basis.len()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let f = xa * yb;
                for (k, v) in self.product(a, b) {
                    out[*k] = &out[*k] + &(&f * v);
                }
            }
        }
        out
    }

    pub fn relabel(&mut self, mut f: impl FnMut(usize, &BasisElement) -> BasisElement) {
        let new: Vec<BasisElement> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| f(i, b))
            .collect();
        self.basis = new;
    }

    /// Re-expresses an integral ring over another coefficient ring.
    pub fn change_ring(&self, ring: CoefficientRing) -> Result<Self, GradedAlgebraError> {
        if self.ring == ring {
            return Ok(self.clone());
        }
        if self.ring != CoefficientRing::Integers {
            return Err(GradedAlgebraError::RingMismatch(self.ring, ring));
        }
        let mut out = Self::new(ring, self.top_degree, self.basis.clone());
        for (&(a, b), v) in &self.products {
            let coords: SparseVec = v
                .iter()
                .map(|(k, s)| (*k, ring.embed(s)))
                .filter(|(_, s)| !s.is_zero())
                .collect();
            if !coords.is_empty() {
                out.products.insert((a, b), coords);
            }
        }
        Ok(out)
    }

    /// Multiplies the basis class `i` by `-1`; used to probe basis independence.
    pub fn negate_basis_element(&self, i: usize) -> Self {
        let mut out = self.clone();
        let flip = |k: usize, v: &Scalar| if k == i { -v } else { v.clone() };
        out.products = self
            .products
            .iter()
            .map(|(&(a, b), coords)| {
                let outer = (a == i) != (b == i);
                let coords: SparseVec = coords
                    .iter()
                    .map(|(k, v)| {
                        let v = flip(*k, v);
                        (*k, if outer { -v } else { v })
                    })
                    .collect();
                ((a, b), coords)
            })
            .collect();
        out
    }

    /// Checks graded commutativity, degree additivity, vanishing above the top
    /// degree and associativity on every basis triple.
    pub fn validate(&self) -> Result<(), GradedAlgebraError> {
        let mut problems = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            if b.degree == 0 {
                problems.push(format!("basis class {} has degree 0", b.id));
            }
            if b.degree > self.top_degree {
                problems.push(format!("basis class {} lies above the top degree", b.id));
            }
            if self.basis[..i].iter().any(|o| o.id == b.id) {
                problems.push(format!("duplicate basis id {}", b.id));
            }
        }
        let n = self.basis.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                let d = self.degree(a) + self.degree(b);
                for (k, _) in ab {
                    if self.degree(*k) != d {
                        problems.push(format!(
                            "{}*{} has a component {} of the wrong degree",
                            self.basis[a].id, self.basis[b].id, self.basis[*k].id
                        ));
                    }
                }
                if d > self.top_degree && !ab.is_empty() {
                    problems.push(format!(
                        "{}*{} is nonzero above the top degree",
                        self.basis[a].id, self.basis[b].id
                    ));
                }
                let ba = self.product(b, a);
                let expected: SparseVec = if koszul(self.degree(a), self.degree(b)) {
                    ab.iter().map(|(k, v)| (*k, -v)).collect()
                } else {
                    ab.to_vec()
                };
                if ba != expected.as_slice() {
                    problems.push(format!(
                        "{}*{} violates graded commutativity",
                        self.basis[a].id, self.basis[b].id
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.degree(a) + self.degree(b) + self.degree(c) > self.top_degree {
                        continue;
                    }
                    let mut left: SparseVec = Vec::new();
                    for (k, v) in self.product(a, b) {
                        left = axpy(&left, v, &self.product(*k, c).to_vec());
                    }
                    let mut right: SparseVec = Vec::new();
                    for (k, v) in self.product(b, c) {
                        right = axpy(&right, v, &self.product(a, *k).to_vec());
                    }
                    if left != right {
                        problems.push(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[a].id, self.basis[b].id, self.basis[c].id
                        ));
                    }
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(GradedAlgebraError::InvalidStructure(problems))
        }
    }

    /// Multiplication table keyed by ids, for reports.
    pub fn table(&self) -> Vec<ProductEntry> {
        self.products
            .iter()
            .filter(|((a, b), _)| a <= b)
            .map(|(&(a, b), v)| ProductEntry {
                left: self.basis[a].id.clone(),
                right: self.basis[b].id.clone(),
                result: v
                    .iter()
                    .map(|(k, s)| (self.basis[*k].id.clone(), s.to_string()))
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<(String, String)>,
}

impl Serialize for PresentedGradedRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PresentedGradedRing", 4)?;
        st.serialize_field("coefficients", &self.ring)?;
        st.serialize_field("top_degree", &self.top_degree)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("products", &self.table())?;
        st.end()
    }
}
