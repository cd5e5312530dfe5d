use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use super::SimplicialError;

/// A simplex as a strictly increasing list of vertex labels.
pub type Simplex = Vec<u32>;

/// Finite abstract simplicial complex on vertices `0..n_vertices`. The vertex
/// order is the numeric order of labels; simplices are stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given simplices. Every vertex below
    /// `n_vertices` is included, whether or not it appears in a facet.
    pub fn from_facets(
        n_vertices: usize,
        facets: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self, SimplicialError> {
        let mut sets: Vec<BTreeSet<Simplex>> =
            vec![(0..n_vertices as u32).map(|v| vec![v]).collect()];
        for mut f in facets {
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::Malformed(format!(
                    "repeated vertex in {f:?}"
                )));
            }
            if f.is_empty() {
                continue;
            }
            if let Some(&v) = f.last() {
                if v as usize >= n_vertices {
                    return Err(SimplicialError::Malformed(format!(
                        "vertex {v} out of range"
                    )));
                }
            }
            let d = f.len() - 1;
            while sets.len() <= d {
                sets.push(BTreeSet::new());
            }
            if sets[d].contains(&f) {
                continue;
            }
            // all nonempty subsets
            let k = f.len();
            for mask in 1u32..(1u32 << k) {
                let s: Simplex = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| f[i])
                    .collect();
                sets[s.len() - 1].insert(s);
            }
        }
        while sets.len() > 1 && sets.last().is_some_and(|s| s.is_empty()) {
            sets.pop();
        }
        let by_dim: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = by_dim
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex {
            n_vertices,
            by_dim,
            index,
        })
    }

    pub fn point() -> Self {
        Self::from_facets(1, []).expect("a point is valid")
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension; a complex with no vertices reports 0.
    pub fn dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn total_simplices(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        let mut faces: Vec<Simplex> = Vec::new();
        for k in (0..self.by_dim.len()).rev() {
            for s in &self.by_dim[k] {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
                if k > 0 {
                    for i in 0..s.len() {
                        let mut f = s.clone();
                        f.remove(i);
                        faces.push(f);
                    }
                }
            }
            for f in faces.drain(..) {
                if let Some(idx) = self.index_of(&f) {
                    covered.insert(&self.by_dim[f.len() - 1][idx]);
                }
            }
        }
        out.sort();
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, s)| {
                if k % 2 == 0 {
                    s.len() as i64
                } else {
                    -(s.len() as i64)
                }
            })
            .sum()
    }

    /// Simplices spanned entirely by the given vertices.
    pub fn induced(&self, vertices: &[u32]) -> Vec<Simplex> {
        let set: BTreeSet<u32> = vertices.iter().copied().collect();
        self.by_dim
            .iter()
            .flatten()
            .filter(|s| s.iter().all(|v| set.contains(v)))
            .cloned()
            .collect()
    }

    /// Complex obtained by renaming vertices through an injective map.
    pub fn relabel(&self, map: &[u32], n_vertices: usize) -> Result<Self, SimplicialError> {
        let facets = self
            .facets()
            .into_iter()
            .map(|f| f.iter().map(|&v| map[v as usize]).collect());
        Self::from_facets(n_vertices, facets)
    }

    /// Plain-text dump: one sorted vertex tuple per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for simplex in self.by_dim.iter().flatten() {
            let parts: Vec<String> = simplex.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{}", parts.join(" "));
        }
        s
    }

    /// `true` if every `(d-1)`-simplex lies in exactly two `d`-simplices and
    /// every simplex lies in some `d`-simplex.
    pub fn is_closed_pseudomanifold(&self, d: usize) -> bool {
        if self.dim() != d || self.facets().iter().any(|f| f.len() != d + 1) {
            return false;
        }
        if d == 0 {
            return true;
        }
        let mut cofaces = vec![0usize; self.count(d - 1)];
        for s in self.simplices(d) {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                cofaces[self.index_of(&f).expect("closed under faces")] += 1;
            }
        }
        cofaces.iter().all(|&c| c == 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_counts() {
        let k = SimplicialComplex::from_facets(4, vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert_eq!(k.count(0), 4);
        assert_eq!(k.count(1), 4);
        assert_eq!(k.count(2), 1);
        assert_eq!(k.facets(), vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(k.euler_characteristic(), 1);
        assert!(k.dump().contains("0 1 2\n"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SimplicialComplex::from_facets(2, vec![vec![0, 0]]).is_err());
        assert!(SimplicialComplex::from_facets(2, vec![vec![0, 5]]).is_err());
    }
}
