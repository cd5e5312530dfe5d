use serde::Serialize;

use crate::coefficients::ModulePiece;

/// A finitely generated graded module, one piece per degree `0..=max_degree`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GradedModule {
    pub pieces: Vec<ModulePiece>,
}

impl GradedModule {
    pub fn from_free_ranks(ranks: &[usize]) -> Self {
        GradedModule {
            pieces: ranks.iter().map(|&r| ModulePiece::free(r)).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len().saturating_sub(1)
    }

    pub fn piece(&self, k: usize) -> ModulePiece {
        self.pieces.get(k).cloned().unwrap_or_default()
    }

    pub fn free_ranks(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.free_rank).collect()
    }

    pub fn is_free(&self) -> bool {
        self.pieces.iter().all(|p| p.torsion.is_empty())
    }

    /// Drops trailing zero pieces so modules of different nominal length compare equal.
    pub fn trimmed(mut self) -> Self {
        while self.pieces.len() > 1 && self.pieces.last().is_some_and(ModulePiece::is_zero) {
            self.pieces.pop();
        }
        self
    }

    /// Pads with zero pieces up to `max_degree`.
    pub fn padded(mut self, max_degree: usize) -> Self {
        while self.pieces.len() <= max_degree {
            self.pieces.push(ModulePiece::default());
        }
        self
    }
}

impl std::fmt::Display for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|p| {
                let mut s = p.free_rank.to_string();
                for t in &p.torsion {
                    s.push_str(&format!("+Z/{t}"));
                }
                s
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}
